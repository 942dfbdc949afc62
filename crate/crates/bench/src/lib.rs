//! Criterion benchmarks for `dengue-core`; see `benches/`.
