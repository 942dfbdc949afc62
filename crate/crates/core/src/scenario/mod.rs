//! Scenario runs, control sweeps, and the figure-data suite.

mod figures;
mod run;
mod sweep;

pub use figures::{figure_specs, figure_suite, FigureSpec, Manifest, ManifestEntry};
pub use run::{
    run_scenario, summarize, InitialConditions, IntegratorSettings, RunSummary, Scenario, SimulationOutput,
};
pub use sweep::{run_sweep, SweepAxis, SweepPoint, SweepResult, SweepSpec};
