#![allow(dead_code)]

pub mod expanded;

use dengue_core::analysis::compute_m;
use dengue_core::{ControlPolicy, EpiParams, SystemState};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Parameters spread around the Cape Verde values, wide enough that every
/// equilibrium regime shows up. `m` is raised when needed so the mosquito
/// equilibrium fits under the adult cap `m*N_h`.
pub fn random_inputs<R: Rng>(rng: &mut R) -> (EpiParams, ControlPolicy) {
    let mut p = EpiParams {
        n_h: rng.gen_range(1_000..2_000_000) as f64,
        biting_rate: rng.gen_range(0.05..1.5),
        beta_mh: rng.gen_range(0.01..1.0),
        beta_hm: rng.gen_range(0.01..1.0),
        mu_h: 1.0 / (rng.gen_range(30.0..90.0) * 365.0),
        eta_h: rng.gen_range(0.05..0.6),
        mu_m: rng.gen_range(0.02..0.4),
        phi: rng.gen_range(0.05..10.0),
        mu_a: rng.gen_range(0.02..0.6),
        eta_a: rng.gen_range(0.01..0.4),
        m: rng.gen_range(0.5..5.0),
        k: rng.gen_range(0.5..5.0),
    };
    let c = ControlPolicy::new(rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0), rng.gen_range(0.01..=1.0));
    fit_adult_cap(&mut p, &c);
    (p, c)
}

/// Same as [`random_inputs`] but resampled until the mosquitoes persist.
pub fn random_sustainable<R: Rng>(rng: &mut R) -> (EpiParams, ControlPolicy) {
    loop {
        let (p, c) = random_inputs(rng);
        if compute_m(&p, &c) > 0.0 {
            return (p, c);
        }
    }
}

pub fn fit_adult_cap(p: &mut EpiParams, c: &ControlPolicy) {
    let m = compute_m(p, c);
    if m > 0.0 {
        let adults_per_human = c.alpha * p.k * m / ((p.mu_m + c.c_m) * p.phi);
        p.m = p.m.max(1.01 * adults_per_human);
    }
}

/// The disease-free state with mosquitoes at equilibrium, written out
/// independently of the library's equilibrium code.
pub fn mosquito_dfe(p: &EpiParams, c: &ControlPolicy) -> SystemState {
    let m = compute_m(p, c);
    SystemState {
        s_h: p.n_h,
        i_h: 0.0,
        r_h: 0.0,
        a_m: c.alpha * p.k * p.n_h * m / (p.eta_a * p.phi),
        s_m: c.alpha * p.k * p.n_h * m / ((p.mu_m + c.c_m) * p.phi),
        i_m: 0.0,
    }
}

/// A point of the feasible region with every compartment populated.
pub fn random_state_in_omega<R: Rng>(rng: &mut R, p: &EpiParams) -> SystemState {
    let w: [f64; 3] = [rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0)];
    let total = w.iter().sum::<f64>();
    let humans = p.n_h * rng.gen_range(0.5..=1.0);
    let adults = p.m * p.n_h * rng.gen_range(0.0..=1.0);
    let infected_share = rng.gen_range(0.0..1.0);
    SystemState {
        s_h: humans * w[0] / total,
        i_h: humans * w[1] / total,
        r_h: humans * w[2] / total,
        a_m: p.k * p.n_h * rng.gen_range(0.0..=1.0),
        s_m: adults * (1.0 - infected_share),
        i_m: adults * infected_share,
    }
}
