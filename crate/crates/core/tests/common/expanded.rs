//! Endemic-equilibrium components in fully expanded closed form, written out
//! term by term so they stay independent of the library's derivation.

use dengue_core::analysis::compute_thresholds;
use dengue_core::{ControlPolicy, EpiParams};

pub struct ExpandedEndemic {
    pub s_h: f64,
    pub i_h: f64,
    pub r_h: f64,
    pub a_m: f64,
    /// Read with `c-m` as `c_m` and the bare `eta` as `eta_A`.
    pub s_m: f64,
    pub i_m: f64,
}

pub fn expanded_endemic(p: &EpiParams, c: &ControlPolicy) -> ExpandedEndemic {
    let th = compute_thresholds(p, c);
    let (m, xi, chi) = (th.m, th.xi, th.chi);
    let n = p.n_h;
    let b = p.biting_rate;
    let d = p.mu_m + c.c_m;
    let shared = -c.alpha * p.k * b * p.beta_mh * m - p.phi * p.mu_h * d;
    let q = p.mu_m * p.eta_h + p.mu_h * b * p.beta_hm + c.c_m * p.mu_h + c.c_m * p.eta_h + p.mu_m * p.mu_h;
    let ak = n * c.alpha * p.k;

    let s_m = n * p.mu_h * (c.c_m + p.mu_h) * (p.mu_h + p.eta_h) / (b * p.beta_mh * q)
        - ak * (c.c_m * (p.mu_h + p.eta_h) * (p.mu_a + p.eta_a + c.c_a)
            + p.mu_m * (p.mu_h * (p.eta_a + p.mu_a) + p.eta_h * (c.c_a + p.eta_a)))
            / (p.phi * q)
        - ak * (-p.eta_a * p.phi * (p.mu_h + p.eta_h) + p.mu_m * (p.eta_h * p.mu_a + p.mu_h * c.c_a)) / (p.phi * q);

    ExpandedEndemic {
        s_h: -p.phi * n * q * d / (b * p.beta_hm * shared),
        i_h: p.mu_h * n * (xi - chi) / ((p.eta_h + p.mu_h) * b * p.beta_hm * shared),
        r_h: p.eta_h * n * (xi - chi) / ((p.eta_h + p.mu_h) * b * p.beta_hm * shared),
        a_m: n * p.k * c.alpha * m / (p.phi * p.eta_a),
        s_m,
        i_m: -p.mu_h * n * (xi - chi) / (b * p.beta_mh * (p.phi * b * p.beta_hm * p.mu_h * d + xi)),
    }
}
