use serde::{Deserialize, Serialize};

use crate::model::{ControlPolicy, EpiParams};

/// Net growth indicator of the mosquito population.
///
/// `M > 0` means adults produce enough surviving offspring to sustain the
/// population; `M <= 0` means it collapses.
pub fn compute_m(p: &EpiParams, c: &ControlPolicy) -> f64 {
    -(p.eta_a * p.mu_m + p.eta_a * c.c_m + p.mu_a * p.mu_m + p.mu_a * c.c_m + c.c_a * p.mu_m
        + c.c_a * c.c_m
        - p.phi * p.eta_a)
}

/// `(eta_A + mu_A + c_A)(mu_m + c_m) / (phi * eta_A)`: losses over recruitment.
///
/// `M > 0` exactly when this ratio is below one.
pub fn offspring_ratio(p: &EpiParams, c: &ControlPolicy) -> f64 {
    (p.eta_a + p.mu_a + c.c_a) * (p.mu_m + c.c_m) / (p.phi * p.eta_a)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdSet {
    #[serde(rename = "M")]
    pub m: f64,
    pub xi: f64,
    pub chi: f64,
    #[serde(rename = "R0")]
    pub r0: f64,
    /// False when `chi < 0` (collapsing vector population); `r0` is then 0.
    pub r0_defined: bool,
}

pub fn compute_thresholds(p: &EpiParams, c: &ControlPolicy) -> ThresholdSet {
    let m = compute_m(p, c);
    let adult_loss = p.mu_m + c.c_m;
    let xi = p.phi * adult_loss * adult_loss * (p.eta_h + p.mu_h);
    let chi = c.alpha * p.k * p.biting_rate * p.biting_rate * p.beta_hm * p.beta_mh * m;
    let (r0, r0_defined) = if chi < 0.0 || !(xi > 0.0) {
        (0.0, chi == 0.0)
    } else {
        ((chi / xi).sqrt(), true)
    };
    ThresholdSet {
        m,
        xi,
        chi,
        r0,
        r0_defined,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn cape_verde_thresholds() {
        let p = EpiParams::cape_verde();
        let c = ControlPolicy::NONE;
        // -(0.08*0.1 + 0.25*0.1 - 6*0.08)
        assert_relative_eq!(compute_m(&p, &c), 0.447, max_relative = 1e-14);
        let th = compute_thresholds(&p, &c);
        assert_relative_eq!(th.xi, 6.0 * 0.01 * (1.0 / 3.0 + 1.0 / (71.0 * 365.0)), max_relative = 1e-14);
        assert_relative_eq!(th.xi, 0.0200023, epsilon = 1e-7);
        assert_relative_eq!(th.chi, 3.0 * 0.64 * 0.375 * 0.375 * 0.447, max_relative = 1e-14);
        assert_relative_eq!(th.chi, 0.120690, epsilon = 1e-6);
        assert_relative_eq!(th.r0, 2.456, epsilon = 1e-3);
        assert!(th.r0_defined);
    }

    #[test]
    fn boundary_of_sustainability() {
        let base = EpiParams::cape_verde();
        let c = ControlPolicy::new(0.2, 0.1, 1.0);
        let phi = (base.eta_a + base.mu_a + c.c_a) * (base.mu_m + c.c_m) / base.eta_a;
        let p = EpiParams { phi, ..base };
        assert!(compute_m(&p, &c).abs() < 1e-15);
        assert_relative_eq!(offspring_ratio(&p, &c), 1.0, max_relative = 1e-15);
    }

    #[test]
    fn no_eggs_means_collapse() {
        let base = EpiParams::cape_verde();
        let c = ControlPolicy::new(0.3, 0.2, 0.5);
        let p = EpiParams { phi: 0.0, ..base };
        let m = compute_m(&p, &c);
        assert_relative_eq!(m, -(p.eta_a + p.mu_a + c.c_a) * (p.mu_m + c.c_m), max_relative = 1e-15);
        let th = compute_thresholds(&p, &c);
        assert!(th.chi < 0.0);
        assert_eq!(th.r0, 0.0);
        assert!(!th.r0_defined);
    }

    #[test]
    fn no_biting_no_transmission() {
        let p = EpiParams { biting_rate: 0.0, ..EpiParams::cape_verde() };
        let th = compute_thresholds(&p, &ControlPolicy::NONE);
        assert_eq!(th.chi, 0.0);
        assert_eq!(th.r0, 0.0);
        assert!(th.r0_defined);
    }

    #[test]
    fn sign_of_m_tracks_offspring_ratio() {
        let base = EpiParams::cape_verde();
        for phi in [0.1, 0.3, 0.5, 1.0, 6.0] {
            for c_m in [0.0, 0.3, 1.0] {
                let p = EpiParams { phi, ..base };
                let c = ControlPolicy::new(0.4, c_m, 1.0);
                assert_eq!(compute_m(&p, &c) > 0.0, offspring_ratio(&p, &c) < 1.0);
            }
        }
    }
}
