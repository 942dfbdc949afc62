use crate::error::{Error, Result, ValidationReport};

use super::params::{ControlPolicy, EpiParams, VaccineParams};

/// Inputs that passed [`validate_params`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidatedInputs {
    pub params: EpiParams,
    pub controls: ControlPolicy,
    pub vaccine: Option<VaccineParams>,
}

fn unit_interval(report: &mut ValidationReport, name: &str, v: f64) {
    if !(0.0..=1.0).contains(&v) {
        report.push(name, format!("{name} out of [0,1]"));
    }
}

/// Checks every parameter bound and returns all violations at once.
///
/// Biting rate and egg-laying rate may be zero (no transmission and no
/// reproduction are both meaningful limits); every other rate and density
/// must be strictly positive.
pub fn validate_params(
    params: &EpiParams,
    controls: &ControlPolicy,
    vaccine: Option<&VaccineParams>,
) -> Result<ValidatedInputs> {
    let mut report = ValidationReport::default();

    for (name, v) in params.fields() {
        if !v.is_finite() {
            report.push(name, format!("{name} must be finite"));
            continue;
        }
        match name {
            "beta_mh" | "beta_hm" => unit_interval(&mut report, name, v),
            "B" | "phi" => {
                if v < 0.0 {
                    report.push(name, format!("{name} must be non-negative"));
                }
            }
            _ => {
                if v <= 0.0 {
                    report.push(name, format!("{name} must be positive"));
                }
            }
        }
    }
    if params.n_h.is_finite() && params.n_h.fract() != 0.0 {
        report.push("N_h", "N_h must be integer-valued");
    }

    for (name, v) in [("c_A", controls.c_a), ("c_m", controls.c_m)] {
        if !v.is_finite() {
            report.push(name, format!("{name} must be finite"));
        } else {
            unit_interval(&mut report, name, v);
        }
    }
    if !controls.alpha.is_finite() {
        report.push("alpha", "alpha must be finite");
    } else if controls.alpha <= 0.0 {
        report.push("alpha", "alpha must be positive");
    } else if controls.alpha > 1.0 {
        report.push("alpha", "alpha out of (0,1]");
    }

    if let Some(v) = vaccine {
        for (name, x) in [("p", v.p), ("sigma", v.sigma)] {
            if !x.is_finite() {
                report.push(name, format!("{name} must be finite"));
            } else {
                unit_interval(&mut report, name, x);
            }
        }
        for (name, x) in [("psi", v.psi), ("w", v.w)] {
            if !(x.is_finite() && x >= 0.0) {
                report.push(name, format!("{name} must be non-negative"));
            }
        }
    }

    if report.is_empty() {
        Ok(ValidatedInputs {
            params: *params,
            controls: *controls,
            vaccine: vaccine.copied(),
        })
    } else {
        Err(Error::Validation(report))
    }
}
