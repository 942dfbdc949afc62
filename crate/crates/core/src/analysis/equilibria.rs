//! Closed-form equilibria, their validation, and classification.

use serde::{Deserialize, Serialize};

use crate::model::{sir_asi_field, ControlPolicy, EpiParams, SystemState};

use super::newton::{refine_equilibrium, DEFAULT_TOL};
use super::thresholds::{compute_m, compute_thresholds, ThresholdSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EquilibriumKind {
    /// No mosquitoes, no disease.
    DfeTrivial,
    /// Mosquitoes present, no disease.
    DfeBiotic,
    Endemic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Refinement {
    Converged { iterations: usize },
    Failed { reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Equilibrium {
    pub kind: EquilibriumKind,
    pub state: SystemState,
    /// Max-norm of the right-hand side at `state` (per day).
    pub residual: f64,
    pub in_omega: bool,
    pub refinement: Refinement,
}

/// Which of the three equilibrium regimes the thresholds select.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TrichotomyCase {
    #[serde(rename = "M≤0")]
    VectorCollapse,
    #[serde(rename = "M>0∧ξ≥χ")]
    DiseaseFree,
    #[serde(rename = "M>0∧ξ<χ")]
    Endemic,
}

impl TrichotomyCase {
    pub fn classify(th: &ThresholdSet) -> Self {
        if th.m <= 0.0 {
            TrichotomyCase::VectorCollapse
        } else if th.xi >= th.chi {
            TrichotomyCase::DiseaseFree
        } else {
            TrichotomyCase::Endemic
        }
    }

    /// Number of biologically meaningful equilibria in this regime.
    pub fn expected_count(self) -> usize {
        match self {
            TrichotomyCase::VectorCollapse => 1,
            TrichotomyCase::DiseaseFree => 2,
            TrichotomyCase::Endemic => 3,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            TrichotomyCase::VectorCollapse => "M≤0",
            TrichotomyCase::DiseaseFree => "M>0∧ξ≥χ",
            TrichotomyCase::Endemic => "M>0∧ξ<χ",
        }
    }
}

/// A closed-form root that did not make it into the report, and why.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RejectedCandidate {
    pub label: String,
    pub state: SystemState,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumReport {
    pub thresholds: ThresholdSet,
    pub trichotomy_case: TrichotomyCase,
    pub equilibria: Vec<Equilibrium>,
    pub rejected: Vec<RejectedCandidate>,
}

impl EquilibriumReport {
    /// Equilibria whose residual passes [`residual_tolerance`].
    pub fn validated_count(&self, p: &EpiParams) -> usize {
        let tol = residual_tolerance(p);
        self.equilibria.iter().filter(|e| e.residual <= tol).count()
    }

    pub fn endemic(&self) -> Option<&Equilibrium> {
        self.equilibria.iter().find(|e| e.kind == EquilibriumKind::Endemic)
    }

    pub fn find(&self, kind: EquilibriumKind) -> Option<&Equilibrium> {
        self.equilibria.iter().find(|e| e.kind == kind)
    }
}

/// Residual threshold for accepting a state as an equilibrium, in persons/day.
pub fn residual_tolerance(p: &EpiParams) -> f64 {
    1e-8 * (p.mu_h * p.n_h).max(1.0)
}

pub fn equilibrium_residual(s: &SystemState, p: &EpiParams, c: &ControlPolicy) -> f64 {
    sir_asi_field(&s.to_array(), p, c)
        .iter()
        .map(|v| v.abs())
        .fold(0.0, f64::max)
}

/// Slack for sign and population-cap checks on equilibrium coordinates.
pub(crate) fn omega_slack(p: &EpiParams) -> f64 {
    1e-9 * p.n_h * p.k.max(p.m).max(1.0)
}

pub(crate) fn classify(s: &SystemState, p: &EpiParams) -> EquilibriumKind {
    let eps = 1e-12 * p.n_h;
    if s.i_h > eps || s.i_m > eps {
        EquilibriumKind::Endemic
    } else if s.a_m > eps || s.s_m > eps {
        EquilibriumKind::DfeBiotic
    } else {
        EquilibriumKind::DfeTrivial
    }
}

/// The four algebraic roots of the equilibrium equations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormCandidates {
    /// Always present.
    pub mosquito_free: SystemState,
    /// `None` only when the formula divides by zero (no eggs or no maturation).
    pub mosquito_only: Option<SystemState>,
    /// `None` when there is no biting.
    pub endemic: Option<SystemState>,
    /// Root with an extinct vector population and negative infected counts.
    pub spurious: Option<SystemState>,
}

/// Evaluates every equilibrium root in closed form, without any filtering.
///
/// With `T` the equilibrium adult mosquito total, `a = B*beta_mh/N_h`,
/// `b = B*beta_hm/N_h`, `g = eta_h + mu_h`, `d = mu_m + c_m`:
/// `I_h = mu_h*d*(R0^2 - 1) / (b*(a*T + mu_h))`, `I_m = b*T*I_h/(d + b*I_h)`,
/// `S_h = mu_h*N_h/(a*I_m + mu_h)`, and `R0^2 = a*b*T*N_h/(g*d)`.
pub fn closed_form_candidates(p: &EpiParams, c: &ControlPolicy) -> ClosedFormCandidates {
    let m = compute_m(p, c);
    let n = p.n_h;
    let d = p.mu_m + c.c_m;
    let g = p.eta_h + p.mu_h;
    let a = p.biting_rate * p.beta_mh / n;
    let b = p.biting_rate * p.beta_hm / n;
    let scale = c.alpha * p.k * n * m;

    let mosquito_free = SystemState::mosquito_free(p);

    let denom = p.eta_a * p.phi;
    let mosquito_only = (denom != 0.0).then(|| SystemState {
        s_h: n,
        i_h: 0.0,
        r_h: 0.0,
        a_m: scale / denom,
        s_m: scale / (d * p.phi),
        i_m: 0.0,
    });

    let endemic = mosquito_only.and_then(|e2| {
        let total = e2.s_m;
        let r0_sq = a * b * total * n / (g * d);
        let i_h = p.mu_h * d * (r0_sq - 1.0) / (b * (a * total + p.mu_h));
        let i_m = b * total * i_h / (d + b * i_h);
        let s = SystemState {
            s_h: p.mu_h * n / (a * i_m + p.mu_h),
            i_h,
            r_h: p.eta_h * i_h / p.mu_h,
            a_m: e2.a_m,
            s_m: total - i_m,
            i_m,
        };
        s.is_finite().then_some(s)
    });

    let spurious = (b != 0.0).then(|| {
        let i_h = -d / b;
        let i_m = -d * g * p.mu_h / (a * (d * g + b * p.mu_h * n));
        SystemState {
            s_h: p.mu_h * n / (a * i_m + p.mu_h),
            i_h,
            r_h: p.eta_h * i_h / p.mu_h,
            a_m: 0.0,
            s_m: -i_m,
            i_m,
        }
    })
    .filter(SystemState::is_finite);

    ClosedFormCandidates {
        mosquito_free,
        mosquito_only,
        endemic,
        spurious,
    }
}

fn max_norm_distance(a: &SystemState, b: &SystemState) -> f64 {
    a.to_array()
        .iter()
        .zip(b.to_array())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn max_norm(a: &SystemState) -> f64 {
    a.to_array().iter().map(|v| v.abs()).fold(0.0, f64::max)
}

/// Enumerates, refines and validates the equilibria for the given inputs.
///
/// Every closed-form root is Newton-refined and kept only if it has no
/// negative coordinate, passes the residual check, and is distinct from the
/// equilibria already accepted. Roots that fail any step are listed in
/// `rejected` with the reason.
pub fn equilibria_closed_form(p: &EpiParams, c: &ControlPolicy) -> EquilibriumReport {
    let thresholds = compute_thresholds(p, c);
    let trichotomy_case = TrichotomyCase::classify(&thresholds);
    let cands = closed_form_candidates(p, c);
    let tol = residual_tolerance(p);
    let slack = omega_slack(p);

    let mut equilibria: Vec<Equilibrium> = Vec::new();
    let mut rejected = Vec::new();

    let named = [
        ("mosquito-free", Some(cands.mosquito_free)),
        ("mosquito-only", cands.mosquito_only),
        ("endemic", cands.endemic),
        ("spurious", cands.spurious),
    ];
    for (label, cand) in named {
        let Some(seed) = cand else { continue };
        let mut reject = |state: SystemState, reason: String| {
            rejected.push(RejectedCandidate {
                label: label.to_string(),
                state,
                reason,
            })
        };

        if seed.to_array().iter().any(|&v| v < -slack) {
            reject(seed, "negative coordinates".into());
            continue;
        }

        let eq = match refine_equilibrium(&seed, p, c, DEFAULT_TOL) {
            Ok(eq) if max_norm_distance(&eq.state, &seed) <= 1e-6 * max_norm(&seed).max(1.0) => eq,
            Ok(eq) => {
                reject(eq.state, "refinement drifted to a different root".into());
                continue;
            }
            Err(e) => Equilibrium {
                kind: classify(&seed, p),
                state: seed,
                residual: equilibrium_residual(&seed, p, c),
                in_omega: seed.in_omega(p, slack),
                refinement: Refinement::Failed { reason: e.to_string() },
            },
        };

        if !(eq.residual <= tol) {
            reject(eq.state, format!("residual {:e} above {tol:e}", eq.residual));
            continue;
        }
        if eq.state.to_array().iter().any(|&v| v < -slack) {
            reject(eq.state, "negative coordinates after refinement".into());
            continue;
        }
        let scale = max_norm(&eq.state).max(1.0);
        if equilibria
            .iter()
            .any(|e| max_norm_distance(&e.state, &eq.state) <= 1e-6 * scale)
        {
            reject(eq.state, "coincides with an equilibrium already listed".into());
            continue;
        }
        equilibria.push(eq);
    }

    EquilibriumReport {
        thresholds,
        trichotomy_case,
        equilibria,
        rejected,
    }
}
