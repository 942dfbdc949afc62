use nalgebra::{SMatrix, SVector};

use crate::error::{Error, Result};
use crate::model::{sir_asi_field, sir_asi_jacobian, ControlPolicy, EpiParams, SystemState};

use super::equilibria::{classify, Equilibrium, Refinement};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 50;
const MAX_HALVINGS: usize = 40;

/// Fixed per-equation scales: the human birth flux for the host rows and
/// the larval loss at capacity for the vector rows.
fn row_scales(p: &EpiParams, c: &ControlPolicy) -> [f64; 6] {
    let human = (p.mu_h * p.n_h).max(f64::MIN_POSITIVE);
    let vector = ((p.eta_a + p.mu_a + c.c_a) * p.carrying_capacity(c)).max(f64::MIN_POSITIVE);
    [human, human, human, vector, vector, vector]
}

fn merit(f: &[f64; 6], scales: &[f64; 6]) -> f64 {
    f.iter().zip(scales).map(|(v, s)| v.abs() / s).fold(0.0, f64::max)
}

fn max_abs(f: &[f64; 6]) -> f64 {
    f.iter().map(|v| v.abs()).fold(0.0, f64::max)
}

/// Damped Newton iteration on the equilibrium equations.
///
/// Converges when every residual is below `tol` times its row scale. Steps
/// are halved until the scaled residual decreases.
pub fn refine_equilibrium(seed: &SystemState, p: &EpiParams, c: &ControlPolicy, tol: f64) -> Result<Equilibrium> {
    refine_with(seed, p, c, tol, DEFAULT_MAX_ITER)
}

pub fn refine_with(
    seed: &SystemState,
    p: &EpiParams,
    c: &ControlPolicy,
    tol: f64,
    max_iter: usize,
) -> Result<Equilibrium> {
    if !(tol > 0.0) {
        return Err(Error::Precondition("tolerance must be positive".into()));
    }
    if !seed.is_finite() {
        return Err(Error::NonFiniteInput("Newton seed".into()));
    }
    let scales = row_scales(p, c);
    let mut x = seed.to_array();
    let mut f = sir_asi_field(&x, p, c);
    let mut phi = merit(&f, &scales);

    for iter in 0..=max_iter {
        if !phi.is_finite() {
            return Err(Error::NonConvergence { iterations: iter, residual: max_abs(&f) });
        }
        if phi <= tol {
            let state = SystemState::from_array(x);
            return Ok(Equilibrium {
                kind: classify(&state, p),
                state,
                residual: max_abs(&f),
                in_omega: state.in_omega(p, super::equilibria::omega_slack(p)),
                refinement: Refinement::Converged { iterations: iter },
            });
        }
        if iter == max_iter {
            break;
        }

        let j = sir_asi_jacobian(&x, p, c);
        let jac = SMatrix::<f64, 6, 6>::from_fn(|r, k| j[r][k]);
        let rhs = -SVector::<f64, 6>::from_column_slice(&f);
        let dx = jac
            .lu()
            .solve(&rhs)
            .filter(|d| d.iter().all(|v| v.is_finite()))
            .ok_or_else(|| Error::SingularSystem(format!("equilibrium Jacobian at iteration {iter}")))?;

        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..MAX_HALVINGS {
            let mut trial = x;
            for (t, d) in trial.iter_mut().zip(dx.iter()) {
                *t += lambda * d;
            }
            let f_trial = sir_asi_field(&trial, p, c);
            let phi_trial = merit(&f_trial, &scales);
            if phi_trial < phi {
                x = trial;
                f = f_trial;
                phi = phi_trial;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if !accepted {
            return Err(Error::NonConvergence { iterations: iter, residual: max_abs(&f) });
        }
    }
    Err(Error::NonConvergence { iterations: max_iter, residual: max_abs(&f) })
}
