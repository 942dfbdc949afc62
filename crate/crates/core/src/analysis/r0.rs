//! Basic reproduction number from the next-generation matrix.

use nalgebra::Matrix2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ControlPolicy, EpiParams, SystemState};

use super::equilibria::{equilibrium_residual, residual_tolerance};

/// New-infection terms for `(I_h, I_m)`.
pub fn new_infections(p: &EpiParams, s: &SystemState) -> [f64; 2] {
    [
        p.biting_rate * p.beta_mh * s.i_m / p.n_h * s.s_h,
        p.biting_rate * p.beta_hm * s.i_h / p.n_h * s.s_m,
    ]
}

/// Transition (loss) terms for `(I_h, I_m)`.
pub fn transitions(p: &EpiParams, c: &ControlPolicy, s: &SystemState) -> [f64; 2] {
    [(p.eta_h + p.mu_h) * s.i_h, (c.c_m + p.mu_m) * s.i_m]
}

/// Jacobians of [`new_infections`] and [`transitions`] with respect to `(I_h, I_m)`.
pub fn transmission_jacobians(p: &EpiParams, c: &ControlPolicy, s: &SystemState) -> (Matrix2<f64>, Matrix2<f64>) {
    let j_f = Matrix2::new(
        0.0,
        p.biting_rate * p.beta_mh * s.s_h / p.n_h,
        p.biting_rate * p.beta_hm * s.s_m / p.n_h,
        0.0,
    );
    let j_v = Matrix2::new(p.eta_h + p.mu_h, 0.0, 0.0, c.c_m + p.mu_m);
    (j_f, j_v)
}

/// Largest eigenvalue modulus of a real 2x2 matrix.
pub fn spectral_radius_2x2(m: &Matrix2<f64>) -> f64 {
    let half_trace = 0.5 * (m[(0, 0)] + m[(1, 1)]);
    let det = m.determinant();
    let disc = half_trace * half_trace - det;
    if disc >= 0.0 {
        let root = disc.sqrt();
        (half_trace + root).abs().max((half_trace - root).abs())
    } else {
        // complex pair: |lambda|^2 = det
        det.sqrt()
    }
}

fn check_dfe(p: &EpiParams, c: &ControlPolicy, dfe: &SystemState) -> Result<()> {
    if !dfe.is_finite() {
        return Err(Error::NonFiniteInput("disease-free state".into()));
    }
    if !dfe.is_disease_free() {
        return Err(Error::Precondition(format!(
            "state is not disease-free (I_h = {}, I_m = {})",
            dfe.i_h, dfe.i_m
        )));
    }
    let r = equilibrium_residual(dfe, p, c);
    if !(r <= residual_tolerance(p)) {
        return Err(Error::Precondition(format!("state is not an equilibrium (residual {r:e})")));
    }
    Ok(())
}

/// Spectral radius of `J_F * J_V^{-1}` at a disease-free equilibrium.
pub fn compute_r0_ngm(p: &EpiParams, c: &ControlPolicy, dfe: &SystemState) -> Result<f64> {
    check_dfe(p, c, dfe)?;
    let (j_f, j_v) = transmission_jacobians(p, c, dfe);
    let inv = j_v
        .try_inverse()
        .ok_or_else(|| Error::SingularSystem("transition Jacobian".into()))?;
    Ok(spectral_radius_2x2(&(j_f * inv)))
}

/// Host-to-vector and vector-to-host reproduction numbers; `R0^2 = r_hm * r_mh`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct R0Decomposition {
    pub r_hm: f64,
    pub r_mh: f64,
}

impl R0Decomposition {
    pub fn r0(&self) -> f64 {
        (self.r_hm * self.r_mh).sqrt()
    }
}

pub fn r0_decomposition(p: &EpiParams, c: &ControlPolicy, dfe: &SystemState) -> R0Decomposition {
    R0Decomposition {
        r_hm: p.biting_rate * p.beta_hm * dfe.s_m / (p.n_h * (p.eta_h + p.mu_h)),
        r_mh: p.biting_rate * p.beta_mh * dfe.s_h / (p.n_h * (c.c_m + p.mu_m)),
    }
}
