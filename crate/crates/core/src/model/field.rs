//! Right-hand sides of the host-vector and vaccination systems.
//!
//! The `*_field` functions work on raw arrays and perform no checks; the
//! integrator calls them in its inner loop. The `*_rhs` wrappers validate
//! their input first.

use crate::error::{Error, Result};

use super::params::{ControlPolicy, EpiParams, VaccineParams};
use super::state::{SvirState, SystemState};

/// Mosquito block shared by both systems. `i_h` is the infected-human count
/// seen by the mosquitoes.
#[inline]
fn vector_block(
    a_m: f64,
    s_m: f64,
    i_m: f64,
    i_h: f64,
    p: &EpiParams,
    c: &ControlPolicy,
) -> [f64; 3] {
    let capacity = c.alpha * p.k * p.n_h;
    let adult_loss = p.mu_m + c.c_m;
    let bite = p.biting_rate * p.beta_hm * i_h / p.n_h;
    [
        p.phi * (1.0 - a_m / capacity) * (s_m + i_m) - (p.eta_a + p.mu_a + c.c_a) * a_m,
        p.eta_a * a_m - (bite + adult_loss) * s_m,
        bite * s_m - adult_loss * i_m,
    ]
}

/// Derivatives of `(S_h, I_h, R_h, A_m, S_m, I_m)`.
///
/// Every flux between human compartments is computed once and enters two
/// rows with opposite signs, so the human rows sum to `mu_h*(N_h - S_h - I_h - R_h)`
/// up to rounding of the individual fluxes.
#[inline]
pub fn sir_asi_field(y: &[f64; 6], p: &EpiParams, c: &ControlPolicy) -> [f64; 6] {
    let [s_h, i_h, r_h, a_m, s_m, i_m] = *y;
    let force = p.biting_rate * p.beta_mh * i_m / p.n_h;
    let infection = force * s_h;
    let recovery = p.eta_h * i_h;
    let [da, ds, di] = vector_block(a_m, s_m, i_m, i_h, p, c);
    [
        p.mu_h * p.n_h - infection - p.mu_h * s_h,
        infection - recovery - p.mu_h * i_h,
        recovery - p.mu_h * r_h,
        da,
        ds,
        di,
    ]
}

/// Derivatives of `(S_h, V_h, I_h, R_h, A_m, S_m, I_m)`.
#[inline]
pub fn svir_field(y: &[f64; 7], p: &EpiParams, c: &ControlPolicy, v: &VaccineParams) -> [f64; 7] {
    let [s_h, v_h, i_h, r_h, a_m, s_m, i_m] = *y;
    let force = p.biting_rate * p.beta_mh * i_m / p.n_h;
    let births = p.mu_h * p.n_h;
    let infection = force * s_h;
    let breakthrough = v.sigma * force * v_h;
    let vaccination = v.psi * s_h;
    let waning = v.w * v_h;
    let recovery = p.eta_h * i_h;
    let [da, ds, di] = vector_block(a_m, s_m, i_m, i_h, p, c);
    [
        (1.0 - v.p) * births + waning - infection - vaccination - p.mu_h * s_h,
        v.p * births + vaccination - waning - breakthrough - p.mu_h * v_h,
        infection + breakthrough - recovery - p.mu_h * i_h,
        recovery - p.mu_h * r_h,
        da,
        ds,
        di,
    ]
}

/// Analytic Jacobian of [`sir_asi_field`], row `i` = d(f_i)/d(y).
pub fn sir_asi_jacobian(y: &[f64; 6], p: &EpiParams, c: &ControlPolicy) -> [[f64; 6]; 6] {
    let [s_h, i_h, _r_h, a_m, s_m, i_m] = *y;
    let a = p.human_infection_coeff();
    let b = p.vector_infection_coeff();
    let capacity = p.carrying_capacity(c);
    let d = p.mu_m + c.c_m;
    let g = p.eta_h + p.mu_h;
    let egg = p.phi * (1.0 - a_m / capacity);

    let mut j = [[0.0; 6]; 6];
    j[0][0] = -(a * i_m + p.mu_h);
    j[0][5] = -a * s_h;

    j[1][0] = a * i_m;
    j[1][1] = -g;
    j[1][5] = a * s_h;

    j[2][1] = p.eta_h;
    j[2][2] = -p.mu_h;

    j[3][3] = -p.phi * (s_m + i_m) / capacity - (p.eta_a + p.mu_a + c.c_a);
    j[3][4] = egg;
    j[3][5] = egg;

    j[4][1] = -b * s_m;
    j[4][3] = p.eta_a;
    j[4][4] = -(b * i_h + d);

    j[5][1] = b * s_m;
    j[5][4] = b * i_h;
    j[5][5] = -d;
    j
}

fn check_inputs(values: &[f64], p: &EpiParams, c: &ControlPolicy) -> Result<()> {
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFiniteInput("state".into()));
    }
    for (name, v) in p.fields() {
        if !v.is_finite() {
            return Err(Error::NonFiniteInput(name.into()));
        }
    }
    for (name, v) in [("c_A", c.c_a), ("c_m", c.c_m), ("alpha", c.alpha)] {
        if !v.is_finite() {
            return Err(Error::NonFiniteInput(name.into()));
        }
    }
    if p.carrying_capacity(c) == 0.0 {
        return Err(Error::DivisionByZero("carrying capacity alpha*k*N_h".into()));
    }
    Ok(())
}

/// Checked host-vector right-hand side.
pub fn sir_asi_rhs(state: &SystemState, p: &EpiParams, c: &ControlPolicy) -> Result<SystemState> {
    let y = state.to_array();
    check_inputs(&y, p, c)?;
    Ok(SystemState::from_array(sir_asi_field(&y, p, c)))
}

/// Checked vaccination-system right-hand side.
pub fn svir_rhs(
    state: &SvirState,
    p: &EpiParams,
    c: &ControlPolicy,
    v: &VaccineParams,
) -> Result<SvirState> {
    let y = state.to_array();
    check_inputs(&y, p, c)?;
    for (name, x) in [("p", v.p), ("psi", v.psi), ("sigma", v.sigma), ("w", v.w)] {
        if !x.is_finite() {
            return Err(Error::NonFiniteInput(name.into()));
        }
    }
    Ok(SvirState::from_array(svir_field(&y, p, c, v)))
}
