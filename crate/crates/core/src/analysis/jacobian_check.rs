//! Central-difference cross-check of the analytic Jacobians.

use nalgebra::Matrix2;

use crate::model::{sir_asi_field, sir_asi_jacobian, ControlPolicy, EpiParams, SystemState};

use super::r0::{new_infections, transitions, transmission_jacobians};

/// Entries below this magnitude (per day) are compared in absolute terms.
const ENTRY_FLOOR: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobianCheck {
    /// Worst discrepancy over the full 6x6 field Jacobian.
    pub field: f64,
    pub worst_entry: (usize, usize),
    /// Worst discrepancy over the 2x2 new-infection and transition Jacobians.
    pub transmission: f64,
}

impl JacobianCheck {
    pub fn max_discrepancy(&self) -> f64 {
        self.field.max(self.transmission)
    }
}

/// Step for component `x` of a state whose largest component is `norm`.
/// Zero components borrow a step from the state's overall magnitude so that
/// rounding in the other terms does not swamp the difference quotient.
fn fd_step(x: f64, norm: f64) -> f64 {
    1e-6 * x.abs().max(1e-3 * norm).max(1.0)
}

fn discrepancy(analytic: f64, numeric: f64) -> f64 {
    (analytic - numeric).abs() / analytic.abs().max(ENTRY_FLOOR)
}

/// Central differences of any map `R^N -> R^M`.
pub fn central_difference<const N: usize, const M: usize, F>(f: F, x: &[f64; N]) -> [[f64; N]; M]
where
    F: Fn(&[f64; N]) -> [f64; M],
{
    let norm = x.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let mut jac = [[0.0; N]; M];
    for j in 0..N {
        let h = fd_step(x[j], norm);
        let mut xp = *x;
        let mut xm = *x;
        xp[j] += h;
        xm[j] -= h;
        let (fp, fm) = (f(&xp), f(&xm));
        for i in 0..M {
            jac[i][j] = (fp[i] - fm[i]) / (xp[j] - xm[j]);
        }
    }
    jac
}

pub fn jacobian_fd_report(p: &EpiParams, c: &ControlPolicy, state: &SystemState) -> JacobianCheck {
    let x = state.to_array();
    let analytic = sir_asi_jacobian(&x, p, c);
    let numeric = central_difference(|y: &[f64; 6]| sir_asi_field(y, p, c), &x);
    let mut field = 0.0;
    let mut worst_entry = (0, 0);
    for i in 0..6 {
        for j in 0..6 {
            let d = discrepancy(analytic[i][j], numeric[i][j]);
            if d > field {
                field = d;
                worst_entry = (i, j);
            }
        }
    }

    let (j_f, j_v) = transmission_jacobians(p, c, state);
    let infected = [state.i_h, state.i_m];
    let with_infected = |z: &[f64; 2]| SystemState { i_h: z[0], i_m: z[1], ..*state };
    let fd_f = central_difference(|z: &[f64; 2]| new_infections(p, &with_infected(z)), &infected);
    let fd_v = central_difference(|z: &[f64; 2]| transitions(p, c, &with_infected(z)), &infected);
    let mut transmission: f64 = 0.0;
    for (an, fd) in [(j_f, fd_f), (j_v, fd_v)] {
        let fd = Matrix2::new(fd[0][0], fd[0][1], fd[1][0], fd[1][1]);
        for i in 0..2 {
            for j in 0..2 {
                transmission = transmission.max(discrepancy(an[(i, j)], fd[(i, j)]));
            }
        }
    }

    JacobianCheck {
        field,
        worst_entry,
        transmission,
    }
}

/// Largest relative discrepancy between analytic and finite-difference Jacobians.
pub fn jacobian_fd_check(p: &EpiParams, c: &ControlPolicy, state: &SystemState) -> f64 {
    jacobian_fd_report(p, c, state).max_discrepancy()
}
