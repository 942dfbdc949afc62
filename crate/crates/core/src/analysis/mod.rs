//! Thresholds, reproduction number, and equilibrium structure.

mod equilibria;
mod jacobian_check;
mod newton;
mod r0;
mod thresholds;

pub use equilibria::{
    closed_form_candidates, equilibria_closed_form, equilibrium_residual, residual_tolerance, ClosedFormCandidates,
    Equilibrium, EquilibriumKind, EquilibriumReport, Refinement, RejectedCandidate, TrichotomyCase,
};
pub use jacobian_check::{central_difference, jacobian_fd_check, jacobian_fd_report, JacobianCheck};
pub use newton::{refine_equilibrium, refine_with, DEFAULT_MAX_ITER, DEFAULT_TOL};
pub use r0::{
    compute_r0_ngm, new_infections, r0_decomposition, spectral_radius_2x2, transitions, transmission_jacobians,
    R0Decomposition,
};
pub use thresholds::{compute_m, compute_thresholds, offspring_ratio, ThresholdSet};
