//! Parameter and state types, vector fields, and input validation.

mod field;
mod params;
mod state;
mod validate;

pub use field::{sir_asi_field, sir_asi_jacobian, sir_asi_rhs, svir_field, svir_rhs};
pub use params::{ControlPolicy, EpiParams, VaccineParams};
pub use state::{SvirState, SystemState, SIR_ASI_LABELS, SVIR_LABELS};
pub use validate::{validate_params, ValidatedInputs};
