//! Host-vector dengue model (human SIR coupled to mosquito ASI) with
//! larvicide, adulticide and mechanical control, plus a leaky-vaccine
//! extension.
//!
//! - [`model`]: parameters, states, vector fields
//! - [`analysis`]: thresholds, reproduction number, equilibria
//! - [`integrator`]: adaptive and fixed-step Runge-Kutta 5(4)
//! - [`scenario`]: single runs, control sweeps, figure data
//! - [`io`]: configuration files and output formats

pub mod analysis;
mod error;
pub mod integrator;
pub mod io;
pub mod model;
pub mod scenario;

pub use error::{Error, Result, ValidationIssue, ValidationReport};
pub use model::{ControlPolicy, EpiParams, SvirState, SystemState, VaccineParams};
