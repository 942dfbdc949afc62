use std::fmt;
use std::path::PathBuf;

use serde::Serialize;

/// A single violated parameter bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationIssue {
    pub field: String,
    pub message: String,
}

/// Aggregated result of parameter validation. Never empty when returned as an error.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn push(&mut self, field: impl Into<String>, message: impl Into<String>) {
        self.issues.push(ValidationIssue {
            field: field.into(),
            message: message.into(),
        });
    }

    pub fn is_empty(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn mentions(&self, field: &str) -> bool {
        self.issues.iter().any(|i| i.field == field)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msgs: Vec<&str> = self.issues.iter().map(|i| i.message.as_str()).collect();
        write!(f, "{}", msgs.join("; "))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("non-finite input: {0}")]
    NonFiniteInput(String),

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("invalid parameters: {0}")]
    Validation(ValidationReport),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("singular linear system: {0}")]
    SingularSystem(String),

    #[error("Newton iteration did not converge after {iterations} iterations (residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("step size underflow at t = {t} (h = {h:e} below h_min)")]
    StepUnderflow { t: f64, h: f64 },

    #[error("step budget of {max_steps} exhausted at t = {t}")]
    StepBudget { t: f64, max_steps: usize },

    #[error("right-hand side returned a non-finite value at t = {t}")]
    NonFiniteRhs { t: f64 },

    #[error("component {component} left the non-negative orthant at t = {t} (value {value:e}, atol {limit:e})")]
    Negativity {
        t: f64,
        component: usize,
        value: f64,
        limit: f64,
    },

    #[error("invalid integrator configuration: {0}")]
    Config(String),

    #[error("scenario '{name}': {source}")]
    Scenario {
        name: String,
        #[source]
        source: Box<Error>,
    },

    #[error("config not found: {}", .0.display())]
    ConfigNotFound(PathBuf),

    #[error("config parse error in {}: {message}", .path.display())]
    ConfigParse { path: PathBuf, message: String },

    #[error("unknown override key '{0}'")]
    UnknownKey(String),

    #[error("I/O error on {}: {source}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("serialization error: {0}")]
    Serialization(String),
}

impl Error {
    /// Whether the failure came from numerics rather than from the user's input.
    pub fn is_numeric(&self) -> bool {
        match self {
            Error::NonFiniteInput(_)
            | Error::DivisionByZero(_)
            | Error::SingularSystem(_)
            | Error::NonConvergence { .. }
            | Error::StepUnderflow { .. }
            | Error::StepBudget { .. }
            | Error::NonFiniteRhs { .. }
            | Error::Negativity { .. } => true,
            Error::Scenario { source, .. } => source.is_numeric(),
            _ => false,
        }
    }

    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonFiniteInput(_) => "non_finite_input",
            Error::DivisionByZero(_) => "division_by_zero",
            Error::Validation(_) => "validation",
            Error::Precondition(_) => "precondition",
            Error::SingularSystem(_) => "singular_system",
            Error::NonConvergence { .. } => "non_convergence",
            Error::StepUnderflow { .. } => "step_underflow",
            Error::StepBudget { .. } => "step_budget",
            Error::NonFiniteRhs { .. } => "non_finite_rhs",
            Error::Negativity { .. } => "negativity",
            Error::Config(_) => "integrator_config",
            Error::Scenario { source, .. } => source.kind(),
            Error::ConfigNotFound(_) => "config_not_found",
            Error::ConfigParse { .. } => "config_parse",
            Error::UnknownKey(_) => "unknown_key",
            Error::Io { .. } => "io",
            Error::Serialization(_) => "serialization",
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
