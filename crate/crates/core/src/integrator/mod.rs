//! Embedded Runge-Kutta 5(4) initial-value solver with dense output, plus a
//! fixed-step mode built on the same tableau.

mod adaptive;
mod fixed;
mod tableau;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use adaptive::integrate;
pub use fixed::integrate_fixed;

/// Absolute error tolerance, either shared or one value per component.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AbsTol {
    Uniform(f64),
    PerComponent(Vec<f64>),
}

impl AbsTol {
    pub fn resolve<const N: usize>(&self) -> Result<[f64; N]> {
        let out = match self {
            AbsTol::Uniform(v) => [*v; N],
            AbsTol::PerComponent(v) => {
                if v.len() != N {
                    return Err(Error::Config(format!(
                        "atol has {} components, state has {N}",
                        v.len()
                    )));
                }
                let mut a = [0.0; N];
                a.copy_from_slice(v);
                a
            }
        };
        if out.iter().any(|a| !(a.is_finite() && *a > 0.0)) {
            return Err(Error::Config("atol must be positive".into()));
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegratorConfig {
    pub rtol: f64,
    pub atol: AbsTol,
    pub h_init: f64,
    pub h_min: f64,
    pub h_max: f64,
    /// Step budget (accepted plus rejected attempts).
    pub max_steps: usize,
    /// Spacing of emitted samples.
    pub dense_output_dt: f64,
    /// Clamp accepted components in `[-atol, 0)` to zero and abort on
    /// anything more negative.
    pub nonnegative: bool,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            rtol: 1e-8,
            atol: AbsTol::Uniform(1e-8),
            h_init: 1e-2,
            h_min: 1e-12,
            h_max: 30.0,
            max_steps: 5_000_000,
            dense_output_dt: 1.0,
            nonnegative: false,
        }
    }
}

impl IntegratorConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Config(m.to_string()));
        if !(self.rtol > 0.0 && self.rtol < 1.0) {
            return bad("rtol must lie in (0, 1)");
        }
        if !(self.h_min > 0.0 && self.h_min <= self.h_init && self.h_init <= self.h_max) {
            return bad("step bounds must satisfy 0 < h_min <= h_init <= h_max");
        }
        if self.max_steps == 0 {
            return bad("max_steps must be at least 1");
        }
        if !(self.dense_output_dt.is_finite() && self.dense_output_dt > 0.0) {
            return bad("dense_output_dt must be positive");
        }
        match &self.atol {
            AbsTol::Uniform(a) if !(a.is_finite() && *a > 0.0) => bad("atol must be positive"),
            AbsTol::PerComponent(v) if v.iter().any(|a| !(a.is_finite() && *a > 0.0)) => {
                bad("atol must be positive")
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepStats {
    pub accepted: usize,
    pub rejected: usize,
    /// Total right-hand-side evaluations, including the initial one and any
    /// re-evaluations after a clamp.
    pub rhs_evals: usize,
    /// Evaluations spent re-seeding the first stage after a clamp.
    pub extra_evals: usize,
}

impl StepStats {
    pub fn attempted(&self) -> usize {
        self.accepted + self.rejected
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TrajectoryEvent {
    /// A slightly negative component was reset to zero after an accepted step.
    NegativeClamped { t: f64, component: usize, value: f64 },
    /// A sample left the feasible region.
    OmegaExit { t: f64, constraint: String, excess: f64 },
}

/// Sampled solution of an initial-value problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory<const N: usize> {
    pub times: Vec<f64>,
    #[serde(with = "state_rows")]
    pub states: Vec<[f64; N]>,
    pub stats: StepStats,
    pub events: Vec<TrajectoryEvent>,
}

impl<const N: usize> Trajectory<N> {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last_state(&self) -> &[f64; N] {
        self.states.last().expect("trajectory has at least the initial sample")
    }

    pub fn component(&self, index: usize) -> Vec<f64> {
        self.states.iter().map(|s| s[index]).collect()
    }
}

mod state_rows {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer, const N: usize>(rows: &[[f64; N]], s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<&[f64]> = rows.iter().map(|r| r.as_slice()).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>, const N: usize>(d: D) -> Result<Vec<[f64; N]>, D::Error> {
        let v: Vec<Vec<f64>> = Vec::deserialize(d)?;
        v.into_iter()
            .map(|r| {
                <[f64; N]>::try_from(r.as_slice())
                    .map_err(|_| D::Error::custom(format!("expected {N} components, got {}", r.len())))
            })
            .collect()
    }
}

/// Sample times `t0, t0+dt, ...` ending exactly at `t_f`.
pub(crate) fn sample_grid(t0: f64, t_f: f64, dt: f64) -> Vec<f64> {
    let span = t_f - t0;
    let n = (span / dt).floor() as usize;
    let mut grid: Vec<f64> = (0..=n).map(|i| t0 + i as f64 * dt).collect();
    // drop a grid point that only differs from t_f by rounding
    while grid.len() > 1 && t_f - grid[grid.len() - 1] <= 1e-9 * dt {
        grid.pop();
    }
    grid.push(t_f);
    grid
}
