use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::TimeSeriesTable;
use crate::model::ControlPolicy;

use super::run::{run_scenario, RunSummary, Scenario, SimulationOutput};

/// The quantity varied across a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SweepAxis {
    /// Adulticide rate `c_m`.
    #[serde(rename = "c_m")]
    Adulticide,
    /// Larvicide rate `c_A`.
    #[serde(rename = "c_A")]
    Larvicide,
    /// Remaining breeding capacity `alpha`.
    #[serde(rename = "alpha")]
    Mechanical,
    /// `c_A = c_m = 1 - alpha = level`.
    #[serde(rename = "combined")]
    Combined,
    /// Vaccine efficacy: `sigma = level`, `w = 1 - level`.
    #[serde(rename = "sigma_w_linked")]
    VaccineEfficacy,
    /// Vaccination rate of susceptibles `psi`.
    #[serde(rename = "psi")]
    VaccineCoverage,
}

impl SweepAxis {
    pub const ALL: [SweepAxis; 6] = [
        SweepAxis::Adulticide,
        SweepAxis::Larvicide,
        SweepAxis::Mechanical,
        SweepAxis::Combined,
        SweepAxis::VaccineEfficacy,
        SweepAxis::VaccineCoverage,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SweepAxis::Adulticide => "c_m",
            SweepAxis::Larvicide => "c_A",
            SweepAxis::Mechanical => "alpha",
            SweepAxis::Combined => "combined",
            SweepAxis::VaccineEfficacy => "sigma_w_linked",
            SweepAxis::VaccineCoverage => "psi",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|a| a.name() == name)
    }

    pub fn needs_vaccine(&self) -> bool {
        matches!(self, SweepAxis::VaccineEfficacy | SweepAxis::VaccineCoverage)
    }

    /// The base scenario with this axis set to `level`.
    pub fn apply(&self, base: &Scenario, level: f64) -> Result<Scenario> {
        let mut s = base.clone();
        s.name = format!("{}[{}={}]", base.name, self.name(), level);
        match self {
            SweepAxis::Adulticide => s.controls.c_m = level,
            SweepAxis::Larvicide => s.controls.c_a = level,
            SweepAxis::Mechanical => s.controls.alpha = level,
            SweepAxis::Combined => s.controls = ControlPolicy::combined(level),
            SweepAxis::VaccineEfficacy | SweepAxis::VaccineCoverage => {
                let v = s.vaccine.as_mut().ok_or_else(|| {
                    Error::Precondition(format!("sweep over {} needs a vaccine in the base scenario", self.name()))
                })?;
                if *self == SweepAxis::VaccineEfficacy {
                    v.sigma = level;
                    v.w = 1.0 - level;
                } else {
                    v.psi = level;
                }
            }
        }
        Ok(s)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepSpec {
    pub base: Scenario,
    pub axis: SweepAxis,
    pub values: Vec<f64>,
}

/// Outcome of one level. Exactly one of `summary` and `error` is set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub level: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<RunSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub axis: SweepAxis,
    pub points: Vec<SweepPoint>,
    /// `I_h[axis=level]` and `I_m[axis=level]` columns for each successful level.
    pub overlay: TimeSeriesTable,
}

impl SweepResult {
    pub fn summaries(&self) -> impl Iterator<Item = (f64, &RunSummary)> {
        self.points.iter().filter_map(|p| p.summary.as_ref().map(|s| (p.level, s)))
    }

    pub fn failures(&self) -> impl Iterator<Item = &SweepPoint> {
        self.points.iter().filter(|p| p.error.is_some())
    }
}

/// Runs every level of the sweep in parallel. A failing level is recorded
/// in its [`SweepPoint`] and does not stop the others.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    if spec.values.is_empty() {
        return Err(Error::Precondition("sweep has no values".into()));
    }
    if spec.values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFiniteInput(format!("{} sweep values", spec.axis.name())));
    }
    if spec.axis.needs_vaccine() && spec.base.vaccine.is_none() {
        return Err(Error::Precondition(format!(
            "sweep over {} needs a vaccine in the base scenario",
            spec.axis.name()
        )));
    }

    let runs: Vec<(f64, Result<(SimulationOutput, RunSummary)>)> = spec
        .values
        .par_iter()
        .map(|&level| (level, spec.axis.apply(&spec.base, level).and_then(|s| run_scenario(&s))))
        .collect();

    let mut points = Vec::with_capacity(runs.len());
    let mut overlay: Option<TimeSeriesTable> = None;
    for (level, run) in runs {
        match run {
            Ok((out, summary)) => {
                let table = overlay.get_or_insert_with(|| TimeSeriesTable::new(out.times().to_vec()));
                for label in ["I_h", "I_m"] {
                    let column = out.column(label).expect("infected column");
                    table.push_column(format!("{label}[{}={level}]", spec.axis.name()), column)?;
                }
                points.push(SweepPoint { level, summary: Some(summary), error: None });
            }
            Err(e) => points.push(SweepPoint { level, summary: None, error: Some(e.to_string()) }),
        }
    }
    Ok(SweepResult {
        axis: spec.axis,
        points,
        overlay: overlay.unwrap_or_else(|| TimeSeriesTable::new(Vec::new())),
    })
}
