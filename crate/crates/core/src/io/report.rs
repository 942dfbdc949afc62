use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::analysis::{compute_thresholds, EquilibriumReport, Refinement, ThresholdSet};
use crate::error::{Error, Result};
use crate::integrator::{StepStats, TrajectoryEvent};
use crate::scenario::{RunSummary, Scenario, SimulationOutput};

use super::table::{DataFormat, TimeSeriesTable};

/// JSON schema for [`EquilibriumReport`].
pub const EQUILIBRIUM_REPORT_SCHEMA: &str = include_str!("../../schema/equilibrium_report.schema.json");
/// JSON schema for the `summary.json` written by [`ResultBundle::write`].
pub const RESULT_SUMMARY_SCHEMA: &str = include_str!("../../schema/result_summary.schema.json");

pub fn report_schema() -> serde_json::Value {
    serde_json::from_str(EQUILIBRIUM_REPORT_SCHEMA).expect("shipped schema is valid JSON")
}

pub fn summary_schema() -> serde_json::Value {
    serde_json::from_str(RESULT_SUMMARY_SCHEMA).expect("shipped schema is valid JSON")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    Text,
}

/// Pretty-printed JSON, newline terminated.
pub fn write_json<T: Serialize + ?Sized>(value: &T, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| Error::Serialization(e.to_string()))?;
    writeln!(w).and_then(|_| w.flush()).map_err(|e| Error::io(path, e))
}

pub fn write_report<R: Serialize + fmt::Display>(report: &R, path: &Path, format: ReportFormat) -> Result<()> {
    match format {
        ReportFormat::Json => write_json(report, path),
        ReportFormat::Text => std::fs::write(path, format!("{report}\n")).map_err(|e| Error::io(path, e)),
    }
}

impl fmt::Display for EquilibriumReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let th = &self.thresholds;
        writeln!(f, "M      = {:.12}", th.m)?;
        writeln!(f, "xi     = {:.12e}", th.xi)?;
        writeln!(f, "chi    = {:.12e}", th.chi)?;
        writeln!(f, "R0     = {:.12}", th.r0)?;
        writeln!(f, "case   {}", self.trichotomy_case.label())?;
        writeln!(f, "equilibria ({}):", self.equilibria.len())?;
        for e in &self.equilibria {
            let s = &e.state;
            let status = match &e.refinement {
                Refinement::Converged { iterations } => format!("newton {iterations} it"),
                Refinement::Failed { reason } => format!("unrefined: {reason}"),
            };
            writeln!(
                f,
                "  {:<11} S_h={:.6e} I_h={:.6e} R_h={:.6e} A_m={:.6e} S_m={:.6e} I_m={:.6e} residual={:.2e} ({status})",
                format!("{:?}", e.kind),
                s.s_h,
                s.i_h,
                s.r_h,
                s.a_m,
                s.s_m,
                s.i_m,
                e.residual
            )?;
        }
        for r in &self.rejected {
            writeln!(f, "  rejected {}: {}", r.label, r.reason)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub config_hash: String,
    pub artifact_version: String,
    pub solver_stats: StepStats,
    pub events: Vec<TrajectoryEvent>,
}

/// Everything a single simulation produces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultBundle {
    pub scenario: String,
    pub summary: RunSummary,
    pub thresholds: ThresholdSet,
    pub provenance: Provenance,
    #[serde(skip)]
    pub trajectory: TimeSeriesTable,
}

impl ResultBundle {
    pub fn new(s: &Scenario, out: &SimulationOutput, summary: RunSummary, config_hash: String) -> Self {
        ResultBundle {
            scenario: s.name.clone(),
            summary,
            thresholds: compute_thresholds(&s.params, &s.controls),
            provenance: Provenance {
                config_hash,
                artifact_version: env!("CARGO_PKG_VERSION").to_string(),
                solver_stats: out.stats(),
                events: out.events().to_vec(),
            },
            trajectory: out.to_table(),
        }
    }

    /// Writes `timeseries.<ext>` and `summary.json` into `dir`; returns both paths.
    pub fn write(&self, dir: &Path, format: DataFormat) -> Result<[std::path::PathBuf; 2]> {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let ts = dir.join(format!("timeseries.{}", format.extension()));
        self.trajectory.write(&ts, format)?;
        let summary = dir.join("summary.json");
        write_json(self, &summary)?;
        Ok([ts, summary])
    }
}

impl Default for TimeSeriesTable {
    fn default() -> Self {
        TimeSeriesTable::new(Vec::new())
    }
}

impl fmt::Display for ResultBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "scenario            {}", self.scenario)?;
        writeln!(f, "{}", self.summary)?;
        let st = &self.provenance.solver_stats;
        write!(
            f,
            "steps               {} accepted, {} rejected, {} rhs evaluations",
            st.accepted, st.rejected, st.rhs_evals
        )
    }
}
