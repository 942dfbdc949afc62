use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::{write_json, DataFormat};
use crate::model::VaccineParams;

use super::run::{run_scenario, Scenario};
use super::sweep::{run_sweep, SweepAxis, SweepPoint, SweepSpec};

const UNIT_GRID: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

/// One reproducible figure: either the uncontrolled run or a sweep over the base scenario.
#[derive(Debug, Clone)]
pub struct FigureSpec {
    pub id: &'static str,
    pub title: &'static str,
    pub base: Scenario,
    pub sweep: Option<(SweepAxis, Vec<f64>)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub id: String,
    pub title: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axis: Option<SweepAxis>,
    pub levels: Vec<f64>,
    pub files: Vec<String>,
    pub points: Vec<SweepPoint>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub format: DataFormat,
    pub entries: Vec<ManifestEntry>,
}

impl Manifest {
    pub fn entry(&self, id: &str) -> Option<&ManifestEntry> {
        self.entries.iter().find(|e| e.id == id)
    }
}

/// The seven standard control and vaccination experiments on the Cape Verde baseline.
pub fn figure_specs() -> Vec<FigureSpec> {
    let base = Scenario::cape_verde();
    let efficacy = base.clone().with_vaccine(VaccineParams { p: 0.8, psi: 0.8, sigma: 0.0, w: 1.0 });
    let coverage = base.clone().with_vaccine(VaccineParams { p: 0.0, psi: 0.0, sigma: 0.15, w: 0.85 });
    vec![
        FigureSpec {
            id: "no_control",
            title: "Infected humans and mosquitoes without control",
            base: base.clone().named("no_control"),
            sweep: None,
        },
        FigureSpec {
            id: "adulticide",
            title: "Infected humans under adulticide c_m",
            base: base.clone().named("adulticide"),
            sweep: Some((SweepAxis::Adulticide, UNIT_GRID.to_vec())),
        },
        FigureSpec {
            id: "larvicide",
            title: "Infected humans under larvicide c_A",
            base: base.clone().named("larvicide"),
            sweep: Some((SweepAxis::Larvicide, UNIT_GRID.to_vec())),
        },
        FigureSpec {
            id: "mechanical",
            title: "Infected humans under mechanical control alpha",
            base: base.clone().named("mechanical"),
            sweep: Some((SweepAxis::Mechanical, vec![0.01, 0.25, 0.5, 0.75, 1.0])),
        },
        FigureSpec {
            id: "combined",
            title: "Infected humans under combined control c_A = c_m = 1 - alpha",
            base: base.named("combined"),
            sweep: Some((SweepAxis::Combined, vec![0.0, 0.01, 0.05, 0.1, 0.15])),
        },
        FigureSpec {
            id: "vaccine_efficacy",
            title: "Infected humans for vaccine efficacy sigma = 1 - w (p = 0.8, psi = 0.8)",
            base: efficacy.named("vaccine_efficacy"),
            sweep: Some((SweepAxis::VaccineEfficacy, UNIT_GRID.to_vec())),
        },
        FigureSpec {
            id: "vaccine_coverage",
            title: "Infected humans for vaccination rate psi (p = 0, w = 0.85, sigma = 0.15)",
            base: coverage.named("vaccine_coverage"),
            sweep: Some((SweepAxis::VaccineCoverage, UNIT_GRID.to_vec())),
        },
    ]
}

/// Runs every entry of [`figure_specs`], writes one data file per figure
/// (two for the uncontrolled run) and `manifest.json` into `out_dir`.
pub fn figure_suite(out_dir: &Path, format: DataFormat) -> Result<Manifest> {
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let ext = format.extension();
    let mut entries = Vec::new();
    for fig in figure_specs() {
        let entry = match &fig.sweep {
            None => {
                let (out, summary) = run_scenario(&fig.base)?;
                let table = out.to_table();
                let humans = format!("{}_humans.{ext}", fig.id);
                let mosquitoes = format!("{}_mosquitoes.{ext}", fig.id);
                table.select(&["S_h", "I_h", "R_h"])?.write(&out_dir.join(&humans), format)?;
                table.select(&["A_m", "S_m", "I_m"])?.write(&out_dir.join(&mosquitoes), format)?;
                ManifestEntry {
                    id: fig.id.into(),
                    title: fig.title.into(),
                    axis: None,
                    levels: Vec::new(),
                    files: vec![humans, mosquitoes],
                    points: vec![SweepPoint { level: 0.0, summary: Some(summary), error: None }],
                }
            }
            Some((axis, values)) => {
                let result = run_sweep(&SweepSpec { base: fig.base.clone(), axis: *axis, values: values.clone() })?;
                let file = format!("{}.{ext}", fig.id);
                result.overlay.write(&out_dir.join(&file), format)?;
                ManifestEntry {
                    id: fig.id.into(),
                    title: fig.title.into(),
                    axis: Some(*axis),
                    levels: values.clone(),
                    files: vec![file],
                    points: result.points,
                }
            }
        };
        entries.push(entry);
    }
    let manifest = Manifest { format, entries };
    write_json(&manifest, &out_dir.join("manifest.json"))?;
    Ok(manifest)
}
