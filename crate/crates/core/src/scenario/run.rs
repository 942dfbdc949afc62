use std::fmt;

use serde::{Deserialize, Serialize};

use crate::analysis::compute_thresholds;
use crate::error::{Error, Result};
use crate::integrator::{integrate, AbsTol, IntegratorConfig, StepStats, Trajectory, TrajectoryEvent};
use crate::io::TimeSeriesTable;
use crate::model::{
    sir_asi_field, svir_field, validate_params, ControlPolicy, EpiParams, SvirState, SystemState, VaccineParams,
    SIR_ASI_LABELS, SVIR_LABELS,
};

/// Explicit initial state. `V_h` is ignored by the host-vector system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialConditions {
    #[serde(rename = "S_h")]
    pub s_h: f64,
    #[serde(rename = "I_h")]
    pub i_h: f64,
    #[serde(rename = "R_h")]
    pub r_h: f64,
    #[serde(rename = "A_m")]
    pub a_m: f64,
    #[serde(rename = "S_m")]
    pub s_m: f64,
    #[serde(rename = "I_m")]
    pub i_m: f64,
    #[serde(rename = "V_h", default)]
    pub v_h: f64,
}

impl InitialConditions {
    pub fn outbreak_seed(p: &EpiParams) -> Self {
        Self::from(SystemState::outbreak_seed(p))
    }

    pub fn sir_asi(&self) -> SystemState {
        SystemState {
            s_h: self.s_h,
            i_h: self.i_h,
            r_h: self.r_h,
            a_m: self.a_m,
            s_m: self.s_m,
            i_m: self.i_m,
        }
    }

    pub fn svir(&self) -> SvirState {
        SvirState {
            v_h: self.v_h,
            ..SvirState::from_sir_asi(&self.sir_asi())
        }
    }
}

impl From<SystemState> for InitialConditions {
    fn from(s: SystemState) -> Self {
        InitialConditions {
            s_h: s.s_h,
            i_h: s.i_h,
            r_h: s.r_h,
            a_m: s.a_m,
            s_m: s.s_m,
            i_m: s.i_m,
            v_h: 0.0,
        }
    }
}

/// Solver settings as written in a configuration file.
///
/// Without an explicit `atol`, human compartments get `1e-8 * N_h` and
/// mosquito compartments `1e-8 * m * N_h`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IntegratorSettings {
    pub rtol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub atol: Option<f64>,
    pub h_init: f64,
    pub h_min: f64,
    pub h_max: f64,
    pub max_steps: usize,
    pub dense_output_dt: f64,
}

impl Default for IntegratorSettings {
    fn default() -> Self {
        let d = IntegratorConfig::default();
        IntegratorSettings {
            rtol: d.rtol,
            atol: None,
            h_init: d.h_init,
            h_min: d.h_min,
            h_max: d.h_max,
            max_steps: d.max_steps,
            dense_output_dt: d.dense_output_dt,
        }
    }
}

impl IntegratorSettings {
    /// Per-component absolute tolerances for a state with `dim` components
    /// (6 or 7; humans first, then three mosquito compartments).
    pub fn atol_for(&self, p: &EpiParams, dim: usize) -> Vec<f64> {
        match self.atol {
            Some(a) => vec![a; dim],
            None => {
                let humans = 1e-8 * p.n_h;
                let mosquitoes = 1e-8 * p.m * p.n_h;
                (0..dim).map(|i| if i + 3 < dim { humans } else { mosquitoes }).collect()
            }
        }
    }

    pub fn to_config(&self, p: &EpiParams, dim: usize) -> IntegratorConfig {
        IntegratorConfig {
            rtol: self.rtol,
            atol: AbsTol::PerComponent(self.atol_for(p, dim)),
            h_init: self.h_init,
            h_min: self.h_min,
            h_max: self.h_max,
            max_steps: self.max_steps,
            dense_output_dt: self.dense_output_dt,
            nonnegative: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub name: String,
    pub params: EpiParams,
    pub controls: ControlPolicy,
    pub vaccine: Option<VaccineParams>,
    /// `None` selects the outbreak seed derived from `params` (ten infected
    /// humans, larvae at `k*N_h`, adults at `m*N_h`).
    pub initial: Option<InitialConditions>,
    pub t0: f64,
    pub t_f: f64,
    pub integrator: IntegratorSettings,
}

impl Scenario {
    /// Cape Verde parameters, no control, one year.
    pub fn cape_verde() -> Self {
        Scenario {
            name: "baseline".into(),
            params: EpiParams::cape_verde(),
            controls: ControlPolicy::NONE,
            vaccine: None,
            initial: None,
            t0: 0.0,
            t_f: 365.0,
            integrator: IntegratorSettings::default(),
        }
    }

    pub fn with_controls(mut self, controls: ControlPolicy) -> Self {
        self.controls = controls;
        self
    }

    pub fn with_vaccine(mut self, vaccine: VaccineParams) -> Self {
        self.vaccine = Some(vaccine);
        self
    }

    pub fn with_horizon(mut self, t_f: f64) -> Self {
        self.t_f = t_f;
        self
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn initial_conditions(&self) -> InitialConditions {
        self.initial
            .unwrap_or_else(|| InitialConditions::outbreak_seed(&self.params))
    }

    pub fn uses_outbreak_seed(&self) -> bool {
        self.initial.is_none()
    }

    pub fn dim(&self) -> usize {
        if self.vaccine.is_some() {
            SvirState::DIM
        } else {
            SystemState::DIM
        }
    }

    pub fn integrator_config(&self) -> IntegratorConfig {
        self.integrator.to_config(&self.params, self.dim())
    }

    pub fn validate(&self) -> Result<()> {
        validate_params(&self.params, &self.controls, self.vaccine.as_ref())?;
        if !(self.t0.is_finite() && self.t_f.is_finite() && self.t_f > self.t0) {
            return Err(Error::Precondition(format!("need t_f > t0, got [{}, {}]", self.t0, self.t_f)));
        }
        let ic = self.initial_conditions();
        let values = [ic.s_h, ic.i_h, ic.r_h, ic.a_m, ic.s_m, ic.i_m, ic.v_h];
        if values.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::Precondition("initial conditions must be finite and non-negative".into()));
        }
        if self.vaccine.is_none() && ic.v_h != 0.0 {
            return Err(Error::Precondition("V_h(0) set without a vaccine".into()));
        }
        self.integrator_config().validate()
    }
}

/// Sampled solution of either system.
#[derive(Debug, Clone, PartialEq)]
pub enum SimulationOutput {
    SirAsi(Trajectory<6>),
    Svir(Trajectory<7>),
}

impl SimulationOutput {
    pub fn labels(&self) -> &'static [&'static str] {
        match self {
            SimulationOutput::SirAsi(_) => &SIR_ASI_LABELS,
            SimulationOutput::Svir(_) => &SVIR_LABELS,
        }
    }

    pub fn times(&self) -> &[f64] {
        match self {
            SimulationOutput::SirAsi(t) => &t.times,
            SimulationOutput::Svir(t) => &t.times,
        }
    }

    pub fn len(&self) -> usize {
        self.times().len()
    }

    pub fn is_empty(&self) -> bool {
        self.times().is_empty()
    }

    pub fn column(&self, label: &str) -> Option<Vec<f64>> {
        let idx = self.labels().iter().position(|l| *l == label)?;
        Some(match self {
            SimulationOutput::SirAsi(t) => t.component(idx),
            SimulationOutput::Svir(t) => t.component(idx),
        })
    }

    pub fn stats(&self) -> StepStats {
        match self {
            SimulationOutput::SirAsi(t) => t.stats,
            SimulationOutput::Svir(t) => t.stats,
        }
    }

    pub fn events(&self) -> &[TrajectoryEvent] {
        match self {
            SimulationOutput::SirAsi(t) => &t.events,
            SimulationOutput::Svir(t) => &t.events,
        }
    }

    /// Sum of the human compartments at every sample.
    pub fn human_totals(&self) -> Vec<f64> {
        match self {
            SimulationOutput::SirAsi(t) => t.states.iter().map(|s| s[0] + s[1] + s[2]).collect(),
            SimulationOutput::Svir(t) => t.states.iter().map(|s| s[0] + s[1] + s[2] + s[3]).collect(),
        }
    }

    /// Each sample with the vaccinated (if any) folded into the human total,
    /// as a host-vector state for region checks.
    fn host_vector_view(&self) -> Vec<SystemState> {
        match self {
            SimulationOutput::SirAsi(t) => t.states.iter().map(|s| SystemState::from_array(*s)).collect(),
            SimulationOutput::Svir(t) => t
                .states
                .iter()
                .map(|s| SystemState {
                    s_h: s[0] + s[1],
                    ..SvirState::from_array(*s).without_vaccinated()
                })
                .collect(),
        }
    }

    pub fn to_table(&self) -> TimeSeriesTable {
        match self {
            SimulationOutput::SirAsi(t) => TimeSeriesTable::from_trajectory(t, &SIR_ASI_LABELS),
            SimulationOutput::Svir(t) => TimeSeriesTable::from_trajectory(t, &SVIR_LABELS),
        }
    }

    fn push_event(&mut self, e: TrajectoryEvent) {
        match self {
            SimulationOutput::SirAsi(t) => t.events.push(e),
            SimulationOutput::Svir(t) => t.events.push(e),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    #[serde(rename = "peak_I_h")]
    pub peak_i_h: f64,
    #[serde(rename = "t_peak_I_h")]
    pub t_peak_i_h: f64,
    #[serde(rename = "peak_I_m")]
    pub peak_i_m: f64,
    #[serde(rename = "t_peak_I_m")]
    pub t_peak_i_m: f64,
    #[serde(rename = "final_R_h")]
    pub final_r_h: f64,
    /// `R_h(t_f) + I_h(t_f)`.
    pub total_infected_proxy: f64,
    /// Not defined for the vaccination system.
    #[serde(rename = "R0")]
    pub r0: Option<f64>,
    #[serde(rename = "M")]
    pub m: f64,
}

impl fmt::Display for RunSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "peak I_h            {:.3} at t = {:.2} d", self.peak_i_h, self.t_peak_i_h)?;
        writeln!(f, "peak I_m            {:.3} at t = {:.2} d", self.peak_i_m, self.t_peak_i_m)?;
        writeln!(f, "final R_h           {:.3}", self.final_r_h)?;
        writeln!(f, "total infected      {:.3}", self.total_infected_proxy)?;
        match self.r0 {
            Some(r0) => writeln!(f, "R0                  {r0:.6}")?,
            None => writeln!(f, "R0                  n/a")?,
        }
        write!(f, "M                   {:.6}", self.m)
    }
}

/// Maximum of a uniformly sampled series with 3-point parabolic refinement.
fn refined_peak(times: &[f64], values: &[f64]) -> (f64, f64) {
    let (j, &v) = values
        .iter()
        .enumerate()
        .fold((0, &f64::NEG_INFINITY), |acc, (i, v)| if *v > *acc.1 { (i, v) } else { acc });
    if j == 0 || j + 1 >= values.len() {
        return (times[j], v);
    }
    let (y0, y1, y2) = (values[j - 1], values[j], values[j + 1]);
    let curvature = y0 - 2.0 * y1 + y2;
    // the right neighbour may sit on a shortened last interval
    let dt_left = times[j] - times[j - 1];
    let dt_right = times[j + 1] - times[j];
    if curvature >= 0.0 || (dt_left - dt_right).abs() > 1e-9 * dt_left {
        return (times[j], v);
    }
    let delta = 0.5 * (y0 - y2) / curvature;
    (times[j] + delta * dt_left, y1 - 0.25 * (y0 - y2) * delta)
}

pub fn summarize(s: &Scenario, out: &SimulationOutput) -> RunSummary {
    let times = out.times();
    let i_h = out.column("I_h").expect("I_h column");
    let i_m = out.column("I_m").expect("I_m column");
    let r_h = out.column("R_h").expect("R_h column");
    let (t_peak_i_h, peak_i_h) = refined_peak(times, &i_h);
    let (t_peak_i_m, peak_i_m) = refined_peak(times, &i_m);
    let th = compute_thresholds(&s.params, &s.controls);
    let last = times.len() - 1;
    RunSummary {
        peak_i_h,
        t_peak_i_h,
        peak_i_m,
        t_peak_i_m,
        final_r_h: r_h[last],
        total_infected_proxy: r_h[last] + i_h[last],
        r0: s.vaccine.is_none().then_some(th.r0),
        m: th.m,
    }
}

fn simulate(s: &Scenario) -> Result<SimulationOutput> {
    s.validate()?;
    let cfg = s.integrator_config();
    let ic = s.initial_conditions();
    let (p, c) = (s.params, s.controls);
    let mut out = match s.vaccine {
        None => {
            let tr = integrate(|_, y: &[f64; 6]| sir_asi_field(y, &p, &c), ic.sir_asi().to_array(), s.t0, s.t_f, &cfg)?;
            SimulationOutput::SirAsi(tr)
        }
        Some(v) => {
            let tr = integrate(|_, y: &[f64; 7]| svir_field(y, &p, &c, &v), ic.svir().to_array(), s.t0, s.t_f, &cfg)?;
            SimulationOutput::Svir(tr)
        }
    };

    let slack = s.integrator.atol_for(&p, 6).into_iter().fold(0.0, f64::max);
    let exits: Vec<TrajectoryEvent> = out
        .host_vector_view()
        .iter()
        .zip(out.times())
        .flat_map(|(state, &t)| {
            state
                .omega_violations(&p, slack)
                .into_iter()
                .map(move |(constraint, excess)| TrajectoryEvent::OmegaExit { t, constraint, excess })
        })
        .collect();
    for e in exits {
        out.push_event(e);
    }
    Ok(out)
}

/// Integrates the scenario (vaccination system when a vaccine is set) and
/// summarizes the daily samples.
pub fn run_scenario(s: &Scenario) -> Result<(SimulationOutput, RunSummary)> {
    let out = simulate(s).map_err(|e| Error::Scenario {
        name: s.name.clone(),
        source: Box::new(e),
    })?;
    let summary = summarize(s, &out);
    Ok((out, summary))
}
