mod common;

use dengue_core::integrator::{integrate, integrate_fixed, AbsTol, IntegratorConfig, Trajectory};
use dengue_core::model::sir_asi_field;
use dengue_core::scenario::{run_scenario, IntegratorSettings, Scenario};
use dengue_core::{ControlPolicy, EpiParams, SystemState, VaccineParams};

fn baseline_run(cfg: &IntegratorConfig, c: ControlPolicy) -> Trajectory<6> {
    let p = EpiParams::cape_verde();
    let y0 = SystemState::outbreak_seed(&p).to_array();
    integrate(|_, y: &[f64; 6]| sir_asi_field(y, &p, &c), y0, 0.0, 365.0, cfg).unwrap()
}

fn scaled_config(rtol: f64) -> IntegratorConfig {
    let p = EpiParams::cape_verde();
    let mut cfg = IntegratorSettings { rtol, ..Default::default() }.to_config(&p, 6);
    // absolute tolerances shrink with rtol so tightening is not masked by atol
    let atol: Vec<f64> = IntegratorSettings::default().atol_for(&p, 6).iter().map(|a| a * rtol / 1e-8).collect();
    cfg.atol = AbsTol::PerComponent(atol);
    cfg
}

/// Largest error over all samples, each component measured against its
/// population class.
fn class_scaled_error(a: &Trajectory<6>, reference: &Trajectory<6>) -> f64 {
    let p = EpiParams::cape_verde();
    let scale = [p.n_h, p.n_h, p.n_h, p.m * p.n_h, p.m * p.n_h, p.m * p.n_h];
    a.states
        .iter()
        .zip(&reference.states)
        .flat_map(|(x, r)| (0..6).map(move |i| (x[i] - r[i]).abs() / scale[i]))
        .fold(0.0, f64::max)
}

#[test]
fn tightening_rtol_reduces_error() {
    let reference = baseline_run(&scaled_config(1e-12), ControlPolicy::NONE);
    let loose = class_scaled_error(&baseline_run(&scaled_config(1e-6), ControlPolicy::NONE), &reference);
    let tight = class_scaled_error(&baseline_run(&scaled_config(1e-8), ControlPolicy::NONE), &reference);
    assert!(loose >= 10.0 * tight, "rtol 1e-6: {loose:e}, rtol 1e-8: {tight:e}");
}

#[test]
fn adaptive_and_fixed_step_agree() {
    let p = EpiParams::cape_verde();
    let c = ControlPolicy::NONE;
    let y0 = SystemState::outbreak_seed(&p).to_array();
    let cfg = IntegratorConfig { rtol: 1e-9, ..scaled_config(1e-9) };
    let adaptive = baseline_run(&cfg, c);
    let fixed = integrate_fixed(|_, y: &[f64; 6]| sir_asi_field(y, &p, &c), y0, 0.0, 365.0, 0.05).unwrap();
    let mut worst: f64 = 0.0;
    for (t, ya) in adaptive.times.iter().zip(&adaptive.states) {
        let idx = (t / 0.05).round() as usize;
        assert!((fixed.times[idx] - t).abs() < 1e-9);
        let yf = &fixed.states[idx];
        for i in 0..6 {
            // counts below one individual are compared absolutely
            worst = worst.max((ya[i] - yf[i]).abs() / yf[i].abs().max(1.0));
        }
    }
    assert!(worst < 1e-6, "max relative discrepancy {worst:e}");
}

#[test]
fn identical_inputs_give_identical_trajectories() {
    let cfg = IntegratorSettings::default().to_config(&EpiParams::cape_verde(), 6);
    let a = baseline_run(&cfg, ControlPolicy::combined(0.05));
    let b = baseline_run(&cfg, ControlPolicy::combined(0.05));
    assert_eq!(a, b);
    assert_eq!(
        a.states.iter().flatten().map(|v| v.to_bits()).collect::<Vec<_>>(),
        b.states.iter().flatten().map(|v| v.to_bits()).collect::<Vec<_>>()
    );
}

#[test]
fn step_statistics_are_consistent() {
    let cfg = IntegratorSettings::default().to_config(&EpiParams::cape_verde(), 6);
    let tr = baseline_run(&cfg, ControlPolicy::NONE);
    let st = tr.stats;
    assert_eq!(st.attempted(), st.accepted + st.rejected);
    assert_eq!(st.rhs_evals, 1 + 6 * st.attempted() + st.extra_evals);
    assert_eq!(tr.len(), 366);
    assert_eq!(tr.times[0], 0.0);
    assert_eq!(*tr.times.last().unwrap(), 365.0);
}

fn human_drift(out: &dengue_core::scenario::SimulationOutput, n_h: f64) -> f64 {
    out.human_totals().iter().map(|t| (t - n_h).abs() / n_h).fold(0.0, f64::max)
}

#[test]
fn human_population_is_conserved_along_random_runs() {
    let mut rng = common::rng(11);
    for _ in 0..20 {
        let (p, c) = common::random_inputs(&mut rng);
        let mut s = Scenario::cape_verde().with_controls(c);
        s.params = p;
        let (out, _) = run_scenario(&s).unwrap();
        let drift = human_drift(&out, p.n_h);
        assert!(drift < 1e-8, "drift {drift:e} for {p:?} {c:?}");
        // the adult cap m*N_h is not invariant for arbitrary parameters; the sign constraints are
        let atol = s.integrator.atol_for(&p, 6);
        for (i, label) in out.labels().iter().enumerate() {
            let min = out.column(label).unwrap().into_iter().fold(f64::INFINITY, f64::min);
            assert!(min >= -atol[i], "{label} reached {min:e}");
        }
    }
}

#[test]
fn trajectories_stay_in_the_feasible_region() {
    let controls = [
        ControlPolicy::NONE,
        ControlPolicy::new(0.0, 1.0, 1.0),
        ControlPolicy::new(1.0, 0.0, 1.0),
        ControlPolicy::new(0.0, 0.0, 0.01),
        ControlPolicy::combined(0.15),
    ];
    for c in controls {
        let s = Scenario::cape_verde().with_controls(c).with_horizon(3.0 * 365.0);
        let (out, _) = run_scenario(&s).unwrap();
        assert!(out.events().is_empty(), "{c:?}: {:?}", out.events());
        let atol = s.integrator.atol_for(&s.params, 6);
        for label in out.labels() {
            let i = out.labels().iter().position(|l| l == label).unwrap();
            let min = out.column(label).unwrap().into_iter().fold(f64::INFINITY, f64::min);
            assert!(min >= -atol[i], "{label} reached {min:e}");
        }
    }
    let s = Scenario::cape_verde().with_vaccine(VaccineParams { p: 0.8, psi: 0.8, sigma: 0.25, w: 0.75 });
    let (out, _) = run_scenario(&s).unwrap();
    assert!(out.events().is_empty());
    assert!(human_drift(&out, s.params.n_h) < 1e-8);
}
