mod common;

use dengue_core::analysis::jacobian_fd_check;
use dengue_core::model::{sir_asi_field, svir_field};
use dengue_core::scenario::{run_scenario, InitialConditions, Scenario, SimulationOutput};
use dengue_core::{ControlPolicy, EpiParams, SvirState, SystemState, VaccineParams};
use proptest::prelude::*;

fn baseline() -> (EpiParams, ControlPolicy) {
    (EpiParams::cape_verde(), ControlPolicy::NONE)
}

// The fixed cancellation bound is a few ulps of a 1e5 persons/day flux, so
// it is checked where infected counts are at early-epidemic scale. The
// flux-relative property below covers the whole simplex.
prop_compose! {
    fn human_simplex_state()(
        i_h in 0.0..2e4f64,
        susceptible_share in 0.0..=1.0f64,
        a_m in 0.0..1.44e6f64,
        s_m in 0.0..1.44e6f64,
        i_m in 0.0..5e4f64,
    ) -> SystemState {
        let n = EpiParams::cape_verde().n_h;
        let s_h = (n - i_h) * susceptible_share;
        SystemState { s_h, i_h, r_h: n - s_h - i_h, a_m, s_m, i_m }
    }
}

prop_compose! {
    fn any_human_state()(
        w in prop::array::uniform3(0.0..1.0f64),
        v_share in 0.0..1.0f64,
        mosquitoes in prop::array::uniform3(0.0..1.44e6f64),
    ) -> [f64; 7] {
        let n = EpiParams::cape_verde().n_h;
        let total = w[0] + w[1] + w[2] + 1e-12;
        let s = n * w[0] / total;
        let i = n * w[1] / total;
        [s * (1.0 - v_share), s * v_share, i, n - s - i, mosquitoes[0], mosquitoes[1], mosquitoes[2]]
    }
}

/// Largest single flux entering the human derivatives.
fn human_flux_scale(y: &[f64; 7], p: &EpiParams, v: &VaccineParams) -> f64 {
    let force = p.biting_rate * p.beta_mh * y[6] / p.n_h;
    [p.mu_h * p.n_h, force * y[0], v.sigma * force * y[1], v.psi * y[0], v.w * y[1], p.eta_h * y[2], p.mu_h * p.n_h]
        .into_iter()
        .fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn human_derivatives_cancel_on_simplex(s in human_simplex_state()) {
        let (p, c) = baseline();
        let d = sir_asi_field(&s.to_array(), &p, &c);
        let sum = d[0] + d[1] + d[2];
        prop_assert!(sum.abs() < 1e-12 * p.mu_h * p.n_h, "sum = {sum:e}");
    }

    #[test]
    fn human_derivatives_cancel_to_rounding_everywhere(
        y in any_human_state(),
        p_new in 0.0..=1.0f64, psi in 0.0..=1.0f64, sigma in 0.0..=1.0f64, w in 0.0..=1.0f64,
    ) {
        let (p, c) = baseline();
        let v = VaccineParams { p: p_new, psi, sigma, w };
        let d = svir_field(&y, &p, &c, &v);
        let sum = d[0] + d[1] + d[2] + d[3];
        let bound = 1e-12 * p.mu_h * p.n_h + 16.0 * f64::EPSILON * human_flux_scale(&y, &p, &v);
        prop_assert!(sum.abs() < bound, "sum = {sum:e}, bound = {bound:e}");
    }

    #[test]
    fn field_is_deterministic(s in human_simplex_state(), c_m in 0.0..=1.0f64) {
        let p = EpiParams::cape_verde();
        let c = ControlPolicy::new(0.2, c_m, 0.7);
        let a = sir_asi_field(&s.to_array(), &p, &c);
        let b = sir_asi_field(&s.to_array(), &p, &c);
        prop_assert_eq!(a.map(f64::to_bits), b.map(f64::to_bits));
    }
}

#[test]
fn jacobian_matches_finite_differences_at_random_states() {
    let mut rng = common::rng(7);
    for _ in 0..100 {
        let (p, c) = common::random_inputs(&mut rng);
        let s = common::random_state_in_omega(&mut rng, &p);
        let d = jacobian_fd_check(&p, &c, &s);
        assert!(d < 1e-5, "discrepancy {d:e} at {s:?}");
    }
}

fn max_relative_gap(a: &[f64], b: &[f64], scale: f64) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs() / y.abs().max(scale))
        .fold(0.0, f64::max)
}

#[test]
fn population_scaling_scales_trajectory() {
    let base = Scenario::cape_verde().with_controls(ControlPolicy::new(0.05, 0.1, 0.9));
    let lambda = 10.0;
    let mut scaled = base.clone();
    scaled.params.n_h *= lambda;
    let ic = base.initial_conditions();
    scaled.initial = Some(InitialConditions {
        s_h: lambda * ic.s_h,
        i_h: lambda * ic.i_h,
        r_h: lambda * ic.r_h,
        a_m: lambda * ic.a_m,
        s_m: lambda * ic.s_m,
        i_m: lambda * ic.i_m,
        v_h: 0.0,
    });
    let (a, _) = run_scenario(&base).unwrap();
    let (b, _) = run_scenario(&scaled).unwrap();
    assert_eq!(a.times(), b.times());
    for label in a.labels() {
        let x: Vec<f64> = a.column(label).unwrap().iter().map(|v| lambda * v).collect();
        let y = b.column(label).unwrap();
        // zero-valued samples (I_m at t = 0) compare on the absolute scale of one person
        let gap = max_relative_gap(&x, &y, 1e-3);
        assert!(gap < 1e-8, "{label}: {gap:e}");
    }
}

#[test]
fn inert_vaccine_reproduces_host_vector_run() {
    let base = Scenario::cape_verde();
    let (plain, _) = run_scenario(&base).unwrap();
    let (vacc, _) = run_scenario(&base.clone().with_vaccine(VaccineParams::INERT)).unwrap();
    let SimulationOutput::Svir(tr) = &vacc else { panic!("expected vaccination system") };
    assert!(tr.states.iter().all(|s| s[1] == 0.0));
    for label in plain.labels() {
        let gap = max_relative_gap(&vacc.column(label).unwrap(), &plain.column(label).unwrap(), 1.0);
        assert!(gap < 1e-5, "{label}: {gap:e}");
    }
    let first = SvirState::from_array(tr.states[0]).without_vaccinated();
    assert_eq!(first, SystemState::outbreak_seed(&base.params));
}
