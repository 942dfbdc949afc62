use crate::error::{Error, Result};

use super::tableau::{step, Dense};
use super::{sample_grid, IntegratorConfig, StepStats, Trajectory, TrajectoryEvent};

const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 5.0;
// PI controller exponents (Gustafsson); the integral part is 1/5 - 0.75*BETA.
const BETA: f64 = 0.04;
const EXPO: f64 = 0.2 - BETA * 0.75;

fn finite<const N: usize>(v: &[f64; N]) -> bool {
    v.iter().all(|x| x.is_finite())
}

/// Integrates `y' = rhs(t, y)` from `t0` to `t_f` with an adaptive
/// Dormand-Prince 5(4) pair.
///
/// Each accepted step satisfies `rms(err_i / (atol_i + rtol*max(|y_i|, |y_new_i|))) <= 1`.
/// Samples are emitted every `dense_output_dt` days (plus `t_f`) from the
/// pair's 4th-order continuous extension.
///
/// With `nonnegative` set, a step that leaves any component below `-atol` is
/// rejected and retried at half the size; components in `[-atol, 0)` are set
/// to zero and reported as [`TrajectoryEvent::NegativeClamped`].
pub fn integrate<const N: usize, F>(
    mut rhs: F,
    y0: [f64; N],
    t0: f64,
    t_f: f64,
    cfg: &IntegratorConfig,
) -> Result<Trajectory<N>>
where
    F: FnMut(f64, &[f64; N]) -> [f64; N],
{
    cfg.validate()?;
    if !(t0.is_finite() && t_f.is_finite() && t_f > t0) {
        return Err(Error::Precondition(format!("need t_f > t0, got [{t0}, {t_f}]")));
    }
    if !finite(&y0) {
        return Err(Error::NonFiniteInput("initial state".into()));
    }
    let atol = cfg.atol.resolve::<N>()?;

    let grid = sample_grid(t0, t_f, cfg.dense_output_dt);
    let mut times = Vec::with_capacity(grid.len());
    let mut states = Vec::with_capacity(grid.len());
    times.push(t0);
    states.push(y0);
    let mut next_sample = 1;

    let mut stats = StepStats::default();
    let mut events = Vec::new();

    let mut t = t0;
    let mut y = y0;
    let mut k1 = rhs(t, &y);
    stats.rhs_evals += 1;
    if !finite(&k1) {
        return Err(Error::NonFiniteRhs { t });
    }

    let mut h = cfg.h_init.min(t_f - t0);
    let mut err_old: f64 = 1e-4;
    let mut last_rejected = false;

    while t < t_f {
        if stats.attempted() >= cfg.max_steps {
            return Err(Error::StepBudget { t, max_steps: cfg.max_steps });
        }
        // Stretch the step to land on t_f rather than leave a sliver.
        let last = t + 1.01 * h >= t_f;
        if last {
            h = t_f - t;
        }

        let s = step(&mut rhs, t, &y, &k1, h);
        stats.rhs_evals += 6;

        if !finite(&s.k7) || !finite(&s.y_new) {
            // Either a singular field or an over-long step; shrink until h_min decides.
            stats.rejected += 1;
            last_rejected = true;
            h *= MIN_FACTOR;
            if h < cfg.h_min {
                return Err(Error::NonFiniteRhs { t });
            }
            continue;
        }

        let mut sq = 0.0;
        for i in 0..N {
            let sc = atol[i] + cfg.rtol * y[i].abs().max(s.y_new[i].abs());
            sq += (s.err[i] / sc).powi(2);
        }
        let err = (sq / N as f64).sqrt();
        let fac11 = err.powf(EXPO);

        let below_floor = if cfg.nonnegative {
            (0..N).find(|&i| s.y_new[i] < -atol[i])
        } else {
            None
        };
        if let (true, Some(i)) = (err <= 1.0, below_floor) {
            // Accurate by the norm but one component overshot zero: retry shorter.
            stats.rejected += 1;
            last_rejected = true;
            h *= 0.5;
            if h < cfg.h_min {
                return Err(Error::Negativity {
                    t: t + 2.0 * h,
                    component: i,
                    value: s.y_new[i],
                    limit: atol[i],
                });
            }
            continue;
        }

        if err <= 1.0 {
            stats.accepted += 1;
            let t_new = if last { t_f } else { t + h };
            let dense = Dense::new(t, h, &y, &s);
            let mut y_new = s.y_new;
            let mut k_next = s.k7;

            while next_sample < grid.len() && grid[next_sample] <= t_new {
                let ts = grid[next_sample];
                let mut ys = if ts == t_new { y_new } else { dense.eval(ts) };
                if cfg.nonnegative {
                    for (v, a) in ys.iter_mut().zip(&atol) {
                        if *v < 0.0 && *v >= -a {
                            *v = 0.0;
                        }
                    }
                }
                times.push(ts);
                states.push(ys);
                next_sample += 1;
            }

            if cfg.nonnegative {
                let mut clamped = [None; N];
                for i in 0..N {
                    if y_new[i] < 0.0 {
                        events.push(TrajectoryEvent::NegativeClamped {
                            t: t_new,
                            component: i,
                            value: y_new[i],
                        });
                        clamped[i] = Some(y_new[i]);
                        y_new[i] = 0.0;
                    }
                }
                if clamped.iter().any(Option::is_some) {
                    k_next = rhs(t_new, &y_new);
                    stats.rhs_evals += 1;
                    stats.extra_evals += 1;
                    if !finite(&k_next) {
                        return Err(Error::NonFiniteRhs { t: t_new });
                    }
                    // A field that still points out of the orthant at zero is not positive.
                    if let Some(i) = (0..N).find(|&i| clamped[i].is_some() && k_next[i] < 0.0) {
                        return Err(Error::Negativity {
                            t: t_new,
                            component: i,
                            value: clamped[i].unwrap_or(0.0),
                            limit: atol[i],
                        });
                    }
                    if let Some(last_state) = states.last_mut() {
                        if times.last() == Some(&t_new) {
                            *last_state = y_new;
                        }
                    }
                }
            }

            t = t_new;
            y = y_new;
            k1 = k_next;

            let mut factor = fac11 / err_old.powf(BETA);
            factor = (factor / SAFETY).clamp(1.0 / MAX_FACTOR, 1.0 / MIN_FACTOR);
            let mut h_new = h / factor;
            err_old = err.max(1e-4);
            if last_rejected {
                h_new = h_new.min(h);
            }
            last_rejected = false;
            h = h_new.clamp(cfg.h_min, cfg.h_max);
        } else {
            stats.rejected += 1;
            last_rejected = true;
            h /= (fac11 / SAFETY).min(1.0 / MIN_FACTOR);
            if h < cfg.h_min {
                return Err(Error::StepUnderflow { t, h });
            }
        }
    }

    Ok(Trajectory {
        times,
        states,
        stats,
        events,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrator::AbsTol;

    #[test]
    fn exponential_decay() {
        let cfg = IntegratorConfig { rtol: 1e-6, atol: AbsTol::Uniform(1e-10), dense_output_dt: 0.1, ..Default::default() };
        let tr = integrate(|_, y: &[f64; 1]| [-y[0]], [1.0], 0.0, 1.0, &cfg).unwrap();
        let y1 = tr.last_state()[0];
        assert!((y1 - (-1.0f64).exp()).abs() < 10.0 * cfg.rtol);
        assert_eq!(tr.len(), 11);
        for (t, y) in tr.times.iter().zip(&tr.states) {
            assert!((y[0] - (-t).exp()).abs() < 1e-5, "dense sample at {t}");
        }
    }

    #[test]
    fn harmonic_oscillator_dense_output() {
        let cfg = IntegratorConfig { rtol: 1e-10, atol: AbsTol::Uniform(1e-12), dense_output_dt: 0.05, ..Default::default() };
        let tr = integrate(|_, y: &[f64; 2]| [y[1], -y[0]], [0.0, 1.0], 0.0, 10.0, &cfg).unwrap();
        for (t, y) in tr.times.iter().zip(&tr.states) {
            assert!((y[0] - t.sin()).abs() < 1e-8);
            assert!((y[1] - t.cos()).abs() < 1e-8);
        }
    }

    #[test]
    fn evaluation_count_matches_attempts() {
        let cfg = IntegratorConfig { rtol: 1e-9, ..Default::default() };
        let tr = integrate(|t, y: &[f64; 1]| [-50.0 * (y[0] - t.cos())], [0.0], 0.0, 3.0, &cfg).unwrap();
        assert!(tr.stats.rejected > 0 || tr.stats.accepted > 0);
        assert_eq!(tr.stats.rhs_evals, 1 + 6 * tr.stats.attempted() + tr.stats.extra_evals);
    }

    #[test]
    fn budget_exhaustion() {
        let cfg = IntegratorConfig { max_steps: 3, h_init: 1e-3, ..Default::default() };
        let err = integrate(|_, y: &[f64; 1]| [-y[0]], [1.0], 0.0, 100.0, &cfg).unwrap_err();
        assert!(matches!(err, Error::StepBudget { .. }));
    }

    #[test]
    fn blow_up_underflows() {
        // y' = y^2 escapes to infinity at t = 1.
        let cfg = IntegratorConfig { h_min: 1e-10, h_init: 1e-3, ..Default::default() };
        let err = integrate(|_, y: &[f64; 1]| [y[0] * y[0]], [1.0], 0.0, 2.0, &cfg).unwrap_err();
        assert!(matches!(err, Error::StepUnderflow { .. } | Error::NonFiniteRhs { .. }), "{err:?}");
    }

    #[test]
    fn nan_field_is_reported() {
        let cfg = IntegratorConfig::default();
        let err = integrate(|_, _: &[f64; 1]| [f64::NAN], [1.0], 0.0, 1.0, &cfg).unwrap_err();
        assert!(matches!(err, Error::NonFiniteRhs { .. }));
    }

    #[test]
    fn negativity_abort_and_clamp() {
        // y' = -1 crosses zero at t = 1.
        let cfg = IntegratorConfig { nonnegative: true, atol: AbsTol::Uniform(1e-6), ..Default::default() };
        let err = integrate(|_, _: &[f64; 1]| [-1.0], [1.0], 0.0, 2.0, &cfg).unwrap_err();
        assert!(matches!(err, Error::Negativity { component: 0, .. }));

        // Decay below rounding level of zero never trips the guard.
        let tr = integrate(|_, y: &[f64; 1]| [-y[0]], [1.0], 0.0, 50.0, &cfg).unwrap();
        assert!(tr.states.iter().all(|s| s[0] >= 0.0));
    }

    #[test]
    fn rejects_reversed_interval() {
        let cfg = IntegratorConfig::default();
        assert!(integrate(|_, y: &[f64; 1]| [-y[0]], [1.0], 1.0, 0.0, &cfg).is_err());
    }
}
