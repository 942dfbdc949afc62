use crate::error::{Error, Result};

use super::tableau::step;
use super::{StepStats, Trajectory};

/// Fixed-step Dormand-Prince (5th-order solution, no error control).
///
/// Emits one sample per step; step `i` ends at `t0 + i*h` so rounding does
/// not accumulate in the time axis.
pub fn integrate_fixed<const N: usize, F>(mut rhs: F, y0: [f64; N], t0: f64, t_f: f64, h: f64) -> Result<Trajectory<N>>
where
    F: FnMut(f64, &[f64; N]) -> [f64; N],
{
    if !(h.is_finite() && h > 0.0 && t_f > t0) {
        return Err(Error::Precondition(format!("need h > 0 and t_f > t0 (h = {h})")));
    }
    let span = t_f - t0;
    let n = (span / h).round() as usize;
    if n == 0 || (n as f64 * h - span).abs() > 1e-9 * span {
        return Err(Error::Precondition(format!("step {h} does not divide [{t0}, {t_f}]")));
    }
    if y0.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFiniteInput("initial state".into()));
    }

    let mut times = Vec::with_capacity(n + 1);
    let mut states = Vec::with_capacity(n + 1);
    times.push(t0);
    states.push(y0);

    let mut stats = StepStats::default();
    let mut y = y0;
    let mut t = t0;
    let mut k1 = rhs(t, &y);
    stats.rhs_evals += 1;
    for i in 1..=n {
        let s = step(&mut rhs, t, &y, &k1, h);
        stats.rhs_evals += 6;
        stats.accepted += 1;
        if s.k7.iter().chain(&s.y_new).any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteRhs { t });
        }
        y = s.y_new;
        k1 = s.k7;
        t = if i == n { t_f } else { t0 + i as f64 * h };
        times.push(t);
        states.push(y);
    }

    Ok(Trajectory {
        times,
        states,
        stats,
        events: Vec::new(),
    })
}
