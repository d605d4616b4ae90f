//! Backward integration from the Airy boundary data for `|k| < 1`.

use super::{airy_tail, PIISolution, PiiMethod};
use crate::error::Result;
use crate::numerics::ode::{dopri5, OdeOptions};

pub(super) const MAX_STEP: f64 = 0.05;

pub(super) fn solve(k: f64, s_min: f64, s_max: f64, tol: f64) -> Result<PIISolution> {
    let (v0, vp0, q0) = airy_tail(k, s_max)?;
    let rtol = (tol * 1e-2).max(1e-14);
    let opts = OdeOptions { rtol, atol: rtol * 1e-2, h_max: MAX_STEP, max_steps: 1_000_000 };
    let mut samples = Vec::new();
    dopri5(
        |s, y: &[f64; 3]| [y[1], s * y[0] + 2.0 * y[0] * y[0] * y[0], -y[0] * y[0]],
        s_max,
        [v0, vp0, q0],
        s_min,
        &opts,
        |s, y| samples.push([s, y[0], y[1], y[2]]),
    )?;
    samples.reverse();
    Ok(PIISolution::from_samples(k, s_min, s_max, tol, PiiMethod::Ivp, &samples))
}

/// Integrates from `s_max` down to `s_stop` and returns `(s, v)` samples in
/// increasing `s`; used to seed the collocation solver.
pub(super) fn trajectory(k: f64, s_stop: f64, s_max: f64) -> Result<Vec<(f64, f64)>> {
    let (v0, vp0, _) = airy_tail(k, s_max)?;
    let opts = OdeOptions { rtol: 1e-12, atol: 1e-14, h_max: MAX_STEP, max_steps: 1_000_000 };
    let mut out = Vec::new();
    dopri5(
        |s, y: &[f64; 2]| [y[1], s * y[0] + 2.0 * y[0] * y[0] * y[0]],
        s_max,
        [v0, vp0],
        s_stop,
        &opts,
        |s, y| out.push((s, y[0])),
    )?;
    out.reverse();
    Ok(out)
}
