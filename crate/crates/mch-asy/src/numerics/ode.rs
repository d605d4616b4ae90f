//! Dormand-Prince 5(4) integrator with step recording.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    pub h_max: f64,
    pub max_steps: usize,
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
// fifth-order weights are A[6]; difference to the embedded fourth-order weights
const E: [f64; 7] =
    [71.0 / 57600.0, 0.0, -71.0 / 16695.0, 71.0 / 1920.0, -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0];

/// Integrates `y' = f(s, y)` from `s0` to `s1` (either direction), calling
/// `on_step(s, y)` at the start point and after every accepted step.
pub fn dopri5<const N: usize, F, S>(
    f: F,
    s0: f64,
    y0: [f64; N],
    s1: f64,
    opts: &OdeOptions,
    mut on_step: S,
) -> Result<[f64; N]>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
    S: FnMut(f64, &[f64; N]),
{
    let dir = (s1 - s0).signum();
    let span = (s1 - s0).abs();
    let mut s = s0;
    let mut y = y0;
    on_step(s, &y);
    if span == 0.0 {
        return Ok(y);
    }
    let mut h = (1e-3 * span).min(opts.h_max);
    let mut k = [[0.0; N]; 7];
    k[0] = f(s, &y);
    let mut steps = 0;
    while (s1 - s) * dir > 0.0 {
        if steps >= opts.max_steps {
            return Err(Error::Convergence { estimate: num_complex::Complex64::new(s, 0.0), error: f64::INFINITY });
        }
        steps += 1;
        let last = h >= (s1 - s).abs();
        if last {
            h = (s1 - s).abs();
        }
        let hs = h * dir;
        for i in 1..7 {
            let mut yi = y;
            for (j, kj) in k.iter().enumerate().take(i) {
                let a = A[i][j];
                if a != 0.0 {
                    for n in 0..N {
                        yi[n] += hs * a * kj[n];
                    }
                }
            }
            k[i] = f(s + C[i] * hs, &yi);
        }
        let mut ynew = y;
        for n in 0..N {
            let mut acc = 0.0;
            for (j, kj) in k.iter().enumerate().take(6) {
                acc += A[6][j] * kj[n];
            }
            ynew[n] += hs * acc;
        }
        // k[6] was evaluated at the fifth-order solution (FSAL)
        let mut err = 0.0f64;
        for n in 0..N {
            let mut e = 0.0;
            for (j, kj) in k.iter().enumerate() {
                e += E[j] * kj[n];
            }
            let sc = opts.atol + opts.rtol * y[n].abs().max(ynew[n].abs());
            err = err.max((hs * e / sc).abs());
        }
        if err <= 1.0 {
            s = if last { s1 } else { s + hs };
            y = ynew;
            k[0] = k[6];
            on_step(s, &y);
        }
        let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
        h = (h * factor).min(opts.h_max);
        if h < 1e-14 * span {
            return Err(Error::Convergence { estimate: num_complex::Complex64::new(s, 0.0), error: err });
        }
    }
    Ok(y)
}
