//! Band endpoints and period integrals.

use num_complex::Complex64;

use super::ShockParams;
use crate::error::{Error, Result};
use crate::numerics::{find_root, quad_band, QuadratureSpec};

/// `int_a^b sqrt((zeta^2 - a^2)(b^2 - zeta^2)) dzeta`; zero for a degenerate band.
pub fn band_integral(a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    if a >= b {
        return Ok(0.0);
    }
    let q = quad_band(|z| Complex64::new((z - a) * (b - z) * ((z + a) * (z + b)).sqrt(), 0.0), a, b, spec)?;
    Ok(q.value.re)
}

/// Right-hand side of the band equation.
pub fn band_rhs(params: &ShockParams) -> f64 {
    let (p, q, d) = (params.p, params.q, 2.0 - params.xi);
    -2.0 * 3f64.sqrt() * p.powf(1.5) * d.ln() / (3.0 * q.powf(1.5) * d.powf(1.5) * params.t)
}

/// Solves `a^2 + b^2 = 2p/(3q)` together with the band equation.
pub fn solve_band(params: &ShockParams, spec: &QuadratureSpec) -> Result<(f64, f64)> {
    let sum = 2.0 * params.p / (3.0 * params.q);
    let a_max = (sum / 2.0).sqrt();
    let b_of = |a: f64| (sum - a * a).max(0.0).sqrt();
    let rhs = band_rhs(params);
    let top = band_integral(0.0, b_of(0.0), spec)?;
    if !(rhs > 0.0 && rhs < top) {
        return Err(Error::Window(format!("band equation right-hand side {rhs} outside (0, {top})")));
    }
    let mut prev = top;
    for i in 1..8 {
        let a = a_max * i as f64 / 8.0;
        let v = band_integral(a, b_of(a), spec)?;
        if !(v < prev) {
            return Err(Error::Convergence { estimate: Complex64::new(v, 0.0), error: prev });
        }
        prev = v;
    }
    let resid = |a: f64| band_integral(a, b_of(a), spec).unwrap_or(f64::NAN) - rhs;
    let a = find_root(resid, 0.0, a_max, 1e-17)?;
    let r = resid(a);
    if !(r.abs() < 1e-12) {
        return Err(Error::Convergence { estimate: Complex64::new(a, 0.0), error: r.abs() });
    }
    Ok((a, b_of(a)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Periods {
    /// `int_a^b dzeta / sqrt((zeta^2 - a^2)(b^2 - zeta^2))`.
    pub k1: f64,
    /// `int_{-a}^a dzeta / sqrt((a^2 - zeta^2)(b^2 - zeta^2))`.
    pub k2: f64,
    pub b1: Complex64,
    pub a1: Complex64,
    pub varkappa: Complex64,
}

pub fn periods(a: f64, b: f64, q: f64, spec: &QuadratureSpec) -> Result<Periods> {
    if !(0.0 < a && a < b) {
        return Err(Error::Domain(format!("periods need 0 < a < b, got a = {a}, b = {b}")));
    }
    let k1 = quad_band(|z| Complex64::new(1.0 / ((z + a) * (z + b)).sqrt(), 0.0), a, b, spec)?.value.re;
    let k2 = quad_band(|z| Complex64::new(1.0 / (b * b - z * z).sqrt(), 0.0), -a, a, spec)?.value.re;
    let inner = quad_band(|z| Complex64::new((a * a - z * z) * (b * b - z * z).sqrt(), 0.0), -a, a, spec)?.value.re;
    let b1 = Complex64::new(6.0 * q * inner, 0.0);
    let a1 = Complex64::new(0.0, 6.0 * q * band_integral(a, b, spec)?);
    let varkappa = Complex64::new(0.0, k2 / k1);
    Ok(Periods { k1, k2, b1, a1, varkappa })
}
