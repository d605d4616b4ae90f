//! Jacobi theta function `Theta(s) = sum_n exp(2 pi i n s + pi i varkappa n^2)`.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaParams {
    pub varkappa: Complex64,
    pub n: usize,
}

impl ThetaParams {
    /// Picks the smallest `N` with `|nome|^{N^2} < tol`, where `nome = exp(i pi varkappa)`.
    pub fn new(varkappa: Complex64, tol: f64) -> Result<Self> {
        if !(varkappa.im > 0.0) {
            return Err(Error::DivergentTheta(varkappa.im));
        }
        let n = (-tol.ln() / (PI * varkappa.im)).sqrt().ceil() as usize + 1;
        Ok(Self { varkappa, n })
    }

    pub fn nome_modulus(&self) -> f64 {
        (-PI * self.varkappa.im).exp()
    }

    /// Bound on the discarded tail of the centred sum, `3|nome|^{N^2}/(1-|nome|)`.
    pub fn tail_bound(&self) -> f64 {
        let m = self.nome_modulus();
        3.0 * m.powi((self.n * self.n) as i32) / (1.0 - m)
    }
}

/// Evaluates `Theta(s)`.
///
/// The summation window is centred on the dominant index `-Im s / Im varkappa`
/// and widened by `params.n` on each side, so the truncation error stays
/// relative to the largest term when `Im s` is large.
pub fn jacobi_theta(s: Complex64, params: &ThetaParams) -> Result<Complex64> {
    let kappa = params.varkappa;
    if !(kappa.im > 0.0) {
        return Err(Error::DivergentTheta(kappa.im));
    }
    let center = (-s.im / kappa.im).round() as i64;
    let half = params.n as i64 + 1;
    let lo = center.min(0) - half;
    let hi = center.max(0) + half;
    let i_pi = Complex64::new(0.0, PI);
    let mut sum = Complex64::new(0.0, 0.0);
    for n in lo..=hi {
        let nf = n as f64;
        sum += (i_pi * (2.0 * nf * s + kappa * nf * nf)).exp();
    }
    Ok(sum)
}

/// `d Theta / d s`.
pub fn jacobi_theta_prime(s: Complex64, params: &ThetaParams) -> Result<Complex64> {
    let kappa = params.varkappa;
    if !(kappa.im > 0.0) {
        return Err(Error::DivergentTheta(kappa.im));
    }
    let center = (-s.im / kappa.im).round() as i64;
    let half = params.n as i64 + 1;
    let lo = center.min(0) - half;
    let hi = center.max(0) + half;
    let i_pi = Complex64::new(0.0, PI);
    let mut sum = Complex64::new(0.0, 0.0);
    for n in lo..=hi {
        let nf = n as f64;
        sum += 2.0 * i_pi * nf * (i_pi * (2.0 * nf * s + kappa * nf * nf)).exp();
    }
    Ok(sum)
}
