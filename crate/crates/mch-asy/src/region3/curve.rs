//! The genus-one curve `w^2 = (k^2 - a^2)(k^2 - b^2)` and Cauchy-type
//! integrals over its real cuts.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::numerics::{quad, quad_pv_interval, Quad, QuadratureSpec};

/// Boundary side of a real cut.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Upper,
    Lower,
}

impl Side {
    pub fn sign(self) -> f64 {
        match self {
            Side::Upper => 1.0,
            Side::Lower => -1.0,
        }
    }
}

/// Product of principal square roots; analytic off `[-b,-a] U [a,b]`,
/// positive on `(b, inf)` and `~ k^2` at infinity.
pub fn w(k: Complex64, a: f64, b: f64) -> Complex64 {
    (k - a).sqrt() * (k - b).sqrt() * (k + a).sqrt() * (k + b).sqrt()
}

/// Boundary value of `w` at real `x`.
pub fn w_sided(x: f64, a: f64, b: f64, side: Side) -> Complex64 {
    let m = ((x * x - a * a) * (x * x - b * b)).abs().sqrt();
    let ax = x.abs();
    if ax >= b {
        Complex64::new(m, 0.0)
    } else if ax > a {
        let s = if x > 0.0 { side.sign() } else { -side.sign() };
        Complex64::new(0.0, s * m)
    } else {
        Complex64::new(-m, 0.0)
    }
}

/// `w(k) - P'(k)` with `P'(k) = k^2 - (a^2 + b^2)/2`, written without cancellation.
pub fn w_minus_poly(wk: Complex64, k: Complex64, a: f64, b: f64) -> Complex64 {
    let pp = k * k - (a * a + b * b) / 2.0;
    let d = b * b - a * a;
    -(d * d / 4.0) / (wk + pp)
}

fn fourth_root_sided(r: f64, side: Side) -> Complex64 {
    if r >= 0.0 {
        Complex64::new(r.powf(0.25), 0.0)
    } else {
        Complex64::from_polar((-r).powf(0.25), -side.sign() * PI / 4.0)
    }
}

/// `nu(k) = [(k - a)/(k - b)]^{1/4} [(k + b)/(k + a)]^{1/4}`, `nu(inf) = 1`.
pub fn nu(k: Complex64, a: f64, b: f64) -> Complex64 {
    ((k - a) / (k - b)).powf(0.25) * ((k + b) / (k + a)).powf(0.25)
}

pub fn nu_sided(x: f64, a: f64, b: f64, side: Side) -> Complex64 {
    fourth_root_sided((x - a) / (x - b), side) * fourth_root_sided((x + b) / (x + a), side)
}

/// Where `k` sits relative to a cut `(lo, hi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Target {
    Off(Complex64),
    On(f64, Side),
}

/// `int_lo^hi g(zeta) / (sqrt((zeta - lo)(hi - zeta)) (zeta - k)) dzeta`.
///
/// Uses `zeta = lo + (hi - lo) sin^2(phi)`, which removes the endpoint
/// singularities; for `k` on the cut the boundary value is the principal
/// value plus the Plemelj term. `split` marks an interior singularity of `g`.
pub fn band_cauchy<G: Fn(f64) -> Complex64>(
    g: G,
    lo: f64,
    hi: f64,
    target: Target,
    split: Option<f64>,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    let len = hi - lo;
    let zeta = |phi: f64| {
        let s = phi.sin();
        lo + len * s * s
    };
    let phi_of = |z: f64| ((z - lo) / len).clamp(0.0, 1.0).sqrt().asin();
    match target {
        Target::Off(k) => {
            if k.im == 0.0 && k.re > lo && k.re < hi {
                return Err(Error::Branch(format!("k = {} lies on the cut ({lo}, {hi})", k.re)));
            }
            let f = |phi: f64| 2.0 * g(zeta(phi)) / (zeta(phi) - k);
            let mut cuts = vec![0.0];
            if let Some(s) = split {
                cuts.push(phi_of(s));
            }
            cuts.push(FRAC_PI_2);
            let mut total = Quad { value: Complex64::new(0.0, 0.0), error: 0.0 };
            for w in cuts.windows(2) {
                total = total + quad(f, w[0], w[1], spec)?;
            }
            Ok(total.value)
        }
        Target::On(x, side) => {
            if !(x > lo && x < hi) {
                return Err(Error::Domain(format!("{x} is not inside the cut ({lo}, {hi})")));
            }
            let phi0 = phi_of(x);
            let kernel = |phi: f64| {
                let d = phi - phi0;
                let denom = len * d.sin() * (phi + phi0).sin();
                let ratio = if d == 0.0 { 1.0 / (len * (2.0 * phi0).sin()) } else { d / denom };
                2.0 * g(zeta(phi)) * ratio
            };
            let pv = quad_pv_interval(kernel, 0.0, FRAC_PI_2, phi0, spec)?.value;
            let density = g(x) / ((x - lo) * (hi - x)).sqrt();
            Ok(pv + Complex64::new(0.0, side.sign() * PI) * density)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn sided_values_match_limits() {
        let (a, b) = (0.4, 0.9);
        for x in [-1.3, -0.7, -0.1, 0.2, 0.6, 1.1] {
            for side in [Side::Upper, Side::Lower] {
                let near = w(c(x, side.sign() * 1e-12), a, b);
                assert!((near - w_sided(x, a, b, side)).norm() < 1e-9, "w at {x}");
                let near = nu(c(x, side.sign() * 1e-12), a, b);
                assert!((near - nu_sided(x, a, b, side)).norm() < 1e-9, "nu at {x}");
            }
        }
        assert!((w(c(50.0, 3.0), a, b) / c(50.0, 3.0).powi(2) - 1.0).norm() < 1e-3);
    }

    #[test]
    fn poly_difference_is_stable() {
        let (a, b) = (0.3, 0.8);
        for k in [c(2.0, 0.5), c(1e6, 1.0), c(0.1, 0.2)] {
            let wk = w(k, a, b);
            let direct = wk - (k * k - (a * a + b * b) / 2.0);
            let stable = w_minus_poly(wk, k, a, b);
            assert!((direct - stable).norm() < 1e-12 * (1.0 + k.norm_sqr()));
        }
    }

    #[test]
    fn cauchy_boundary_values() {
        let spec = QuadratureSpec::default();
        let g = |z: f64| c(z * z + 1.0, 0.0);
        let (lo, hi) = (0.2, 1.0);
        for side in [Side::Upper, Side::Lower] {
            let on = band_cauchy(g, lo, hi, Target::On(0.5, side), None, &spec).unwrap();
            let off = band_cauchy(g, lo, hi, Target::Off(c(0.5, side.sign() * 1e-9)), None, &spec).unwrap();
            assert!((on - off).norm() < 1e-5, "{on} {off}");
        }
        let up = band_cauchy(g, lo, hi, Target::On(0.5, Side::Upper), None, &spec).unwrap();
        let dn = band_cauchy(g, lo, hi, Target::On(0.5, Side::Lower), None, &spec).unwrap();
        let rho = g(0.5) / ((0.5 - lo) * (hi - 0.5f64)).sqrt();
        assert!((up - dn - c(0.0, 2.0 * PI) * rho).norm() < 1e-13);
    }
}
