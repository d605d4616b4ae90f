//! Abel map, the `g` and `h` scalar functions and the constant `Delta_0`.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

use super::curve::{band_cauchy, w, w_minus_poly, w_sided, Side, Target};
use super::ShockGeometry;
use crate::error::{Error, Result};
use crate::numerics::{quad, quad_half, QuadratureSpec};

/// A point of the plane, or a boundary point of one of the cuts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Point {
    Off(Complex64),
    On(f64, Side),
}

impl Point {
    fn base(&self) -> Complex64 {
        match *self {
            Point::Off(k) => k,
            Point::On(x, _) => Complex64::new(x, 0.0),
        }
    }

    /// Direction of the vertical escape ray.
    fn ray_sign(&self, b: f64) -> Result<f64> {
        match *self {
            Point::On(_, side) => Ok(side.sign()),
            Point::Off(k) if k.im > 0.0 => Ok(1.0),
            Point::Off(k) if k.im < 0.0 => Ok(-1.0),
            Point::Off(k) if k.re.abs() > b => Ok(1.0),
            Point::Off(k) => Err(Error::Branch(format!("k = {k} lies on [-b, b]; pick a side"))),
        }
    }

    fn w(&self, a: f64, b: f64) -> Result<Complex64> {
        self.ray_sign(b)?;
        Ok(match *self {
            Point::Off(k) => w(k, a, b),
            Point::On(x, side) => w_sided(x, a, b, side),
        })
    }
}

/// `int_k^inf f(zeta) dzeta` along the vertical ray from `k` to `k + s i inf`.
fn ray_integral<F: Fn(Complex64) -> Complex64>(f: F, point: Point, b: f64, spec: &QuadratureSpec) -> Result<Complex64> {
    let s = point.ray_sign(b)?;
    let k = point.base();
    let dir = Complex64::new(0.0, s);
    Ok(dir * quad_half(|y| f(k + dir * y), spec)?.value)
}

/// Abel map `A(k) = A(inf) + c_A int_k^inf dzeta / w`.
pub fn abel(geom: &ShockGeometry, point: Point) -> Result<Complex64> {
    let (a, b) = (geom.a, geom.b);
    Ok(geom.a_inf + geom.c_a * ray_integral(|z| 1.0 / w(z, a, b), point, b, &geom.spec)?)
}

/// `Delta_0 = (int_b^a 1/w_+)^{-1} int_0^a i log(C_R zeta^2) / w dzeta`.
pub fn delta0(a: f64, b: f64, k1: f64, c_r: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(c_r > 0.0) {
        return Err(Error::Admissibility(format!("C_R = {c_r} must be positive")));
    }
    if !(0.0 < a && a < b) {
        return Err(Error::Domain(format!("Delta_0 needs 0 < a < b, got a = {a}, b = {b}")));
    }
    // zeta = a sin(phi)
    let integral = quad(
        |phi| {
            let s = phi.sin();
            Complex64::new((c_r * a * a * s * s).ln() / (b * b - a * a * s * s).sqrt(), 0.0)
        },
        0.0,
        FRAC_PI_2,
        spec,
    )?;
    Ok(-integral.value.re / k1)
}

/// `h(k) = w(k)/(2 pi i) [ Cauchy integrals of -Delta_0/w_+, i log(C_R zeta^2)/w, Delta_0/w_+ ]`.
pub fn h_eval(geom: &ShockGeometry, point: Point) -> Result<Complex64> {
    let (a, b, d0, c_r) = (geom.a, geom.b, geom.delta0, geom.c_r);
    let spec = &geom.spec;
    let wk = point.w(a, b)?;
    let target = |lo: f64, hi: f64| match point {
        Point::On(x, side) if x > lo && x < hi => Target::On(x, side),
        p => Target::Off(p.base()),
    };
    let i = Complex64::new(0.0, 1.0);
    let right = band_cauchy(|z| d0 / (i * ((z + a) * (z + b)).sqrt()), a, b, target(a, b), None, spec)?;
    let left = band_cauchy(|z| d0 / (i * ((a - z) * (b - z)).sqrt()), -b, -a, target(-b, -a), None, spec)?;
    let mid = band_cauchy(|z| i * (c_r * z * z).ln() / -(b * b - z * z).sqrt(), -a, a, target(-a, a), Some(0.0), spec)?;
    Ok(wk / Complex64::new(0.0, 2.0 * PI) * (left + mid + right))
}

/// `P(k) = k^3/3 - (a^2 + b^2) k / 2`, an antiderivative of the polynomial part of `w`.
pub fn poly_part(k: Complex64, a: f64, b: f64) -> Complex64 {
    k * k * k / 3.0 - (a * a + b * b) / 2.0 * k
}

/// `int_b^inf (w - P') - P(b)`, so that `int_b^k w = P(k) + C_b - int_k^inf (w - P')`.
pub fn c_b(a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    let tail = quad_half(
        |d| {
            let z = Complex64::new(b + d, 0.0);
            w_minus_poly(w(z, a, b), z, a, b)
        },
        spec,
    )?;
    Ok(tail.value.re - poly_part(Complex64::new(b, 0.0), a, b).re)
}

/// `g(k) = -3q int_b^k w + B_1/4`.
pub fn g_eval(geom: &ShockGeometry, point: Point) -> Result<Complex64> {
    let (a, b) = (geom.a, geom.b);
    let tail = ray_integral(|z| w_minus_poly(w(z, a, b), z, a, b), point, b, &geom.spec)?;
    let k = point.base();
    Ok(-3.0 * geom.q * (poly_part(k, a, b) + geom.c_b - tail) + geom.b1 / 4.0)
}
