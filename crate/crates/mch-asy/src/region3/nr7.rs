//! Theta-function solution of the model problem with jumps on `[-b,-a] U [a,b]`,
//! its Laurent coefficients at infinity and the final shock-region bracket.

use nalgebra::{DMatrix, DVector, Matrix2};
use num_complex::Complex64;
use std::f64::consts::PI;

use super::curve::{nu, nu_sided};
use super::functions::{abel, Point};
use super::ShockGeometry;
use crate::error::{Error, Result};
use crate::numerics::{jacobi_theta, jacobi_theta_prime};

/// Radii of the Laurent-fit samples.
pub const FIT_RADII: [f64; 5] = [1e2, 316.227766016838, 1e3, 3162.27766016838, 1e4];
const FIT_ANGLE: f64 = 0.3;
/// Allowed disagreement between closed forms and the Laurent fit.
pub const FIT_TOL: f64 = 1e-5;

fn theta(geom: &ShockGeometry, s: Complex64) -> Result<Complex64> {
    jacobi_theta(s, &geom.theta)
}

fn ratio(geom: &ShockGeometry, num: Complex64, den: Complex64, at: Complex64) -> Result<Complex64> {
    let d = theta(geom, den)?;
    if d.norm() < 1e-280 {
        return Err(Error::Pole(at));
    }
    Ok(theta(geom, num)? / d)
}

fn nu_at(geom: &ShockGeometry, point: Point) -> Complex64 {
    match point {
        Point::Off(k) => nu(k, geom.a, geom.b),
        Point::On(x, side) => nu_sided(x, geom.a, geom.b, side),
    }
}

/// `N^(r7)(k)`.
pub fn nr7_matrix(geom: &ShockGeometry, point: Point) -> Result<Matrix2<Complex64>> {
    let at = match point {
        Point::Off(k) => k,
        Point::On(x, _) => Complex64::new(x, 0.0),
    };
    let big_a = abel(geom, point)?;
    let n = nu_at(geom, point);
    let c = (n + 1.0 / n) / 2.0;
    let sn = (n - 1.0 / n) / Complex64::new(0.0, 2.0);
    let q = geom.varkappa / 4.0;
    let p = geom.phi / PI;
    let ai = geom.a_inf;
    let e = (Complex64::new(0.0, 1.0) * geom.phi).exp();
    let n11 = c * ratio(geom, big_a - q - p, big_a - q, at)? * ratio(geom, ai - q, ai - q - p, at)?;
    let n12 = -e * sn * ratio(geom, -big_a - q - p, -big_a - q, at)? * ratio(geom, ai - q, ai - q - p, at)?;
    let n21 = sn / e * ratio(geom, big_a + q - p, big_a + q, at)? * ratio(geom, -ai + q, -ai + q - p, at)?;
    let n22 = c * ratio(geom, -big_a + q - p, -big_a + q, at)? * ratio(geom, -ai + q, -ai + q - p, at)?;
    Ok(Matrix2::new(n11, n12, n21, n22))
}

/// Jump matrix on `(a, b)` (for `x > 0`) or `(-b, -a)`.
pub fn nr7_jump(geom: &ShockGeometry, x: f64) -> Matrix2<Complex64> {
    let e = (Complex64::new(0.0, 1.0) * geom.phi).exp();
    let e = if x > 0.0 { e } else { 1.0 / e };
    Matrix2::new(Complex64::new(0.0, 0.0), e, -1.0 / e, Complex64::new(0.0, 0.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Nr7Coeffs {
    /// `(N_1)_{12}`: coefficient of `1/k` in the (1,2) entry.
    pub n1_12: Complex64,
    /// `(N_2)_{12}`: coefficient of `1/k^2` in the (1,2) entry.
    pub n2_12: Complex64,
    pub fit_n1_12: Complex64,
    pub fit_n2_12: Complex64,
}

/// `d/dA [Theta(-A + shift) / Theta(-A - varkappa/4)]` at `A(inf)`.
fn ratio_derivative(geom: &ShockGeometry, shift: Complex64) -> Result<Complex64> {
    let q = geom.varkappa / 4.0;
    let ai = geom.a_inf;
    let (top, bot) = (-ai + shift, -ai - q);
    let (t, tp) = (theta(geom, top)?, jacobi_theta_prime(top, &geom.theta)?);
    let (u, up) = (theta(geom, bot)?, jacobi_theta_prime(bot, &geom.theta)?);
    if u.norm() < 1e-280 {
        return Err(Error::Pole(Complex64::new(f64::INFINITY, 0.0)));
    }
    Ok((-tp * u + t * up) / (u * u))
}

/// Closed-form `(N_1)_{12}` and `(N_2)_{12}`.
pub fn nr7_closed_forms(geom: &ShockGeometry) -> Result<(Complex64, Complex64)> {
    let q = geom.varkappa / 4.0;
    let p = geom.phi / PI;
    let ai = geom.a_inf;
    let inf = Complex64::new(f64::INFINITY, 0.0);
    let pre =
        Complex64::new(geom.a - geom.b, 0.0) / Complex64::new(0.0, 2.0) * (Complex64::new(0.0, 1.0) * geom.phi).exp();
    let base = ratio(geom, ai - q, ai - q - p, inf)?;
    let n1 = pre * base * ratio(geom, -ai - q - p, -ai - q, inf)?;
    let n2 = pre * base * ratio_derivative(geom, -q - p)? * geom.c_a;
    Ok((n1, n2))
}

/// Laurent coefficients of the (1,2) entry from samples at large `|k|`.
pub fn laurent_fit_12(geom: &ShockGeometry) -> Result<(Complex64, Complex64)> {
    let n = FIT_RADII.len();
    let r0 = FIT_RADII[0];
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    let mut rhs = DVector::<Complex64>::zeros(n);
    for (row, &r) in FIT_RADII.iter().enumerate() {
        let k = Complex64::from_polar(r, FIT_ANGLE);
        // y = r0/k keeps the Vandermonde columns O(1)
        let y = r0 / k;
        let mut pow = y;
        for col in 0..n {
            m[(row, col)] = pow;
            pow *= y;
        }
        rhs[row] = nr7_matrix(geom, Point::Off(k))?[(0, 1)];
    }
    let c = m.lu().solve(&rhs).ok_or_else(|| Error::Singular("Laurent fit matrix".into()))?;
    Ok((c[0] * r0, c[1] * r0 * r0))
}

/// Closed forms, gated against the Laurent fit.
pub fn nr7_coeffs(geom: &ShockGeometry) -> Result<Nr7Coeffs> {
    let (n1, n2) = nr7_closed_forms(geom)?;
    let (f1, f2) = laurent_fit_12(geom)?;
    let err = (n1 - f1).norm().max((n2 - f2).norm());
    if !(err < FIT_TOL) {
        return Err(Error::Convention(format!(
            "closed-form coefficients ({n1}, {n2}) disagree with the Laurent fit ({f1}, {f2})"
        )));
    }
    Ok(Nr7Coeffs { n1_12: n1, n2_12: n2, fit_n1_12: f1, fit_n2_12: f2 })
}

/// The two theta-ratio terms of the final formula, `(X_1, X_2)`, with `phi`
/// entering as `+phi/pi` and the prime taken in the local coordinate at infinity.
pub fn final_terms(geom: &ShockGeometry) -> Result<(Complex64, Complex64)> {
    let q = geom.varkappa / 4.0;
    let p = geom.phi / PI;
    let ai = geom.a_inf;
    let inf = Complex64::new(f64::INFINITY, 0.0);
    let base = ratio(geom, ai - q, ai - q + p, inf)?;
    let x1 = base * ratio(geom, -ai - q + p, -ai - q, inf)?;
    let x2 = base * ratio_derivative(geom, -q + p)? * geom.c_a;
    Ok((x1, x2))
}

/// `-i X_2 e^{i phi} + X_1 e^{i phi}`.
pub fn final_bracket(geom: &ShockGeometry) -> Result<Complex64> {
    let (x1, x2) = final_terms(geom)?;
    let e = (Complex64::new(0.0, 1.0) * geom.phi).exp();
    Ok((-Complex64::new(0.0, 1.0) * x2 + x1) * e)
}
