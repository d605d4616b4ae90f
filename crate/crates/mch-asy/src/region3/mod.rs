//! Collisionless-shock asymptotics: band endpoints, period integrals, Abel
//! map, the `g`/`h` functions, the theta-function model solution and the
//! final formula for `u`.
//!
//! The final formula is assembled exactly as stated. It does not come out real
//! (and depends on `p`, `q`), so [`u_region3`] reports a reality error and
//! [`u_region3_complex`] exposes the assembled complex value for inspection.

mod band;
mod curve;
mod functions;
mod nr7;

use num_complex::Complex64;
use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};

pub use band::{band_integral, band_rhs, periods, solve_band, Periods};
pub use curve::{band_cauchy, nu, nu_sided, w, w_sided, Side, Target};
pub use functions::{abel, c_b, delta0, g_eval, h_eval, poly_part, Point};
pub use nr7::{
    final_bracket, final_terms, laurent_fit_12, nr7_closed_forms, nr7_coeffs, nr7_jump, nr7_matrix, Nr7Coeffs, FIT_TOL,
};

use crate::error::{Error, Result};
use crate::numerics::{quad_half, QuadratureSpec, ThetaParams};
use crate::phase::{classify, RegionConstants, RegionTag, SpaceTimePoint};
use crate::region1::AsymptoticValue;
use crate::scattering::{eval_r, ScatteringData};

/// Tolerance on the imaginary part of `u`.
pub const REALITY_TOL: f64 = 1e-6;
const THETA_TOL: f64 = 1e-17;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShockParams {
    pub p: f64,
    pub q: f64,
    pub xi: f64,
    pub t: f64,
    pub tau: f64,
    pub c_r: f64,
}

impl ShockParams {
    pub fn new(p: f64, q: f64, xi: f64, t: f64, c_r: f64) -> Result<Self> {
        if !(p > 0.0) || !(q > 0.0) {
            return Err(Error::Invalid(format!("p and q must be positive, got p = {p}, q = {q}")));
        }
        if !(t > 1.0) || !(xi < 2.0) {
            return Err(Error::Domain(format!("shock parameters need t > 1 and xi < 2, got xi = {xi}, t = {t}")));
        }
        if !(c_r > 0.0) {
            return Err(Error::Admissibility(format!("C_R = {c_r} must be positive")));
        }
        let tau = t * (2.0 - xi).powf(1.5) * (q / (48.0 * p * p * p)).sqrt();
        Ok(Self { p, q, xi, t, tau, c_r })
    }

    /// Builds the parameters at `point` from scattering data.
    pub fn from_data(point: &SpaceTimePoint, data: &ScatteringData, p: f64, q: f64) -> Result<Self> {
        Self::new(p, q, point.xi(), point.t, c_r(data, p, q)?)
    }
}

/// `C_R = (q/12p) (-1/2) (|r|^2)''(1)`.
pub fn c_r(data: &ScatteringData, p: f64, q: f64) -> Result<f64> {
    let v = q / (12.0 * p) * (-0.5) * data.abs2_second_derivative_at_one()?;
    if !(v > 0.0) {
        return Err(Error::Admissibility(format!("C_R = {v} is not positive")));
    }
    Ok(v)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShockGeometry {
    pub p: f64,
    pub q: f64,
    pub a: f64,
    pub b: f64,
    pub k1: f64,
    pub b1: Complex64,
    pub a1: Complex64,
    pub varkappa: Complex64,
    pub a_inf: Complex64,
    /// Coefficient of `1/k` in `A(k) - A(inf)`.
    pub c_a: Complex64,
    pub delta0: f64,
    pub phi: Complex64,
    pub c_r: f64,
    pub tau: f64,
    /// `int_b^inf (w - P') - P(b)`.
    pub c_b: f64,
    pub theta: ThetaParams,
    pub spec: QuadratureSpec,
}

static GEOMETRIES: AtomicUsize = AtomicUsize::new(0);

/// Number of shock geometries assembled by this process.
pub fn geometry_count() -> usize {
    GEOMETRIES.load(Ordering::Relaxed)
}

impl ShockGeometry {
    pub fn new(params: &ShockParams, spec: &QuadratureSpec) -> Result<Self> {
        GEOMETRIES.fetch_add(1, Ordering::Relaxed);
        let (a, b) = solve_band(params, spec)?;
        let per = periods(a, b, params.q, spec)?;
        let c_a = 1.0 / Complex64::new(0.0, 2.0 * per.k1);
        let to_inf =
            quad_half(|d| Complex64::new(1.0 / (d * (b + d - a) * (b + d + a) * (2.0 * b + d)).sqrt(), 0.0), spec)?;
        let a_inf = -c_a * to_inf.value.re;
        let delta0 = delta0(a, b, per.k1, params.c_r, spec)?;
        let phi = params.tau * per.b1 / 2.0 - Complex64::new(0.0, delta0);
        let theta = ThetaParams::new(per.varkappa, THETA_TOL)?;
        Ok(Self {
            p: params.p,
            q: params.q,
            a,
            b,
            k1: per.k1,
            b1: per.b1,
            a1: per.a1,
            varkappa: per.varkappa,
            a_inf,
            c_a,
            delta0,
            phi,
            c_r: params.c_r,
            tau: params.tau,
            c_b: c_b(a, b, spec)?,
            theta,
            spec: *spec,
        })
    }
}

/// `u` as assembled from the final formula, before any reality check.
#[derive(Debug, Clone, PartialEq)]
pub struct ShockEvaluation {
    pub u: Complex64,
    pub geometry: ShockGeometry,
    pub coeffs: Nr7Coeffs,
}

fn check_generic(data: &ScatteringData) -> Result<()> {
    if !data.is_generic()? {
        let (rp, rm) = (eval_r(data, 1.0)?.norm(), eval_r(data, -1.0)?.norm());
        return Err(Error::Admissibility(format!("shock region needs |r(+-1)| = 1, got {rp} and {rm}")));
    }
    Ok(())
}

pub fn u_region3_complex(
    point: &SpaceTimePoint,
    data: &ScatteringData,
    p: f64,
    q: f64,
    constants: &RegionConstants,
) -> Result<ShockEvaluation> {
    let got = classify(point, constants);
    if got != RegionTag::III {
        return Err(Error::Region { expected: RegionTag::III, got });
    }
    check_generic(data)?;
    let params = ShockParams::from_data(point, data, p, q)?;
    let geometry = ShockGeometry::new(&params, &data.quad)?;
    let coeffs = nr7_coeffs(&geometry)?;
    let pre = (2.0 - params.xi) * (geometry.a - geometry.b) * q / (12.0 * p);
    let u = 1.0 - pre * final_bracket(&geometry)?;
    Ok(ShockEvaluation { u, geometry, coeffs })
}

/// `u` in the shock region; fails with [`Error::Reality`] when the assembled
/// value has an imaginary part above [`REALITY_TOL`].
pub fn u_region3(
    point: &SpaceTimePoint,
    data: &ScatteringData,
    p: f64,
    q: f64,
    constants: &RegionConstants,
) -> Result<AsymptoticValue> {
    let ev = u_region3_complex(point, data, p, q, constants)?;
    if !(ev.u.im.abs() < REALITY_TOL) {
        return Err(Error::Reality(ev.u.im));
    }
    let g = &ev.geometry;
    let diagnostics = BTreeMap::from([
        ("a".to_string(), g.a),
        ("b".to_string(), g.b),
        ("delta0".to_string(), g.delta0),
        ("tau".to_string(), g.tau),
        ("im_u".to_string(), ev.u.im),
    ]);
    Ok(AsymptoticValue { u: ev.u.re, region: RegionTag::III, error_order: 0.0, diagnostics })
}
