//! Painleve asymptotics in the transition window around `xi = -1/4`.

use num_complex::Complex64;
use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numerics::quad_pv;
use crate::painleve2::{eval_pii, PiiCache};
use crate::phase::{classify, scaled_s, RegionConstants, RegionTag, SpaceTimePoint};
use crate::region1::AsymptoticValue;
use crate::scattering::{eval_r, log_t_i, t_i_and_t1, ScatteringData, TMode};

/// `delta_2` used only for the reported error exponent.
pub const DELTA_2: f64 = 1.0 / 27.0;
/// Tolerance on the imaginary part of the assembled expression.
pub const REALITY_TOL: f64 = 1e-6;

pub fn error_order_region2() -> f64 {
    (-2.0 / 3.0 + 4.0 * DELTA_2).max(-1.0 / 3.0 - 5.0 * DELTA_2)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region2Constants {
    pub lambda_a: f64,
    pub lambda_b: f64,
    pub gamma_a: f64,
    pub gamma_b: f64,
    pub t_i: Complex64,
    pub t_1: Complex64,
    /// `-|r(2 + sqrt 3)|`, the Airy multiplier of `v_II`.
    pub k_ampl: f64,
}

impl Region2Constants {
    pub fn new(data: &ScatteringData) -> Result<Self> {
        let k_ampl = -eval_r(data, 2.0 + 3f64.sqrt())?.norm();
        if !(k_ampl > -1.0) {
            return Err(Error::Admissibility(format!("|r(2+sqrt 3)| = {} is not below 1", -k_ampl)));
        }
        let (lambda_a, lambda_b) = lambda_ab(data)?;
        let (t_i, t_1) = t_i_and_t1(data)?;
        if t_i.im.abs() > 1e-8 * t_i.norm() {
            return Err(Error::Reality(t_i.im));
        }
        let gamma_a = (2.0 + 3f64.sqrt()).atan();
        let gamma_b = (2.0 - 3f64.sqrt()).atan();
        debug_assert!((gamma_a + gamma_b - PI / 2.0).abs() < 1e-15);
        Ok(Self { lambda_a, lambda_b, gamma_a, gamma_b, t_i, t_1, k_ampl })
    }

    /// `i T_1 / T(i)`.
    pub fn t_ratio(&self) -> Complex64 {
        Complex64::new(0.0, 1.0) * self.t_1 / self.t_i
    }
}

/// Phase constants at the saddles `2 + sqrt 3` and `2 - sqrt 3`, with the
/// singular integrals taken as principal values.
pub fn lambda_ab(data: &ScatteringData) -> Result<(f64, f64)> {
    let r3 = 3f64.sqrt();
    let log_t = log_t_i(data, TMode::FullLine)?;
    let one = |c: f64, sign: f64| -> Result<f64> {
        let r = eval_r(data, c)?;
        if r.norm() == 0.0 {
            return Err(Error::UndefinedArg(format!("arg r({c}) with r({c}) = 0")));
        }
        let sum: f64 = data.spectrum.representatives.iter().map(|z| (Complex64::new(c, 0.0) - z).arg()).sum();
        let pv = quad_pv(|z| Complex64::new(data.log_one_minus_abs2(z).unwrap_or(f64::NAN), 0.0), c, &data.quad)?;
        if !pv.value.re.is_finite() {
            return Err(Error::Domain("log(1 - |r|^2) is not finite on the line".into()));
        }
        Ok(r.arg() + 4.0 * sum - pv.value.re / PI + sign * 2.0 * r3 * log_t)
    };
    Ok((one(2.0 + r3, -1.0)?, one(2.0 - r3, 1.0)?))
}

pub fn psi_ab(s: f64, t: f64, consts: &Region2Constants) -> (f64, f64) {
    let osc = 3f64.powf(7.0 / 6.0) / 2.0 * s * t.cbrt() + 3.0 * 3f64.sqrt() / 4.0 * t;
    (osc + consts.lambda_a, -osc + consts.lambda_b)
}

/// The modulation factor as assembled, before taking the real part.
pub fn f_ii_complex(s: f64, t: f64, consts: &Region2Constants) -> Complex64 {
    let (pa, pb) = psi_ab(s, t, consts);
    let ratio = consts.t_ratio();
    let r3 = 3f64.sqrt();
    let (ga, gb) = (consts.gamma_a, consts.gamma_b);
    let half = (consts.lambda_a + consts.lambda_b) / 2.0;
    2.0 * (2.0 + r3).sqrt() * (pa.sin() * ga.cos() - ratio * pa.cos() * ga.sin())
        + 2.0 * (2.0 - r3).sqrt() * (pb.sin() * gb.cos() - ratio * pb.cos() * gb.sin())
        + r3 * half.cos() * half.sin()
}

pub fn f_ii(s: f64, t: f64, consts: &Region2Constants) -> Result<f64> {
    let f = f_ii_complex(s, t, consts);
    if f.im.abs() >= REALITY_TOL {
        return Err(Error::Reality(f.im));
    }
    Ok(f.re)
}

/// `u = 1 + 3^{-2/3} t^{-1/3} f_II(s) v_II(s)` with precomputed constants.
pub fn u_region2_with(
    point: &SpaceTimePoint,
    consts: &Region2Constants,
    cache: &PiiCache,
    constants: &RegionConstants,
) -> Result<AsymptoticValue> {
    let got = classify(point, constants);
    if got != RegionTag::II {
        return Err(Error::Region { expected: RegionTag::II, got });
    }
    let s = scaled_s(point, RegionTag::II)?;
    let sol = cache.get(consts.k_ampl)?;
    let v = eval_pii(&sol, s)?.v;
    let f = f_ii_complex(s, point.t, consts);
    let scale = 3f64.powf(-2.0 / 3.0) * point.t.cbrt().recip() * v;
    let im_u = scale * f.im;
    if im_u.abs() >= REALITY_TOL {
        return Err(Error::Reality(im_u));
    }
    let u = 1.0 + scale * f.re;
    let (pa, pb) = psi_ab(s, point.t, consts);
    let diagnostics = BTreeMap::from([
        ("s".to_string(), s),
        ("k".to_string(), consts.k_ampl),
        ("v".to_string(), v),
        ("f_ii".to_string(), f.re),
        ("im_u".to_string(), im_u),
        ("psi_a".to_string(), pa),
        ("psi_b".to_string(), pb),
    ]);
    Ok(AsymptoticValue { u, region: RegionTag::II, error_order: error_order_region2(), diagnostics })
}

/// Same as [`u_region2_with`], building the constants from `data`. A vanishing
/// amplitude `r(2 + sqrt 3) = 0` short-circuits to `u = 1`.
pub fn u_region2(
    point: &SpaceTimePoint,
    data: &ScatteringData,
    cache: &PiiCache,
    constants: &RegionConstants,
) -> Result<AsymptoticValue> {
    let got = classify(point, constants);
    if got != RegionTag::II {
        return Err(Error::Region { expected: RegionTag::II, got });
    }
    if eval_r(data, 2.0 + 3f64.sqrt())?.norm() == 0.0 {
        let diagnostics =
            BTreeMap::from([("s".to_string(), scaled_s(point, RegionTag::II)?), ("short_circuit".to_string(), 1.0)]);
        return Ok(AsymptoticValue { u: 1.0, region: RegionTag::II, error_order: error_order_region2(), diagnostics });
    }
    u_region2_with(point, &Region2Constants::new(data)?, cache, constants)
}
