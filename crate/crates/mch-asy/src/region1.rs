//! Painleve asymptotics in the transition window around `xi = 2`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::painleve2::{eval_pii, PiiCache};
use crate::phase::{classify, scaled_s, RegionConstants, RegionTag, SpaceTimePoint};
use crate::scattering::{eval_r, log_t_i, ScatteringData, TMode};

/// `delta_1` used only for the reported error exponent.
pub const DELTA_1: f64 = 0.0486;

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticValue {
    pub u: f64,
    pub region: RegionTag,
    /// Exponent of `t` in the error term.
    pub error_order: f64,
    pub diagnostics: BTreeMap<String, f64>,
}

pub fn error_order_region1() -> f64 {
    -(1.0 - 4.0 * DELTA_1).min(1.0 / 3.0 + 9.0 * DELTA_1)
}

fn check_region(point: &SpaceTimePoint, constants: &RegionConstants, want: RegionTag) -> Result<()> {
    let got = classify(point, constants);
    if got != want {
        return Err(Error::Region { expected: want, got });
    }
    Ok(())
}

/// `r(1)`, which is real for admissible data.
pub fn amplitude_region1(data: &ScatteringData) -> Result<f64> {
    let r1 = eval_r(data, 1.0)?;
    if r1.im.abs() > 1e-10 {
        return Err(Error::Admissibility(format!("r(1) = {r1} is not real")));
    }
    Ok(r1.re)
}

/// `u = 1 - (81/2)^{1/3} t^{-2/3} v'(s)` with `v ~ r(1) Ai(s)`.
pub fn u_region1(
    point: &SpaceTimePoint,
    data: &ScatteringData,
    cache: &PiiCache,
    constants: &RegionConstants,
) -> Result<AsymptoticValue> {
    check_region(point, constants, RegionTag::I)?;
    let s = scaled_s(point, RegionTag::I)?;
    let k = amplitude_region1(data)?;
    let sol = cache.get(k)?;
    let p = eval_pii(&sol, s)?;
    let u = 1.0 - 40.5f64.cbrt() * point.t.powf(-2.0 / 3.0) * p.v_prime;
    if !u.is_finite() {
        return Err(Error::Domain(format!("non-finite u at x = {}, t = {}", point.x, point.t)));
    }
    let diagnostics = BTreeMap::from([
        ("s".to_string(), s),
        ("k".to_string(), k),
        ("v".to_string(), p.v),
        ("v_prime".to_string(), p.v_prime),
        ("q".to_string(), p.q),
    ]);
    Ok(AsymptoticValue { u, region: RegionTag::I, error_order: error_order_region1(), diagnostics })
}

/// `x - y = -2 log T(i) - t^{-1/3} 36^{-1/3} (v(s) + Q(s))`.
pub fn x_minus_y_region1(
    point: &SpaceTimePoint,
    data: &ScatteringData,
    cache: &PiiCache,
    constants: &RegionConstants,
) -> Result<f64> {
    check_region(point, constants, RegionTag::I)?;
    let s = scaled_s(point, RegionTag::I)?;
    let sol = cache.get(amplitude_region1(data)?)?;
    let p = eval_pii(&sol, s)?;
    let log_t = log_t_i(data, TMode::FullLine)?;
    Ok(-2.0 * log_t - point.t.cbrt().recip() * 36f64.cbrt().recip() * (p.v + p.q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase::point_from_s;
    use num_complex::Complex64;

    #[test]
    fn error_exponent() {
        assert!((error_order_region1() + 0.7707).abs() < 1e-3);
    }

    #[test]
    fn reflectionless_is_trivial() {
        let data = ScatteringData::family(0.0, 0.0, 0.0).unwrap();
        let cache = PiiCache::default();
        let c = RegionConstants::default();
        let p = point_from_s(0.1, 1e6, RegionTag::I).unwrap();
        assert_eq!(u_region1(&p, &data, &cache, &c).unwrap().u, 1.0);
        assert_eq!(x_minus_y_region1(&p, &data, &cache, &c).unwrap(), 0.0);
    }

    #[test]
    fn spectrum_shifts_x_minus_y() {
        let data = ScatteringData::family(0.0, 0.0, 0.0)
            .unwrap()
            .with_spectrum(vec![Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_3)]);
        let cache = PiiCache::default();
        let p = point_from_s(0.0, 1e6, RegionTag::I).unwrap();
        let d = x_minus_y_region1(&p, &data, &cache, &RegionConstants::default()).unwrap();
        assert!((d - 4.0 * (2.0 + 3f64.sqrt()).ln()).abs() < 1e-12, "{d}");
    }

    #[test]
    fn wrong_region_is_rejected() {
        let data = ScatteringData::family(0.5, 0.0, 1.0).unwrap();
        let p = SpaceTimePoint::from_xi(1.0, 1e6).unwrap();
        let err = u_region1(&p, &data, &PiiCache::default(), &RegionConstants::default()).unwrap_err();
        assert!(matches!(err, Error::Region { expected: RegionTag::I, got: RegionTag::Outside }));
    }
}
