//! Phase function, saddle points, scaled variables and region classification.

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceTimePoint {
    pub x: f64,
    pub t: f64,
}

impl SpaceTimePoint {
    pub fn new(x: f64, t: f64) -> Result<Self> {
        if !(t > 0.0) || !x.is_finite() || !t.is_finite() {
            return Err(Error::Domain(format!("need finite x and t > 0, got x = {x}, t = {t}")));
        }
        Ok(Self { x, t })
    }

    pub fn from_xi(xi: f64, t: f64) -> Result<Self> {
        Self::new(xi * t, t)
    }

    pub fn xi(&self) -> f64 {
        self.x / self.t
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionTag {
    I,
    II,
    III,
    Outside,
}

impl RegionTag {
    pub fn label(&self) -> &'static str {
        match self {
            RegionTag::I => "R_I",
            RegionTag::II => "R_II",
            RegionTag::III => "R_III",
            RegionTag::Outside => "OUTSIDE",
        }
    }
}

impl std::fmt::Display for RegionTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Half-widths of the two Painleve windows and the outer shock width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionConstants {
    pub c_i: f64,
    pub c_ii: f64,
    pub c_iii: f64,
}

impl Default for RegionConstants {
    fn default() -> Self {
        Self { c_i: 1.0, c_ii: 1.0, c_iii: 4.0 * 3f64.cbrt() }
    }
}

impl RegionConstants {
    pub fn validate(&self) -> Result<()> {
        if !(self.c_i > 0.0) {
            return Err(Error::Invalid("c_i must be positive".into()));
        }
        if !(self.c_ii > 0.0) {
            return Err(Error::Invalid("c_ii must be positive".into()));
        }
        if !(self.c_iii > 2.0 * 3f64.cbrt()) {
            return Err(Error::Invalid("c_iii must exceed 2*3^(1/3)".into()));
        }
        Ok(())
    }
}

/// `theta(z) = -(t/4)(z - 1/z)[xi - 8/(z + 1/z)^2]`.
pub fn theta(z: Complex64, xi: f64, t: f64) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::Singular("theta at z = 0".into()));
    }
    let sum = z + one / z;
    if sum.norm() < 1e-300 {
        return Err(Error::Singular(format!("theta at z = {z}")));
    }
    Ok(-(t / 4.0) * (z - one / z) * (xi - 8.0 / (sum * sum)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region1Saddles {
    pub k: [f64; 4],
    pub s_plus: f64,
}

pub fn saddles_region1(xi: f64) -> Result<Region1Saddles> {
    if !(xi > 0.0 && xi <= 2.0) {
        return Err(Error::Domain(format!("region I saddles need 0 < xi <= 2, got {xi}")));
    }
    let s = ((-xi - 1.0 + (1.0 + 4.0 * xi).sqrt()) / (4.0 * xi)).max(0.0);
    let (r, q) = (s.sqrt(), (4.0 * s + 1.0).sqrt());
    let k1 = 2.0 * r + q;
    let k2 = -2.0 * r + q;
    Ok(Region1Saddles { k: [k1, k2, -k2, -k1], s_plus: s })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region2Saddles {
    pub k: [f64; 8],
    pub s_plus: f64,
    pub s_minus: f64,
}

pub fn saddles_region2(xi: f64) -> Result<Region2Saddles> {
    if !(-0.25..0.0).contains(&xi) {
        return Err(Error::Domain(format!("region II saddles need -1/4 <= xi < 0, got {xi}")));
    }
    let root = (1.0 + 4.0 * xi).max(0.0).sqrt();
    let sp = (-xi - 1.0 + root) / (4.0 * xi);
    let sm = (-xi - 1.0 - root) / (4.0 * xi);
    let (rp, qp) = (sp.sqrt(), (4.0 * sp + 1.0).sqrt());
    let (rm, qm) = (sm.sqrt(), (4.0 * sm + 1.0).sqrt());
    let k1 = 2.0 * rp + qp;
    let k4 = -2.0 * rp + qp;
    let k2 = 2.0 * rm + qm;
    let k3 = -2.0 * rm + qm;
    Ok(Region2Saddles { k: [k1, k2, k3, k4, -k4, -k3, -k2, -k1], s_plus: sp, s_minus: sm })
}

/// Scaled Painleve variable `s` of region I or II.
pub fn scaled_s(point: &SpaceTimePoint, region: RegionTag) -> Result<f64> {
    let (xi, t) = (point.xi(), point.t);
    match region {
        RegionTag::I => Ok(6f64.powf(-2.0 / 3.0) * (xi - 2.0) * t.powf(2.0 / 3.0)),
        RegionTag::II => Ok(-(8.0f64 / 9.0).cbrt() * (xi + 0.25) * t.powf(2.0 / 3.0)),
        other => Err(Error::Domain(format!("no scaled variable in region {other}"))),
    }
}

/// Inverse of [`scaled_s`]: the point at time `t` with the given `s`.
pub fn point_from_s(s: f64, t: f64, region: RegionTag) -> Result<SpaceTimePoint> {
    let xi = match region {
        RegionTag::I => 2.0 + s * 6f64.powf(2.0 / 3.0) * t.powf(-2.0 / 3.0),
        RegionTag::II => -0.25 - s * (9.0f64 / 8.0).cbrt() * t.powf(-2.0 / 3.0),
        other => return Err(Error::Domain(format!("no scaled variable in region {other}"))),
    };
    SpaceTimePoint::from_xi(xi, t)
}

/// Shock window parameter `(2 - xi) t^{2/3} / (log t)^{2/3}`.
pub fn window_param(point: &SpaceTimePoint) -> f64 {
    let t = point.t;
    (2.0 - point.xi()) * t.powf(2.0 / 3.0) / t.ln().powf(2.0 / 3.0)
}

/// The point at time `t` whose shock window parameter equals `w`.
pub fn point_from_window(w: f64, t: f64) -> Result<SpaceTimePoint> {
    SpaceTimePoint::from_xi(2.0 - w * t.ln().powf(2.0 / 3.0) * t.powf(-2.0 / 3.0), t)
}

/// Region membership. The region I window takes precedence over the shock
/// window where they overlap.
pub fn classify(point: &SpaceTimePoint, c: &RegionConstants) -> RegionTag {
    let (xi, t) = (point.xi(), point.t);
    let t23 = t.powf(2.0 / 3.0);
    if (xi - 2.0).abs() * t23 <= c.c_i {
        return RegionTag::I;
    }
    if (xi + 0.25).abs() * t23 <= c.c_ii {
        return RegionTag::II;
    }
    if t > 1.0 {
        let l23 = t.ln().powf(2.0 / 3.0);
        let w = (2.0 - xi) * t23;
        if 2.0 * 3f64.cbrt() * l23 < w && w < c.c_iii * l23 {
            return RegionTag::III;
        }
    }
    RegionTag::Outside
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dtheta(k: f64, xi: f64) -> f64 {
        let h = 1e-6;
        let f = |z: f64| theta(Complex64::new(z, 0.0), xi, 1.0).unwrap().re;
        (f(k + h) - f(k - h)) / (2.0 * h)
    }

    #[test]
    fn theta_oracle_and_reflection() {
        let z = Complex64::new(2.0, 0.0);
        let v = theta(z, 2.0, 1.0).unwrap();
        assert!((v.re + 0.27).abs() < 1e-15 && v.im == 0.0);
        let w = theta(Complex64::new(0.5, 0.0), 2.0, 1.0).unwrap();
        assert!((w + v).norm() < 1e-15);
        assert!(theta(Complex64::new(0.0, 1.0), 1.0, 1.0).is_err());
    }

    #[test]
    fn region1_saddles() {
        let s = saddles_region1(2.0).unwrap();
        assert_eq!(s.k, [1.0, 1.0, -1.0, -1.0]);
        let s = saddles_region1(1.9).unwrap();
        assert!((s.k[0] * s.k[1] - 1.0).abs() < 1e-15);
        assert_eq!(s.k[3], -s.k[0]);
        for k in s.k {
            assert!(dtheta(k, 1.9).abs() < 1e-9, "theta' at {k}");
        }
        assert!(saddles_region1(2.5).is_err());
    }

    #[test]
    fn region2_saddles() {
        let s = saddles_region2(-0.25).unwrap();
        let r3 = 3f64.sqrt();
        assert!((s.k[0] - (2.0 + r3)).abs() < 1e-14);
        assert!((s.k[2] - (2.0 - r3)).abs() < 1e-14);
        assert!((s.k[4] - (-2.0 + r3)).abs() < 1e-14);
        assert!((s.k[6] - (-2.0 - r3)).abs() < 1e-14);
        let s = saddles_region2(-0.24).unwrap();
        assert!((s.k[0] * s.k[3] - 1.0).abs() < 1e-14);
        assert!((s.k[1] * s.k[2] - 1.0).abs() < 1e-14);
        for k in s.k {
            assert!(dtheta(k, -0.24).abs() < 1e-9, "theta' at {k}");
        }
    }

    #[test]
    fn scaled_variables() {
        let t: f64 = 1e6;
        let p = SpaceTimePoint::new(2.0 * t - 6f64.powf(2.0 / 3.0) * t.cbrt(), t).unwrap();
        assert!((scaled_s(&p, RegionTag::I).unwrap() + 1.0).abs() < 1e-9);
        let q = point_from_s(0.7, t, RegionTag::II).unwrap();
        assert!((scaled_s(&q, RegionTag::II).unwrap() - 0.7).abs() < 1e-9);
        assert!(scaled_s(&p, RegionTag::III).is_err());
    }

    #[test]
    fn classification() {
        let c = RegionConstants::default();
        let t = 1e6;
        assert_eq!(classify(&SpaceTimePoint::from_xi(2.0, t).unwrap(), &c), RegionTag::I);
        assert_eq!(classify(&SpaceTimePoint::from_xi(-0.25, t).unwrap(), &c), RegionTag::II);
        let xi = 2.0 - 3.0 * 3f64.cbrt() * t.ln().powf(2.0 / 3.0) * t.powf(-2.0 / 3.0);
        assert_eq!(classify(&SpaceTimePoint::from_xi(xi, t).unwrap(), &c), RegionTag::III);
        assert_eq!(classify(&SpaceTimePoint::from_xi(1.0, t).unwrap(), &c), RegionTag::Outside);
    }
}
