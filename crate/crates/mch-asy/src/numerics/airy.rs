//! Airy function Ai and its derivative on the real line.
//!
//! For |s| <= 10 the Maclaurin series is summed in double-double arithmetic,
//! which absorbs the cancellation between the two power series (their terms
//! reach ~e^{(2/3)|s|^{3/2}}). Beyond that the classical asymptotic expansions
//! in zeta = (2/3)|s|^{3/2} are accurate to well below 1e-15.

use crate::error::{Error, Result};

const SERIES_LIMIT: f64 = 10.0;
pub const AIRY_RANGE: f64 = 30.0;

// Ai(0) and -Ai'(0) split as hi + lo.
const C1: Dd = Dd(0.3550280538878172, 2.05233632436212e-17);
const C2: Dd = Dd(0.2588194037928068, -2.522243111610832e-17);

#[derive(Clone, Copy, Debug)]
struct Dd(f64, f64);

impl Dd {
    fn from(x: f64) -> Self {
        Dd(x, 0.0)
    }

    fn add(self, o: Dd) -> Dd {
        let s = self.0 + o.0;
        let bb = s - self.0;
        let err = (self.0 - (s - bb)) + (o.0 - bb);
        quick_two_sum(s, err + self.1 + o.1)
    }

    fn neg(self) -> Dd {
        Dd(-self.0, -self.1)
    }

    fn mul(self, o: Dd) -> Dd {
        let p = self.0 * o.0;
        let e = self.0.mul_add(o.0, -p);
        quick_two_sum(p, e + self.0 * o.1 + self.1 * o.0)
    }

    fn div_f(self, d: f64) -> Dd {
        let q1 = self.0 / d;
        let p = q1 * d;
        let e = q1.mul_add(d, -p);
        let r = (self.0 - p - e + self.1) / d;
        quick_two_sum(q1, r)
    }

    fn to_f64(self) -> f64 {
        self.0 + self.1
    }
}

fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd(s, b - (s - a))
}

/// Returns `(Ai(s), Ai'(s))` for `|s| <= 30`.
pub fn airy(s: f64) -> Result<(f64, f64)> {
    if !s.is_finite() || s.abs() > AIRY_RANGE {
        return Err(Error::Range(format!("airy argument {s} outside [-30, 30]")));
    }
    if s.abs() <= SERIES_LIMIT {
        Ok(airy_series(s))
    } else if s > 0.0 {
        Ok(airy_asymptotic_pos(s))
    } else {
        Ok(airy_asymptotic_neg(s))
    }
}

/// Maclaurin evaluation, exposed for overlap checks against the asymptotic branch.
pub fn airy_series(s: f64) -> (f64, f64) {
    // Ai = c1 f - c2 g with f = sum 3^k (1/3)_k s^{3k}/(3k)!, g = sum 3^k (2/3)_k s^{3k+1}/(3k+1)!
    let x = Dd::from(s);
    let x3 = x.mul(x).mul(x);
    let mut f = Dd::from(1.0);
    let mut g = x;
    let mut fp = Dd::from(0.0);
    let mut gp = Dd::from(1.0);
    let mut tf = Dd::from(1.0);
    let mut tg = x;
    for k in 0..200 {
        let k = k as f64;
        // f term: t_{k+1} = t_k s^3 / ((3k+2)(3k+3))
        tf = tf.mul(x3).div_f((3.0 * k + 2.0) * (3.0 * k + 3.0));
        tg = tg.mul(x3).div_f((3.0 * k + 3.0) * (3.0 * k + 4.0));
        f = f.add(tf);
        g = g.add(tg);
        // derivatives: d/ds s^{3k+3} = (3k+3) s^{3k+2}
        fp = fp.add(tf.mul(Dd::from(3.0 * k + 3.0)).div_f(s_or_one(s)));
        gp = gp.add(tg.mul(Dd::from(3.0 * k + 4.0)).div_f(s_or_one(s)));
        if tf.0.abs() < 1e-34 && tg.0.abs() < 1e-34 {
            break;
        }
    }
    if s == 0.0 {
        return (C1.to_f64(), -C2.to_f64());
    }
    let ai = C1.mul(f).add(C2.mul(g).neg());
    let aip = C1.mul(fp).add(C2.mul(gp).neg());
    (ai.to_f64(), aip.to_f64())
}

fn s_or_one(s: f64) -> f64 {
    if s == 0.0 {
        1.0
    } else {
        s
    }
}

// u_k and v_k of the asymptotic expansions (DLMF 9.7.2).
fn uv_coeffs(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut u = vec![1.0];
    let mut v = vec![1.0];
    for k in 1..n {
        let kf = k as f64;
        let uk = u[k - 1] * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
        u.push(uk);
        v.push(-uk * (6.0 * kf + 1.0) / (6.0 * kf - 1.0));
    }
    (u, v)
}

const ASYMPTOTIC_TERMS: usize = 30;

fn airy_asymptotic_pos(s: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * s.powf(1.5);
    let (u, v) = uv_coeffs(ASYMPTOTIC_TERMS);
    let (mut l, mut m) = (0.0f64, 0.0f64);
    let mut zp = 1.0;
    let mut sign = 1.0;
    for k in 0..ASYMPTOTIC_TERMS {
        let (tl, tm) = (sign * u[k] / zp, sign * v[k] / zp);
        if k > 0 && tl.abs() < 1e-18 * l.abs() && tm.abs() < 1e-18 * m.abs() {
            break;
        }
        l += tl;
        m += tm;
        zp *= zeta;
        sign = -sign;
    }
    let e = (-zeta).exp() / (2.0 * std::f64::consts::PI.sqrt());
    (e * l / s.powf(0.25), -e * s.powf(0.25) * m)
}

fn airy_asymptotic_neg(s: f64) -> (f64, f64) {
    let x = -s;
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    let (u, v) = uv_coeffs(ASYMPTOTIC_TERMS);
    // even/odd partial sums P, Q (for Ai) and R, S (for Ai')
    let (mut p, mut q, mut r, mut sm) = (0.0, 0.0, 0.0, 0.0);
    let mut zp = 1.0;
    for k in 0..ASYMPTOTIC_TERMS {
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * u[k] / zp;
            r += sign * v[k] / zp;
        } else {
            q += sign * u[k] / zp;
            sm += sign * v[k] / zp;
        }
        zp *= zeta;
        if u[k] / zp < 1e-20 && k > 4 {
            break;
        }
    }
    let phase = zeta - std::f64::consts::FRAC_PI_4;
    let (sn, cs) = phase.sin_cos();
    let norm = 1.0 / std::f64::consts::PI.sqrt();
    let ai = norm / x.powf(0.25) * (cs * p + sn * q);
    let aip = norm * x.powf(0.25) * (sn * r - cs * sm);
    (ai, aip)
}
