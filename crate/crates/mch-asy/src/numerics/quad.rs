//! Adaptive Gauss-Kronrod quadrature for complex-valued integrands, plus the
//! semi-infinite, principal-value and square-root-weighted variants used by
//! the asymptotic formulas.

use num_complex::Complex64;
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    /// Semi-infinite integrals stop once `|integrand|` (in the log-mapped
    /// variable) stays below this value.
    pub tail_cutoff: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { abs_tol: 1e-14, rel_tol: 1e-13, max_subdivisions: 4000, tail_cutoff: 1e-20 }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) || !(self.rel_tol > 0.0) || !(self.tail_cutoff > 0.0) {
            return Err(Error::Invalid("quadrature tolerances must be positive".into()));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::Invalid("max_subdivisions must be at least 1".into()));
        }
        Ok(())
    }

    /// Same spec with tolerances divided by `factor`.
    pub fn tightened(&self, factor: f64) -> Self {
        Self {
            abs_tol: self.abs_tol / factor,
            rel_tol: self.rel_tol / factor,
            max_subdivisions: self.max_subdivisions * 2,
            tail_cutoff: self.tail_cutoff / factor,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quad {
    pub value: Complex64,
    pub error: f64,
}

impl std::ops::Add for Quad {
    type Output = Quad;
    fn add(self, o: Quad) -> Quad {
        Quad { value: self.value + o.value, error: self.error + o.error }
    }
}

const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077208980146489,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];

// Gauss weights for XGK[1], XGK[3], ..., XGK[9]
const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

struct Segment {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, o: &Self) -> bool {
        self.error == o.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Segment {
    fn cmp(&self, o: &Self) -> Ordering {
        self.error.total_cmp(&o.error)
    }
}

fn gk21<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Segment {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[10];
    let mut g = Complex64::new(0.0, 0.0);
    let mut abs_k = fc.norm() * WGK[10];
    for j in 0..10 {
        let x = h * XGK[j];
        let f1 = f(c - x);
        let f2 = f(c + x);
        k += (f1 + f2) * WGK[j];
        abs_k += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            g += (f1 + f2) * WG[j / 2];
        }
    }
    let value = k * h;
    let raw = ((k - g) * h).norm();
    let scale = abs_k * h.abs();
    // QUADPACK-style rescaling of |K - G|, floored at rounding level
    let mut error = if raw > 0.0 && scale > 0.0 { scale * (1.0f64).min((200.0 * raw / scale).powf(1.5)) } else { raw };
    let round = 50.0 * f64::EPSILON * scale;
    if error < round {
        error = round;
    }
    Segment { a, b, value, error }
}

/// Adaptive Gauss-Kronrod (21-point) integration of `f` over `[a, b]`.
pub fn quad<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Quad> {
    if a == b {
        return Ok(Quad { value: Complex64::new(0.0, 0.0), error: 0.0 });
    }
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain(format!("quad needs finite limits, got [{a}, {b}]")));
    }
    let first = gk21(&f, a, b);
    let mut total = first.value;
    let mut err = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    let mut splits = 0;
    loop {
        let tol = spec.abs_tol.max(spec.rel_tol * total.norm());
        if err <= tol {
            break;
        }
        if splits >= spec.max_subdivisions {
            return Err(Error::Convergence { estimate: total, error: err });
        }
        let worst = heap.pop().expect("heap holds at least one segment");
        if is_rounding_limited(&worst) {
            // the worst segment cannot be refined further in double precision
            heap.push(worst);
            break;
        }
        let mid = 0.5 * (worst.a + worst.b);
        let left = gk21(&f, worst.a, mid);
        let right = gk21(&f, mid, worst.b);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        splits += 1;
        if splits % 64 == 0 {
            // refresh accumulated sums to shed drift
            total = heap.iter().map(|s| s.value).sum();
            err = heap.iter().map(|s| s.error).sum();
        }
    }
    let value: Complex64 = heap.iter().map(|s| s.value).sum();
    let error: f64 = heap.iter().map(|s| s.error).sum();
    Ok(Quad { value, error })
}

fn is_rounding_limited(s: &Segment) -> bool {
    let width = (s.b - s.a).abs();
    width < 1e-13 * (s.a.abs() + s.b.abs()).max(1e-300)
}

/// Real-valued convenience wrapper around [`quad`].
pub fn quad_real<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    quad(|x| Complex64::new(f(x), 0.0), a, b, spec).map(|q| q.value.re)
}

/// `int_a^inf f`.
pub fn quad_inf<F: Fn(f64) -> Complex64>(f: F, a: f64, spec: &QuadratureSpec) -> Result<Quad> {
    quad_half(|d| f(a + d), spec)
}

/// `int_0^inf f(d) dd`, computed in the variable `u` with `d = e^u`.
///
/// Passing the offset `d` rather than `a + d` keeps integrable endpoint
/// singularities resolvable. Both ends of the `u` line are truncated where
/// `|f(d) d|` drops below `tail_cutoff` on two consecutive probes; the
/// discarded tail is estimated from the local exponential decay rate and added.
pub fn quad_half<F: Fn(f64) -> Complex64>(f: F, spec: &QuadratureSpec) -> Result<Quad> {
    let g = |u: f64| {
        let e = u.exp();
        f(e) * e
    };
    let hi = tail_end(&g, 1.0, spec.tail_cutoff)?;
    let lo = tail_end(&g, -1.0, spec.tail_cutoff)?;
    let body = quad(g, lo.end, hi.end, spec)?;
    Ok(body + Quad { value: lo.tail + hi.tail, error: (lo.tail.norm() + hi.tail.norm()) })
}

struct TailEnd {
    end: f64,
    tail: Complex64,
}

fn tail_end<G: Fn(f64) -> Complex64>(g: &G, dir: f64, cutoff: f64) -> Result<TailEnd> {
    const STEP: f64 = 1.0;
    const LIMIT: f64 = 700.0;
    let mut u = 0.0;
    let mut quiet = 0;
    let mut prev = g(u).norm();
    while u.abs() < LIMIT {
        u += dir * STEP;
        let cur = g(u);
        let m = cur.norm();
        if m < cutoff {
            quiet += 1;
            if quiet >= 2 {
                let rate = (prev / m).ln() / STEP;
                let tail = if rate.is_finite() && rate > 0.0 { cur / rate } else { Complex64::new(0.0, 0.0) };
                return Ok(TailEnd { end: u, tail });
            }
        } else {
            quiet = 0;
        }
        prev = m;
    }
    Err(Error::Convergence { estimate: Complex64::new(f64::NAN, 0.0), error: f64::INFINITY })
}

/// `int_{-inf}^{inf} f`.
pub fn quad_line<F: Fn(f64) -> Complex64>(f: F, spec: &QuadratureSpec) -> Result<Quad> {
    let right = quad_inf(&f, 0.0, spec)?;
    let left = quad_inf(|x| f(-x), 0.0, spec)?;
    Ok(right + left)
}

/// Half-width of the symmetric principal-value window around `c`.
pub fn pv_half_width(c: f64) -> f64 {
    1.0f64.max(0.1 * (1.0 + c.abs()))
}

/// Principal value of `int_R f(zeta) / (zeta - c) dzeta`.
///
/// On the window `[c-h, c+h]` the integrand is replaced by
/// `(f(zeta) - f(c)) / (zeta - c)`; the `f(c)` log term is `f(c) log(h/h) = 0`
/// for a symmetric window, so the window contributes
/// `int_0^h (f(c+u) - f(c-u)) / u du`.
pub fn quad_pv<F: Fn(f64) -> Complex64>(f: F, c: f64, spec: &QuadratureSpec) -> Result<Quad> {
    let h = pv_half_width(c);
    let fc = f(c);
    let window = quad(
        |u| {
            let up = (f(c + u) - fc) / u;
            let dn = (f(c - u) - fc) / (-u);
            up + dn
        },
        0.0,
        h,
        spec,
    )?;
    let right = quad_inf(|x| f(x) / (x - c), c + h, spec)?;
    let left = quad_inf(|u| -f(c - u) / u, h, spec)?;
    Ok(window + right + left)
}

/// Principal value of `int_lo^hi g(x) / (x - c) dx` for `lo < c < hi`.
pub fn quad_pv_interval<F: Fn(f64) -> Complex64>(
    g: F,
    lo: f64,
    hi: f64,
    c: f64,
    spec: &QuadratureSpec,
) -> Result<Quad> {
    if !(lo < c && c < hi) {
        return Err(Error::Domain(format!("pole {c} not inside ({lo}, {hi})")));
    }
    let h = (c - lo).min(hi - c);
    let window = quad(|u| (g(c + u) - g(c - u)) / u, 0.0, h, spec)?;
    let mut total = window;
    if c + h < hi {
        total = total + quad(|x| g(x) / (x - c), c + h, hi, spec)?;
    }
    if c - h > lo {
        total = total + quad(|x| g(x) / (x - c), lo, c - h, spec)?;
    }
    Ok(total)
}

/// `int_a^b f(zeta) / sqrt((zeta - a)(b - zeta)) dzeta` via
/// `zeta = a + (b - a) sin^2(phi)`, which turns it into `2 int_0^{pi/2} f dphi`.
pub fn quad_band<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Quad> {
    if !(a < b) {
        return Err(Error::Domain(format!("quad_band needs a < b, got a = {a}, b = {b}")));
    }
    let q = quad(
        |phi| {
            let s = phi.sin();
            f(a + (b - a) * s * s)
        },
        0.0,
        FRAC_PI_2,
        spec,
    )?;
    Ok(Quad { value: 2.0 * q.value, error: 2.0 * q.error })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn constant_and_polynomial() {
        let spec = QuadratureSpec::default();
        assert!((quad(|_| re(1.0), 0.0, 1.0, &spec).unwrap().value - 1.0).norm() < 1e-15);
        let b = (2.0f64 / 3.0).sqrt();
        let v = quad_real(|z| z * (b * b - z * z).sqrt(), 0.0, b, &spec).unwrap();
        assert!((v - b * b * b / 3.0).abs() < 1e-13);
    }

    #[test]
    fn gaussian() {
        let spec = QuadratureSpec::default();
        let v = quad_real(|z| (-z * z).exp(), -8.0, 8.0, &spec).unwrap();
        assert!((v - PI.sqrt()).abs() < 1e-14);
        let w = quad_line(|z| re((-z * z).exp()), &spec).unwrap().value.re;
        assert!((w - PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn semi_infinite_algebraic_decay() {
        let spec = QuadratureSpec::default();
        let v = quad_inf(|z| re(1.0 / (1.0 + z * z)), 0.0, &spec).unwrap().value.re;
        assert!((v - PI / 2.0).abs() < 1e-13, "{v}");
        let w = quad_inf(|z| re(1.0 / (z * z)), 1.0, &spec).unwrap().value.re;
        assert!((w - 1.0).abs() < 1e-13, "{w}");
    }

    #[test]
    fn lorentzian_pv() {
        let spec = QuadratureSpec::default();
        for c in [0.0, 1.0, 2.0] {
            let v = quad_pv(|z| re(1.0 / (1.0 + z * z)), c, &spec).unwrap().value.re;
            assert!((v + PI * c / (1.0 + c * c)).abs() < 1e-11, "c = {c}: {v}");
        }
    }

    #[test]
    fn pv_on_interval() {
        // PV int_0^1 1/(x - 1/2) = 0 and PV int_0^2 x/(x - 1/2) = 2 + 1/2 log 3
        let spec = QuadratureSpec::default();
        let v = quad_pv_interval(|_| re(1.0), 0.0, 1.0, 0.5, &spec).unwrap().value.re;
        assert!(v.abs() < 1e-14);
        let w = quad_pv_interval(re, 0.0, 2.0, 0.5, &spec).unwrap().value.re;
        assert!((w - (2.0 + 0.5 * 3.0f64.ln())).abs() < 1e-13);
    }

    #[test]
    fn band_weight() {
        let spec = QuadratureSpec::default();
        assert!((quad_band(|_| re(1.0), 0.3, 0.9, &spec).unwrap().value.re - PI).abs() < 1e-14);
        assert!((quad_band(re, 1.0, 3.0, &spec).unwrap().value.re - 2.0 * PI).abs() < 1e-13);
    }

    #[test]
    fn reports_non_convergence() {
        let spec = QuadratureSpec { max_subdivisions: 2, ..QuadratureSpec::default() };
        let r = quad(|x| re((1.0 / x).sin()), 1e-4, 1.0, &spec);
        assert!(matches!(r, Err(Error::Convergence { .. })));
    }
}
