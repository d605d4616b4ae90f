//! Scattering data (reflection coefficient and discrete spectrum) and the
//! T-function built from it.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numerics::{quad_half, QuadratureSpec};

/// `r(z) = kappa_r exp(-beta log^2 z) z^{i alpha}` for `z > 0`, extended by
/// `r(-z) = -conj(r(z))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionFamily {
    pub kappa_r: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl ReflectionFamily {
    fn eval_pos(&self, z: f64) -> Complex64 {
        let l = z.ln();
        self.kappa_r * (-self.beta * l * l).exp() * Complex64::from_polar(1.0, self.alpha * l)
    }
}

/// Reflection coefficient sampled on a sorted grid, interpolated with
/// monotone cubics and continued past the grid by exponential tails.
///
/// A grid that lies entirely in `[0, inf)` describes the positive half-line;
/// negative arguments are then filled in by `r(-z) = -conj(r(z))`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReflectionTable {
    zeta: Vec<f64>,
    re: Pchip,
    im: Pchip,
    values: Vec<Complex64>,
    tail_decay: Option<f64>,
}

impl ReflectionTable {
    pub fn new(zeta: Vec<f64>, values: Vec<Complex64>, tail_decay: Option<f64>) -> Result<Self> {
        if zeta.len() != values.len() || zeta.len() < 2 {
            return Err(Error::Invalid("table needs at least two (zeta, r) rows".into()));
        }
        if zeta.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Invalid("table grid must be strictly increasing".into()));
        }
        if let Some(d) = tail_decay {
            if !(d > 0.0) {
                return Err(Error::Invalid("tail_decay must be positive".into()));
            }
        }
        let re = Pchip::new(&zeta, &values.iter().map(|v| v.re).collect::<Vec<_>>());
        let im = Pchip::new(&zeta, &values.iter().map(|v| v.im).collect::<Vec<_>>());
        Ok(Self { zeta, re, im, values, tail_decay })
    }

    pub fn grid(&self) -> &[f64] {
        &self.zeta
    }

    fn half_line(&self) -> bool {
        self.zeta[0] >= 0.0
    }

    fn eval(&self, z: f64) -> Result<Complex64> {
        if self.half_line() && z < 0.0 {
            return self.eval(-z).map(|v| -v.conj());
        }
        let (lo, hi) = (self.zeta[0], *self.zeta.last().unwrap());
        if z < lo || z > hi {
            let Some(decay) = self.tail_decay else {
                return Err(Error::Domain(format!("zeta = {z} outside the table [{lo}, {hi}]")));
            };
            let (edge, v) = if z < lo { (lo, self.values[0]) } else { (hi, *self.values.last().unwrap()) };
            return Ok(v * (-decay * (z - edge).abs()).exp());
        }
        Ok(Complex64::new(self.re.eval(z), self.im.eval(z)))
    }
}

#[derive(Debug, Clone, PartialEq)]
struct Pchip {
    x: Vec<f64>,
    y: Vec<f64>,
    d: Vec<f64>,
}

impl Pchip {
    fn new(x: &[f64], y: &[f64]) -> Self {
        let n = x.len();
        let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
        let del: Vec<f64> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / h[i]).collect();
        let mut d = vec![0.0; n];
        if n == 2 {
            d[0] = del[0];
            d[1] = del[0];
        } else {
            for i in 1..n - 1 {
                if del[i - 1] * del[i] > 0.0 {
                    let w1 = 2.0 * h[i] + h[i - 1];
                    let w2 = h[i] + 2.0 * h[i - 1];
                    d[i] = (w1 + w2) / (w1 / del[i - 1] + w2 / del[i]);
                }
            }
            d[0] = end_slope(h[0], h[1], del[0], del[1]);
            d[n - 1] = end_slope(h[n - 2], h[n - 3], del[n - 2], del[n - 3]);
        }
        Self { x: x.to_vec(), y: y.to_vec(), d }
    }

    fn eval(&self, z: f64) -> f64 {
        let i = match self.x.partition_point(|&v| v <= z) {
            0 => 0,
            p => (p - 1).min(self.x.len() - 2),
        };
        let h = self.x[i + 1] - self.x[i];
        let t = (z - self.x[i]) / h;
        let (t2, t3) = (t * t, t * t * t);
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * self.y[i] + h10 * h * self.d[i] + h01 * self.y[i + 1] + h11 * h * self.d[i + 1]
    }
}

fn end_slope(h0: f64, h1: f64, del0: f64, del1: f64) -> f64 {
    let d = ((2.0 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
    if d.signum() != del0.signum() {
        0.0
    } else if del0.signum() != del1.signum() && d.abs() > 3.0 * del0.abs() {
        3.0 * del0
    } else {
        d
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ReflectionCoefficient {
    Family(ReflectionFamily),
    Tabulated(ReflectionTable),
}

/// Fourth-quadrant representatives `zeta_j`; the full spectrum adds `-conj(zeta_j)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DiscreteSpectrum {
    pub representatives: Vec<Complex64>,
}

impl DiscreteSpectrum {
    pub fn new(representatives: Vec<Complex64>) -> Self {
        Self { representatives }
    }

    pub fn full(&self) -> Vec<Complex64> {
        let mut all = self.representatives.clone();
        all.extend(self.representatives.iter().map(|z| -z.conj()));
        all
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScatteringData {
    pub r: ReflectionCoefficient,
    pub spectrum: DiscreteSpectrum,
    /// Stored for completeness; no implemented formula reads them.
    pub norming: Vec<Complex64>,
    pub quad: QuadratureSpec,
}

impl ScatteringData {
    pub fn new(r: ReflectionCoefficient, spectrum: DiscreteSpectrum) -> Result<Self> {
        if let ReflectionCoefficient::Family(f) = &r {
            if !(f.kappa_r.abs() <= 1.0) {
                return Err(Error::Invalid(format!("|kappa_r| = {} exceeds 1", f.kappa_r.abs())));
            }
            if !f.alpha.is_finite() || !(f.beta > 0.0 || (f.beta == 0.0 && f.kappa_r == 0.0)) {
                return Err(Error::Invalid("family needs finite alpha and beta > 0".into()));
            }
        }
        if spectrum.representatives.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Invalid("spectrum entries must be finite".into()));
        }
        Ok(Self { r, spectrum, norming: Vec::new(), quad: QuadratureSpec::default() })
    }

    pub fn family(kappa_r: f64, alpha: f64, beta: f64) -> Result<Self> {
        Self::new(ReflectionCoefficient::Family(ReflectionFamily { kappa_r, alpha, beta }), DiscreteSpectrum::default())
    }

    pub fn with_spectrum(mut self, reps: Vec<Complex64>) -> Self {
        self.spectrum = DiscreteSpectrum::new(reps);
        self
    }

    pub fn with_quad(mut self, quad: QuadratureSpec) -> Self {
        self.quad = quad;
        self
    }

    /// True for reflectionless data (identically zero family).
    pub fn is_reflectionless(&self) -> bool {
        matches!(&self.r, ReflectionCoefficient::Family(f) if f.kappa_r == 0.0)
    }

    /// Generic data has `|r(+-1)| = 1`.
    pub fn is_generic(&self) -> Result<bool> {
        Ok((eval_r(self, 1.0)?.norm() - 1.0).abs() < 1e-10 && (eval_r(self, -1.0)?.norm() - 1.0).abs() < 1e-10)
    }

    /// `log(1 - |r|^2)`.
    pub fn log_one_minus_abs2(&self, z: f64) -> Result<f64> {
        let m = eval_r(self, z)?.norm_sqr();
        Ok((-m).ln_1p())
    }

    /// `(|r|^2)''(1)`: closed form for the family, 5-point stencil for tables.
    pub fn abs2_second_derivative_at_one(&self) -> Result<f64> {
        match &self.r {
            ReflectionCoefficient::Family(f) => Ok(-4.0 * f.beta * f.kappa_r * f.kappa_r),
            ReflectionCoefficient::Tabulated(_) => {
                let m = |z: f64| eval_r(self, z).map(|v| v.norm_sqr());
                let stencil = |h: f64| -> Result<f64> {
                    Ok((-m(1.0 + 2.0 * h)? + 16.0 * m(1.0 + h)? - 30.0 * m(1.0)? + 16.0 * m(1.0 - h)?
                        - m(1.0 - 2.0 * h)?)
                        / (12.0 * h * h))
                };
                let (fine, coarse) = (stencil(1e-3)?, stencil(2e-3)?);
                // fourth-order stencil: Richardson step with ratio 2^4
                Ok(fine + (fine - coarse) / 15.0)
            }
        }
    }
}

/// `r(z)` for real `z`.
pub fn eval_r(data: &ScatteringData, z: f64) -> Result<Complex64> {
    if !z.is_finite() {
        return Err(Error::Domain(format!("r evaluated at non-finite {z}")));
    }
    match &data.r {
        ReflectionCoefficient::Family(f) => Ok(if z > 0.0 {
            f.eval_pos(z)
        } else if z < 0.0 {
            -f.eval_pos(-z).conj()
        } else {
            Complex64::new(0.0, 0.0)
        }),
        ReflectionCoefficient::Tabulated(t) => t.eval(z),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryReport {
    /// `max |r(-z) + conj(r(z))|`.
    pub odd_conj: f64,
    /// `max |r(1/z) - conj(r(z))|`.
    pub inversion: f64,
    /// `max (|r(z)| - 1)_+`.
    pub modulus: f64,
    /// Named spectrum invariants that fail.
    pub spectrum_failures: Vec<String>,
    pub tol: f64,
}

impl SymmetryReport {
    pub fn pass(&self) -> bool {
        self.odd_conj <= self.tol
            && self.inversion <= self.tol
            && self.modulus <= self.tol
            && self.spectrum_failures.is_empty()
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.odd_conj > self.tol {
            out.push(format!("r(-z) = -conj(r(z)) violated by {:e}", self.odd_conj));
        }
        if self.inversion > self.tol {
            out.push(format!("r(1/z) = conj(r(z)) violated by {:e}", self.inversion));
        }
        if self.modulus > self.tol {
            out.push(format!("|r| <= 1 violated by {:e}", self.modulus));
        }
        out.extend(self.spectrum_failures.iter().cloned());
        out
    }
}

fn sample_grid(data: &ScatteringData) -> Vec<f64> {
    let mut g: Vec<f64> = (0..=200).map(|i| (-5.0 + 0.05 * i as f64).exp()).collect();
    if let ReflectionCoefficient::Tabulated(t) = &data.r {
        g.extend(t.grid().iter().filter(|z| **z > 0.0).copied());
        g.extend(t.grid().iter().filter(|z| **z < 0.0).map(|z| -z));
    }
    g
}

/// Samples a fixed grid and reports the worst violation of each symmetry.
pub fn check_symmetries(data: &ScatteringData, tol: f64) -> SymmetryReport {
    let (mut odd, mut inv, mut modulus) = (0.0f64, 0.0f64, 0.0f64);
    for z in sample_grid(data) {
        let (Ok(r), Ok(rn), Ok(ri)) = (eval_r(data, z), eval_r(data, -z), eval_r(data, 1.0 / z)) else {
            continue;
        };
        odd = odd.max((rn + r.conj()).norm());
        inv = inv.max((ri - r.conj()).norm());
        modulus = modulus.max(r.norm() - 1.0).max(rn.norm() - 1.0);
    }
    let mut spectrum_failures = Vec::new();
    let reps = &data.spectrum.representatives;
    for (j, z) in reps.iter().enumerate() {
        if (z.norm() - 1.0).abs() > tol {
            spectrum_failures.push(format!("unit circle: |zeta_{}| = {}", j + 1, z.norm()));
        }
        if !(z.im < 0.0 && z.re > 0.0) {
            spectrum_failures.push(format!("fourth quadrant: zeta_{} = {}", j + 1, z));
        }
        if (z - Complex64::new(0.0, 1.0)).norm() == 0.0 {
            spectrum_failures.push(format!("separation: zeta_{} = i", j + 1));
        }
        for (l, w) in reps.iter().enumerate().skip(j + 1) {
            if (z - w).norm() == 0.0 {
                spectrum_failures.push(format!("separation: zeta_{} = zeta_{}", j + 1, l + 1));
            }
        }
    }
    SymmetryReport { odd_conj: odd, inversion: inv, modulus: modulus.max(0.0), spectrum_failures, tol }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TMode {
    NoIntegral,
    FullLine,
}

fn blaschke(data: &ScatteringData, z: Complex64) -> Result<Complex64> {
    let mut p = Complex64::new(1.0, 0.0);
    for zn in data.spectrum.full() {
        if (z - zn).norm() < 1e-14 || (z - zn.conj()).norm() < 1e-14 {
            return Err(Error::Pole(z));
        }
        p *= (z - zn.conj()) / (z - zn);
    }
    Ok(p)
}

/// `int_R log(1 - |r|^2) / (zeta - z)^power dzeta` for `z` off the real line.
fn cauchy_moment(data: &ScatteringData, z: Complex64, power: i32) -> Result<Complex64> {
    if z.im == 0.0 {
        return Err(Error::Domain(format!("Cauchy integral needs z off the real line, got {z}")));
    }
    if data.is_reflectionless() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let spec = &data.quad;
    let kernel = |zeta: f64| -> Complex64 {
        match data.log_one_minus_abs2(zeta) {
            Ok(l) => l / (Complex64::new(zeta, 0.0) - z).powi(power),
            Err(_) => Complex64::new(f64::NAN, 0.0),
        }
    };
    let right = quad_half(kernel, spec)?;
    let left = quad_half(|d| kernel(-d), spec)?;
    let v = right.value + left.value;
    if !v.re.is_finite() || !v.im.is_finite() {
        return Err(Error::Domain("log(1 - |r|^2) is not finite on the line".into()));
    }
    Ok(v)
}

/// `T(z)`: the Blaschke-type product over the spectrum, times the Cauchy
/// exponential in full-line mode.
pub fn t_function(data: &ScatteringData, z: Complex64, mode: TMode) -> Result<Complex64> {
    let p = blaschke(data, z)?;
    match mode {
        TMode::NoIntegral => Ok(p),
        TMode::FullLine => {
            let i = cauchy_moment(data, z, 1)?;
            Ok(p * (-i / Complex64::new(0.0, 2.0 * PI)).exp())
        }
    }
}

/// `log T(i)`, real for admissible data.
pub fn log_t_i(data: &ScatteringData, mode: TMode) -> Result<f64> {
    let sum: f64 = data.spectrum.representatives.iter().map(|z| ((1.0 + z.im) / (1.0 - z.im)).ln()).sum();
    match mode {
        TMode::NoIntegral => Ok(sum),
        TMode::FullLine => {
            let i = cauchy_moment(data, Complex64::new(0.0, 1.0), 1)?;
            Ok(sum + (-i / Complex64::new(0.0, 2.0 * PI)).re)
        }
    }
}

/// `T(i)` and `T_1 = T'(i)` in full-line mode.
///
/// `T_1` is the derivative of the product form, with summand
/// `(conj(z_n) - z_n)/(i - z_n)^2 * prod_{l != n} (i - conj(z_l))/(i - z_l)`.
pub fn t_i_and_t1(data: &ScatteringData) -> Result<(Complex64, Complex64)> {
    let i = Complex64::new(0.0, 1.0);
    let full = data.spectrum.full();
    let p = blaschke(data, i)?;
    let mut dp = Complex64::new(0.0, 0.0);
    for (n, zn) in full.iter().enumerate() {
        let mut term = (zn.conj() - zn) / ((i - zn) * (i - zn));
        for (l, zl) in full.iter().enumerate() {
            if l != n {
                term *= (i - zl.conj()) / (i - zl);
            }
        }
        dp += term;
    }
    let c1 = cauchy_moment(data, i, 1)?;
    let c2 = cauchy_moment(data, i, 2)?;
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let e = (-c1 / two_pi_i).exp();
    let t_i = p * e;
    let t_1 = dp * e - p * (c2 / two_pi_i) * e;
    Ok((t_i, t_1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn family_values() {
        let d = ScatteringData::family(0.5, 0.0, 1.0).unwrap();
        assert_eq!(eval_r(&d, 1.0).unwrap(), c(0.5, 0.0));
        let d = ScatteringData::family(0.5, 2.0, 1.0).unwrap();
        assert!((eval_r(&d, -1.0).unwrap() - c(-0.5, 0.0)).norm() < 1e-16);
        let d = ScatteringData::family(0.8, 1.0, 0.5).unwrap();
        let e = std::f64::consts::E;
        let want = 0.8 * (-0.5f64).exp() * Complex64::from_polar(1.0, 1.0);
        assert!((eval_r(&d, e).unwrap() - want).norm() < 1e-15);
        assert_eq!(eval_r(&d, 0.0).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn flipped_table_entry_is_reported() {
        let zeta: Vec<f64> = (-40..=40).map(|i| i as f64 * 0.1).collect();
        let fam = ScatteringData::family(0.6, 0.3, 0.4).unwrap();
        let mut vals: Vec<Complex64> = zeta.iter().map(|z| eval_r(&fam, *z).unwrap()).collect();
        let k = zeta.iter().position(|z| (*z - 2.0).abs() < 1e-12).unwrap();
        vals[k] = -vals[k];
        let r2 = vals[k].norm();
        let table = ReflectionTable::new(zeta, vals, Some(1.0)).unwrap();
        let d = ScatteringData::new(ReflectionCoefficient::Tabulated(table), DiscreteSpectrum::default()).unwrap();
        let rep = check_symmetries(&d, 1e-12);
        assert!(!rep.pass());
        assert!((rep.odd_conj - 2.0 * r2).abs() < 1e-12, "{} vs {}", rep.odd_conj, 2.0 * r2);
    }

    #[test]
    fn off_circle_spectrum_fails() {
        let d = ScatteringData::family(0.3, 0.0, 1.0)
            .unwrap()
            .with_spectrum(vec![0.9 * Complex64::from_polar(1.0, -PI / 3.0)]);
        let rep = check_symmetries(&d, 1e-12);
        assert!(rep.spectrum_failures.iter().any(|f| f.starts_with("unit circle")));
    }

    #[test]
    fn t_function_simple_cases() {
        let zero = ScatteringData::family(0.0, 0.0, 0.0).unwrap();
        assert_eq!(t_function(&zero, c(0.3, 0.7), TMode::FullLine).unwrap(), c(1.0, 0.0));
        let d = zero.clone().with_spectrum(vec![Complex64::from_polar(1.0, -PI / 3.0)]);
        assert!((t_function(&d, c(0.0, 0.0), TMode::NoIntegral).unwrap() - 1.0).norm() < 1e-15);
        let r3 = 3f64.sqrt() / 2.0;
        let ti = t_function(&d, c(0.0, 1.0), TMode::NoIntegral).unwrap();
        assert!((ti - (1.0 - r3) / (1.0 + r3)).norm() < 1e-15);
        assert!((log_t_i(&d, TMode::NoIntegral).unwrap() - ((1.0 - r3) / (1.0 + r3)).ln()).abs() < 1e-14);
        for x in [0.3, 1.7, 5.0] {
            assert!((t_function(&d, c(x, 0.0), TMode::NoIntegral).unwrap().norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn t1_matches_difference_quotient() {
        let d = ScatteringData::family(0.5, 0.7, 0.6)
            .unwrap()
            .with_spectrum(vec![Complex64::from_polar(1.0, -PI / 3.0), Complex64::from_polar(1.0, -PI / 5.0)]);
        let (ti, t1) = t_i_and_t1(&d).unwrap();
        let h = 1e-4;
        let i = c(0.0, 1.0);
        let fd = (t_function(&d, i + h, TMode::FullLine).unwrap() - t_function(&d, i - h, TMode::FullLine).unwrap())
            / (2.0 * h);
        assert!((fd - t1).norm() < 1e-7 * (1.0 + t1.norm()), "{fd} vs {t1}");
        assert!(ti.im.abs() < 1e-10 * ti.norm());
        assert!((i * t1 / ti).im.abs() < 1e-8);
    }
}
