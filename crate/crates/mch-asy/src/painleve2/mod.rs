//! Painleve II transcendents `v'' = s v + 2 v^3` with `v ~ k Ai(s)` as
//! `s -> +inf`, their tail integrals `Q(s) = int_s^inf v^2`, and the
//! parametrix expansion matrices built from them.
//!
//! Every solution is stored as a uniform-or-adaptive set of nodes carrying
//! the jets `(v, v', v'', v''')` and `(Q, Q', Q'', Q''')`, all derived from the
//! ODE, so evaluation is a degree-7 Hermite interpolation regardless of how
//! the nodes were produced.

mod bvp;
mod ivp;

use nalgebra::Matrix2;
use num_complex::Complex64;
use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::numerics::airy;
use crate::numerics::hermite::{hermite7, Jet};

pub use bvp::{solve_hastings_mcleod, BvpOptions};

pub const DEFAULT_S_MIN: f64 = -10.0;
pub const DEFAULT_S_MAX: f64 = 10.0;
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PiiMethod {
    Zero,
    Ivp,
    Bvp { collocation_points: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct PIISolution {
    pub k: f64,
    pub s_min: f64,
    pub s_max: f64,
    pub tol: f64,
    pub method: PiiMethod,
    nodes: Vec<f64>,
    v: Vec<Jet>,
    q: Vec<Jet>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PiiPoint {
    pub v: f64,
    pub v_prime: f64,
    pub q: f64,
}

impl PIISolution {
    /// Builds the node representation from samples of `(s, v, v', Q)` in
    /// increasing `s`.
    fn from_samples(k: f64, s_min: f64, s_max: f64, tol: f64, method: PiiMethod, samples: &[[f64; 4]]) -> Self {
        let mut nodes = Vec::with_capacity(samples.len());
        let mut v = Vec::with_capacity(samples.len());
        let mut q = Vec::with_capacity(samples.len());
        for &[s, y, yp, qq] in samples {
            let ypp = s * y + 2.0 * y * y * y;
            let yppp = y + s * yp + 6.0 * y * y * yp;
            nodes.push(s);
            v.push([y, yp, ypp, yppp]);
            q.push([qq, -y * y, -2.0 * y * yp, -2.0 * (yp * yp + y * ypp)]);
        }
        Self { k, s_min, s_max, tol, method, nodes, v, q }
    }

    fn locate(&self, s: f64) -> Result<(usize, f64, f64)> {
        if !(s >= self.s_min - 1e-12 && s <= self.s_max + 1e-12) {
            return Err(Error::Range(format!("s = {s} outside [{}, {}]", self.s_min, self.s_max)));
        }
        let n = self.nodes.len();
        let i = self.nodes.partition_point(|&x| x <= s).saturating_sub(1).min(n - 2);
        let h = self.nodes[i + 1] - self.nodes[i];
        let t = ((s - self.nodes[i]) / h).clamp(0.0, 1.0);
        Ok((i, h, t))
    }

    /// `(v, v', v'')` from the interpolant, used for residual checks.
    pub fn eval_jet(&self, s: f64) -> Result<[f64; 3]> {
        let (i, h, t) = self.locate(s)?;
        Ok(hermite7(&self.v[i], &self.v[i + 1], h, t))
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }
}

/// Solves for the transcendent with Airy multiplier `k` on `[s_min, s_max]`.
///
/// `|k| < 1` integrates backward from `s_max`; `|k| = 1` is the
/// Hastings-McLeod separatrix and goes through the collocation solver.
pub fn solve_pii(k: f64, s_min: f64, s_max: f64, tol: f64) -> Result<PIISolution> {
    if !(k.abs() <= 1.0) {
        return Err(Error::Domain(format!("Airy multiplier k = {k} outside [-1, 1]")));
    }
    if !(s_max >= 8.0) || !(s_min >= -12.0) || !(s_min < s_max) || s_max > 30.0 {
        return Err(Error::Domain(format!("need -12 <= s_min < s_max, 8 <= s_max <= 30, got [{s_min}, {s_max}]")));
    }
    if !(tol > 0.0) {
        return Err(Error::Invalid("tolerance must be positive".into()));
    }
    SOLVES.fetch_add(1, Ordering::Relaxed);
    if k == 0.0 {
        let samples = [[s_min, 0.0, 0.0, 0.0], [s_max, 0.0, 0.0, 0.0]];
        return Ok(PIISolution::from_samples(k, s_min, s_max, tol, PiiMethod::Zero, &samples));
    }
    if k.abs() < 1.0 {
        ivp::solve(k, s_min, s_max, tol)
    } else {
        bvp::solve_hastings_mcleod(k, s_min, s_max, &BvpOptions::for_tol(tol))
    }
}

/// `Q(s_max) = int_{s_max}^inf v^2`, taking `v = k Ai` beyond `s_max`.
fn airy_tail(k: f64, s_max: f64) -> Result<(f64, f64, f64)> {
    let (ai, aip) = airy(s_max)?;
    Ok((k * ai, k * aip, k * k * (aip * aip - s_max * ai * ai)))
}

pub fn eval_pii(sol: &PIISolution, s: f64) -> Result<PiiPoint> {
    let (i, h, t) = sol.locate(s)?;
    let v = hermite7(&sol.v[i], &sol.v[i + 1], h, t);
    let q = hermite7(&sol.q[i], &sol.q[i + 1], h, t);
    Ok(PiiPoint { v: v[0], v_prime: v[1], q: q[0] })
}

/// `M^P_1 = (1/2) [[-iQ, v], [v, iQ]]`.
pub fn parametrix_m1(sol: &PIISolution, s: f64) -> Result<Matrix2<Complex64>> {
    let p = eval_pii(sol, s)?;
    let i = Complex64::new(0.0, 1.0);
    let v = Complex64::new(p.v, 0.0);
    Ok(Matrix2::new(-i * p.q, v, v, i * p.q).map(|z| z * 0.5))
}

/// `M^P_2 = (1/8) [[v^2 - Q^2, 2i(vQ + v')], [-2i(vQ + v'), v^2 - Q^2]]`.
pub fn parametrix_m2(sol: &PIISolution, s: f64) -> Result<Matrix2<Complex64>> {
    let p = eval_pii(sol, s)?;
    let i = Complex64::new(0.0, 1.0);
    let d = Complex64::new(p.v * p.v - p.q * p.q, 0.0);
    let off = 2.0 * i * (p.v * p.q + p.v_prime);
    Ok(Matrix2::new(d, off, -off, d).map(|z| z / 8.0))
}

static SOLVES: AtomicUsize = AtomicUsize::new(0);

/// Number of Painleve II solves performed by this process.
pub fn solve_count() -> usize {
    SOLVES.load(Ordering::Relaxed)
}

/// Thread-safe memo of solutions keyed by `k`.
#[derive(Debug)]
pub struct PiiCache {
    pub s_min: f64,
    pub s_max: f64,
    pub tol: f64,
    map: Mutex<HashMap<u64, Arc<PIISolution>>>,
}

impl Default for PiiCache {
    fn default() -> Self {
        Self::new(DEFAULT_TOL)
    }
}

impl PiiCache {
    pub fn new(tol: f64) -> Self {
        Self::with_domain(DEFAULT_S_MIN, DEFAULT_S_MAX, tol)
    }

    pub fn with_domain(s_min: f64, s_max: f64, tol: f64) -> Self {
        Self { s_min, s_max, tol, map: Mutex::new(HashMap::new()) }
    }

    pub fn get(&self, k: f64) -> Result<Arc<PIISolution>> {
        let key = (k + 0.0).to_bits();
        if let Some(sol) = self.map.lock().expect("cache lock").get(&key) {
            return Ok(Arc::clone(sol));
        }
        let sol = Arc::new(solve_pii(k, self.s_min, self.s_max, self.tol)?);
        let mut map = self.map.lock().expect("cache lock");
        Ok(Arc::clone(map.entry(key).or_insert(sol)))
    }

    pub fn len(&self) -> usize {
        self.map.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_solution() {
        let sol = solve_pii(0.0, -10.0, 10.0, 1e-10).unwrap();
        let p = eval_pii(&sol, -3.0).unwrap();
        assert_eq!((p.v, p.v_prime, p.q), (0.0, 0.0, 0.0));
        assert_eq!(parametrix_m1(&sol, 0.0).unwrap(), Matrix2::zeros());
        assert_eq!(parametrix_m2(&sol, 0.0).unwrap(), Matrix2::zeros());
    }

    #[test]
    fn boundary_data_at_s_max() {
        let sol = solve_pii(0.5, -10.0, 10.0, 1e-10).unwrap();
        let (ai, aip) = airy(10.0).unwrap();
        let p = eval_pii(&sol, 10.0).unwrap();
        assert!((p.v - 0.5 * ai).abs() < 1e-16);
        assert!((p.v_prime - 0.5 * aip).abs() < 1e-16);
        assert!(p.q.abs() < 1e-19);
    }

    #[test]
    fn parametrix_structure() {
        let sol = solve_pii(0.5, -10.0, 10.0, 1e-10).unwrap();
        let m1 = parametrix_m1(&sol, 0.0).unwrap();
        assert!(m1.trace().norm() < 1e-16);
        assert!((m1[(0, 1)].re - eval_pii(&sol, 0.0).unwrap().v / 2.0).abs() < 1e-16);
        let m2 = parametrix_m2(&sol, 0.0).unwrap();
        assert_eq!(m2[(0, 0)], m2[(1, 1)]);
        assert_eq!(m2[(0, 1)], -m2[(1, 0)]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(solve_pii(1.5, -10.0, 10.0, 1e-10).is_err());
        assert!(solve_pii(0.5, -10.0, 5.0, 1e-10).is_err());
        let sol = solve_pii(0.5, -10.0, 10.0, 1e-10).unwrap();
        assert!(eval_pii(&sol, 11.0).is_err());
    }

    #[test]
    fn cache_reuses_solutions() {
        let cache = PiiCache::default();
        let a = cache.get(0.3).unwrap();
        let b = cache.get(0.3).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert_eq!(cache.len(), 1);
    }
}
