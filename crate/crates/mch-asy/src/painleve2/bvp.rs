//! Chebyshev collocation with damped Newton for the Hastings-McLeod solution.

use nalgebra::{DMatrix, DVector};
use std::f64::consts::PI;

use super::{airy_tail, ivp, PIISolution, PiiMethod};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BvpOptions {
    pub tol: f64,
    pub n_start: usize,
    pub n_max: usize,
    /// Solve at exactly this many collocation intervals, skipping refinement.
    pub n_fixed: Option<usize>,
    pub max_newton: usize,
}

impl BvpOptions {
    pub fn for_tol(tol: f64) -> Self {
        Self { tol, n_start: 64, n_max: 512, n_fixed: None, max_newton: 60 }
    }
}

struct Grid {
    s: Vec<f64>,
    d: DMatrix<f64>,
    d2: DMatrix<f64>,
}

fn grid(n: usize, s_min: f64, s_max: f64) -> Grid {
    let x: Vec<f64> = (0..=n).map(|j| (PI * j as f64 / n as f64).cos()).collect();
    let c = |j: usize| if j == 0 || j == n { 2.0 } else { 1.0 } * if j.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut d = DMatrix::zeros(n + 1, n + 1);
    for i in 0..=n {
        let mut diag = 0.0;
        for j in 0..=n {
            if i != j {
                let v = c(i) / c(j) / (x[i] - x[j]);
                d[(i, j)] = v;
                diag -= v;
            }
        }
        d[(i, i)] = diag;
    }
    let scale = 2.0 / (s_max - s_min);
    d *= scale;
    let d2 = &d * &d;
    let s = x.iter().map(|&xj| 0.5 * (s_max + s_min) + 0.5 * (s_max - s_min) * xj).collect();
    Grid { s, d, d2 }
}

/// Left boundary value `sign(k) sqrt(-s/2) (1 + 1/(8 s^3))`.
fn left_value(k: f64, s_min: f64) -> f64 {
    k.signum() * (-s_min / 2.0).sqrt() * (1.0 + 1.0 / (8.0 * s_min.powi(3)))
}

/// Chebyshev coefficients from values at the nodes `cos(pi j / n)`.
fn cheb_coeffs(f: &[f64]) -> Vec<f64> {
    let n = f.len() - 1;
    (0..=n)
        .map(|k| {
            let mut acc = 0.0;
            for (j, fj) in f.iter().enumerate() {
                let w = if j == 0 || j == n { 0.5 } else { 1.0 };
                acc += w * fj * (PI * (j * k) as f64 / n as f64).cos();
            }
            let scale = if k == 0 || k == n { 1.0 } else { 2.0 };
            scale * acc / n as f64
        })
        .collect()
}

fn clenshaw(c: &[f64], x: f64) -> f64 {
    let (mut b1, mut b2) = (0.0, 0.0);
    for &ck in c.iter().skip(1).rev() {
        let b0 = 2.0 * x * b1 - b2 + ck;
        b2 = b1;
        b1 = b0;
    }
    x * b1 - b2 + c[0]
}

fn barycentric(s_nodes: &[f64], vals: &[f64], s: f64) -> f64 {
    let n = s_nodes.len() - 1;
    let (mut num, mut den) = (0.0, 0.0);
    for j in 0..=n {
        let diff = s - s_nodes[j];
        if diff == 0.0 {
            return vals[j];
        }
        let w = if j == 0 || j == n { 0.5 } else { 1.0 } * if j % 2 == 0 { 1.0 } else { -1.0 };
        num += w * vals[j] / diff;
        den += w / diff;
    }
    num / den
}

fn residual(g: &Grid, v: &DVector<f64>, right: f64, left: f64) -> DVector<f64> {
    let n = v.len() - 1;
    let mut f = &g.d2 * v;
    for j in 0..=n {
        f[j] -= g.s[j] * v[j] + 2.0 * v[j].powi(3);
    }
    f[0] = v[0] - right;
    f[n] = v[n] - left;
    f
}

fn newton(g: &Grid, mut v: DVector<f64>, right: f64, left: f64, opts: &BvpOptions) -> Result<DVector<f64>> {
    let n = v.len() - 1;
    let mut f = residual(g, &v, right, left);
    for _ in 0..opts.max_newton {
        let mut jac = g.d2.clone();
        for j in 0..=n {
            jac[(j, j)] -= g.s[j] + 6.0 * v[j] * v[j];
        }
        for col in 0..=n {
            jac[(0, col)] = 0.0;
            jac[(n, col)] = 0.0;
        }
        jac[(0, 0)] = 1.0;
        jac[(n, n)] = 1.0;
        let dv = jac.lu().solve(&(-&f)).ok_or_else(|| Error::Bvp("singular Newton matrix".into()))?;
        let norm0 = f.norm();
        let mut lambda = 1.0;
        let (mut v_try, mut f_try);
        loop {
            v_try = &v + &dv * lambda;
            f_try = residual(g, &v_try, right, left);
            if f_try.norm() < (1.0 - lambda / 4.0) * norm0 || lambda < 1e-4 {
                break;
            }
            lambda /= 2.0;
        }
        v = v_try;
        f = f_try;
        let step = dv.amax() * lambda;
        if step < 1e-3 * opts.tol.min(1e-12) || (lambda == 1.0 && step < 1e-14) {
            return Ok(v);
        }
    }
    Err(Error::Bvp(format!("Newton did not converge with {n} collocation intervals (residual {:e})", f.amax())))
}

fn seed(k: f64, s_max: f64, s_nodes: &[f64]) -> Result<DVector<f64>> {
    const MATCH: f64 = -3.5;
    let traj = ivp::trajectory(k, -4.0, s_max)?;
    let lookup = |s: f64| {
        let i = traj.partition_point(|p| p.0 <= s).clamp(1, traj.len() - 1);
        let (s0, v0) = traj[i - 1];
        let (s1, v1) = traj[i];
        v0 + (v1 - v0) * (s - s0) / (s1 - s0)
    };
    Ok(DVector::from_iterator(
        s_nodes.len(),
        s_nodes.iter().map(|&s| {
            let hm = k.signum() * (-s).max(0.0).sqrt() / 2f64.sqrt() * (1.0 + 1.0 / (8.0 * s.min(-1.0).powi(3)));
            let w = 0.5 * (1.0 + (2.0 * (s - MATCH)).tanh());
            let iv = lookup(s.clamp(-4.0, s_max));
            w * iv + (1.0 - w) * hm
        }),
    ))
}

/// Solves the Hastings-McLeod problem for `k = +-1` on `[s_min, s_max]`,
/// doubling the collocation size until the Chebyshev tail drops below `tol`.
pub fn solve_hastings_mcleod(k: f64, s_min: f64, s_max: f64, opts: &BvpOptions) -> Result<PIISolution> {
    if k.abs() != 1.0 {
        return Err(Error::Domain(format!("Hastings-McLeod needs k = +-1, got {k}")));
    }
    let (right, _, q_tail) = airy_tail(k, s_max)?;
    let left = left_value(k, s_min);
    let mut n = opts.n_fixed.unwrap_or(opts.n_start);
    let mut g = grid(n, s_min, s_max);
    let mut v = newton(&g, seed(k, s_max, &g.s)?, right, left, opts)?;
    loop {
        let c = cheb_coeffs(v.as_slice());
        let tail = c.iter().rev().take(8).fold(0.0f64, |m, x| m.max(x.abs()));
        if opts.n_fixed.is_some() || tail < opts.tol * 1e-2 {
            break;
        }
        if 2 * n > opts.n_max {
            return Err(Error::Bvp(format!("Chebyshev tail {tail:e} above tolerance at n = {n}")));
        }
        let n2 = 2 * n;
        let g2 = grid(n2, s_min, s_max);
        let init = DVector::from_iterator(n2 + 1, g2.s.iter().map(|&s| barycentric(&g.s, v.as_slice(), s)));
        v = newton(&g2, init, right, left, opts)?;
        n = n2;
        g = g2;
    }

    let vp = &g.d * &v;
    // Q(s) = Q(s_max) + int_s^{s_max} v^2 via the Chebyshev antiderivative
    let sq: Vec<f64> = v.iter().map(|x| x * x).collect();
    let c = cheb_coeffs(&sq);
    let mut anti = vec![0.0; c.len() + 1];
    for kk in 1..anti.len() {
        let prev = c[kk - 1];
        let next = c.get(kk + 1).copied().unwrap_or(0.0);
        anti[kk] = if kk == 1 { prev - next / 2.0 } else { (prev - next) / (2.0 * kk as f64) };
    }
    let half_len = 0.5 * (s_max - s_min);
    let at_top = clenshaw(&anti, 1.0);
    let to_x = |s: f64| (2.0 * s - s_max - s_min) / (s_max - s_min);

    let m = ((s_max - s_min) / ivp::MAX_STEP).ceil() as usize;
    let samples: Vec<[f64; 4]> = (0..=m)
        .map(|i| {
            let s = if i == m { s_max } else { s_min + (s_max - s_min) * i as f64 / m as f64 };
            let vs = barycentric(&g.s, v.as_slice(), s);
            let vps = barycentric(&g.s, vp.as_slice(), s);
            let q = q_tail + half_len * (at_top - clenshaw(&anti, to_x(s)));
            [s, vs, vps, q]
        })
        .collect();
    Ok(PIISolution::from_samples(k, s_min, s_max, opts.tol, PiiMethod::Bvp { collocation_points: n + 1 }, &samples))
}
