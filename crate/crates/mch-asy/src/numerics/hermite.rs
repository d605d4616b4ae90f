//! Two-point Hermite interpolation matching value and first three derivatives.

/// Values `[y, y', y'', y''']` at one end of a step.
pub type Jet = [f64; 4];

// inverse of the matrix mapping t^4..t^7 coefficients to (r, r', r'', r''') at t = 1
const MINV: [[f64; 4]; 4] = [
    [35.0, -15.0, 2.5, -1.0 / 6.0],
    [-84.0, 39.0, -7.0, 0.5],
    [70.0, -34.0, 6.5, -0.5],
    [-20.0, 10.0, -2.0, 1.0 / 6.0],
];

/// Evaluates the degree-7 interpolant on `[s0, s0 + h]` at local time
/// `t in [0, 1]`, returning the value and its first two derivatives in `s`.
pub fn hermite7(left: &Jet, right: &Jet, h: f64, t: f64) -> [f64; 3] {
    let a0 = left[0];
    let a1 = h * left[1];
    let a2 = h * h * left[2] / 2.0;
    let a3 = h * h * h * left[3] / 6.0;
    let f = [
        right[0] - (a0 + a1 + a2 + a3),
        h * right[1] - (a1 + 2.0 * a2 + 3.0 * a3),
        h * h * right[2] - (2.0 * a2 + 6.0 * a3),
        h * h * h * right[3] - 6.0 * a3,
    ];
    let mut c = [a0, a1, a2, a3, 0.0, 0.0, 0.0, 0.0];
    for i in 0..4 {
        c[4 + i] = (0..4).map(|j| MINV[i][j] * f[j]).sum();
    }
    let (mut p, mut dp, mut ddp) = (0.0, 0.0, 0.0);
    for n in (0..8).rev() {
        ddp = ddp * t + 2.0 * dp;
        dp = dp * t + p;
        p = p * t + c[n];
    }
    [p, dp / h, ddp / (h * h)]
}
