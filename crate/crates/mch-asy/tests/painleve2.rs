use mch_asy::numerics::airy;
use mch_asy::painleve2::{eval_pii, solve_hastings_mcleod, solve_pii, BvpOptions};

fn residual_max(k: f64) -> f64 {
    let sol = solve_pii(k, -10.0, 10.0, 1e-10).unwrap();
    (0..=1600)
        .map(|i| {
            let s = -8.0 + 0.01 * i as f64 + 0.0031;
            let [v, _, vpp] = sol.eval_jet(s.min(8.0)).unwrap();
            (vpp - s.min(8.0) * v - 2.0 * v * v * v).abs()
        })
        .fold(0.0, f64::max)
}

#[test]
fn ode_residual_small() {
    for k in [0.3, 0.7, 0.99, -0.5] {
        let r = residual_max(k);
        assert!(r < 1e-8, "k = {k}: residual {r:e}");
    }
}

#[test]
fn airy_regime_matches() {
    let sol = solve_pii(0.5, -10.0, 10.0, 1e-10).unwrap();
    let (ai, _) = airy(6.0).unwrap();
    let v = eval_pii(&sol, 6.0).unwrap().v;
    assert!(((v - 0.5 * ai) / (0.5 * ai)).abs() < 1e-6);
}

#[test]
fn hastings_mcleod_value() {
    let sol = solve_pii(1.0, -10.0, 10.0, 1e-10).unwrap();
    let v0 = eval_pii(&sol, 0.0).unwrap().v;
    assert!((v0 - 0.36706155154807).abs() < 1e-9, "{v0}");
    let neg = solve_pii(-1.0, -10.0, 10.0, 1e-10).unwrap();
    assert!((eval_pii(&neg, 0.0).unwrap().v + v0).abs() < 1e-12);
    let coarse =
        solve_hastings_mcleod(1.0, -10.0, 10.0, &BvpOptions { n_fixed: Some(100), ..BvpOptions::for_tol(2e-10) })
            .unwrap();
    assert!((eval_pii(&coarse, 0.0).unwrap().v - v0).abs() < 1e-6);
}

#[test]
fn tail_integral_derivative() {
    for k in [0.3, 1.0] {
        let sol = solve_pii(k, -10.0, 10.0, 1e-10).unwrap();
        for s in [-5.0, -1.3, 0.0, 2.2, 5.0] {
            let h = 1e-4;
            let dq = (eval_pii(&sol, s + h).unwrap().q - eval_pii(&sol, s - h).unwrap().q) / (2.0 * h);
            let v = eval_pii(&sol, s).unwrap().v;
            assert!((dq + v * v).abs() < 1e-8, "k = {k}, s = {s}");
        }
    }
}
