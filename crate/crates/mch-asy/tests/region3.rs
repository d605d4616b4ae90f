#![allow(clippy::excessive_precision)]

use mch_asy::phase::{RegionConstants, SpaceTimePoint};
use mch_asy::region3::*;
use mch_asy::scattering::ScatteringData;
use mch_asy::Error;
use num_complex::Complex64;

const T: f64 = 1e6;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn xi_mid() -> f64 {
    2.0 - 3.0 * 3f64.cbrt() * T.ln().powf(2.0 / 3.0) * T.powf(-2.0 / 3.0)
}

fn geometry(p: f64, q: f64) -> ShockGeometry {
    let data = ScatteringData::family(1.0, 0.0, 0.5).unwrap();
    let point = SpaceTimePoint::from_xi(xi_mid(), T).unwrap();
    let params = ShockParams::from_data(&point, &data, p, q).unwrap();
    ShockGeometry::new(&params, &data.quad).unwrap()
}

#[test]
fn geometry_matches_high_precision_reference() {
    let g = geometry(1.0, 1.0);
    assert!((g.c_r - 1.0 / 12.0).abs() < 1e-15);
    assert!((g.a - 0.36718226118023661).abs() < 1e-12);
    assert!((g.b - 0.72927625337812500).abs() < 1e-12);
    assert!((g.b1 - c(0.89629547204740977, 0.0)).norm() < 1e-12);
    assert!((g.a1 - c(0.0, 0.33404122758313987)).norm() < 1e-12);
    assert!((g.delta0 - 4.5551881956053317).abs() < 1e-10);
    assert!((g.varkappa - c(0.0, 1.5696972852570521)).norm() < 1e-12);
}

#[test]
fn band_invariants() {
    let g = geometry(1.0, 1.0);
    assert!((g.a * g.a + g.b * g.b - 2.0 / 3.0).abs() < 1e-12);
    let ident = (2.0 - xi_mid()) * (-c(0.0, 1.0) * g.tau * g.a1).exp();
    assert!((ident - 1.0).norm() < 1e-10);
    assert!((g.b1 - 12.0 * g.q * g.c_b).norm() < 1e-12);
}

#[test]
fn band_scales_with_p_and_q() {
    let (g1, g2) = (geometry(1.0, 1.0), geometry(3.0, 2.0));
    let s = (1.0f64 * 3.0 / (1.0 * 2.0)).sqrt();
    assert!((g2.a - s * g1.a).abs() < 1e-10);
    assert!((g2.b - s * g1.b).abs() < 1e-10);
}

#[test]
fn window_violation_is_reported() {
    let params = ShockParams::new(1.0, 1.0, 2.0 - 1e-9, T, 0.1).unwrap();
    assert!(matches!(solve_band(&params, &Default::default()), Err(Error::Window(_))));
}

#[test]
fn abel_map_conventions() {
    let g = geometry(1.0, 1.0);
    assert!((g.a_inf - g.varkappa / 4.0).norm() < 1e-12);
    assert!(abel(&g, Point::On(g.b, Side::Upper)).unwrap().norm() < 1e-7);
    let at_a = abel(&g, Point::On(g.a, Side::Upper)).unwrap();
    assert!((at_a - c(-0.5, 0.0)).norm() < 1e-7, "{at_a}");
    let m = (g.a + g.b) / 2.0;
    let (up, dn) = (abel(&g, Point::On(m, Side::Upper)).unwrap(), abel(&g, Point::On(m, Side::Lower)).unwrap());
    assert!((up + dn).norm() < 1e-12);
    assert!((up - c(-0.22283568636046616, 0.0)).norm() < 1e-12);
    let (up, dn) = (abel(&g, Point::On(-m, Side::Upper)).unwrap(), abel(&g, Point::On(-m, Side::Lower)).unwrap());
    assert!((up + dn - g.varkappa).norm() < 1e-12);
    let (up, dn) = (abel(&g, Point::On(0.1, Side::Upper)).unwrap(), abel(&g, Point::On(0.1, Side::Lower)).unwrap());
    assert!((up - dn + 1.0).norm() < 1e-12);
    assert!(matches!(abel(&g, Point::Off(c(0.5, 0.0))), Err(Error::Branch(_))));
}

#[test]
fn abel_map_is_path_independent() {
    let g = geometry(1.0, 1.0);
    let k = c(2.0, 0.0);
    let up = abel(&g, Point::On(2.0, Side::Upper)).unwrap();
    let dn = abel(&g, Point::On(2.0, Side::Lower)).unwrap();
    let direct = abel(&g, Point::Off(k)).unwrap();
    assert!((up - dn).norm() < 1e-10 && (up - direct).norm() < 1e-12);
}

#[test]
fn g_jumps_and_growth() {
    let g = geometry(1.0, 1.0);
    let side =
        |x: f64| (g_eval(&g, Point::On(x, Side::Upper)).unwrap(), g_eval(&g, Point::On(x, Side::Lower)).unwrap());
    let m = (g.a + g.b) / 2.0;
    let (p, n) = side(m);
    assert!((p + n - g.b1 / 2.0).norm() < 1e-8);
    let (p, n) = side(-m);
    assert!((p + n + g.b1 / 2.0).norm() < 1e-8);
    let (p, n) = side(0.0);
    assert!((p - n - g.a1).norm() < 1e-8);
    for r in [1e2, 1e3] {
        let k = c(r, 0.0);
        let theta_hat = g.p * k - g.q * k * k * k;
        let d = g_eval(&g, Point::Off(k)).unwrap() - theta_hat;
        assert!(d.norm() * r < 1.0, "{d}");
    }
}

#[test]
fn h_jumps_and_decay() {
    let g = geometry(1.0, 1.0);
    let side =
        |x: f64| (h_eval(&g, Point::On(x, Side::Upper)).unwrap(), h_eval(&g, Point::On(x, Side::Lower)).unwrap());
    let m = (g.a + g.b) / 2.0;
    let (p, n) = side(m);
    assert!((p + n - g.delta0).norm() < 1e-8);
    let (p, n) = side(-m);
    assert!((p + n + g.delta0).norm() < 1e-8);
    let x = g.a / 2.0;
    let (p, n) = side(x);
    assert!((p - n - c(0.0, (g.c_r * x * x).ln())).norm() < 1e-8);
    let h1 = h_eval(&g, Point::Off(c(1e2, 30.0))).unwrap();
    let h2 = h_eval(&g, Point::Off(c(1e3, 300.0))).unwrap();
    assert!((h2.norm() / h1.norm() - 0.1).abs() < 1e-3, "{h1} {h2}");
}

#[test]
fn model_solution_jump_determinant_and_normalization() {
    let g = geometry(1.0, 1.0);
    for x in [(g.a + g.b) / 2.0, -(g.a + g.b) / 2.0, 0.6, -0.45] {
        let up = nr7_matrix(&g, Point::On(x, Side::Upper)).unwrap();
        let dn = nr7_matrix(&g, Point::On(x, Side::Lower)).unwrap();
        let err = (up - dn * nr7_jump(&g, x)).norm();
        assert!(err < 1e-8, "jump at {x}: {err}");
    }
    for k in [c(0.3, 0.2), c(2.0, 1.0), c(-1.0, 0.01), c(0.1, -0.5)] {
        let det = nr7_matrix(&g, Point::Off(k)).unwrap().determinant();
        assert!((det - 1.0).norm() < 1e-8, "det at {k}: {det}");
    }
    let far = nr7_matrix(&g, Point::Off(c(1e4, 0.0))).unwrap();
    assert!((far - nalgebra::Matrix2::identity()).norm() < 1e-3);
}

#[test]
fn laurent_coefficients() {
    let g = geometry(1.0, 1.0);
    let co = nr7_coeffs(&g).unwrap();
    assert!((co.n1_12 - c(0.070514176605667466, -0.037908957103760321)).norm() < 1e-8);
    assert!((co.n2_12 - c(-0.029612435614263440, -0.032735402807442115)).norm() < 1e-8);
    assert!((co.n1_12 - co.fit_n1_12).norm() < 1e-7);
    assert!((co.n2_12 - co.fit_n2_12).norm() < 1e-6);
}

#[test]
fn final_formula_as_stated_is_not_real() {
    let g = geometry(1.0, 1.0);
    let br = final_bracket(&g).unwrap();
    assert!((br - c(1233.5363509033208, 6041.2538880332726)).norm() < 1e-6 * br.norm());
    let data = ScatteringData::family(1.0, 0.0, 0.5).unwrap();
    let point = SpaceTimePoint::from_xi(xi_mid(), T).unwrap();
    let err = u_region3(&point, &data, 1.0, 1.0, &RegionConstants::default()).unwrap_err();
    assert!(matches!(err, Error::Reality(_)));
}

#[test]
fn non_generic_data_is_rejected() {
    let data = ScatteringData::family(0.5, 0.0, 0.5).unwrap();
    let point = SpaceTimePoint::from_xi(xi_mid(), T).unwrap();
    let err = u_region3(&point, &data, 1.0, 1.0, &RegionConstants::default()).unwrap_err();
    assert!(matches!(err, Error::Admissibility(_)));
}
