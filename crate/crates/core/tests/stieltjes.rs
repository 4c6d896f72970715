//! Stieltjes constants and η_k against the mpmath contour-integral oracle,
//! plus the two-route and Laurent-identity checks.

use li_core::special::{zeta_logderiv, EvalOptions};
use li_core::stieltjes::{eta_from_powerseries, eta_from_vonmangoldt, stieltjes_constants};
use li_core::Complex64;

fn oracle() -> Vec<(f64, f64)> {
    let path = format!("{}/fixtures/stieltjes_oracle.csv", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[1].parse().unwrap(), f[2].parse().unwrap())
        })
        .collect()
}

#[test]
fn stieltjes_constants_match_oracle() {
    let g = stieltjes_constants(20).unwrap();
    for (k, (&ours, &(truth, _))) in g.iter().zip(&oracle()).enumerate() {
        let tol = if k <= 10 { 1e-10 } else { 1e-7 };
        assert!((ours - truth).abs() <= tol, "gamma_{k}: {ours} vs {truth}");
    }
}

#[test]
fn eta_matches_independent_oracle() {
    let t = eta_from_powerseries(20).unwrap();
    for (k, &(_, truth)) in oracle().iter().enumerate() {
        let err = (t.eta[k] - truth).abs();
        let tol = if k <= 10 { 1e-10 } else { 1e-7 };
        assert!(err <= tol, "eta_{k}: {} vs {truth}", t.eta[k]);
        assert!(err <= t.err_est[k].max(1e-12) * 10.0, "eta_{k} err {err:e} est {:e}", t.err_est[k]);
    }
}

#[test]
fn gamma_zero_from_limit_definition() {
    let opts = EvalOptions::default();
    let s = 1e-3;
    let z = li_core::special::zeta(Complex64::new(1.0 + s, 0.0), &opts).unwrap();
    let g0 = stieltjes_constants(0).unwrap()[0];
    assert!((z.re - 1.0 / s - g0).abs() < 2e-3);
}

#[test]
fn laurent_residual() {
    let opts = EvalOptions::default();
    let t8 = eta_from_powerseries(8).unwrap();
    let ld = zeta_logderiv(Complex64::new(1.1, 0.0), &opts).unwrap().re;
    assert!((1.0 / 0.1 + t8.laurent_regular_part(0.1) + ld).abs() < 1e-8);

    let t = eta_from_powerseries(12).unwrap();
    for i in 1..=10 {
        let s = 0.05 * i as f64;
        let ld = zeta_logderiv(Complex64::new(1.0 + s, 0.0), &opts).unwrap().re;
        let r = (1.0 / s + t.laurent_regular_part(s) + ld).abs();
        assert!(r <= 1e-7, "s={s}: residual {r:e}");
    }
}

#[test]
fn von_mangoldt_route_agrees() {
    let t = eta_from_powerseries(6).unwrap();
    for k in 0..=4 {
        let v = eta_from_vonmangoldt(k, 1e6).unwrap();
        eprintln!("k={k} vm={v} ps={} diff={:e}", t.eta[k], (v - t.eta[k]).abs());
        assert!((v - t.eta[k]).abs() <= 3e-3, "k={k}");
    }
    assert!((eta_from_vonmangoldt(0, 1e6).unwrap() + 0.577).abs() < 1e-3);
    assert!((eta_from_vonmangoldt(1, 1e6).unwrap() - t.eta[1]).abs() < 1e-3);
}
