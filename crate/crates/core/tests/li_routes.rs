//! The three λ_n routes against each other and the mpmath values.

mod common;

use common::{oracle_lambda, rows, zeros_1000};
use li_core::li::{li_arithmetic, li_norm, li_verify, li_zero_sum, LiReport};
use li_core::modelspace::HnContext;
use li_core::quad::QuadConfig;
use li_core::special::xi_logderiv;
use li_core::stieltjes::eta_from_powerseries;
use li_core::zeros::find_zeros;
use li_core::Complex64;

#[test]
fn arithmetic_matches_oracle_up_to_twenty() {
    let eta = eta_from_powerseries(20).unwrap();
    for n in 1..=20 {
        let v = li_arithmetic(n, &eta).unwrap();
        let truth = oracle_lambda(n);
        assert!((v - truth).abs() < 1e-9 * truth.max(1.0), "λ_{n}: {v} vs {truth}");
        assert!(v > 0.0);
    }
}

#[test]
fn lambda_one_cross_form() {
    let eta = eta_from_powerseries(0).unwrap();
    let v = li_arithmetic(1, &eta).unwrap();
    let ld = xi_logderiv(Complex64::new(0.0, 0.0)).unwrap().re;
    assert!((v + ld).abs() < 1e-10);
    assert!((v - 0.0230957).abs() < 1e-6);
}

#[test]
fn zero_sum_within_budget() {
    let zeros = zeros_1000();
    let eta = eta_from_powerseries(9).unwrap();
    for n in 1..=10 {
        let z = li_zero_sum(n, zeros).unwrap();
        let a = li_arithmetic(n, &eta).unwrap();
        assert!(z.tail > 0.0);
        assert!((z.value - a).abs() <= z.tail + 1e-6 * n as f64, "n={n}");
    }
    let one = li_zero_sum(1, zeros).unwrap();
    assert!((one.value - 0.0231).abs() < 2e-3);
}

#[test]
fn zero_sum_at_2000_for_n_up_to_ten() {
    let zeros = find_zeros(2000.0).unwrap();
    let eta = eta_from_powerseries(9).unwrap();
    for n in 2..=10 {
        let z = li_zero_sum(n, &zeros).unwrap();
        let a = li_arithmetic(n, &eta).unwrap();
        assert!((z.value - a).abs() <= z.tail, "n={n}");
    }
}

#[test]
fn tail_budget_decreases_with_height() {
    let zeros = zeros_1000();
    for n in [1, 4] {
        let budgets: Vec<f64> = [200.0, 400.0, 700.0, 1000.0]
            .iter()
            .map(|&t| li_zero_sum(n, &zeros.truncated(t)).unwrap().tail)
            .collect();
        assert!(budgets.windows(2).all(|w| w[1] < w[0]), "{budgets:?}");
    }
}

#[test]
fn norm_convergence_matches_archive() {
    let eta = eta_from_powerseries(1).unwrap();
    for n in [1u32, 2] {
        let ctx = HnContext::new(n).unwrap();
        let arith = li_arithmetic(n, &eta).unwrap();
        let mut errs = Vec::new();
        for row in rows("norm_convergence.csv").iter().filter(|r| r[0] == n.to_string()) {
            let span: f64 = row[1].parse().unwrap();
            let archived: f64 = row[2].parse().unwrap();
            let now = li_norm(&ctx, &QuadConfig::with_span(span)).unwrap().value;
            assert!((now - archived).abs() < 1e-9 * archived, "n={n} span={span}");
            errs.push((span, (now - arith).abs()));
        }
        errs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        assert_eq!(errs.len(), 2);
        assert!(errs[1].1 <= errs[0].1, "n={n}: {errs:?}");
    }
}

#[test]
fn report_round_trip_and_verdicts() {
    let zeros = zeros_1000();
    let report = li_verify(3, zeros, Some(&QuadConfig::default())).unwrap();
    assert!(report.passed(), "{}", report.to_json());
    assert_eq!(report.verdicts.len(), 3);
    for v in &report.verdicts {
        assert_eq!(v.pass, v.difference <= v.tolerance);
    }
    let back = LiReport::from_json(&report.to_json()).unwrap();
    assert_eq!(back, report);
    let json: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
    assert_eq!(json["schema"], "li-report-v1");
    assert!(json["zero_sum"]["value"].is_number());
    assert!(json["zero_sum"]["tail"].is_number());
    assert!(json["arithmetic"]["value"].is_number());
    assert!(json["norm"]["err"].is_number());
}

#[test]
fn n_one_all_routes_within_two_percent() {
    let report = li_verify(1, zeros_1000(), Some(&QuadConfig::default())).unwrap();
    let target = 0.0230957;
    for v in [
        report.zero_sum.value,
        report.arithmetic.value,
        report.norm.unwrap().value,
    ] {
        assert!((v / target - 1.0).abs() < 0.02, "{v}");
    }
}
