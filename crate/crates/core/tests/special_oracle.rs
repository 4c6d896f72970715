//! Special functions against the mpmath corpus in fixtures/ and the
//! functional-equation / reflection invariants on random samples.

use li_core::special::{
    digamma, log_gamma, xi, xi_logderiv, zeta, zeta_and_derivative, zeta_logderiv, EvalOptions,
};
use li_core::Complex64;
use proptest::prelude::*;

fn fixture(name: &str) -> String {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

fn misc(name: &str) -> f64 {
    fixture("misc_oracle.csv")
        .lines()
        .skip(1)
        .find_map(|l| {
            let (k, v) = l.split_once(',')?;
            (k == name).then(|| v.parse().unwrap())
        })
        .unwrap_or_else(|| panic!("missing {name}"))
}

#[test]
fn corpus_matches_to_1e_10() {
    let opts = EvalOptions::default();
    let mut worst = 0.0f64;
    let mut count = 0;
    for line in fixture("special_oracle.csv").lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        let s = Complex64::new(cols[0].parse().unwrap(), cols[1].parse().unwrap());
        let expected = Complex64::new(cols[3].parse().unwrap(), cols[4].parse().unwrap());
        let got = match cols[2] {
            "zeta" => zeta(s, &opts).unwrap(),
            "xi" => xi(s).unwrap(),
            "digamma" => digamma(s).unwrap(),
            "log_gamma" => log_gamma(s).unwrap(),
            other => panic!("unknown function {other}"),
        };
        let err = (got - expected).norm() / expected.norm().max(1.0);
        worst = worst.max(err);
        assert!(err <= 1e-10, "{} at {s}: got {got}, want {expected}", cols[2]);
        count += 1;
    }
    assert_eq!(count, 50);
    eprintln!("special corpus: 50 points, worst scaled error {worst:.2e}");
}

#[test]
fn zeta_logderiv_at_two_and_four() {
    let opts = EvalOptions::default();
    let v2 = zeta_logderiv(Complex64::new(2.0, 0.0), &opts).unwrap();
    assert!((v2.re - misc("zeta_logderiv_2")).abs() < 1e-13);
    let v4 = zeta_logderiv(Complex64::new(4.0, 0.0), &opts).unwrap();
    assert!((v4.re - misc("zeta_logderiv_4")).abs() < 1e-13);
}

/// -Σ Λ(m) m^{-s} up to m ≤ M, plus the prime-number-theorem tail
/// ∫_M^∞ t^{-s} dt.
fn von_mangoldt_series(s: f64, cutoff: usize) -> f64 {
    let mut sieve = vec![true; cutoff + 1];
    let mut acc = 0.0f64;
    let mut comp = 0.0f64;
    for p in 2..=cutoff {
        if !sieve[p] {
            continue;
        }
        let mut k = p * p;
        while k <= cutoff {
            sieve[k] = false;
            k += p;
        }
        let lp = (p as f64).ln();
        let mut q = p;
        while q <= cutoff {
            let t = lp * (q as f64).powf(-s);
            let y = t - comp;
            let next = acc + y;
            comp = (next - acc) - y;
            acc = next;
            match q.checked_mul(p) {
                Some(n) => q = n,
                None => break,
            }
        }
    }
    let tail = (cutoff as f64).powf(1.0 - s) / (s - 1.0);
    -(acc + tail)
}

#[test]
fn zeta_logderiv_two_routes() {
    let opts = EvalOptions::default();
    // Re s = 4: the Dirichlet series converges quickly
    let em = zeta_logderiv(Complex64::new(4.0, 0.0), &opts).unwrap().re;
    let dirichlet = von_mangoldt_series(4.0, 200_000);
    assert!((em - dirichlet).abs() < 1e-11, "{em} vs {dirichlet}");
    // Re s = 2: slower, tail-corrected
    let em = zeta_logderiv(Complex64::new(2.0, 0.0), &opts).unwrap().re;
    let dirichlet = von_mangoldt_series(2.0, 2_000_000);
    assert!((em - dirichlet).abs() < 1e-6, "{em} vs {dirichlet}");
}

#[test]
fn zeta_logderiv_agrees_with_dirichlet_series_for_re_above_1_5() {
    let opts = EvalOptions::default();
    for &s in &[1.6f64, 2.5, 3.0, 5.0] {
        let em = zeta_logderiv(Complex64::new(s, 0.0), &opts).unwrap().re;
        let cutoff = if s < 2.0 { 5_000_000 } else { 1_000_000 };
        let dirichlet = von_mangoldt_series(s, cutoff);
        // tail-corrected truncation error shrinks like cutoff^{1/2 - s}
        let bound = 50.0 * (cutoff as f64).powf(0.5 - s) * (cutoff as f64).ln();
        assert!(
            (em - dirichlet).abs() < bound.max(1e-10),
            "s={s}: {em} vs {dirichlet}"
        );
    }
}

#[test]
fn zeta_at_first_zero_ordinate() {
    let v = zeta(Complex64::new(0.5, 14.134_725_141_7), &EvalOptions::default()).unwrap();
    assert!(v.norm() < 1e-8);
}

#[test]
fn xi_logderiv_at_zero_matches_lambda_one() {
    let v = xi_logderiv(Complex64::new(0.0, 0.0)).unwrap();
    assert!((v.re - misc("xi_logderiv_0")).abs() < 1e-13);
}

#[test]
fn xi_at_center() {
    assert!((xi(Complex64::new(0.5, 0.0)).unwrap().re - misc("xi_half")).abs() < 1e-13);
}

#[test]
fn functional_equation_on_fixed_random_strip_sample() {
    // 100 points, deterministic LCG so the sample is the same on every run
    let mut state = 0x2545_f491_4f6c_dd1du64;
    let mut next = || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let s = Complex64::new(-5.0 + 11.0 * next(), -50.0 + 100.0 * next());
        let a = xi(s).unwrap();
        let b = xi(1.0 - s).unwrap();
        let err = (a - b).norm() / a.norm().max(1.0);
        worst = worst.max((a - b).norm() / a.norm());
        assert!(err <= 1e-12, "xi(s) != xi(1-s) at {s}: {a} vs {b}");
    }
    eprintln!("functional equation: worst relative error {worst:.2e}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn schwarz_reflection(re in -4.0f64..6.0, im in -40.0f64..40.0) {
        let s = Complex64::new(re, im);
        prop_assume!((s - 1.0).norm() > 1e-3);
        let opts = EvalOptions::default();
        let z = zeta(s, &opts).unwrap();
        let zc = zeta(s.conj(), &opts).unwrap().conj();
        prop_assert!((z - zc).norm() <= 1e-12 * z.norm().max(1.0));
        let x = xi(s).unwrap();
        let xc = xi(s.conj()).unwrap().conj();
        prop_assert!((x - xc).norm() <= 1e-12 * x.norm().max(1.0));
        if let Ok(l) = xi_logderiv(s) {
            let lc = xi_logderiv(s.conj()).unwrap().conj();
            prop_assert!((l - lc).norm() <= 1e-12 * l.norm().max(1.0));
        }
    }

    #[test]
    fn digamma_recurrence_and_reflection(re in -8.0f64..8.0, im in -30.0f64..30.0) {
        let w = Complex64::new(re, im);
        prop_assume!(im.abs() > 1e-3 || (re - re.round()).abs() > 1e-3);
        let rec = digamma(w + 1.0).unwrap() - digamma(w).unwrap() - w.inv();
        prop_assert!(rec.norm() <= 1e-12 * (1.0 + w.inv().norm()));
        // ψ(1-w) - ψ(w) = π cot(πw)
        if im.abs() < 15.0 {
            let pi = std::f64::consts::PI;
            let lhs = digamma(1.0 - w).unwrap() - digamma(w).unwrap();
            let rhs = pi * (pi * w).cos() / (pi * w).sin();
            prop_assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm().max(1.0));
        }
    }

    #[test]
    fn log_gamma_recurrence(re in 0.05f64..40.0, im in -200.0f64..200.0) {
        let s = Complex64::new(re, im);
        let d = log_gamma(s + 1.0).unwrap() - log_gamma(s).unwrap() - s.ln();
        // equal modulo 2πi
        let k = (d.im / (2.0 * std::f64::consts::PI)).round();
        let r = d - Complex64::new(0.0, 2.0 * std::f64::consts::PI * k);
        prop_assert!(r.norm() < 1e-12 * (1.0 + s.norm().ln()));
    }
}

#[test]
fn derivative_consistent_off_critical_line() {
    let opts = EvalOptions::default();
    let s = Complex64::new(-1.5, 6.0);
    let (_, d) = zeta_and_derivative(s, &opts).unwrap();
    let h = 1e-5;
    let fd = (zeta(s + h, &opts).unwrap() - zeta(s - h, &opts).unwrap()) / (2.0 * h);
    assert!((d - fd).norm() < 1e-7 * d.norm().max(1.0));
}
