//! Riemann zeta and its derivative by Euler–Maclaurin summation.
//!
//! ζ(s) = Σ_{n<N} n^{-s} + N^{1-s}/(s-1) + N^{-s}/2
//!        + Σ_k B_{2k}/(2k)! · s(s+1)…(s+2k-2) · N^{-s-2k+1} + R
//!
//! The derivative is summed termwise alongside, carrying d/ds of each
//! Pochhammer factor as a dual number. Left of the line Re(s) = 0 both are
//! taken from the functional equation.

use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::OnceLock;

use super::bernoulli;
use super::gamma::{digamma, ln_cos, ln_sin, log_gamma};
use super::EvalOptions;
use crate::error::{fmt_c, Error, Result};
use crate::sum::ComplexKahanSum;

const LN_TABLE_LEN: usize = 1 << 15;
const MAX_CORRECTIONS: usize = 24;

fn ln_n(n: usize) -> f64 {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    if n < LN_TABLE_LEN {
        TABLE.get_or_init(|| (0..LN_TABLE_LEN).map(|k| (k.max(1) as f64).ln()).collect())[n]
    } else {
        (n as f64).ln()
    }
}

/// n^{-s} with the phase product t·ln n formed exactly through an FMA.
#[inline]
fn pow_neg(n: usize, s: Complex64) -> (Complex64, f64) {
    let l = ln_n(n);
    let mag = (-s.re * l).exp();
    let phase = s.im * l;
    let err = s.im.mul_add(l, -phase);
    let (sin, cos) = phase.sin_cos();
    // cos(p + e) - i sin(p + e) to first order in the tiny e
    let c = cos - err * sin;
    let sn = sin + err * cos;
    (Complex64::new(mag * c, -mag * sn), l)
}

fn initial_cutoff(s: Complex64) -> usize {
    (0.7 * s.norm()).ceil().max(20.0) as usize
}

/// ζ(s) and ζ'(s) together.
pub fn zeta_and_derivative(s: Complex64, opts: &EvalOptions) -> Result<(Complex64, Complex64)> {
    if (s - 1.0).norm() < 1e-14 {
        return Err(Error::Pole {
            function: "zeta",
            at: fmt_c(s),
        });
    }
    if s.re < 0.0 {
        return reflected(s, opts);
    }
    let mut n = initial_cutoff(s);
    loop {
        if n > opts.max_terms {
            return Err(Error::AccuracyNotReached {
                function: "zeta",
                terms: opts.max_terms,
            });
        }
        if let Some(pair) = euler_maclaurin(s, n, opts) {
            return Ok(pair);
        }
        n *= 2;
    }
}

fn euler_maclaurin(s: Complex64, n: usize, opts: &EvalOptions) -> Option<(Complex64, Complex64)> {
    let mut sum = ComplexKahanSum::new();
    let mut dsum = ComplexKahanSum::new();
    for k in 1..n {
        let (p, l) = pow_neg(k, s);
        sum.add(p);
        dsum.add(-l * p);
    }
    let (n_s, ln_big) = pow_neg(n, s);
    let nf = n as f64;
    let sm1 = s - 1.0;
    let integral = nf * n_s / sm1;
    sum.add(integral);
    dsum.add(-ln_big * integral - integral / sm1);
    sum.add(0.5 * n_s);
    dsum.add(-0.5 * ln_big * n_s);

    // dual number (p, dp) for s(s+1)...(s+2k-2)
    let mut p = s;
    let mut dp = Complex64::new(1.0, 0.0);
    let mut n_pow = n_s / nf; // N^{-s-1}
    let inv_n2 = 1.0 / (nf * nf);
    let tol = 0.01 * opts.target_abs_err;
    let mut prev = f64::INFINITY;
    for k in 1..=MAX_CORRECTIONS.min(bernoulli::MAX_INDEX) {
        let c = bernoulli::over_factorial(k);
        let term = c * p * n_pow;
        let dterm = c * (dp - ln_big * p) * n_pow;
        sum.add(term);
        dsum.add(dterm);
        let size = term.norm().max(dterm.norm() / (1.0 + ln_big));
        let scale = sum.value().norm().max(1.0);
        if size <= tol * scale {
            return Some((sum.value(), dsum.value()));
        }
        if size > prev {
            // asymptotic series started to diverge
            return None;
        }
        prev = size;
        let a = s + (2 * k - 1) as f64;
        let b = s + (2 * k) as f64;
        let ab = a * b;
        dp = dp * ab + p * (a + b);
        p *= ab;
        n_pow *= inv_n2;
    }
    None
}

/// ζ(s) = χ(s) ζ(1-s), χ(s) = 2^s π^{s-1} sin(πs/2) Γ(1-s).
fn reflected(s: Complex64, opts: &EvalOptions) -> Result<(Complex64, Complex64)> {
    let one_minus = 1.0 - s;
    let (z, dz) = zeta_and_derivative(one_minus, opts)?;
    let base = s * 2f64.ln() + (s - 1.0) * PI.ln() + log_gamma(one_minus)?;
    let w = s * (PI / 2.0);
    let chi = if w.im.abs() < 20.0 {
        base.exp() * w.sin()
    } else {
        (base + ln_sin(w)).exp()
    };
    let chi_cot = if w.im.abs() < 20.0 {
        base.exp() * w.cos()
    } else {
        (base + ln_cos(w)).exp()
    };
    let dchi = chi * ((2.0 * PI).ln() - digamma(one_minus)?) + (PI / 2.0) * chi_cot;
    let value = chi * z;
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(Error::Overflow {
            function: "zeta",
            at: fmt_c(s),
        });
    }
    Ok((value, dchi * z - chi * dz))
}

pub fn zeta(s: Complex64, opts: &EvalOptions) -> Result<Complex64> {
    zeta_and_derivative(s, opts).map(|(z, _)| z)
}

/// ζ'(s)/ζ(s). Fails when s sits within about 1e-10 of a zero.
pub fn zeta_logderiv(s: Complex64, opts: &EvalOptions) -> Result<Complex64> {
    let (z, dz) = zeta_and_derivative(s, opts)?;
    if z.norm() <= 1e-10 * dz.norm() {
        return Err(Error::NearZero {
            function: "zeta_logderiv",
            at: fmt_c(s),
            distance: z.norm() / dz.norm(),
        });
    }
    Ok(dz / z)
}
