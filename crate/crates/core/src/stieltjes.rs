//! Stieltjes constants γ_k and the Laurent coefficients η_k of
//!
//! ```text
//! −ζ'/ζ(s+1) = 1/s + Σ_{k≥0} η_k s^k.
//! ```
//!
//! The γ_k come from Euler–Maclaurin applied to Σ (ln m)^k/m; the η_k from
//! the formal logarithmic derivative of s·ζ(1+s). A slow von Mangoldt
//! estimate of η_k is kept as an independent check.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::bernoulli;
use crate::sum::KahanSum;

pub const MAX_K: usize = 20;
const EM_CUTOFF: usize = 16;
const EM_CORRECTIONS: usize = 14;

/// η_0..η_{max_k} with the Stieltjes constants they were built from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EtaTable {
    pub max_k: usize,
    pub eta: Vec<f64>,
    pub gamma_stieltjes: Vec<f64>,
    pub err_est: Vec<f64>,
}

impl EtaTable {
    pub fn eta(&self, k: usize) -> Option<f64> {
        self.eta.get(k).copied()
    }

    /// −ζ'/ζ(1+s) − 1/s from the truncated series.
    pub fn laurent_regular_part(&self, s: f64) -> f64 {
        self.eta.iter().rev().fold(0.0, |acc, &e| acc * s + e)
    }
}

fn check_k(max_k: usize) -> Result<()> {
    if max_k > MAX_K {
        return Err(Error::Range {
            what: "max_k",
            value: max_k as f64,
            range: "[0, 20]",
        });
    }
    Ok(())
}

/// γ_0..γ_{max_k}.
pub fn stieltjes_constants(max_k: usize) -> Result<Vec<f64>> {
    check_k(max_k)?;
    Ok((0..=max_k).map(|k| stieltjes_em(k, EM_CUTOFF).0).collect())
}

/// γ_k by Euler–Maclaurin at cutoff `n`, with a rounding-size estimate.
///
/// γ_k = Σ_{m<N} f(m) + f(N)/2 − (ln N)^{k+1}/(k+1) − Σ_r B_{2r}/(2r)! f^{(2r−1)}(N)
/// for f(x) = (ln x)^k / x. Derivatives are f^{(r)} = p_r(ln x) / x^{r+1}
/// with p_{r+1} = p_r' − (r+1) p_r.
fn stieltjes_em(k: usize, n: usize) -> (f64, f64) {
    let f = |m: usize| {
        let l = (m as f64).ln();
        l.powi(k as i32) / m as f64
    };
    let mut acc = KahanSum::new();
    let mut magnitude = 0.0;
    for m in 1..n {
        let v = f(m);
        acc.add(v);
        magnitude += v.abs();
    }
    let big_l = (n as f64).ln();
    let nf = n as f64;
    acc.add(0.5 * f(n));
    let integral = big_l.powi(k as i32 + 1) / (k as f64 + 1.0);
    acc.add(-integral);
    magnitude += integral;

    // polynomial in L, coefficient index = power
    let mut p = vec![0.0; k + 1];
    p[k] = 1.0;
    let eval = |p: &[f64]| p.iter().rev().fold(0.0, |a, &c| a * big_l + c);
    for r in 0..(2 * EM_CORRECTIONS) {
        // p currently holds p_r; advance to p_{r+1}
        let mut next = vec![0.0; p.len()];
        for (j, &c) in p.iter().enumerate() {
            next[j] -= (r as f64 + 1.0) * c;
            if j > 0 {
                next[j - 1] += j as f64 * c;
            }
        }
        p = next;
        let order = r + 1;
        if order % 2 == 1 {
            let idx = (order + 1) / 2;
            let term = bernoulli::over_factorial(idx) * eval(&p) / nf.powi(order as i32 + 1);
            acc.add(-term);
        }
    }
    (acc.value(), magnitude * f64::EPSILON * 4.0)
}

/// η_k for k ≤ max_k from the formal log-derivative of
/// A(s) = s·ζ(1+s) = 1 + Σ (−1)^k γ_k s^{k+1}/k!, using −ζ'/ζ(1+s) = 1/s − A'/A.
pub fn eta_from_powerseries(max_k: usize) -> Result<EtaTable> {
    check_k(max_k)?;
    let gammas: Vec<(f64, f64)> = (0..=max_k)
        .map(|k| {
            let (a, round) = stieltjes_em(k, EM_CUTOFF);
            let (b, _) = stieltjes_em(k, 2 * EM_CUTOFF);
            (a, (a - b).abs() + round)
        })
        .collect();
    let gamma_stieltjes: Vec<f64> = gammas.iter().map(|g| g.0).collect();
    let eta = log_derivative_coefficients(&gamma_stieltjes);
    let perturbed: Vec<f64> = gammas.iter().map(|g| g.0 + g.1).collect();
    let eta_perturbed = log_derivative_coefficients(&perturbed);
    let err_est = eta
        .iter()
        .zip(&eta_perturbed)
        .map(|(a, b)| (a - b).abs() + 1e-15 * (1.0 + a.abs()))
        .collect();
    Ok(EtaTable {
        max_k,
        eta,
        gamma_stieltjes,
        err_est,
    })
}

fn log_derivative_coefficients(gammas: &[f64]) -> Vec<f64> {
    let len = gammas.len() + 1;
    let mut a = vec![0.0; len];
    a[0] = 1.0;
    let mut fact = 1.0;
    for (k, &g) in gammas.iter().enumerate() {
        if k > 0 {
            fact *= k as f64;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        a[k + 1] = sign * g / fact;
    }
    let da: Vec<f64> = (1..len).map(|j| j as f64 * a[j]).collect();
    // q = A'/A by series division (a[0] = 1)
    let mut q = vec![0.0; da.len()];
    for i in 0..q.len() {
        let mut acc = KahanSum::new();
        acc.add(da[i]);
        for j in 1..=i {
            acc.add(-a[j] * q[i - j]);
        }
        q[i] = acc.value();
    }
    q.into_iter().map(|c| -c).collect()
}

/// Primes up to `limit` by the sieve of Eratosthenes.
pub fn primes_up_to(limit: usize) -> Vec<usize> {
    if limit < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// (q, Λ(q)) for every prime power q ≤ limit, ascending in q.
pub fn prime_powers(limit: usize) -> Vec<(usize, f64)> {
    let mut out = Vec::new();
    for p in primes_up_to(limit) {
        let lp = (p as f64).ln();
        let mut q = p;
        loop {
            out.push((q, lp));
            match q.checked_mul(p) {
                Some(next) if next <= limit => q = next,
                _ => break,
            }
        }
    }
    out.sort_unstable_by_key(|e| e.0);
    out
}

/// Chebyshev ψ(x) = Σ_{m≤x} Λ(m).
pub fn chebyshev_psi(x: f64) -> f64 {
    if x < 2.0 {
        return 0.0;
    }
    kahan_sum_iter(prime_powers(x.floor() as usize).into_iter().map(|e| e.1))
}

fn kahan_sum_iter<I: Iterator<Item = f64>>(it: I) -> f64 {
    let mut acc = KahanSum::new();
    it.for_each(|v| acc.add(v));
    acc.value()
}

const AVERAGE_SAMPLES: usize = 400;

/// η_k from the von Mangoldt limit
///
/// ```text
/// η_k = ((−1)^k/k!) lim_{x→∞} [Σ_{m≤x} Λ(m)(ln m)^k/m − (ln x)^{k+1}/(k+1)].
/// ```
///
/// The bracket at x is corrected for the jump of ψ(x) − x at the boundary
/// and for the constant −ln 2π in the explicit formula, then averaged over
/// x ∈ [X/e, X] to damp the oscillation from the zeros. The same estimate
/// at X/4 gives the residual; residual above 1e-2 is an error.
pub fn eta_from_vonmangoldt(k: usize, cutoff: f64) -> Result<f64> {
    if k > 6 {
        return Err(Error::Range {
            what: "k",
            value: k as f64,
            range: "[0, 6]",
        });
    }
    if !(cutoff >= 8.0 && cutoff <= 1e7) {
        return Err(Error::Range {
            what: "cutoff",
            value: cutoff,
            range: "[8, 1e7]",
        });
    }
    let powers = prime_powers(cutoff.floor() as usize);
    let hi = averaged_bracket(k, cutoff, &powers);
    let lo = averaged_bracket(k, cutoff / 4.0, &powers);
    let fact: f64 = (1..=k).map(|j| j as f64).product();
    let residual = (hi - lo).abs() / fact;
    if residual > 1e-2 {
        return Err(Error::CutoffTooSmall { residual });
    }
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * hi / fact)
}

fn averaged_bracket(k: usize, top: f64, powers: &[(usize, f64)]) -> f64 {
    let ln_2pi = (2.0 * std::f64::consts::PI).ln();
    let kk = k as i32;
    let samples: Vec<f64> = (0..AVERAGE_SAMPLES)
        .rev()
        .map(|i| top * (-(i as f64 + 0.5) / AVERAGE_SAMPLES as f64).exp())
        .collect();
    let mut sum = KahanSum::new();
    let mut psi = KahanSum::new();
    let mut idx = 0;
    let mut total = KahanSum::new();
    for &x in &samples {
        while idx < powers.len() && (powers[idx].0 as f64) <= x {
            let (q, lambda) = powers[idx];
            let lq = (q as f64).ln();
            sum.add(lambda * lq.powi(kk) / q as f64);
            psi.add(lambda);
            idx += 1;
        }
        let lx = x.ln();
        let f = lx.powi(kk) / x;
        let value = sum.value()
            - lx.powi(kk + 1) / (k as f64 + 1.0)
            - f * (psi.value() - x)
            - ln_2pi * f;
        total.add(value);
    }
    total.value() / AVERAGE_SAMPLES as f64
}
