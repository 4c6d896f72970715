//! H_n(s), G_n(z) = H_n(1/2 − iz), the truncated zero sum M_n(s), and the
//! basis functions F_γ(z) of the model space generated by Θ.
//!
//! With P = ξ/(ξ+ξ') and Q = ξ'/(ξ+ξ'),
//!
//! ```text
//! H_n(s) = P·(s−1)^{n−1}/s^n + [1 − (1−1/s)^n]·(Q − P·(c_0 + 1)) − P·C(1/s)
//! ```
//!
//! where c_0 = ξ'/ξ(0) and C(w) = Σ_{m=1}^{n−1} c_m w^m collects the double
//! sum over j and k. Every term is finite at zeros of ξ (P → 0, Q → 1) and
//! at s = 1; only s = 0 needs separate treatment.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{fmt_c, Error, Result};
use crate::quad::{inner_product_bounded, inner_product_line, norm_sq_symmetric, QuadConfig, QuadResult};
use crate::special::{s_of_z, xi_logderiv, zeta, EvalOptions, XiPair};
use crate::stieltjes::{eta_from_powerseries, EtaTable, MAX_K};
use crate::sum::{ComplexKahanSum, KahanSum};
use crate::zeros::{hardy_z, ZeroTable};

/// Inside this radius H_n is taken from a Cauchy integral.
const ORIGIN_RADIUS: f64 = 0.25;
const CAUCHY_RADIUS: f64 = 0.5;
const CAUCHY_NODES: usize = 64;
/// |ξ+ξ'| below this fraction of max(|ξ|, |ξ'|) counts as a zero of E.
const E_ZERO_RATIO: f64 = 1e-10;
/// Half-width of the interpolation window around γ for F_γ.
const BASIS_WINDOW: f64 = 1e-4;
const BASIS_STEP: f64 = 1e-3;
/// Minimum distance from a tabulated zero for M_n.
pub const POLE_DISTANCE: f64 = 1e-6;

/// 1 − (1 − 1/ρ)^n.
pub fn li_weight(n: u32, rho: Complex64) -> Complex64 {
    Complex64::new(1.0, 0.0) - (Complex64::new(1.0, 0.0) - rho.inv()).powu(n)
}

/// ρ = 1/2 − iγ.
pub fn rho_of(gamma: f64) -> Complex64 {
    Complex64::new(0.5, -gamma)
}

/// Cached constants for evaluating H_n.
#[derive(Debug, Clone)]
pub struct HnContext {
    n: u32,
    eta: EtaTable,
    xi_ld_at_0: f64,
    zeta_values: Vec<f64>,
    // C(w) = Σ_{m=1}^{n-1} c[m-1] w^m
    correction: Vec<f64>,
}

impl HnContext {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("n must be at least 1".into()));
        }
        let needed = n as usize - 1;
        if needed > MAX_K {
            return Err(Error::TableTooShort {
                needed: needed + 1,
                available: MAX_K + 1,
            });
        }
        Self::with_table(n, eta_from_powerseries(needed)?)
    }

    pub fn with_table(n: u32, eta: EtaTable) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("n must be at least 1".into()));
        }
        let n_us = n as usize;
        if n_us >= 2 && eta.eta.len() < n_us - 1 {
            return Err(Error::TableTooShort {
                needed: n_us - 1,
                available: eta.eta.len(),
            });
        }
        let xi_ld_at_0 = xi_logderiv(Complex64::new(0.0, 0.0))?.re;
        let opts = EvalOptions::default();
        let zeta_values = (2..=n_us.max(2))
            .map(|j| zeta(Complex64::new(j as f64, 0.0), &opts).map(|z| z.re))
            .collect::<Result<Vec<f64>>>()?;
        // d_k = (−1)^k η_k + (1 − 2^{−k−1}) ζ(k+1), k = 1..n−2
        let d = |k: usize| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * eta.eta[k] + (1.0 - 0.5f64.powi(k as i32 + 1)) * zeta_values[k - 1]
        };
        let binom = binomials(n_us);
        let correction = (1..n_us)
            .map(|m| {
                let mut acc = KahanSum::new();
                for j in (m + 1)..=n_us {
                    let sign = if (j - 1) % 2 == 0 { 1.0 } else { -1.0 };
                    acc.add(binom[j] * sign * d(j - m));
                }
                acc.value()
            })
            .collect();
        let ctx = HnContext {
            n,
            eta,
            xi_ld_at_0,
            zeta_values,
            correction,
        };
        if !ctx.xi_ld_at_0.is_finite() || ctx.correction.iter().any(|c| !c.is_finite()) {
            return Err(Error::Precondition("non-finite cached constant".into()));
        }
        Ok(ctx)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn eta(&self) -> &EtaTable {
        &self.eta
    }

    /// ξ'/ξ(0), which equals −λ_1.
    pub fn xi_ld_at_0(&self) -> f64 {
        self.xi_ld_at_0
    }

    /// ζ(2)..ζ(max(n, 2)).
    pub fn zeta_values(&self) -> &[f64] {
        &self.zeta_values
    }

    fn correction_at(&self, w: Complex64) -> Complex64 {
        self.correction
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| (acc + c) * w)
    }

    /// H_n(s).
    pub fn h(&self, s: Complex64) -> Result<Complex64> {
        if s.norm() < ORIGIN_RADIUS {
            return self.h_by_cauchy(s);
        }
        let pair = XiPair::new(s, &EvalOptions::default())?;
        self.h_from_pair(&pair)
    }

    fn h_from_pair(&self, pair: &XiPair) -> Result<Complex64> {
        let s = pair.s;
        let scale = pair.a.norm().max(pair.b.norm());
        let den = pair.a + pair.b;
        if den.norm() < E_ZERO_RATIO * scale && pair.a.norm() > 1e-6 * pair.b.norm() {
            return Err(Error::NearPole {
                function: "H_n",
                at: fmt_c(s),
            });
        }
        let p = pair.a / den;
        let q = pair.b / den;
        let one = Complex64::new(1.0, 0.0);
        let w = s.inv();
        let n = self.n;
        let lead = p * (s - 1.0).powu(n - 1) * w.powu(n);
        let b = one - (one - w).powu(n);
        let mid = b * (q - p * (self.xi_ld_at_0 + 1.0));
        Ok(lead + mid - p * self.correction_at(w))
    }

    fn h_by_cauchy(&self, s0: Complex64) -> Result<Complex64> {
        let mut acc = ComplexKahanSum::new();
        for k in 0..CAUCHY_NODES {
            let phase = 2.0 * PI * (k as f64 + 0.5) / CAUCHY_NODES as f64;
            let node = Complex64::from_polar(CAUCHY_RADIUS, phase);
            let pair = XiPair::new(node, &EvalOptions::default())?;
            acc.add(self.h_from_pair(&pair)? * node / (node - s0));
        }
        Ok(acc.value() / CAUCHY_NODES as f64)
    }

    /// G_n(z) = H_n(1/2 − iz).
    pub fn g(&self, z: Complex64) -> Result<Complex64> {
        self.h(s_of_z(z))
    }

    /// G_n on real z.
    pub fn g_real(&self, t: f64) -> Result<Complex64> {
        self.g(Complex64::new(t, 0.0))
    }

    /// ‖G_n‖² over ℝ with the fitted tail; λ_n = total/2π.
    pub fn norm_sq(&self, cfg: &QuadConfig) -> Result<QuadResult> {
        norm_gn(self, cfg)
    }
}

fn binomials(n: usize) -> Vec<f64> {
    let mut b = vec![1.0; n + 1];
    for j in 1..=n {
        b[j] = b[j - 1] * (n + 1 - j) as f64 / j as f64;
    }
    b
}

/// −i Σ_ρ m_ρ [1 − (1−1/ρ)^n]/(s − ρ) over ρ = 1/2 ∓ iγ for the table, and
/// a bound on the omitted zeros above the table height.
pub fn m_n_truncated(n: u32, zeros: &ZeroTable, s: Complex64) -> Result<(Complex64, f64)> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    if zeros.is_empty() {
        return Err(Error::EmptyTable);
    }
    let mut acc = ComplexKahanSum::new();
    for (g, m) in zeros.iter() {
        let rho = rho_of(g);
        let w = li_weight(n, rho);
        for (r, wr) in [(rho, w), (rho.conj(), w.conj())] {
            let d = s - r;
            if d.norm() < POLE_DISTANCE {
                return Err(Error::NearPole {
                    function: "M_n",
                    at: fmt_c(s),
                });
            }
            acc.add(wr * m as f64 / d);
        }
    }
    let value = -Complex64::i() * acc.value();
    Ok((value, m_n_tail_budget(n, zeros.height_bound(), s)))
}

/// Bound on Σ_{|γ|>T} |w_ρ|/|s−ρ| with |w_ρ| ≤ n/γ and |s−ρ| ≥ γ − |Im s|:
/// smooth density integral plus a count-fluctuation term, times 2.
pub fn m_n_tail_budget(n: u32, height: f64, s: Complex64) -> f64 {
    let a = s.im.abs();
    if height - a < 1.0 {
        return f64::INFINITY;
    }
    let n = n as f64;
    let l = (height / (2.0 * PI)).ln();
    let smooth = 2.0 * n * height / (height - a) * (l + 1.0) / (2.0 * PI * height);
    let fluctuation = 2.0 * 4.0 * n / (height * (height - a));
    2.0 * (smooth + fluctuation)
}

/// |H_n(s) − i P(s) M_n(s)| and the budget |P(s)|·(M_n tail budget).
pub fn identity_residual(ctx: &HnContext, zeros: &ZeroTable, s: Complex64) -> Result<(f64, f64)> {
    let pair = XiPair::new(s, &EvalOptions::default())?;
    let h = ctx.h(s)?;
    let (m, tail) = m_n_truncated(ctx.n, zeros, s)?;
    let p = pair.p();
    Ok(((h - Complex64::i() * p * m).norm(), p.norm() * tail))
}

/// One basis function F_γ of the model space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BasisFunction {
    pub gamma: f64,
    pub multiplicity: u32,
}

impl BasisFunction {
    pub fn new(gamma: f64, multiplicity: u32) -> Result<Self> {
        if !(gamma > 0.0) || multiplicity == 0 {
            return Err(Error::Precondition(format!(
                "basis function needs γ > 0 and m ≥ 1, got ({gamma}, {multiplicity})"
            )));
        }
        Ok(BasisFunction {
            gamma,
            multiplicity,
        })
    }

    /// The `index`-th (0-based) ordinate of `table`, re-refined on Z so the
    /// removable point of F_γ sits on the zero to rounding accuracy.
    pub fn from_table(table: &ZeroTable, index: usize) -> Result<Self> {
        let (&g, &m) = table
            .ordinates()
            .get(index)
            .zip(table.multiplicities().get(index))
            .ok_or(Error::TableTooShort {
                needed: index + 1,
                available: table.len(),
            })?;
        Self::new(polish(g)?, m)
    }

    /// F_γ(z) = sqrt(m/π)·i(1 + Θ(z))/(2(z − γ)); 1 + Θ = 2P.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let d = z - self.gamma;
        if d.norm() < BASIS_WINDOW {
            let h = BASIS_STEP;
            let fm = self.eval_direct(Complex64::new(self.gamma - h, 0.0))?;
            let fp = self.eval_direct(Complex64::new(self.gamma + h, 0.0))?;
            let f0 = Complex64::new(self.value_at_gamma(), 0.0);
            return Ok(f0 + d * (fp - fm) / (2.0 * h) + d * d * (fp - f0 * 2.0 + fm) / (2.0 * h * h));
        }
        self.eval_direct(z)
    }

    /// The limit at z = γ, using Θ'(γ)/2 = −i/m.
    pub fn value_at_gamma(&self) -> f64 {
        1.0 / (PI * self.multiplicity as f64).sqrt()
    }

    fn eval_direct(&self, z: Complex64) -> Result<Complex64> {
        let pair = XiPair::new(s_of_z(z), &EvalOptions::default())?;
        let den = pair.a + pair.b;
        if den.norm() == 0.0 {
            return Err(Error::DivisionByZero {
                function: "F_gamma",
                at: fmt_c(z),
            });
        }
        let m = self.multiplicity as f64;
        Ok((m / PI).sqrt() * Complex64::i() * (pair.a / den) / (z - self.gamma))
    }

    pub fn eval_real(&self, t: f64) -> Result<Complex64> {
        self.eval(Complex64::new(t, 0.0))
    }

    /// sqrt(π m)·[1 − (1 − 1/ρ)^n], the predicted coefficient of G_n.
    pub fn predicted_coefficient(&self, n: u32) -> Complex64 {
        (PI * self.multiplicity as f64).sqrt() * li_weight(n, rho_of(self.gamma))
    }
}

fn polish(gamma: f64) -> Result<f64> {
    let h = 1e-7 * gamma.max(1.0);
    let (mut a, mut b) = (gamma - h, gamma + h);
    let (mut za, mut zb) = (hardy_z(a)?, hardy_z(b)?);
    if (za < 0.0) == (zb < 0.0) {
        return Ok(gamma);
    }
    for _ in 0..60 {
        let c = 0.5 * (a + b);
        if c <= a || c >= b {
            break;
        }
        let zc = hardy_z(c)?;
        if zc == 0.0 {
            return Ok(c);
        }
        if (zc < 0.0) == (za < 0.0) {
            a = c;
            za = zc;
        } else {
            b = c;
            zb = zc;
        }
    }
    Ok(if za.abs() < zb.abs() { a } else { b })
}

/// F_γ(z) as a free function.
pub fn f_gamma(b: &BasisFunction, z: Complex64) -> Result<Complex64> {
    b.eval(z)
}

/// ⟨G_n, F_γ⟩ over ℝ. The product oscillates at the zero spacing, so the
/// part beyond the span is bounded rather than extrapolated.
pub fn expansion_coefficient(ctx: &HnContext, b: &BasisFunction, cfg: &QuadConfig) -> Result<QuadResult> {
    inner_product_bounded(|t| ctx.g_real(t), |t| b.eval_real(t), cfg)
}

/// ⟨F_a, F_b⟩ over ℝ.
pub fn basis_inner_product(a: &BasisFunction, b: &BasisFunction, cfg: &QuadConfig) -> Result<QuadResult> {
    inner_product_line(|t| a.eval_real(t), |t| b.eval_real(t), cfg)
}

/// ‖G_n‖² over ℝ: |G_n(−t)| = |G_n(t)|, so twice the half line.
pub fn norm_gn(ctx: &HnContext, cfg: &QuadConfig) -> Result<QuadResult> {
    norm_sq_symmetric(|t| ctx.g_real(t), cfg)
}
