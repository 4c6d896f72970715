//! Li coefficients λ_n = Σ_ρ [1 − (1 − 1/ρ)^n] by three routes: the zero
//! sum, the closed arithmetic formula in η_k and ζ(j), and (2π)^{−1}‖G_n‖².

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modelspace::HnContext;
use crate::quad::QuadConfig;
use crate::special::{zeta, EvalOptions};
use crate::stieltjes::EtaTable;
use crate::sum::KahanSum;
use crate::zeros::{smooth_count, ZeroTable};

pub const SCHEMA: &str = "li-report-v1";
/// Largest n accepted by the arithmetic route.
pub const MAX_ARITH_N: u32 = 60;
/// Assumed bound on |N(t) − N_smooth(t)| above the table height.
const COUNT_FLUCTUATION: f64 = 2.0;
const SAFETY: f64 = 2.0;

/// The zero-sum route: value, budget and the parts that make up the value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroSum {
    pub value: f64,
    pub tail: f64,
    pub partial_sum: f64,
    pub tail_estimate: f64,
    pub height: f64,
}

/// 2·Re[1 − (1 − 1/ρ)^n] for ρ = 1/2 − iγ, written as 4 sin²(n·atan(1/(2γ)))
/// (the factor 1 − 1/ρ is the unimodular e^{−2i·atan(1/(2γ))}).
pub fn pair_term(n: u32, gamma: f64) -> f64 {
    let s = (n as f64 * (0.5 / gamma).atan()).sin();
    4.0 * s * s
}

/// λ_n from the zeros in `zeros`, plus the smooth-density estimate of the
/// zeros above the table height.
///
/// Beyond T the pair term is n²/γ² to leading order; summing it against
/// dN(t) = log(t/2π)/2π dt and correcting for N(T) − N_smooth(T) by parts
/// gives the estimate. The budget covers the remaining ∫(N − N_smooth)g′
/// with |N − N_smooth| ≤ 2, the next order of the pair term, and a factor 2.
pub fn li_zero_sum(n: u32, zeros: &ZeroTable) -> Result<ZeroSum> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    if zeros.is_empty() {
        return Err(Error::EmptyTable);
    }
    let height = zeros.height_bound();
    if height < 50.0 {
        return Err(Error::Precondition(format!(
            "zero-sum route needs a table up to T >= 50, got {height}"
        )));
    }
    let mut acc = KahanSum::new();
    for (g, m) in zeros.iter() {
        acc.add(m as f64 * pair_term(n, g));
    }
    let partial_sum = acc.value();
    let nf = n as f64;
    let l = (height / (2.0 * PI)).ln();
    let g_at_t = nf * nf / (height * height);
    let density_part = nf * nf * (l + 1.0) / (2.0 * PI * height);
    let boundary = g_at_t * (zeros.count_with_multiplicity() as f64 - smooth_count(height));
    let tail_estimate = density_part - boundary;
    let higher = (nf.powi(4) + nf * nf) * (l + 1.0) / (12.0 * 2.0 * PI * height.powi(3));
    let tail = SAFETY * (COUNT_FLUCTUATION * g_at_t + higher);
    Ok(ZeroSum {
        value: partial_sum + tail_estimate,
        tail,
        partial_sum,
        tail_estimate,
        height,
    })
}

/// λ_n = −Σ_{j=1}^n C(n,j) η_{j−1} + 1 − (γ_0 + log 4π)·n/2
///       − Σ_{j=2}^n C(n,j) (−1)^{j−1} (1 − 2^{−j}) ζ(j).
pub fn li_arithmetic(n: u32, eta: &EtaTable) -> Result<f64> {
    li_arithmetic_with_error(n, eta).map(|r| r.0)
}

/// [`li_arithmetic`] with an error estimate from the η error estimates and
/// the size of the cancelling terms.
pub fn li_arithmetic_with_error(n: u32, eta: &EtaTable) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    if n > MAX_ARITH_N {
        return Err(Error::Range {
            what: "n",
            value: n as f64,
            range: "[1, 60]",
        });
    }
    let n_us = n as usize;
    if eta.eta.len() < n_us {
        return Err(Error::TableTooShort {
            needed: n_us,
            available: eta.eta.len(),
        });
    }
    let opts = EvalOptions::default();
    let mut acc = KahanSum::new();
    let mut magnitude = 0.0;
    let mut propagated = 0.0;
    let mut binom = 1.0;
    let gamma0 = eta.gamma_stieltjes[0];
    for j in 1..=n_us {
        binom = binom * (n_us + 1 - j) as f64 / j as f64;
        let t = -binom * eta.eta[j - 1];
        acc.add(t);
        magnitude += t.abs();
        propagated += binom * eta.err_est[j - 1];
        if j >= 2 {
            let z = zeta(crate::Complex64::new(j as f64, 0.0), &opts)?.re;
            let sign = if (j - 1) % 2 == 0 { 1.0 } else { -1.0 };
            let t = -binom * sign * (1.0 - 0.5f64.powi(j as i32)) * z;
            acc.add(t);
            magnitude += t.abs();
        }
    }
    let linear = 1.0 - (gamma0 + (4.0 * PI).ln()) * n as f64 / 2.0;
    acc.add(linear);
    magnitude += linear.abs();
    propagated += eta.err_est[0] * n as f64 / 2.0;
    Ok((acc.value(), propagated + 8.0 * f64::EPSILON * magnitude))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Arithmetic {
    pub value: f64,
    pub err: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Norm {
    pub value: f64,
    pub err: f64,
    pub span: f64,
    pub core: f64,
    pub tail: f64,
}

/// One pairwise comparison; `pass` is |a − b| ≤ tolerance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub pair: String,
    pub difference: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Verdict {
    pub fn new(pair: &str, a: f64, b: f64, tolerance: f64) -> Self {
        let difference = (a - b).abs();
        Verdict {
            pair: pair.to_string(),
            difference,
            tolerance,
            pass: difference <= tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LiReport {
    pub schema: String,
    pub n: u32,
    pub zero_sum: ZeroSum,
    pub arithmetic: Arithmetic,
    pub norm: Option<Norm>,
    pub verdicts: Vec<Verdict>,
}

impl LiReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Precondition(format!("bad report: {e}")))
    }
}

/// (2π)^{−1}‖G_n‖² with its error budget in λ units.
pub fn li_norm(ctx: &HnContext, cfg: &QuadConfig) -> Result<Norm> {
    let r = ctx.norm_sq(cfg)?;
    let k = 1.0 / (2.0 * PI);
    Ok(Norm {
        value: r.total().re * k,
        err: r.total_err() * k,
        span: cfg.span,
        core: r.value.re * k,
        tail: r.tail_value.re * k,
    })
}

/// All three routes for one n, with verdicts derived from the budgets.
/// `quad = None` skips the norm route.
pub fn li_verify(n: u32, zeros: &ZeroTable, quad: Option<&QuadConfig>) -> Result<LiReport> {
    let ctx = HnContext::new(n)?;
    let zero_sum = li_zero_sum(n, zeros)?;
    let (value, err) = li_arithmetic_with_error(n, ctx.eta())?;
    let arithmetic = Arithmetic { value, err };
    let norm = quad.map(|cfg| li_norm(&ctx, cfg)).transpose()?;
    let slack = 1e-6 * n as f64;
    let mut verdicts = vec![Verdict::new(
        "zero_sum~arithmetic",
        zero_sum.value,
        arithmetic.value,
        zero_sum.tail + arithmetic.err + slack,
    )];
    if let Some(nr) = &norm {
        verdicts.push(Verdict::new(
            "norm~arithmetic",
            nr.value,
            arithmetic.value,
            nr.err + arithmetic.err,
        ));
        verdicts.push(Verdict::new(
            "norm~zero_sum",
            nr.value,
            zero_sum.value,
            nr.err + zero_sum.tail,
        ));
    }
    Ok(LiReport {
        schema: SCHEMA.to_string(),
        n,
        zero_sum,
        arithmetic,
        norm,
        verdicts,
    })
}
