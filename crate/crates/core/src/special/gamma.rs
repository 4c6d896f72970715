//! Complex log-gamma and digamma by upward recurrence plus Stirling series.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::bernoulli;
use crate::error::{fmt_c, Error, Result};
use crate::sum::ComplexKahanSum;

const STIRLING_SHIFT: f64 = 8.0;
const STIRLING_TERMS: usize = 12;
const DIGAMMA_SHIFT: f64 = 12.0;
const DIGAMMA_TERMS: usize = 12;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

fn check_pole(s: Complex64, function: &'static str) -> Result<()> {
    if s.re <= 0.5 && s.im.abs() < 1e-14 {
        let k = s.re.round();
        if k <= 0.0 && (s - k).norm() < 1e-14 {
            return Err(Error::Pole {
                function,
                at: fmt_c(s),
            });
        }
    }
    Ok(())
}

/// Principal branch of log Γ(s).
pub fn log_gamma(s: Complex64) -> Result<Complex64> {
    check_pole(s, "log_gamma")?;
    let mut z = s;
    let mut shift = ComplexKahanSum::new();
    while z.re < STIRLING_SHIFT {
        shift.add(z.ln());
        z += 1.0;
    }
    let ln_z = z.ln();
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = ComplexKahanSum::new();
    let mut pow = inv;
    for k in 1..=STIRLING_TERMS {
        let two_k = (2 * k) as f64;
        series.add(pow * (bernoulli::bernoulli_even(k) / (two_k * (two_k - 1.0))));
        pow *= inv2;
    }
    Ok((z - 0.5) * ln_z - z + HALF_LN_2PI + series.value() - shift.value())
}

/// ψ(w) = Γ'(w)/Γ(w).
pub fn digamma(w: Complex64) -> Result<Complex64> {
    check_pole(w, "digamma")?;
    let mut z = w;
    let mut shift = ComplexKahanSum::new();
    while z.re < DIGAMMA_SHIFT {
        shift.add(z.inv());
        z += 1.0;
    }
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = ComplexKahanSum::new();
    let mut pow = inv2;
    for k in 1..=DIGAMMA_TERMS {
        series.add(pow * (bernoulli::bernoulli_even(k) / (2 * k) as f64));
        pow *= inv2;
    }
    Ok(z.ln() - 0.5 * inv - series.value() - shift.value())
}

/// log sin(w), stable for large |Im w|; the branch is irrelevant because
/// callers exponentiate.
pub(crate) fn ln_sin(w: Complex64) -> Complex64 {
    let i = Complex64::i();
    if w.im > 20.0 {
        // sin w = e^{-iw} (e^{2iw} - 1) / (2i)
        -i * w + (1.0 - (2.0 * i * w).exp()).ln() - (-2.0 * i).ln()
    } else if w.im < -20.0 {
        i * w + (1.0 - (-2.0 * i * w).exp()).ln() - (2.0 * i).ln()
    } else {
        w.sin().ln()
    }
}

pub(crate) fn ln_cos(w: Complex64) -> Complex64 {
    ln_sin(w + PI / 2.0)
}
