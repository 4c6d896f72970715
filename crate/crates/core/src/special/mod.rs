//! Complex special functions: log Γ, ψ, ζ, ζ'/ζ, ξ, ξ'/ξ and the de Branges
//! functions E, A, Θ.

pub mod bernoulli;
mod gamma;
mod xi;
mod zeta;

pub use gamma::{digamma, log_gamma};
pub use xi::{a_fn, e_fn, s_of_z, theta_fn, theta_from_pair, xi, xi_logderiv, xi_prime, XiPair};
pub use zeta::{zeta, zeta_and_derivative, zeta_logderiv};

use crate::error::{Error, Result};

/// Euler–Mascheroni constant γ_0.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Accuracy controls for the series evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    pub target_abs_err: f64,
    pub max_terms: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            target_abs_err: 1e-12,
            max_terms: 10_000,
        }
    }
}

impl EvalOptions {
    pub fn new(target_abs_err: f64, max_terms: usize) -> Result<Self> {
        if !(target_abs_err > 0.0) {
            return Err(Error::Precondition(format!(
                "target_abs_err must be positive, got {target_abs_err}"
            )));
        }
        if max_terms < 16 {
            return Err(Error::Precondition(format!(
                "max_terms must be at least 16, got {max_terms}"
            )));
        }
        Ok(EvalOptions {
            target_abs_err,
            max_terms,
        })
    }
}
