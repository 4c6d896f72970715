//! The completed zeta function ξ(s) = ½ s(s-1) π^{-s/2} Γ(s/2) ζ(s) and the
//! de Branges data E, A, Θ built from it.
//!
//! Everything is expressed through a [`XiPair`]: ξ = e^{ℓ}·a and ξ' = e^{ℓ}·b
//! with the common (possibly astronomically small) factor e^{ℓ} kept apart.
//! Ratios such as ξ'/ξ, ξ/(ξ+ξ') or Θ never touch e^{ℓ}, so they stay finite
//! at any height and at zeros of ξ.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::gamma::{digamma, log_gamma};
use super::zeta::zeta_and_derivative;
use super::EvalOptions;
use crate::error::{fmt_c, Error, Result};

/// Radius around s = 1 inside which values are taken from 1 - s.
const NEAR_ONE: f64 = 0.1;
/// Largest |log scale| for which e^{ℓ} is representable.
const MAX_LOG_SCALE: f64 = 700.0;

/// ξ(s) = e^{log_scale}·a, ξ'(s) = e^{log_scale}·b.
#[derive(Debug, Clone, Copy)]
pub struct XiPair {
    pub s: Complex64,
    pub log_scale: Complex64,
    pub a: Complex64,
    pub b: Complex64,
}

impl XiPair {
    /// Evaluate at `s`, reflecting to 1 - s whenever that is the better
    /// conditioned side (Re s < 1/2, or s near the pole of ζ at 1).
    pub fn new(s: Complex64, opts: &EvalOptions) -> Result<Self> {
        let reflect = (s - 1.0).norm() < NEAR_ONE || (s.re < 0.5 && s.norm() >= NEAR_ONE);
        Self::at(s, reflect, opts)
    }

    /// Evaluate the defining product directly at `s` wherever it is regular.
    pub fn direct(s: Complex64, opts: &EvalOptions) -> Result<Self> {
        let near_gamma_pole = s.re < -1.0 && {
            let k = (s.re / 2.0).round() * 2.0;
            (s - k).norm() < 1e-3
        };
        let reflect = (s - 1.0).norm() < NEAR_ONE || near_gamma_pole;
        Self::at(s, reflect, opts)
    }

    fn at(s: Complex64, reflect: bool, opts: &EvalOptions) -> Result<Self> {
        let u = if reflect { 1.0 - s } else { s };
        // ξ(u) = R(u) ζ(u) with R(u) = (u-1) π^{-u/2} Γ(u/2 + 1)
        let half_plus_one = 0.5 * u + 1.0;
        let log_scale = (u - 1.0).ln() - 0.5 * u * PI.ln() + log_gamma(half_plus_one)?;
        let log_deriv_r = (u - 1.0).inv() - 0.5 * PI.ln() + 0.5 * digamma(half_plus_one)?;
        let (z, dz) = zeta_and_derivative(u, opts)?;
        let b = z * log_deriv_r + dz;
        Ok(XiPair {
            s,
            log_scale,
            a: z,
            b: if reflect { -b } else { b },
        })
    }

    fn scale(&self, function: &'static str) -> Result<Complex64> {
        if self.log_scale.re.abs() > MAX_LOG_SCALE {
            return Err(Error::Overflow {
                function,
                at: fmt_c(self.s),
            });
        }
        Ok(self.log_scale.exp())
    }

    pub fn xi(&self) -> Result<Complex64> {
        Ok(self.scale("xi")? * self.a)
    }

    pub fn xi_prime(&self) -> Result<Complex64> {
        Ok(self.scale("xi_prime")? * self.b)
    }

    /// ξ/(ξ+ξ'); the removable zero of H_n sits here.
    pub fn p(&self) -> Complex64 {
        self.a / (self.a + self.b)
    }

    /// ξ'/(ξ+ξ'), so that p + q = 1.
    pub fn q(&self) -> Complex64 {
        self.b / (self.a + self.b)
    }

    /// Relative size of ξ + ξ'; tiny only near a zero of E.
    pub fn denominator_ratio(&self) -> f64 {
        (self.a + self.b).norm() / self.a.norm().max(self.b.norm())
    }
}

pub fn xi(s: Complex64) -> Result<Complex64> {
    XiPair::direct(s, &EvalOptions::default())?.xi()
}

pub fn xi_prime(s: Complex64) -> Result<Complex64> {
    XiPair::new(s, &EvalOptions::default())?.xi_prime()
}

/// ξ'/ξ(s) = 1/s + 1/(s-1) - ½ log π + ½ ψ(s/2) + ζ'/ζ(s), with the finite
/// limits at s = 0 and s = 1.
pub fn xi_logderiv(s: Complex64) -> Result<Complex64> {
    let pair = XiPair::new(s, &EvalOptions::default())?;
    if pair.a.norm() <= 1e-10 * pair.b.norm() {
        return Err(Error::NearZero {
            function: "xi_logderiv",
            at: fmt_c(s),
            distance: pair.a.norm() / pair.b.norm(),
        });
    }
    Ok(pair.b / pair.a)
}

/// s = 1/2 - i z.
#[inline]
pub fn s_of_z(z: Complex64) -> Complex64 {
    Complex64::new(0.5, 0.0) - Complex64::i() * z
}

/// E(z) = ξ(1/2 - iz) + ξ'(1/2 - iz).
pub fn e_fn(z: Complex64) -> Result<Complex64> {
    let pair = XiPair::new(s_of_z(z), &EvalOptions::default())?;
    Ok(pair.scale("E")? * (pair.a + pair.b))
}

/// A(z) = ξ(1/2 - iz).
pub fn a_fn(z: Complex64) -> Result<Complex64> {
    XiPair::new(s_of_z(z), &EvalOptions::default())?.xi()
}

/// Θ(z) = E♯(z)/E(z) = (ξ - ξ')/(ξ + ξ') at s = 1/2 - iz.
pub fn theta_fn(z: Complex64) -> Result<Complex64> {
    theta_from_pair(&XiPair::new(s_of_z(z), &EvalOptions::default())?)
}

pub fn theta_from_pair(pair: &XiPair) -> Result<Complex64> {
    let den = pair.a + pair.b;
    if den.norm() == 0.0 || pair.denominator_ratio() < 1e-14 {
        return Err(Error::DivisionByZero {
            function: "Theta",
            at: fmt_c(pair.s),
        });
    }
    Ok((pair.a - pair.b) / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn values_at_zero_and_one() {
        assert!((xi(c(0.0, 0.0)).unwrap() - 0.5).norm() < 1e-14);
        assert!((xi(c(1.0, 0.0)).unwrap() - 0.5).norm() < 1e-14);
    }

    #[test]
    fn value_at_center() {
        let v = xi(c(0.5, 0.0)).unwrap();
        assert!((v.re - 0.497_120_778_188_314_1).abs() < 1e-14);
    }

    #[test]
    fn logderiv_limits() {
        let lambda1 = 0.023_095_708_966_121_034;
        assert!((xi_logderiv(c(0.0, 0.0)).unwrap().re + lambda1).abs() < 1e-13);
        assert!((xi_logderiv(c(1.0, 0.0)).unwrap().re - lambda1).abs() < 1e-13);
    }

    #[test]
    fn logderiv_antisymmetry() {
        let s = c(0.3, 7.0);
        let r = xi_logderiv(s).unwrap() + xi_logderiv(1.0 - s).unwrap();
        assert!(r.norm() < 1e-11);
    }

    #[test]
    fn logderiv_imaginary_on_critical_line() {
        let v = xi_logderiv(c(0.5, 2.0)).unwrap();
        assert!(v.re.abs() < 1e-12);
    }

    #[test]
    fn logderiv_refuses_zero() {
        let err = xi_logderiv(c(0.5, 14.134_725_141_734_694)).unwrap_err();
        assert!(matches!(err, Error::NearZero { .. }));
    }

    #[test]
    fn a_is_mean_of_e_and_its_reflection() {
        let z = c(1.0, 0.5);
        let e = e_fn(z).unwrap();
        let e_sharp = e_fn(z.conj()).unwrap().conj();
        let a = a_fn(z).unwrap();
        assert!((a - 0.5 * (e + e_sharp)).norm() < 1e-12);
    }

    #[test]
    fn theta_is_unimodular_on_real_line() {
        let t = theta_fn(c(3.7, 0.0)).unwrap();
        assert!((t.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn e_at_origin() {
        let e = e_fn(c(0.0, 0.0)).unwrap();
        assert!((e.re - 0.497_120_778_188_314_1).abs() < 1e-14);
        assert!(e.im.abs() < 1e-15);
        assert!(xi_prime(c(0.5, 0.0)).unwrap().norm() < 1e-15);
    }

    #[test]
    fn overflow_reported_high_up() {
        assert!(matches!(a_fn(c(1000.0, 0.0)), Err(Error::Overflow { .. })));
        // ratios still work there
        assert!((theta_fn(c(1000.0, 0.0)).unwrap().norm() - 1.0).abs() < 1e-12);
    }
}
