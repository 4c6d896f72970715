use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report. Each variant maps to one CLI exit
/// code (see [`Error::exit_code`]).
#[derive(Debug, Error)]
pub enum Error {
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: String },

    #[error("{function}: requested accuracy not reached after {terms} terms")]
    AccuracyNotReached { function: &'static str, terms: usize },

    #[error("{function}: argument {at} is within {distance:.3e} of a zero")]
    NearZero {
        function: &'static str,
        at: String,
        distance: f64,
    },

    #[error("{function}: result at {at} is not representable in binary64")]
    Overflow { function: &'static str, at: String },

    #[error("division by zero in {function} at {at}")]
    DivisionByZero { function: &'static str, at: String },

    #[error("{function}: {at} is too close to a pole (zero of xi + xi' not shared by xi)")]
    NearPole { function: &'static str, at: String },

    #[error("zero table is empty")]
    EmptyTable,

    #[error("zero finder found {found} zeros below T = {height}, expected about {expected:.2}")]
    MissedZero {
        height: f64,
        found: usize,
        expected: f64,
    },

    #[error("coefficient table too short: need index {needed}, have up to {available}")]
    TableTooShort { needed: usize, available: usize },

    #[error("{what} = {value} is outside the supported range {range}")]
    Range {
        what: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("cache {path}: {message}")]
    Cache { path: PathBuf, message: String },

    #[error("quadrature budget exceeded after {subdivisions} subdivisions (partial value {partial:.6e}, error {error:.3e})")]
    BudgetExceeded {
        subdivisions: usize,
        partial: f64,
        error: f64,
    },

    #[error("tail fit failed: {0}")]
    FitFailure(String),

    #[error("cutoff too small: extrapolation residual {residual:.3e} exceeds 1e-2")]
    CutoffTooSmall { residual: f64 },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Distinct nonzero process exit code per error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Precondition(_) | Error::Range { .. } => 2,
            Error::Cache { .. } | Error::Io(_) => 3,
            Error::MissedZero { .. } | Error::EmptyTable => 4,
            Error::BudgetExceeded { .. } => 5,
            Error::FitFailure(_) => 6,
            Error::Pole { .. }
            | Error::NearZero { .. }
            | Error::NearPole { .. }
            | Error::DivisionByZero { .. }
            | Error::Overflow { .. } => 7,
            Error::AccuracyNotReached { .. } | Error::CutoffTooSmall { .. } => 8,
            Error::TableTooShort { .. } => 9,
        }
    }
}

pub(crate) fn fmt_c(z: num_complex::Complex64) -> String {
    format!("{}{:+}i", z.re, z.im)
}
