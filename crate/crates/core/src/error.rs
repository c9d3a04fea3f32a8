use core::fmt;

/// Errors reported by the library.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Error {
    /// A physical parameter is outside its domain (non-positive, NaN, ...).
    InvalidParameter { name: &'static str, value: f64 },
    /// An initial amplitude pair is not normalized to 1.
    NonNormalizedPair { norm_sq: f64 },
    /// A matrix fails the density-matrix checks (trace, Hermiticity,
    /// positivity or X-state sparsity) beyond tolerance.
    NonPhysicalDensity { reason: &'static str, value: f64 },
    /// A time argument is negative.
    NegativeTime { t: f64 },
    /// The adaptive integrator could not meet its tolerances without the
    /// step size underflowing.
    StepSizeUnderflow { t: f64 },
    /// The passage-time search found no zero crossing of the survival
    /// probability within the scanned window.
    NoRoot { searched_up_to: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter { name, value } => {
                write!(f, "invalid parameter {name} = {value}")
            }
            Error::NonNormalizedPair { norm_sq } => {
                write!(f, "initial pair not normalized: |a|^2 + |b|^2 = {norm_sq}")
            }
            Error::NonPhysicalDensity { reason, value } => {
                write!(f, "non-physical density matrix: {reason} ({value})")
            }
            Error::NegativeTime { t } => write!(f, "negative time t = {t}"),
            Error::StepSizeUnderflow { t } => {
                write!(f, "integrator step size underflow at t = {t}")
            }
            Error::NoRoot { searched_up_to } => {
                write!(f, "no passage-time root found up to t = {searched_up_to}")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
