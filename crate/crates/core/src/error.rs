//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("galois conjugate exponent {0} not in {{1,3,5,7}}")]
    BadConjugateExponent(u64),
    #[error("p = 2 is out of scope (ramified place)")]
    EvenPrime,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("element is not p-integral: denominator divisible by {0}")]
    NotPIntegral(u64),
    #[error("extension degree {0} out of range 1..=6")]
    BadExtensionDegree(usize),
    #[error("field size p^r = {p}^{r} too large for machine arithmetic")]
    FieldTooLarge { p: u64, r: usize },
    #[error("model {model} is inadmissible at p = {p}: {why}")]
    Inadmissible {
        model: &'static str,
        p: u64,
        why: &'static str,
    },
    #[error("unknown surface model {0:?}")]
    UnknownModel(String),
    #[error("trace data inconsistent: {0}")]
    TraceDataInconsistent(String),
    #[error("inexact polynomial division (remainder nonzero)")]
    InexactDivision,
    #[error("polynomial product has irrational coefficients")]
    NotRational,
    #[error("quartic is not a perfect square of a quadratic at p = {0}")]
    NotPerfectSquare(u64),
    #[error("Weil bound violated: {0}")]
    WeilViolation(String),
    #[error("calibration failed: {0}")]
    CalibrationFailed(String),
    #[error("series truncation insufficient: need index {need}, have {have}")]
    InsufficientTruncation { need: i64, have: i64 },
    #[error("raise p-adic precision: K = {k} cannot certify the required valuation {need}")]
    RaisePrecision { k: u32, need: u32 },
    #[error("series has zero leading coefficient window")]
    ZeroLeadingCoefficient,
    #[error("nth_root requires leading coefficient 1, found {0}")]
    RootLeadingCoefficient(String),
    #[error("exponent lattice mismatch: index {index} not divisible for target M = {target}")]
    LatticeMismatch { index: i64, target: u32 },
    #[error("eisenstein parity violation: (chi1*chi2)(-1) must be -1")]
    ParityViolation,
    #[error("{0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
