//! Crate-wide error type.

use crate::field::Rat;

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("not a function: zero denominator")]
    NotAFunction,
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("no ramification: map degree must be at least 2")]
    NoRamification,
    #[error("coincident points")]
    CoincidentPoints,
    #[error("not a conjugacy class: reducible minimal polynomial")]
    ReducibleMinpoly,
    #[error("singular curve: 4a^3 + 27b^2 = 0")]
    SingularCurve,
    #[error("no universal covering: signature {0}")]
    NoUniversalCovering(String),
    #[error("coprimality required: gcd({0}, {1}) != 1")]
    CoprimalityRequired(usize, usize),
    #[error("decomposition failed: {0}")]
    DecompositionFailed(String),
    #[error("needed root not in the coefficient field; adjoin a root of {0}")]
    NeedsExtension(String),
    #[error("construction not implemented for signature class {0}")]
    ConstructionNotImplemented(String),
    #[error("F is not fiber-compatible with theta: {0}")]
    NotFiberCompatible(String),
    #[error("V is not a left factor of theta")]
    NotALeftFactor,
    #[error("U does not generate the fiber basis")]
    DoesNotGenerate,
    #[error("conjugacy classes over a proper number field are not supported here")]
    UnsupportedConjugacy,
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("numeric precision exhausted at {0} bits")]
    Precision(u32),
}

impl Error {
    pub fn needs_extension(minpoly_display: String) -> Self {
        Error::NeedsExtension(minpoly_display)
    }
}

/// Pretty print a rational for error/report text.
pub fn show_rat(q: &Rat) -> String {
    use num_traits::One;
    if q.denom().is_one() {
        format!("{}", q.numer())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
