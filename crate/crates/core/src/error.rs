//! Crate-wide error type.

use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u32, u32),

    #[error("modulus {0} is not a supported prime (need 2 <= p < 256)")]
    BadModulus(u32),

    #[error("division is not exact")]
    DivisionNotExact,

    #[error("division by zero")]
    ZeroDivisor,

    #[error("digit {digit} out of range for p = {p}")]
    DigitOutOfRange { digit: u32, p: u32 },

    #[error("series is not a unit (constant term is zero)")]
    NotUnit,

    #[error("inner series of a composition must have zero constant term")]
    NonzeroConstantTerm,

    #[error("series must have the form t + O(t^2)")]
    NotTangentToIdentity,

    #[error("seed cannot be lifted: residual fails at index {index}")]
    NotLiftable { index: usize },

    #[error("precision {have} is insufficient, {need} terms required")]
    InsufficientPrecision { have: usize, need: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("orbit exceeds the configured cap of {cap} elements")]
    OrbitCap { cap: usize },

    #[error("polynomial is inseparable in X (a p-th power in disguise)")]
    Inseparable,

    #[error("no root matches the requested prefix")]
    NoSeed,

    #[error("certification failed: {0}")]
    CertificationFailed(String),

    #[error("search caps exhausted: {0}")]
    CapsExhausted(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("Witt vector lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("break sequence conversion produced a non-integral value")]
    NonIntegral,

    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),

    #[error("resultant vanished identically")]
    DegenerateResultant,
}

pub type Result<T> = std::result::Result<T, Error>;
