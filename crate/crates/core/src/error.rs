use alloc::string::String;
use core::fmt;

use crate::ff::{FactorPattern, GroupLabel};

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
#[non_exhaustive]
pub enum Error {
    NotPrime(u64),
    PrimeTooLarge(u64),
    /// The operation needs an odd prime.
    EvenPrime,
    ZeroPolynomial,
    DegreeTooLarge(usize),
    LeadingCoefficientVanishes {
        p: u32,
    },
    /// The reduction mod `p` has a repeated factor; callers skip such `p`.
    NotSquarefree {
        p: u32,
    },
    /// A factorization pattern that cannot occur in the named Galois group.
    PatternMismatch {
        pattern: FactorPattern,
        group: GroupLabel,
    },
    DenominatorVanishes {
        p: u32,
    },
    BadPrime {
        p: u32,
        reason: String,
    },
    /// Two distinct cusps of the fibration meet modulo `p`.
    CuspCollision {
        p: u32,
    },
    SingularReduction {
        p: u32,
    },
    HasseBound {
        p: u32,
        points: u64,
    },
    WeilBound {
        p: u32,
        trace: i64,
    },
    /// A threefold specification or surface model is internally inconsistent.
    InvalidModel(String),
    UnknownCoefficient {
        label: String,
        p: u32,
    },
    HeckeMismatch {
        label: String,
        n: u32,
        expected: i64,
        found: i64,
    },
    Ambiguous(String),
    Contradiction(String),
    Uncovered(String),
    HypothesisViolated(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(n) => write!(f, "{n} is not prime"),
            Error::PrimeTooLarge(n) => write!(f, "{n} exceeds the supported prime range (2^31)"),
            Error::EvenPrime => f.write_str("operation requires an odd prime"),
            Error::ZeroPolynomial => f.write_str("zero polynomial"),
            Error::DegreeTooLarge(d) => write!(f, "polynomial degree {d} exceeds 8"),
            Error::LeadingCoefficientVanishes { p } => {
                write!(f, "leading coefficient vanishes mod {p}")
            }
            Error::NotSquarefree { p } => write!(f, "reduction mod {p} is not squarefree"),
            Error::PatternMismatch { pattern, group } => {
                write!(f, "factorization pattern {pattern} impossible for group {group}")
            }
            Error::DenominatorVanishes { p } => write!(f, "a denominator vanishes mod {p}"),
            Error::BadPrime { p, reason } => write!(f, "bad prime {p}: {reason}"),
            Error::CuspCollision { p } => write!(f, "distinct cusps collide mod {p}"),
            Error::SingularReduction { p } => write!(f, "curve is singular mod {p}"),
            Error::HasseBound { p, points } => {
                write!(f, "{points} points over F_{p} violates the Hasse bound")
            }
            Error::WeilBound { p, trace } => {
                write!(f, "trace {trace} at p = {p} violates |t| <= 2 p^(3/2)")
            }
            Error::InvalidModel(msg) => write!(f, "invalid model: {msg}"),
            Error::UnknownCoefficient { label, p } => {
                write!(f, "no stored coefficient a_{p} for {label}")
            }
            Error::HeckeMismatch { label, n, expected, found } => {
                write!(f, "{label}: a_{n} = {found} disagrees with the Hecke recursion value {expected}")
            }
            Error::Ambiguous(msg) => write!(f, "ambiguous: {msg}"),
            Error::Contradiction(msg) => write!(f, "no candidate fits: {msg}"),
            Error::Uncovered(msg) => write!(f, "uncovered candidate: {msg}"),
            Error::HypothesisViolated(msg) => write!(f, "hypothesis violated: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
