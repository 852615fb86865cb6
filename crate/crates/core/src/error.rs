use std::fmt;

use thiserror::Error;

/// Expansion family of a partial quotient sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Classical,
    HurwitzPositive,
    HurwitzNegative,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Classical => "classical",
            Kind::HurwitzPositive => "hurwitz-positive",
            Kind::HurwitzNegative => "hurwitz-negative",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("precision exhausted at {bits} bits")]
    PrecisionExhausted { bits: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero denominator while folding the continued fraction")]
    ZeroDenominator,
    #[error("expected a {expected} sequence, found {found}")]
    KindMismatch { expected: Kind, found: Kind },
    #[error("need {needed} partial quotients, only {available} available")]
    InsufficientTerms { needed: usize, available: usize },
    #[error("delta {delta} outside the admissible range {range}")]
    DeltaOutOfRange { delta: String, range: &'static str },
    #[error("squarefree part of {0} cannot be certified within the trial-division bound")]
    SquarefreeBound(String),
    #[error("values live in different quadratic fields (sqrt({0}) and sqrt({1}))")]
    FieldMismatch(String, String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
