use thiserror::Error;

use crate::chaincore::Coefficients;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed chain complex: {0}")]
    MalformedComplex(String),

    #[error("boundary of degree-{degree} cell `{cell}` is not supported on the subcomplex")]
    NotASubcomplex { degree: usize, cell: String },

    #[error("unknown cell label `{label}` in degree {degree}")]
    UnknownCell { degree: usize, label: String },

    #[error("coefficient mismatch: {left} vs {right}")]
    CoefficientMismatch {
        left: Coefficients,
        right: Coefficients,
    },

    #[error("{0}")]
    InvalidCoefficients(String),

    #[error("tensor product over Z with torsion needs Tor terms, which are not computed")]
    TorsionTensor,

    #[error("degree shift by {shift} moves degree {degree} below zero")]
    NegativeDegree { degree: usize, shift: i64 },

    #[error("hypothesis violated ({anchor}): {hypothesis}")]
    Hypothesis {
        anchor: &'static str,
        hypothesis: String,
    },

    #[error(
        "{requested} coefficients need the twisted module +-Z for d = {d} (orientable: {orientable}); \
         use F2, or an even-dimensional orientable manifold ({anchor})"
    )]
    TwistedCoefficients {
        requested: Coefficients,
        d: usize,
        orientable: bool,
        anchor: &'static str,
    },

    #[error("unsupported space: {reason}; would suffice: {needed}")]
    UnsupportedSpace { reason: String, needed: String },

    #[error("missing table for level {level}: {context}")]
    MissingLevel { level: usize, context: String },

    #[error("invalid space descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("boundary data fails d∘d = 0 in degree {degree}")]
    InconsistentBoundary { degree: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    pub(crate) fn hypothesis(anchor: &'static str, hypothesis: impl Into<String>) -> Self {
        Error::Hypothesis {
            anchor,
            hypothesis: hypothesis.into(),
        }
    }

    /// True for errors that reject a mathematically out-of-range request
    /// rather than malformed input.
    pub fn is_rejected_hypothesis(&self) -> bool {
        matches!(
            self,
            Error::Hypothesis { .. }
                | Error::TwistedCoefficients { .. }
                | Error::UnsupportedSpace { .. }
        )
    }

    pub fn anchor(&self) -> Option<&'static str> {
        match self {
            Error::Hypothesis { anchor, .. } | Error::TwistedCoefficients { anchor, .. } => {
                Some(anchor)
            }
            _ => None,
        }
    }
}
