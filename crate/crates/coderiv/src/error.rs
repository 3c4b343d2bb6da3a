use std::error::Error as StdError;
use std::fmt;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A label is not part of the basis in use.
    UnknownLabel(String),
    /// A basis was declared with a repeated label.
    DuplicateLabel(char),
    /// Vector/matrix dimensions do not match. Holds (expected, got).
    ShapeMismatch(usize, usize),
    /// A vector claimed to lie in a span does not.
    NotInSpan,
    /// Composition of two degree-0 cochains would have degree -1.
    EmptyComposition,
    /// An operation required a parity-homogeneous cochain.
    MixedParity,
    /// A cochain offered as a codifferential is not odd of degree 2.
    NotOddQuadratic,
    /// `[d,d] != 0`, or an operation required a codifferential.
    NotCodifferential,
    /// An automorphism scale factor was zero.
    InvalidAutomorphism,
    /// A Maurer-Cartan solution matched no canonical orbit. Should be
    /// unreachable; reaching it is itself a bug.
    NoCanonicalMatch,
    /// A deformation sample left the Maurer-Cartan variety.
    Obstruction(String),
    /// Classification of a deformation family disagreed between samples.
    SamplingInconsistency(String),
    /// Malformed text input.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnknownLabel(l) => write!(f, "unknown basis label `{l}`"),
            Error::DuplicateLabel(l) => write!(f, "duplicate basis label `{l}`"),
            Error::ShapeMismatch(want, got) => {
                write!(f, "dimension mismatch: expected {want}, got {got}")
            }
            Error::NotInSpan => write!(f, "vector does not lie in the claimed span"),
            Error::EmptyComposition => {
                write!(f, "composition of two degree-0 cochains has no degree")
            }
            Error::MixedParity => write!(f, "cochain is not parity-homogeneous"),
            Error::NotOddQuadratic => {
                write!(f, "cochain is not an odd element of degree 2")
            }
            Error::NotCodifferential => write!(f, "[d,d] != 0: not a codifferential"),
            Error::InvalidAutomorphism => {
                write!(f, "automorphism scales must be nonzero")
            }
            Error::NoCanonicalMatch => write!(
                f,
                "codifferential matches no canonical orbit (internal inconsistency)"
            ),
            Error::Obstruction(s) => write!(f, "deformation obstructed: {s}"),
            Error::SamplingInconsistency(s) => {
                write!(f, "inconsistent classification across samples: {s}")
            }
            Error::Parse(s) => write!(f, "parse error: {s}"),
        }
    }
}

impl StdError for Error {}
