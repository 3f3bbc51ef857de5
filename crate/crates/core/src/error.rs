use alloc::string::String;
use core::fmt;

use crate::algebra::ParseError;

/// Errors raised by the algebra engines and the logarithmic constructions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An operation that needs a nonzero polynomial received zero.
    ZeroInput,
    /// Ring description violates its invariants.
    InvalidRing(String),
    Parse(ParseError),
    /// Free module elements of different ranks were combined.
    RankMismatch {
        expected: usize,
        found: usize,
    },
    /// Matrix or index shapes do not fit together.
    ShapeMismatch(String),
    /// `df_1 ^ ... ^ df_k` could not be split along `I_X + I_Y`.
    InconsistentDecomposition,
    /// No admissible nonzerodivisor among the Jacobian candidates.
    NonzerodivisorSearchExhausted {
        tried: usize,
    },
    /// Input equations are not quasi-homogeneous for the declared weights.
    NotQuasiHomogeneous,
    /// Iterated syzygies did not terminate within the allowed length.
    ResolutionTooLong {
        max_length: usize,
    },
    /// A truncated valuation could not be decided at this truncation order.
    Undetermined {
        truncation: u32,
    },
    /// A value-set claim could not be certified inside the box.
    NotCertified {
        bound: u32,
    },
    /// The embedding-dimension hypothesis (`d_i >= 2`) is violated.
    EmbeddingDimension,
    /// A transition matrix is not invertible.
    SingularTransition,
    /// Two equivalent criteria disagreed; always an engine bug.
    Inconsistent(String),
    /// Input that parses but makes no sense for the requested operation.
    InvalidInput(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e)
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroInput => write!(f, "zero input"),
            Error::InvalidRing(m) => write!(f, "invalid ring: {}", m),
            Error::Parse(e) => write!(f, "{}", e),
            Error::RankMismatch { expected, found } => {
                write!(f, "rank mismatch: expected {}, found {}", expected, found)
            }
            Error::ShapeMismatch(m) => write!(f, "shape mismatch: {}", m),
            Error::InconsistentDecomposition => write!(f, "inconsistent decomposition"),
            Error::NonzerodivisorSearchExhausted { tried } => {
                write!(f, "nonzerodivisor search exhausted after {} candidates", tried)
            }
            Error::NotQuasiHomogeneous => write!(f, "input is not quasi-homogeneous"),
            Error::ResolutionTooLong { max_length } => {
                write!(f, "resolution did not terminate within length {}", max_length)
            }
            Error::Undetermined { truncation } => {
                write!(f, "valuation undetermined at truncation order {}", truncation)
            }
            Error::NotCertified { bound } => write!(f, "value set not certified at bound {}", bound),
            Error::EmbeddingDimension => write!(f, "embedding dimension violated (degree 1 equation)"),
            Error::SingularTransition => write!(f, "transition matrix is not invertible"),
            Error::Inconsistent(m) => write!(f, "internal inconsistency: {}", m),
            Error::InvalidInput(m) => write!(f, "invalid input: {}", m),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
