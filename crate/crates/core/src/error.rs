use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Two operands (or a set member) disagree on dimension.
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    /// A vector set with no members.
    EmptySet,
    /// A vector with no entries.
    EmptyVector,
    /// A NaN or infinite entry at the given position.
    NonFinite {
        index: usize,
    },
    /// Tolerances must be finite and strictly positive.
    InvalidTolerance,
    NotLinearlyIndependent,
    /// The tail sum `S_k = c_{k+1} + ... + c_n` collapsed to (numerical) zero.
    /// `k == 0` refers to the full sum of the transformed set.
    DegenerateTailSum {
        k: usize,
    },
    /// The extended set does not sum back to the caller's reference sum.
    SumMismatch {
        residual: f64,
    },
    TooFewVectors {
        required: usize,
        found: usize,
    },
    TooManyPermutations {
        n: usize,
        limit: usize,
    },
    /// A permutation that is not a rearrangement of `0..n`.
    InvalidPermutation,
    GenerationFailed {
        attempts: usize,
    },
}

impl Error {
    /// Errors caused by floating-point breakdown rather than bad input.
    pub fn is_numerical_breakdown(&self) -> bool {
        matches!(
            self,
            Error::DegenerateTailSum { .. }
                | Error::SumMismatch { .. }
                | Error::GenerationFailed { .. }
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::EmptySet => f.write_str("vector set is empty"),
            Error::EmptyVector => f.write_str("vector has no entries"),
            Error::NonFinite { index } => write!(f, "non-finite entry at index {index}"),
            Error::InvalidTolerance => f.write_str("tolerance must be finite and positive"),
            Error::NotLinearlyIndependent => {
                f.write_str("input vectors are not linearly independent")
            }
            Error::DegenerateTailSum { k } => write!(f, "tail sum S_{k} is numerically zero"),
            Error::SumMismatch { residual } => {
                write!(
                    f,
                    "extended set does not reproduce the input sum (residual {residual:e})"
                )
            }
            Error::TooFewVectors { required, found } => {
                write!(f, "need at least {required} vectors, got {found}")
            }
            Error::TooManyPermutations { n, limit } => {
                write!(
                    f,
                    "{n} vectors exceed the exhaustive permutation limit of {limit}"
                )
            }
            Error::InvalidPermutation => f.write_str("not a permutation of the set indices"),
            Error::GenerationFailed { attempts } => {
                write!(f, "example generation failed after {attempts} attempts")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
