use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Parameter and shape errors reported by the encoding and decoding routines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A length that must be a power of two (at least 2 for codes) is not.
    NotPowerOfTwo(usize),
    /// More information bits were requested than the code length allows.
    InfoLengthTooLarge { k: usize, n: usize },
    /// The information set has an out-of-range or repeated index.
    InvalidInfoSet { index: usize },
    /// The impulse response is empty, too long, or does not start and end with 1.
    InvalidImpulseResponse,
    /// A vector does not have the length the operation needs.
    LengthMismatch { expected: usize, actual: usize },
    /// A bit vector contains a value other than 0 or 1.
    NotABit { index: usize },
    /// The list size must be at least one.
    ZeroListSize,
    /// A message vector carries a 1 at a frozen position.
    FrozenViolation { index: usize },
    /// The operation is not defined for this node kind.
    UnsupportedKind,
    /// A variant name was not one of `list`, `fast3`, `fast4`.
    UnknownVariant,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPowerOfTwo(n) => write!(f, "length {n} is not a power of two"),
            Error::InfoLengthTooLarge { k, n } => {
                write!(f, "information length {k} exceeds code length {n}")
            }
            Error::InvalidInfoSet { index } => {
                write!(f, "information index {index} is out of range or repeated")
            }
            Error::InvalidImpulseResponse => {
                f.write_str("impulse response must start and end with 1 and have at most 64 taps")
            }
            Error::LengthMismatch { expected, actual } => {
                write!(f, "expected length {expected}, got {actual}")
            }
            Error::NotABit { index } => write!(f, "value at position {index} is not a bit"),
            Error::ZeroListSize => f.write_str("list size must be at least 1"),
            Error::FrozenViolation { index } => {
                write!(f, "frozen position {index} carries a nonzero bit")
            }
            Error::UnsupportedKind => f.write_str("operation undefined for this node kind"),
            Error::UnknownVariant => f.write_str("unknown decoder variant (list|fast3|fast4)"),
        }
    }
}

impl core::error::Error for Error {}
