use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} is not an odd prime")]
    InvalidModulus(u32),
    #[error("dimension must be at least 2, got {0}")]
    InvalidDimension(usize),
    #[error("radius parameter {t} must be a nonzero residue mod {q}")]
    InvalidRadius { q: u32, t: u32 },
    #[error("space F_{q}^{d} has too many points for dense enumeration")]
    SpaceTooLarge { q: u32, d: usize },
    #[error("point has {got} coordinates, expected {expected}")]
    WrongArity { expected: usize, got: usize },
    #[error("coordinate {value} out of range for modulus {q}")]
    CoordinateOutOfRange { value: u32, q: u32 },
    #[error("point index {index} out of range [0, {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("empty point list")]
    EmptyPointList,
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("point set universe {got} does not match space size {expected}")]
    UniverseMismatch { expected: usize, got: usize },
    #[error("prism violates distance invariant at center position {position}")]
    NotAPrism { position: usize },
    #[error("no nondegenerate prisms: ratio undefined")]
    NoPrisms,
    #[error("hypothesis class over this set is empty")]
    EmptyClass,
    #[error("invalid hypothesis: {0}")]
    InvalidHypothesis(String),
    #[error("pattern set of size {0} does not fit in a machine word")]
    PatternTooWide(usize),
    #[error("subset size {size} exceeds space size {len}")]
    SubsetTooLarge { size: usize, len: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: duplicate point")]
    DuplicatePoint { line: usize },
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("count overflowed 128 bits")]
    Overflow,
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
