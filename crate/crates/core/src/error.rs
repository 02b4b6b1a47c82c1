use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed PGM header: {0}")]
    MalformedHeader(String),
    #[error("unsupported PGM maxval {0} (only 255 is supported)")]
    UnsupportedMaxval(u32),
    #[error("truncated pixel data: expected {expected} samples, found {found}")]
    TruncatedData { expected: usize, found: usize },
    #[error("invalid image: {0}")]
    InvalidImage(String),

    #[error("cannot transform an empty signal")]
    EmptySignal,
    #[error("subband lengths {approx}+{detail} do not match original length {original}")]
    LengthMismatch {
        approx: usize,
        detail: usize,
        original: usize,
    },
    #[error("{levels} decomposition levels do not fit a {width}x{height} image")]
    TooManyLevels {
        levels: usize,
        width: usize,
        height: usize,
    },
    #[error("inconsistent subband dimensions: {0}")]
    InconsistentDimensions(String),

    #[error("histogram is empty")]
    EmptyHistogram,
    #[error("coefficient {0} cannot be shifted without leaving the 32-bit range")]
    CoefficientOverflow(i32),
    #[error("zero point {value} is occupied by {count} coefficients")]
    ZeroPointOccupied { value: i32, count: u64 },

    #[error("BitCountExhausted: expected {expected} bits, scan found only {found}")]
    BitCountExhausted { expected: u64, found: u64 },
    #[error("InsufficientCapacity: requested {requested} bits, achievable {achievable} bits")]
    InsufficientCapacity { requested: u64, achievable: u64 },
    #[error("PixelRangeOverflow: pixel {index} reconstructs to {value}, outside [0, 255]")]
    PixelRangeOverflow { index: usize, value: i32 },
    #[error("ChecksumMismatch: key carries {expected:08x}, extracted payload hashes to {actual:08x}")]
    ChecksumMismatch { expected: u32, actual: u32 },
    #[error("DimensionMismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid embedding configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid key file: {0}")]
    InvalidKey(String),
    #[error("round trip did not reproduce the input: {0}")]
    RoundTripMismatch(String),
}

impl Error {
    /// Short, stable name of the error kind, as printed by the command-line tool.
    pub fn name(&self) -> &'static str {
        match self {
            Error::MalformedHeader(_) => "MalformedHeader",
            Error::UnsupportedMaxval(_) => "UnsupportedMaxval",
            Error::TruncatedData { .. } => "TruncatedData",
            Error::InvalidImage(_) => "InvalidImage",
            Error::EmptySignal => "EmptySignal",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::TooManyLevels { .. } => "TooManyLevels",
            Error::InconsistentDimensions(_) => "InconsistentDimensions",
            Error::EmptyHistogram => "EmptyHistogram",
            Error::CoefficientOverflow(_) => "CoefficientOverflow",
            Error::ZeroPointOccupied { .. } => "ZeroPointOccupied",
            Error::BitCountExhausted { .. } => "BitCountExhausted",
            Error::InsufficientCapacity { .. } => "InsufficientCapacity",
            Error::PixelRangeOverflow { .. } => "PixelRangeOverflow",
            Error::ChecksumMismatch { .. } => "ChecksumMismatch",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::InvalidConfig(_) => "InvalidConfig",
            Error::InvalidKey(_) => "InvalidKey",
            Error::RoundTripMismatch(_) => "RoundTripMismatch",
        }
    }
}
