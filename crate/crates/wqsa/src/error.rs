use std::fmt;

/// Errors reported by state constructors, transforms, and search setup.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Qubit count outside the supported range.
    QubitCount { n: u32, min: u32, max: u32 },
    /// Basis-state or target index does not address an amplitude.
    IndexOutOfRange { index: usize, len: usize },
    /// Two states of different dimension were combined.
    DimensionMismatch { left: u32, right: u32 },
    /// Amplitude vector length is not a power of two (or is below 2).
    BadLength { len: usize },
    /// Squared norm strayed too far from one.
    Unnormalized { norm_sqr: f64 },
    /// Transform level outside 1..=n.
    LevelOutOfRange { level: u32, n: u32 },
    /// Scale outside the admissible range.
    ScaleOutOfRange { lambda: u32, min: u32, max: u32 },
    /// Shift outside 1..=2^(lambda-1).
    ShiftOutOfRange { lambda: u32, j: usize },
    /// Scale 1 carries no block information, so the search cannot beat the
    /// plain baseline; the caller asked for an index that buys nothing.
    NoSpeedup { lambda: u32 },
    /// Code point outside 0..2^n.
    CodeOutOfRange { z: usize, n: u32 },
    /// Effective search-space size must be a power of two, at least 2.
    BadBlockSize { n1: u64 },
    /// Sign factor other than +1 or -1.
    BadSign { value: i32 },
    /// An iterate op was called with a config built for the other variant.
    VariantMismatch { expected: &'static str },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::QubitCount { n, min, max } => {
                write!(f, "qubit count {n} outside supported range {min}..={max}")
            }
            Error::IndexOutOfRange { index, len } => {
                write!(f, "index {index} out of range for {len} amplitudes")
            }
            Error::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right} qubits")
            }
            Error::BadLength { len } => {
                write!(f, "amplitude vector length {len} is not a power of two >= 2")
            }
            Error::Unnormalized { norm_sqr } => {
                write!(f, "state is not normalized: squared norm {norm_sqr:e}")
            }
            Error::LevelOutOfRange { level, n } => {
                write!(f, "level {level} out of range 1..={n}")
            }
            Error::ScaleOutOfRange { lambda, min, max } => {
                write!(f, "scale {lambda} out of range {min}..={max}")
            }
            Error::ShiftOutOfRange { lambda, j } => {
                write!(f, "shift {j} out of range 1..={} at scale {lambda}", 1usize << (lambda - 1))
            }
            Error::NoSpeedup { lambda } => {
                write!(
                    f,
                    "scale {lambda} pins no block: the prepared state spans every index, \
                     so the run would only match the plain baseline; supply a scale >= 2"
                )
            }
            Error::CodeOutOfRange { z, n } => {
                write!(f, "code point {z} out of range 0..{}", 1usize << n)
            }
            Error::VariantMismatch { expected } => {
                write!(f, "search config does not select the {expected} variant")
            }
            Error::BadBlockSize { n1 } => {
                write!(f, "block size {n1} is not a power of two >= 2")
            }
            Error::BadSign { value } => {
                write!(f, "sign factor must be +1 or -1, got {value}")
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
