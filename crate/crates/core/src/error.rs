use thiserror::Error;

use crate::lattice::LatticeVector;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ray {0} is not primitive")]
    NonPrimitiveRay(LatticeVector),
    #[error("ray {0} occurs more than once")]
    DuplicateRay(LatticeVector),
    #[error("fan is not complete: {0}")]
    NotComplete(String),
    #[error("fan is not smooth: {0}")]
    NotSmooth(String),
    #[error("matrix has determinant {0}, expected +1 or -1")]
    NotUnimodular(i64),
    #[error("index {index} out of range for {len} elements")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("ray {index} has self-intersection {self_intersection}, expected -1")]
    NotExceptional {
        index: usize,
        self_intersection: i64,
    },
    #[error("cannot blow down a fan with only {0} rays")]
    TooFewRays(usize),
    #[error("expected {expected} coefficients, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("divisor is not ample: intersection numbers {0:?}")]
    NotAmple(Vec<i64>),
    #[error("polygon was not built over the given fan")]
    PolygonFanMismatch,
    #[error("boundary maps do not compose to zero")]
    InvalidComplex,
    #[error("homology profile is not that of a closed surface: {0}")]
    NotAClosedSurfaceProfile(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    #[error("all moment-map weights vanished")]
    DegenerateWeights,
}

impl Error {
    /// Stable machine-readable name, used in CLI error objects.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonPrimitiveRay(_) => "NonPrimitiveRay",
            Error::DuplicateRay(_) => "DuplicateRay",
            Error::NotComplete(_) => "NotComplete",
            Error::NotSmooth(_) => "NotSmooth",
            Error::NotUnimodular(_) => "NotUnimodular",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::NotExceptional { .. } => "NotExceptional",
            Error::TooFewRays(_) => "TooFewRays",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::NotAmple(_) => "NotAmple",
            Error::PolygonFanMismatch => "PolygonFanMismatch",
            Error::InvalidComplex => "InvalidComplex",
            Error::NotAClosedSurfaceProfile(_) => "NotAClosedSurfaceProfile",
            Error::Overflow(_) => "Overflow",
            Error::DegenerateWeights => "DegenerateWeights",
        }
    }
}
