use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("invalid surface model: {0}")]
    InvalidSurface(String),
    #[error("operation needs an elliptic K3 with Pic = ZΣ ⊕ ZC")]
    UnsupportedSurface,
    #[error("c1 · C = {0}, expected a numerical section (c1 · C = 1)")]
    NotNumericalSection(String),
    #[error("k must be positive, got {0}")]
    NonpositiveK(String),
    #[error("polarization ({a}, {b}) is not ample")]
    NotAmple { a: i64, b: i64 },
    #[error("polarization ({a}, {b}) lies on the wall of {x}Σ + {y}C")]
    OnWall { a: i64, b: i64, x: i64, y: i64 },
    #[error("destabilizing rank {r_a} must lie strictly between 0 and {rank}")]
    RankRange { r_a: String, rank: String },
    #[error("n = {n} is too small (need n >= {min})")]
    NTooSmall { n: u64, min: u64 },
    #[error("class is not perpendicular to v (pairing {0})")]
    NotPerpendicular(String),
    #[error("decomposition failed: {0}")]
    DecompositionFailed(String),
    #[error("recursion mismatch at rank {rank}: {what}")]
    RecursionMismatch { rank: u32, what: String },
    #[error("Mukai vector has rank zero")]
    ZeroRank,
    #[error("target is not in the integer span of the basis")]
    NotInSpan,
    #[error("Mukai vector is not equivalent to a canonical v_r")]
    NotCanonical,
    #[error("rank must be positive")]
    InvalidRank,
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DIMENSION_MISMATCH",
            Error::NotSquare { .. } => "NOT_SQUARE",
            Error::InvalidSurface(_) => "INVALID_SURFACE",
            Error::UnsupportedSurface => "UNSUPPORTED_SURFACE",
            Error::NotNumericalSection(_) => "NOT_NUMERICAL_SECTION",
            Error::NonpositiveK(_) => "NONPOSITIVE_K",
            Error::NotAmple { .. } => "NOT_AMPLE",
            Error::OnWall { .. } => "ON_WALL",
            Error::RankRange { .. } => "RANK_RANGE",
            Error::NTooSmall { .. } => "N_TOO_SMALL",
            Error::NotPerpendicular(_) => "NOT_PERPENDICULAR",
            Error::DecompositionFailed(_) => "DECOMPOSITION_FAILED",
            Error::RecursionMismatch { .. } => "RECURSION_MISMATCH",
            Error::ZeroRank => "ZERO_RANK",
            Error::NotInSpan => "NOT_IN_SPAN",
            Error::NotCanonical => "NOT_CANONICAL",
            Error::InvalidRank => "INVALID_RANK",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
