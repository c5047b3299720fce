use alloc::string::String;

/// Errors reported by constructors and operations with nontrivial
/// preconditions. Operations documented as total do not return this type.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("point {0} is outside [0, 1)")]
    PointOutOfUnit(String),
    #[error("invalid rational literal `{0}`")]
    BadRational(String),
    #[error("interval bounds must satisfy 0 <= left < right <= 1")]
    BadInterval,
    #[error("intervals do not tile [0, 1): {0}")]
    BadTiling(String),
    #[error("piece has slope zero")]
    ZeroSlope,
    #[error("piece image leaves the unit interval")]
    ImageOutOfUnit,
    #[error("interior images do not tile (0, 1)")]
    ImagesNotTiling,
    #[error("breakpoint images mismatch: {0}")]
    PointImageMismatch(String),
    #[error("mapping is not a bijection of its support: {0}")]
    NotBijective(String),
    #[error("partition is not associated with the map")]
    NotAssociated,
    #[error("intervals are not consecutive")]
    NotConsecutive,
    #[error("invalid interval exchange data: {0}")]
    BadIetData(&'static str),
    #[error("operation requires unit slopes")]
    NonUnitSlopes,
    #[error("operation requires a right-continuous order-preserving exchange")]
    NotRcExchange,
    #[error("intervals overlap")]
    OverlappingIntervals,
    #[error("element is a finitely supported permutation")]
    FinitelySupported,
    #[error("element is already right-continuous and order-preserving")]
    AlreadyRcPositive,
    #[error("element does not have mixed orientation")]
    NotMixedOrientation,
}
