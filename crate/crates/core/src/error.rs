use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("exceptional point: {0}")]
    ExceptionalPoint(String),
    #[error("value {re}+{im}i is not within tolerance of an integer (distance {distance:e})")]
    NotNearInteger { re: f64, im: f64, distance: f64 },
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("limit orders disagree: t-first {tz:?}, z-first {zt:?}")]
    LimitDisagreement { tz: (f64, f64), zt: (f64, f64) },
    #[error("candidate basis incomplete, residual {residual:e}")]
    IncompleteBasis { residual: f64 },
    #[error("ill-conditioned sample system (singular value ratio {ratio:e})")]
    IllConditioned { ratio: f64 },
    #[error("fusion callback failed: {0}")]
    FusionUndecomposable(String),
    #[error("not a projective class, unmatched remainder: {0}")]
    NotProjectiveClass(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("period data not uniform across block: {0}")]
    NonUniformPeriod(String),
}

pub type Result<T> = std::result::Result<T, Error>;
