use thiserror::Error;

/// Errors raised by the geometry, family and analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("linear map is singular (|det| = {det:e})")]
    SingularMap { det: f64 },
    #[error("degenerate conic: {0}")]
    DegenerateConic(&'static str),
    #[error("point lies on or inside the ellipse")]
    PointInside,
    #[error("focus off the open unit disk (|f| = {0})")]
    OffDisk(f64),
    #[error("degenerate Blaschke caustic")]
    DegenerateCaustic,
    #[error("infeasible family parameters: {0}")]
    InfeasibleParams(String),
    #[error("tangent construction failed: iterate inside the caustic")]
    TangentFailure,
    #[error("inadmissible pair (closure residual {residual:e})")]
    InadmissiblePair { residual: f64 },
    #[error("degenerate triangle")]
    DegenerateTriangle,
    #[error("barycentric weights sum to zero")]
    ZeroMass,
    #[error("tangential triangle undefined for a right triangle")]
    TangentialUndefined,
    #[error("derived triangle undefined for a right triangle")]
    RightTriangle,
    #[error("no closed form for this family/circle combination")]
    UnsupportedCombo,
    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),
    #[error("design matrix is rank deficient")]
    RankDeficient,
    #[error("variance field is flat; no distinguished minimum")]
    NoMinimum,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
