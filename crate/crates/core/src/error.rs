use thiserror::Error;

/// Errors raised by geometric constructions, metric computations and the
/// verification harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected S^{expected}, got S^{found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension {0} is too small (need d >= 2)")]
    DimensionTooSmall(usize),
    #[error("vector of norm {0} cannot be normalized to a point of the sphere")]
    DegenerateVector(f64),
    #[error("angle {0} lies outside [0, pi]")]
    AngleOutOfRange(f64),
    #[error("arc endpoints are equal or antipodal")]
    DegenerateArc,
    #[error("radius {0} lies outside the open interval (0, pi/2)")]
    RadiusOutOfRange(f64),
    #[error("hemispheres are equal")]
    EqualHemispheres,
    #[error("hemispheres are opposite")]
    OppositeHemispheres,
    #[error("point is not a corner of the lune")]
    NotACorner,

    #[error("vertex set contains an antipodal pair")]
    AntipodalPair,
    #[error("vertex set does not lie in an open hemisphere")]
    NotInOpenHemisphere,
    #[error("vertex set does not span the ambient space")]
    NotFullDimensional,
    #[error("point lies inside the body")]
    PointIsInside,
    #[error("point lies outside the body")]
    PointIsOutside,
    #[error("empty point set")]
    EmptyPointSet,

    #[error("hemisphere does not support the body (margin {margin:e})")]
    NotSupporting { margin: f64 },
    #[error("iterative optimization did not converge (residual {residual:e})")]
    NotConverged { residual: f64 },
    #[error("pair does not realize the diameter (gap {gap:e})")]
    NotADiameterPair { gap: f64 },
    #[error("width {0} does not exceed pi/2")]
    WidthNotAboveHalfPi(f64),
    #[error("point is not on the boundary of the body (margin {margin:e})")]
    NotOnBoundary { margin: f64 },
    #[error("body has no exact boundary sampler")]
    NoBoundarySampler,
    #[error(
        "center condition failed: containment margin {margin:e}, thickness gap {thickness_gap:e}"
    )]
    CenterConditionFailed { margin: f64, thickness_gap: f64 },

    #[error("Reuleaux polygons need an odd number of vertices, got {0}")]
    EvenN(usize),
    #[error("width {0} outside the admissible range")]
    WidthOutOfRange(f64),
    #[error("no circumradius solves the opposite-vertex distance equation")]
    NoSolution,
    #[error("kappa {0} outside (0, pi/2)")]
    KappaOutOfRange(f64),
    #[error("sigma {sigma} outside (0, pi/2 - kappa] = (0, {max}]")]
    SigmaOutOfRange { sigma: f64, max: f64 },
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error(
        "w = {0} is out of range: the search needs 0 < w < pi/2 (constant diameter w >= pi/2 already implies constant width w)"
    )]
    WOutOfRange(f64),
    #[error("schema error at {pointer}: {message}")]
    SchemaError { pointer: String, message: String },
    #[error("unsupported format_version {0} (expected 1)")]
    VersionMismatch(i64),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
