use crate::geom::Geometry;

/// Errors shared by every module of the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("geometry mismatch: {0:?} vs {1:?}")]
    GeometryMismatch(Geometry, Geometry),
    #[error("antipodal spherical points have no unique geodesic")]
    AntipodalPoints,
    #[error("coordinates are not a valid model point for {0:?}")]
    InvalidModelPoint(Geometry),
    #[error("degenerate triangle")]
    DegenerateTriangle,
    #[error("triangle has no circumdisk of admissible radius")]
    NoCircumdisk,
    #[error("{what} out of domain (value {value})")]
    Domain { what: &'static str, value: f64 },
    #[error("saturation threshold is undefined for spherical disks of radius > pi/4")]
    NoSaturationRadius,
    #[error("point set is not saturated: cell circumradius {radius} exceeds {limit}")]
    NotSaturated { radius: f64, limit: f64 },
    #[error("centers {i} and {j} are closer than 2 rho (distance {distance})")]
    NotAPacking { i: usize, j: usize, distance: f64 },
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("input points are collinear or otherwise degenerate")]
    DegenerateInput,
    #[error("value {value} is not attained on the selected branch")]
    NotOnBranch { value: f64 },
    #[error("decomposition invariant violated: {0}")]
    Decomposition(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
