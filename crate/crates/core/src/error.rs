use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the geometric, combinatorial and statistical layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-finite coordinate ({x}, {y})")]
    NonFinite { x: f64, y: f64 },

    #[error("degenerate triangle: vertices are collinear")]
    DegenerateTriangle,

    #[error("at least 3 sites are required for a triangulation, got {0}")]
    TooFewSites(usize),

    #[error("all sites are collinear")]
    CollinearSites,

    #[error("point ({x}, {y}) lies outside the triangle")]
    OutsideTriangle { x: f64, y: f64 },

    #[error("r-factor must satisfy r >= 1, got {0}")]
    InvalidRFactor(f64),

    #[error("epsilon must lie in (0, sqrt(3)/3), got {0}")]
    InvalidEpsilon(f64),

    #[error("delta must lie in (0, 4/9), got {0}")]
    InvalidDelta(f64),

    #[error("alpha must lie in (0, 1), got {0}")]
    InvalidAlpha(f64),

    #[error("number of triangles must be at least 1, got {0}")]
    InvalidTriangleCount(usize),

    #[error("point set is empty")]
    EmptyPointSet,

    #[error("no data point falls inside the convex hull of the sites")]
    NoPointsInHull,

    #[error("limit of the mean domination number equals mu; no consistency scale exists")]
    NoConsistencyScale,

    #[error("brute-force oracle refuses n = {n} (cap {cap})")]
    OracleCapExceeded { n: usize, cap: usize },

    #[error("invalid replication plan: {0}")]
    InvalidPlan(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True for errors that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}
