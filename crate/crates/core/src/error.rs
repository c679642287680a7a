use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension {0} is outside the supported range 3..=8")]
    Dimension(usize),

    #[error("operation is only defined for n = 4 (got n = {0})")]
    RequiresFourDimensions(usize),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("wedge of degrees {left} and {right} exceeds n = {n}")]
    DegreeOverflow { left: usize, right: usize, n: usize },

    #[error("degree mismatch: expected {expected}, got {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("interior product of a 0-form")]
    InteriorOfScalar,

    #[error("{what} invariant violated at indices {indices:?} (defect {defect:e})")]
    Invariant {
        what: &'static str,
        indices: Vec<[usize; 3]>,
        defect: f64,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("field kind mismatch: expected {expected}, got {found}")]
    FieldKind { expected: String, found: String },

    #[error("ill-conditioned heat fit (condition estimate {condition:e})")]
    IllConditioned { condition: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
