use std::path::PathBuf;

/// Everything that can go wrong in the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("malformed map: {0}")]
    MalformedMap(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("unknown lattice `{0}`")]
    UnknownLattice(String),

    #[error("map is not {expected}-regular (vertex {vertex} has degree {degree})")]
    NotRegular {
        expected: usize,
        vertex: usize,
        degree: usize,
    },

    #[error("half-angle assignment rejected: {0}")]
    InvalidAngles(String),

    #[error("lattice is not angle-regular: {0}")]
    NotAngleRegular(String),

    #[error("graph is not planar: {0}")]
    NotPlanar(String),

    #[error("degenerate polynomial: {0}")]
    DegeneratePolynomial(String),

    #[error("quadrature budget exhausted after {evaluations} evaluations (estimate {estimate}, error {error:e})")]
    BudgetExceeded {
        estimate: f64,
        error: f64,
        evaluations: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
