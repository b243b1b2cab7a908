use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("truncation dim={dim} too small: tail mass {tail:.3e} exceeds {tolerance:.1e}")]
    TruncationTooSmall { dim: usize, tail: f64, tolerance: f64 },

    #[error("index overflow: (m, n) = ({m}, {n}) with dim={dim}")]
    IndexOverflow { m: usize, n: usize, dim: usize },

    #[error("probability mass on sampling grid is {mass:.12}, below 1 - 1e-9")]
    GridUnderflow { mass: f64 },

    #[error("product dimension {dim} exceeds the configured limit {limit}")]
    DimensionLimit { dim: usize, limit: usize },

    #[error("square-root branch singularity: z + |z| = 0 at z = {re} + {im}i")]
    BranchSingularity { re: f64, im: f64 },

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("too few samples: {count} (at least 4 required)")]
    TooFewSamples { count: usize },

    #[error("Feshbach resonance pole at B = {field}")]
    ResonancePole { field: f64 },

    #[error("Gauss-Hermite quadrature unconverged: doubling {nodes} nodes changed an element by {change:.3e}")]
    QuadratureUnconverged { nodes: usize, change: f64 },

    #[error("numerical non-convergence: {0}")]
    Unconverged(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
