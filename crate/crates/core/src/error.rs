use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("no interior minimum: {0}")]
    NoInteriorMinimum(String),

    #[error("no bound state for n={n}, l={l}: A = {strength} does not exceed the critical coupling A_c = {critical}")]
    NoBoundState {
        n: u32,
        l: u32,
        strength: f64,
        critical: f64,
    },

    #[error("normalization sum is not positive (s = {0:e})")]
    NonPositiveNorm(f64),

    #[error("quadrature did not converge: estimate {estimate:e} with error {error:e} after {subdivisions} subdivisions")]
    Quadrature {
        estimate: f64,
        error: f64,
        subdivisions: usize,
    },

    #[error("eigenvalue search failed: {reason} (last bracket [{lo:e}, {hi:e}])")]
    Eigensolver { reason: String, lo: f64, hi: f64 },

    #[error("invalid state label `{0}`")]
    InvalidLabel(String),

    #[error("unknown molecule `{0}`")]
    UnknownMolecule(String),

    #[error("{path}:{line}: {message}")]
    Config {
        path: String,
        line: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
