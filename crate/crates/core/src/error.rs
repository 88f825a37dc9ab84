use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    /// Input outside the domain of an operation (bad determinant, empty
    /// lamination, invalid Fricke point, wrong classification, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Integer matrix arithmetic left the supported range.
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    /// An iterative numerical method did not converge.
    #[error("solver error: {message}")]
    Solver { message: String, trace: Vec<f64> },

    /// An adaptive approximation did not reach its tolerance.
    #[error("tolerance error: {message} (last estimates {last:?})")]
    Tolerance { message: String, last: [f64; 2] },

    #[error("projection error: {0}")]
    Projection(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn solver(msg: impl Into<String>, trace: Vec<f64>) -> Self {
        Error::Solver {
            message: msg.into(),
            trace,
        }
    }

    /// True for numerical failures (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Solver { .. } | Error::Tolerance { .. })
    }
}
