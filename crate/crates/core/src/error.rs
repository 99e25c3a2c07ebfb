use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Invalid construction of a parameter or configuration type.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A minimizer or root finder could not bracket or converge.
    #[error("numerical error: {0}")]
    Numerical(String),

    /// The eigensolver could not resolve the requested bound state.
    #[error("spectrum error: {0}")]
    Spectrum(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn require_positive_radius(r: f64, what: &str) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{what} requires r > 0 (potential is singular at the origin), got r = {r}"
        )))
    }
}
