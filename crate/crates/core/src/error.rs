use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: &'static str },

    #[error("storage time must be non-negative, got {0}")]
    NegativeTime(f64),

    #[error("ill-posed parameters: {0}")]
    IllPosed(&'static str),

    #[error("insufficient data: {0}")]
    InsufficientData(&'static str),

    #[error("fit did not converge after {iterations} iterations (residual norm {residual_norm:.3e}): {reason}")]
    FitNotConverged { iterations: usize, residual_norm: f64, reason: &'static str },

    #[error("link never entangled under these parameters (C(0) = {0:.3e})")]
    NeverEntangled(f64),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: &'static str) -> Self {
        Error::InvalidParameter { name, reason }
    }
}

pub(crate) fn check_time(t: f64) -> Result<()> {
    if t.is_nan() || t < 0.0 {
        Err(Error::NegativeTime(t))
    } else {
        Ok(())
    }
}

pub(crate) fn check_probability(name: &'static str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::invalid(name, "must lie in [0, 1]"))
    }
}

pub(crate) fn check_non_negative(name: &'static str, x: f64) -> Result<()> {
    if x >= 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(name, "must be non-negative"))
    }
}
