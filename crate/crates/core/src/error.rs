use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Fewer grid samples than window modes; the transform would alias.
    #[error("grid of {n} samples cannot resolve a window of half-width {k} (need N >= 2K)")]
    WindowTooWide { n: usize, k: usize },

    #[error("spectral parameter lies within {distance:e} of the eigenvalue at mode k = {k}")]
    SpectrumHit { k: i64, distance: f64 },

    #[error("argument s = {re} + {im}i is within the excluded radius of the pole at s = 1")]
    PoleAtOne { re: f64, im: f64 },

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("family value at t = {t} is not Hermitian (deviation {deviation:e})")]
    NotHermitian { t: f64, deviation: f64 },

    #[error("eigenvalue within zero tolerance of 0 at endpoint t = {t}")]
    EndpointOnSpectrum { t: f64 },

    #[error("eigenvalue displacement {jump:e} between t = {t0} and t = {t1} exceeds the declared Lipschitz bound")]
    LipschitzViolated { t0: f64, t1: f64, jump: f64 },

    #[error("perturbation norm {norm} reaches {edge}, the first frequency outside the window; widen the window")]
    SupportExceedsWindow { norm: f64, edge: f64 },

    #[error("parse error at line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn bad(msg: impl Into<String>) -> Self {
        Error::BadParameter(msg.into())
    }
}
