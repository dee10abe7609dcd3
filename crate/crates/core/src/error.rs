use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The ρ₀ equation has no root beyond the turning point for this index.
    #[error("index n = {n} too small for these parameters: no root rho0 > max(eta, 0)")]
    IndexTooSmall { n: u32 },

    /// `ρ − η ln ρ = c` has no root on the branch ρ > max(η, 0).
    #[error("index too small for these parameters: rho - eta ln rho = {c} has no root beyond the turning point")]
    NoAdmissibleRoot { c: f64 },

    /// An iteration failed to converge or a tolerance could not be met.
    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("guess too far from a zero: no sign change in [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("iteration diverged: {0}")]
    Divergence(String),

    #[error(
        "index verification failed: expected {expected} zeros, sampled {found} sign changes on ({lo}, {hi}]"
    )]
    IndexMismatch {
        expected: usize,
        found: usize,
        lo: f64,
        hi: f64,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }
}
