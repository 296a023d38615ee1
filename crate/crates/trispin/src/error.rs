//! Crate-wide error type.

/// Errors surfaced by state construction, operator builders, and solvers.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension {got} where {expected} was required")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("site index {site} out of range for {n_sites} sites")]
    SiteOutOfRange { site: usize, n_sites: usize },

    #[error("site list must be non-empty and strictly increasing")]
    BadSiteList,

    #[error("trace must be 1 within {tol:.1e} (got deviation {deviation:.3e})")]
    NonUnitTrace { deviation: f64, tol: f64 },

    #[error("matrix is not Hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:.3e})")]
    NotPositive(f64),

    #[error("invariant coordinates violate the physicality constraints: {0}")]
    UnphysicalCoords(String),

    #[error("witness parameter r0 = {0} outside the open interval (2/3, 1)")]
    WitnessParamOutOfRange(f64),

    #[error("excitation count {k} out of range for {n} qubits")]
    ExcitationOutOfRange { k: usize, n: usize },

    #[error(
        "invalid Dicke pair (N = {n}, Jz = {jz}): need N >= 2 and |2Jz| <= N with integral 2Jz"
    )]
    InvalidDickeMultiplet { n: usize, jz: f64 },

    #[error("chain length {0} outside supported range 2..=24")]
    ChainLengthOutOfRange(usize),

    #[error("anisotropy must be finite (got {0})")]
    NonFiniteAnisotropy(f64),

    #[error(
        "eigensolver did not converge within {iterations} iterations (residual {residual:.3e}, tolerance {tolerance:.1e})"
    )]
    NoConvergence { iterations: usize, residual: f64, tolerance: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
