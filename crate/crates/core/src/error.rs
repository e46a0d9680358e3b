use thiserror::Error;

/// Error taxonomy shared by every module.
///
/// The variants mirror the failure modes of the domain: shape mismatches,
/// operators that are not what they claim to be, states that are not states,
/// conditioning on outcomes that never occur, and internal cross-checks that
/// disagree (always a bug, never a caller error).
#[derive(Debug, Error)]
pub enum CvurError {
    #[error("invalid dimensions: {0}")]
    InvalidDimensions(String),

    #[error("non-hermitian input: {0}")]
    NonHermitian(String),

    #[error("not positive semidefinite: min eigenvalue {min_eigenvalue:.3e}")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("non-physical state: {0}")]
    NonPhysicalState(String),

    #[error("non-unitary operator: {0}")]
    NonUnitary(String),

    #[error("degenerate conditioning: {0}")]
    DegenerateConditioning(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T> = std::result::Result<T, CvurError>;
