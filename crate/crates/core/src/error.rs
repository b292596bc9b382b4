use thiserror::Error;

use crate::model::Spectrum;

pub type Result<T> = std::result::Result<T, ModelError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("parameter `{name}` is not finite ({value})")]
    NonFinite { name: &'static str, value: f64 },

    #[error("diagonal squared masses coincide (m1² = m2² = {0}); η is undefined")]
    DegenerateDiagonal(f64),

    #[error("squared mass `{name}` must be positive, got {value}")]
    NonPositiveMass { name: &'static str, value: f64 },

    #[error("mixing scale μ² must be non-negative, got {0}")]
    NegativeMixing(f64),

    #[error("momentum magnitude must be non-negative, got {0}")]
    NegativeMomentum(f64),

    /// Eigenvalues merge and the eigenvectors coalesce. The merged spectrum is
    /// attached when the error comes from a full eigensystem request.
    #[error("exceptional point (η = {eta}): the mass matrix is defective")]
    ExceptionalPoint { eta: f64, spectrum: Option<Spectrum> },

    #[error("broken PT phase (η = {eta} > 1): squared masses form a complex-conjugate pair")]
    BrokenPtPhase { eta: f64 },

    #[error("trace has a non-negligible imaginary part {imag:e}")]
    NonRealTrace { imag: f64 },

    #[error("lower Hermitian squared mass is {m_minus_sq}; the Hermitian model is tachyonic")]
    TachyonicMass { m_minus_sq: f64 },
}
