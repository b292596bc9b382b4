//! Density and projection operators, trace probabilities, the closed forms
//! they must reproduce, and the Dirac-norm quantities that break
//! time-translation invariance.
//!
//! The oscillation phase is `ϑ = Δω Δt / 2` with `Δω = ω₊ - ω₋`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};
use crate::inner::inner;
use crate::model::{one_minus_sq, EigenSystem, ModelParams, Spectrum, EXCEPTIONAL_BAND};
use crate::operator::LinearOperator;
use crate::states::{dirac_bra, flavour_ket, mixed_bra, mixed_ket, Flavour, Normalisation};

/// Imaginary parts of a probability trace above this are a construction bug.
pub const NON_REAL_TRACE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Trace,
    Hermitian,
    NaiveContinuation,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Trace => "trace",
            Method::Hermitian => "hermitian",
            Method::NaiveContinuation => "naive_continuation",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "closed_form" | "closed-form" => Ok(Method::ClosedForm),
            "trace" => Ok(Method::Trace),
            "hermitian" => Ok(Method::Hermitian),
            "naive_continuation" | "naive-continuation" | "naive" => Ok(Method::NaiveContinuation),
            other => Err(format!("unknown method `{other}`")),
        }
    }
}

/// One evaluation of `P_{from→to}(t, t0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityRecord {
    pub from: Flavour,
    pub to: Flavour,
    pub t0: f64,
    pub t: f64,
    pub value: f64,
    pub method: Method,
}

/// Rank-one operator `|ket⟩⟨bra|` built from the mixed orthonormal basis at
/// `anchor_time`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlavourProjector {
    pub flavour: Flavour,
    pub anchor_time: f64,
    pub operator: LinearOperator,
}

pub type DensityOperator = FlavourProjector;
pub type ProjectionOperator = FlavourProjector;

fn flavour_projector(i: Flavour, time: f64, es: &EigenSystem) -> FlavourProjector {
    let ket = mixed_ket(i, time, es);
    let bra = mixed_bra(i, time, es);
    FlavourProjector {
        flavour: i,
        anchor_time: time,
        operator: ket.outer(&bra),
    }
}

/// `ρ̂₁(t0) = |φ₁⟩⟨φ₁^C'PT|`, `ρ̂₂(t0) = |φ₂^C'⟩⟨φ₂^PT|`, unit trace.
pub fn density_operator(i: Flavour, t0: f64, es: &EigenSystem) -> DensityOperator {
    flavour_projector(i, t0, es)
}

/// Final-state projector; the same construction as [`density_operator`]
/// anchored at `t`.
pub fn projection_operator(j: Flavour, t: f64, es: &EigenSystem) -> ProjectionOperator {
    flavour_projector(j, t, es)
}

/// `P_{i→j}(t, t0) = tr ρ̂ᵢ(t0) π̂ⱼ(t)`, evaluated as an explicit matrix
/// product.
pub fn probability_trace(i: Flavour, j: Flavour, t0: f64, t: f64, es: &EigenSystem) -> Result<ProbabilityRecord> {
    let rho = density_operator(i, t0, es);
    let pi = projection_operator(j, t, es);
    let tr = (rho.operator * pi.operator).trace();
    if tr.im.abs() > NON_REAL_TRACE_TOLERANCE {
        return Err(ModelError::NonRealTrace { imag: tr.im });
    }
    Ok(ProbabilityRecord {
        from: i,
        to: j,
        t0,
        t,
        value: tr.re,
        method: Method::Trace,
    })
}

/// `η² sin² ϑ` for `i ≠ j`, `1 - η² sin² ϑ` for `i = j`.
pub fn closed_form_at_phase(i: Flavour, j: Flavour, eta: f64, phase: f64) -> f64 {
    let s = phase.sin();
    let transition = eta * eta * s * s;
    if i == j {
        1.0 - transition
    } else {
        transition
    }
}

/// Closed-form probabilities; finite up to and including the exceptional
/// point, where the transition probability saturates at 1.
pub fn probability_closed_form(i: Flavour, j: Flavour, dt: f64, spectrum: &Spectrum) -> ProbabilityRecord {
    let phase = 0.5 * spectrum.delta_omega() * dt;
    ProbabilityRecord {
        from: i,
        to: j,
        t0: 0.0,
        t: dt,
        value: closed_form_at_phase(i, j, spectrum.eta, phase),
        method: Method::ClosedForm,
    }
}

/// Eigenvalues of the Hermitian comparison matrix `[[m1², μ²], [μ², m2²]]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HermitianSpectrum {
    pub m_plus_sq: f64,
    pub m_minus_sq: f64,
}

impl HermitianSpectrum {
    /// `Δω` of the Hermitian model, or `None` when the lower mass is not
    /// positive.
    pub fn delta_omega(&self, p: f64) -> Option<f64> {
        if self.m_minus_sq <= 0.0 {
            return None;
        }
        Some((p * p + self.m_plus_sq).sqrt() - (p * p + self.m_minus_sq).sqrt())
    }
}

pub fn hermitian_eigenvalues(params: &ModelParams) -> HermitianSpectrum {
    let sum = params.mass_sum();
    let d = params.m1_sq() - params.m2_sq();
    let mu2 = params.mu_sq();
    let root = (d * d + 4.0 * mu2 * mu2).sqrt();
    let m_plus_sq = 0.5 * (sum + root);
    // det = m1²m2² - μ⁴ carries the sign of the lower eigenvalue.
    let m_minus_sq = (params.m1_sq() * params.m2_sq() - mu2 * mu2) / m_plus_sq;
    HermitianSpectrum { m_plus_sq, m_minus_sq }
}

/// Hermitian-model eigenvalues scaled by `m1² + m2²` for a given η and
/// splitting ratio; valid for every η ≥ 0, tachyonic or not.
pub fn hermitian_scaled_masses(eta: f64, ratio: f64) -> (f64, f64) {
    let root = ratio.abs() * (1.0 + eta * eta).sqrt();
    (0.5 * (1.0 + root), 0.5 * (1.0 - root))
}

/// PT-model eigenvalues scaled by `m1² + m2²`, or `None` in the broken
/// phase. Ordered larger first.
pub fn pt_scaled_masses(eta: f64, ratio: f64) -> Option<(f64, f64)> {
    if eta > 1.0 {
        return None;
    }
    let root = ratio.abs() * one_minus_sq(eta).sqrt();
    Some((0.5 * (1.0 + root), 0.5 * (1.0 - root)))
}

/// `η²/(1+η²) sin² ϑ` and its complement.
pub fn hermitian_at_phase(i: Flavour, j: Flavour, eta: f64, phase: f64) -> f64 {
    let s = phase.sin();
    let transition = eta * eta / (1.0 + eta * eta) * s * s;
    if i == j {
        1.0 - transition
    } else {
        transition
    }
}

/// Probabilities of the Hermitian comparison model, using its own `Δω`.
pub fn probability_hermitian(i: Flavour, j: Flavour, dt: f64, params: &ModelParams) -> Result<ProbabilityRecord> {
    let spectrum = hermitian_eigenvalues(params);
    let delta_omega = spectrum.delta_omega(params.p()).ok_or(ModelError::TachyonicMass {
        m_minus_sq: spectrum.m_minus_sq,
    })?;
    Ok(ProbabilityRecord {
        from: i,
        to: j,
        t0: 0.0,
        t: dt,
        value: hermitian_at_phase(i, j, params.eta(), 0.5 * delta_omega * dt),
        method: Method::Hermitian,
    })
}

/// The Hermitian result continued through `μ⁴ → -μ⁴`:
/// `-η²/(1-η²) sin² ϑ`. Not clamped; its modulus exceeds 1 for η > 1/√2.
pub fn naive_at_phase(i: Flavour, j: Flavour, eta: f64, phase: f64) -> Result<f64> {
    if !eta.is_finite() {
        return Err(ModelError::NonFinite {
            name: "eta",
            value: eta,
        });
    }
    if eta.abs() > 1.0 {
        return Err(ModelError::BrokenPtPhase { eta: eta.abs() });
    }
    if eta.abs() >= 1.0 - EXCEPTIONAL_BAND {
        return Err(ModelError::ExceptionalPoint {
            eta: eta.abs(),
            spectrum: None,
        });
    }
    let s = phase.sin();
    let transition = -eta * eta / one_minus_sq(eta.abs()) * s * s;
    Ok(if i == j { 1.0 - transition } else { transition })
}

pub fn probability_naive_continuation(i: Flavour, j: Flavour, dt: f64, es: &EigenSystem) -> ProbabilityRecord {
    let phase = 0.5 * es.delta_omega() * dt;
    let value = naive_at_phase(i, j, es.eta(), phase).expect("eigensystem guarantees η < 1");
    ProbabilityRecord {
        from: i,
        to: j,
        t0: 0.0,
        t: dt,
        value,
        method: Method::NaiveContinuation,
    }
}

/// `⟨φᵢ(t)|φᵢ(t)⟩` under the Dirac inner product, by contraction.
pub fn dirac_norm(i: Flavour, t: f64, es: &EigenSystem) -> f64 {
    let ket = flavour_ket(i, t, es, Normalisation::Raw);
    inner(&dirac_bra(i, t, es), &ket).re
}

/// `(1 - η² cos(Δω t))/(1 - η²)`.
pub fn dirac_norm_closed_form(t: f64, es: &EigenSystem) -> f64 {
    let eta = es.eta();
    (1.0 - eta * eta * (es.delta_omega() * t).cos()) / one_minus_sq(eta)
}

/// `⟨φ₁(t)|φ₂(t)⟩` under the Dirac inner product, by contraction.
pub fn dirac_overlap(t: f64, es: &EigenSystem) -> Complex64 {
    let ket = flavour_ket(Flavour::Two, t, es, Normalisation::Raw);
    inner(&dirac_bra(Flavour::One, t, es), &ket)
}

/// `η/(1-η²) [1 - cos(Δω t) + i √(1-η²) sin(Δω t)]` with `Δω = ω₊ - ω₋`.
pub fn dirac_overlap_closed_form(t: f64, es: &EigenSystem) -> Complex64 {
    let eta = es.signed_eta();
    let x = es.delta_omega() * t;
    let s = one_minus_sq(es.eta()).sqrt();
    Complex64::new(1.0 - x.cos(), s * x.sin()) * (eta / one_minus_sq(es.eta()))
}

/// `r(t)/r(t0)` for the Dirac norm: the amount by which rescaling the states
/// to unit Dirac norm depends on the absolute time, not only on `t - t0`.
pub fn dirac_norm_ratio(i: Flavour, t0: f64, t: f64, es: &EigenSystem) -> f64 {
    dirac_norm(i, t, es) / dirac_norm(i, t0, es)
}

/// Cardioid radius `r(ϑ) = (1 - η² cos ϑ)/(1 - η²)`.
pub fn cardioid_r(phase: f64, eta: f64) -> Result<f64> {
    if !eta.is_finite() || !phase.is_finite() {
        return Err(ModelError::NonFinite {
            name: "eta",
            value: eta,
        });
    }
    if eta.abs() > 1.0 {
        return Err(ModelError::BrokenPtPhase { eta: eta.abs() });
    }
    if eta.abs() >= 1.0 - EXCEPTIONAL_BAND {
        return Err(ModelError::ExceptionalPoint {
            eta: eta.abs(),
            spectrum: None,
        });
    }
    Ok((1.0 - eta * eta * phase.cos()) / one_minus_sq(eta.abs()))
}

/// `r(ϑ)/r(π)`, the normalised cardioid.
pub fn cardioid_ratio(phase: f64, eta: f64) -> Result<f64> {
    Ok(cardioid_r(phase, eta)? / cardioid_r(std::f64::consts::PI, eta)?)
}
