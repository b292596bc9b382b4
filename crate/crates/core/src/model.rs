//! Model parameters, the squared-mass eigensystem and the two metric
//! matrices `P` and `C'`.

use nalgebra::Vector2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};
use crate::inner::{Basis, StateVector};
use crate::operator::LinearOperator;

/// Width of the band `[1 - EXCEPTIONAL_BAND, 1]` in which η is treated as
/// sitting on the exceptional point.
pub const EXCEPTIONAL_BAND: f64 = 1e-12;

/// Which diagonal entry of the mass matrix is larger.
///
/// The eigenpair labelled `+` is always the one continuously connected to
/// flavour 1 (positive PT norm). With [`Orientation::Standard`]
/// (`m1² > m2²`) it is also the heavier state; with
/// [`Orientation::Inverted`] it is the lighter one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    Standard,
    Inverted,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Standard => 1.0,
            Orientation::Inverted => -1.0,
        }
    }
}

/// The four real inputs of the two-state system, in natural units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    m1_sq: f64,
    m2_sq: f64,
    mu_sq: f64,
    p: f64,
}

/// Validates and packs `(m1², m2², μ², |p|)`.
pub fn make_params(m1_sq: f64, m2_sq: f64, mu_sq: f64, p: f64) -> Result<ModelParams> {
    for (name, value) in [("m1_sq", m1_sq), ("m2_sq", m2_sq), ("mu_sq", mu_sq), ("p", p)] {
        if !value.is_finite() {
            return Err(ModelError::NonFinite { name, value });
        }
    }
    if m1_sq <= 0.0 {
        return Err(ModelError::NonPositiveMass {
            name: "m1_sq",
            value: m1_sq,
        });
    }
    if m2_sq <= 0.0 {
        return Err(ModelError::NonPositiveMass {
            name: "m2_sq",
            value: m2_sq,
        });
    }
    if mu_sq < 0.0 {
        return Err(ModelError::NegativeMixing(mu_sq));
    }
    if p < 0.0 {
        return Err(ModelError::NegativeMomentum(p));
    }
    if m1_sq == m2_sq {
        return Err(ModelError::DegenerateDiagonal(m1_sq));
    }
    Ok(ModelParams { m1_sq, m2_sq, mu_sq, p })
}

impl ModelParams {
    /// Builds parameters from η, the mass-splitting ratio
    /// `(m1² - m2²)/(m1² + m2²)` and the scale `m1² + m2²`.
    pub fn from_eta(eta: f64, ratio: f64, mass_sum: f64, p: f64) -> Result<Self> {
        if !eta.is_finite() {
            return Err(ModelError::NonFinite {
                name: "eta",
                value: eta,
            });
        }
        if eta < 0.0 {
            return Err(ModelError::NegativeMixing(eta));
        }
        if !ratio.is_finite() || ratio <= -1.0 || ratio >= 1.0 {
            return Err(ModelError::NonPositiveMass {
                name: "ratio",
                value: ratio,
            });
        }
        let m1_sq = 0.5 * mass_sum * (1.0 + ratio);
        let m2_sq = 0.5 * mass_sum * (1.0 - ratio);
        let mu_sq = 0.5 * eta * (m1_sq - m2_sq).abs();
        make_params(m1_sq, m2_sq, mu_sq, p)
    }

    pub fn m1_sq(&self) -> f64 {
        self.m1_sq
    }

    pub fn m2_sq(&self) -> f64 {
        self.m2_sq
    }

    pub fn mu_sq(&self) -> f64 {
        self.mu_sq
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// `η = 2μ²/|m1² - m2²|`, always non-negative.
    pub fn eta(&self) -> f64 {
        2.0 * self.mu_sq / (self.m1_sq - self.m2_sq).abs()
    }

    /// η carrying the sign of `m1² - m2²`. Every closed form written in terms
    /// of η holds verbatim for the inverted orientation once η is signed.
    pub fn signed_eta(&self) -> f64 {
        self.orientation().sign() * self.eta()
    }

    pub fn orientation(&self) -> Orientation {
        if self.m1_sq > self.m2_sq {
            Orientation::Standard
        } else {
            Orientation::Inverted
        }
    }

    pub fn mass_sum(&self) -> f64 {
        self.m1_sq + self.m2_sq
    }

    /// `(m1² - m2²)/(m1² + m2²)`.
    pub fn ratio(&self) -> f64 {
        (self.m1_sq - self.m2_sq) / self.mass_sum()
    }

    /// The non-Hermitian squared mass matrix `[[m1², μ²], [-μ², m2²]]`.
    pub fn mass_matrix(&self) -> LinearOperator {
        LinearOperator::from_real([[self.m1_sq, self.mu_sq], [-self.mu_sq, self.m2_sq]])
    }

    /// The Hermitian comparison matrix `[[m1², μ²], [μ², m2²]]`.
    pub fn hermitian_mass_matrix(&self) -> LinearOperator {
        LinearOperator::from_real([[self.m1_sq, self.mu_sq], [self.mu_sq, self.m2_sq]])
    }
}

/// Squared masses, angular frequencies and η, available up to and including
/// the exceptional point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub eta: f64,
    pub m_plus_sq: f64,
    pub m_minus_sq: f64,
    pub omega_plus: f64,
    pub omega_minus: f64,
}

impl Spectrum {
    /// `Δω = ω₊ - ω₋`.
    pub fn delta_omega(&self) -> f64 {
        self.omega_plus - self.omega_minus
    }
}

/// `1 - η²` without cancellation near η = 1.
#[inline]
pub(crate) fn one_minus_sq(eta: f64) -> f64 {
    (1.0 - eta) * (1.0 + eta)
}

fn classify_eta(eta: f64) -> Result<()> {
    if !eta.is_finite() {
        return Err(ModelError::NonFinite {
            name: "eta",
            value: eta,
        });
    }
    if eta.abs() > 1.0 {
        return Err(ModelError::BrokenPtPhase { eta: eta.abs() });
    }
    Ok(())
}

fn on_exceptional_point(eta: f64) -> bool {
    eta.abs() >= 1.0 - EXCEPTIONAL_BAND
}

/// Real squared-mass eigenvalues for `0 ≤ η ≤ 1`. The exceptional point is
/// accepted here; only the eigenvectors are undefined there.
pub fn eigenvalues(params: &ModelParams) -> Result<Spectrum> {
    let eta = params.eta();
    classify_eta(eta)?;

    let sum = params.mass_sum();
    let root = (params.m1_sq - params.m2_sq).abs() * one_minus_sq(eta).sqrt();
    let larger = 0.5 * (sum + root);
    // det M² = m1²m2² + μ⁴; dividing avoids cancellation in the smaller root.
    let smaller = if root == 0.0 {
        larger
    } else {
        (params.m1_sq * params.m2_sq + params.mu_sq * params.mu_sq) / larger
    };
    let (m_plus_sq, m_minus_sq) = match params.orientation() {
        Orientation::Standard => (larger, smaller),
        Orientation::Inverted => (smaller, larger),
    };
    let p2 = params.p * params.p;
    Ok(Spectrum {
        eta,
        m_plus_sq,
        m_minus_sq,
        omega_plus: (p2 + m_plus_sq).sqrt(),
        omega_minus: (p2 + m_minus_sq).sqrt(),
    })
}

/// Full eigensystem of the squared mass matrix in the unbroken phase, away
/// from the exceptional point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenSystem {
    params: ModelParams,
    spectrum: Spectrum,
    signed_eta: f64,
    theta: f64,
    cosh_theta: f64,
    sinh_theta: f64,
    n_factor: f64,
    e_plus: Vector2<Complex64>,
    e_minus: Vector2<Complex64>,
}

/// Computes eigenvalues, PT-normalised eigenvectors, `N`, θ and ω±.
///
/// At the exceptional point the merged spectrum is returned inside
/// [`ModelError::ExceptionalPoint`].
pub fn eigensystem(params: &ModelParams) -> Result<EigenSystem> {
    let spectrum = eigenvalues(params)?;
    let eta = spectrum.eta;
    if on_exceptional_point(eta) {
        return Err(ModelError::ExceptionalPoint {
            eta,
            spectrum: Some(spectrum),
        });
    }

    let sigma = params.orientation().sign();
    let signed_eta = sigma * eta;
    let s = one_minus_sq(eta).sqrt();

    // N = [2(η² - 1 + √(1-η²))]^(-1/2), with η² - 1 + s = η² s / (1 + s).
    let n_factor = ((1.0 + s) / (2.0 * eta * eta * s)).sqrt();

    // e₊ = N [η, -(1-s)], e₋ = N [-(1-s), η] after pulling out N·η, which
    // stays finite as η → 0. The orientation sign enters the off-diagonal
    // components only.
    let k = ((1.0 + s) / (2.0 * s)).sqrt();
    let t = eta / (1.0 + s);
    let re = |x: f64| Complex64::new(x, 0.0);
    let e_plus = Vector2::new(re(k), re(-sigma * k * t));
    let e_minus = Vector2::new(re(-sigma * k * t), re(k));

    // cosh θ and sinh θ for θ = ½ artanh(η), in closed form.
    let lift = (1.0 + 1.0 / s).sqrt();
    let cosh_theta = lift / std::f64::consts::SQRT_2;
    let sinh_theta = signed_eta / (std::f64::consts::SQRT_2 * s * lift);

    Ok(EigenSystem {
        params: *params,
        spectrum,
        signed_eta,
        theta: 0.5 * signed_eta.atanh(),
        cosh_theta,
        sinh_theta,
        n_factor,
        e_plus,
        e_minus,
    })
}

impl EigenSystem {
    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn eta(&self) -> f64 {
        self.spectrum.eta
    }

    pub fn signed_eta(&self) -> f64 {
        self.signed_eta
    }

    pub fn orientation(&self) -> Orientation {
        self.params.orientation()
    }

    /// θ = ½ artanh(η) (negative for the inverted orientation).
    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn cosh_theta(&self) -> f64 {
        self.cosh_theta
    }

    pub fn sinh_theta(&self) -> f64 {
        self.sinh_theta
    }

    /// `cosh 2θ = 1/√(1-η²)`.
    pub fn cosh_2theta(&self) -> f64 {
        1.0 / one_minus_sq(self.eta()).sqrt()
    }

    /// `sinh 2θ = η/√(1-η²)`.
    pub fn sinh_2theta(&self) -> f64 {
        self.signed_eta / one_minus_sq(self.eta()).sqrt()
    }

    /// `sech 2θ = √(1-η²)`.
    pub fn sech_2theta(&self) -> f64 {
        one_minus_sq(self.eta()).sqrt()
    }

    /// The normalisation `N`; infinite in the Hermitian limit η = 0 where the
    /// normalised eigenvectors are still finite.
    pub fn n_factor(&self) -> f64 {
        self.n_factor
    }

    pub fn m_plus_sq(&self) -> f64 {
        self.spectrum.m_plus_sq
    }

    pub fn m_minus_sq(&self) -> f64 {
        self.spectrum.m_minus_sq
    }

    pub fn omega_plus(&self) -> f64 {
        self.spectrum.omega_plus
    }

    pub fn omega_minus(&self) -> f64 {
        self.spectrum.omega_minus
    }

    pub fn delta_omega(&self) -> f64 {
        self.spectrum.delta_omega()
    }

    pub fn e_plus(&self) -> StateVector {
        StateVector::new(self.e_plus, Basis::Mass)
    }

    pub fn e_minus(&self) -> StateVector {
        StateVector::new(self.e_minus, Basis::Mass)
    }

    /// The `C'` matrix for this system.
    pub fn cprime(&self) -> LinearOperator {
        cprime_unchecked(self.signed_eta)
    }

    /// `C'ᵀ`, the symmetry acting on kets: `C'ᵀ e± = ±e±`.
    pub fn cprime_t(&self) -> LinearOperator {
        self.cprime().transpose()
    }

    /// The C'PT metric `C'·P`, positive definite with eigenvalues
    /// `(1 ± η)/√(1-η²)`.
    pub fn cpt_metric(&self) -> LinearOperator {
        self.cprime() * parity_matrix()
    }
}

/// `P = diag(1, -1)`.
pub fn parity_matrix() -> LinearOperator {
    LinearOperator::from_real([[1.0, 0.0], [0.0, -1.0]])
}

fn cprime_unchecked(eta: f64) -> LinearOperator {
    let inv = 1.0 / one_minus_sq(eta.abs()).sqrt();
    LinearOperator::from_real([[inv, -eta * inv], [eta * inv, -inv]])
}

/// `C' = (1-η²)^(-1/2) [[1, -η], [η, -1]]`.
///
/// A negative η selects the inverted orientation (`m1² < m2²`).
pub fn cprime_matrix(eta: f64) -> Result<LinearOperator> {
    classify_eta(eta)?;
    if on_exceptional_point(eta) {
        return Err(ModelError::ExceptionalPoint {
            eta: eta.abs(),
            spectrum: None,
        });
    }
    Ok(cprime_unchecked(eta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::numeric_eigensystem;

    fn standard() -> ModelParams {
        make_params(2.0, 1.0, 0.3, 0.0).unwrap()
    }

    #[test]
    fn make_params_example_eta() {
        let p = standard();
        assert!((p.eta() - 0.6).abs() < 1e-15);
        let numeric = numeric_eigensystem(&p.mass_matrix());
        let (a, b) = (numeric.values[0].re, numeric.values[1].re);
        // η recovered from the numeric split: (λa - λb)/|d| = √(1-η²).
        let split = (a - b).abs();
        let eta_from_split = (1.0 - split * split).sqrt();
        assert!((eta_from_split - 0.6).abs() < 1e-12);
    }

    #[test]
    fn make_params_rejections() {
        assert_eq!(
            make_params(1.0, 1.0, 0.1, 0.0),
            Err(ModelError::DegenerateDiagonal(1.0))
        );
        assert!(matches!(
            make_params(0.0, 1.0, 0.1, 0.0),
            Err(ModelError::NonPositiveMass { name: "m1_sq", .. })
        ));
        assert!(matches!(
            make_params(1.0, -2.0, 0.1, 0.0),
            Err(ModelError::NonPositiveMass { name: "m2_sq", .. })
        ));
        assert_eq!(make_params(2.0, 1.0, -0.1, 0.0), Err(ModelError::NegativeMixing(-0.1)));
        assert!(matches!(
            make_params(2.0, f64::NAN, 0.1, 0.0),
            Err(ModelError::NonFinite { .. })
        ));
        assert_eq!(
            make_params(2.0, 1.0, 0.1, -1.0),
            Err(ModelError::NegativeMomentum(-1.0))
        );
    }

    #[test]
    fn hermitian_limit_params() {
        let p = make_params(2.0, 1.0, 0.0, 0.0).unwrap();
        assert_eq!(p.eta(), 0.0);
        let es = eigensystem(&p).unwrap();
        assert_eq!(es.m_plus_sq(), 2.0);
        assert_eq!(es.m_minus_sq(), 1.0);
        assert_eq!(
            es.e_plus().components,
            Vector2::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
        );
        assert_eq!(es.e_minus().components.map(|z| z.re), Vector2::new(0.0, 1.0));
        assert!(es.n_factor().is_infinite());
    }

    #[test]
    fn eigensystem_example_values() {
        let es = eigensystem(&standard()).unwrap();
        assert!((es.m_plus_sq() - 1.9).abs() < 1e-14);
        assert!((es.m_minus_sq() - 1.1).abs() < 1e-14);
        assert!((es.n_factor() - 1.767_766_952_966_368_8).abs() < 1e-12);
        assert!((es.theta() - 0.346_573_590_279_972_6).abs() < 1e-12);
        assert!((es.cosh_theta() - 1.060_660_171_779_821_2).abs() < 1e-12);
        assert!((es.sinh_theta() - 0.353_553_390_593_273_8).abs() < 1e-12);
        assert!((es.omega_plus() - 1.9f64.sqrt()).abs() < 1e-15);
        // Literal eigenvector formulas: e₊ = N[η, -1 + √(1-η²)], e₋ = N[-1 + √(1-η²), η].
        let n = es.n_factor();
        let ep = es.e_plus().components;
        let em = es.e_minus().components;
        assert!((ep[0].re - n * 0.6).abs() < 1e-12);
        assert!((ep[1].re - n * (-0.2)).abs() < 1e-12);
        assert!((em[0].re - n * (-0.2)).abs() < 1e-12);
        assert!((em[1].re - n * 0.6).abs() < 1e-12);
    }

    #[test]
    fn eigensystem_matches_numeric_decomposition() {
        let p = standard();
        let es = eigensystem(&p).unwrap();
        let numeric = numeric_eigensystem(&p.mass_matrix());
        let mut vals: Vec<f64> = numeric.values.iter().map(|z| z.re).collect();
        vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
        assert!((vals[0] - es.m_plus_sq()).abs() < 1e-12);
        assert!((vals[1] - es.m_minus_sq()).abs() < 1e-12);
    }

    #[test]
    fn exceptional_point_returns_merged_eigenvalues() {
        let p = make_params(2.0, 1.0, 0.5, 0.0).unwrap();
        assert_eq!(p.eta(), 1.0);
        let spec = eigenvalues(&p).unwrap();
        assert_eq!(spec.m_plus_sq, 1.5);
        assert_eq!(spec.m_minus_sq, 1.5);
        match eigensystem(&p) {
            Err(ModelError::ExceptionalPoint { eta, spectrum: Some(s) }) => {
                assert_eq!(eta, 1.0);
                assert_eq!(s.m_plus_sq, 1.5);
                assert_eq!(s.m_minus_sq, 1.5);
            }
            other => panic!("expected exceptional point, got {other:?}"),
        }
    }

    #[test]
    fn exceptional_band_and_broken_phase() {
        let p = ModelParams::from_eta(1.0 - 5e-13, 0.5, 1.0, 0.0).unwrap();
        assert!(matches!(eigensystem(&p), Err(ModelError::ExceptionalPoint { .. })));
        let p = make_params(2.0, 1.0, 0.6, 0.0).unwrap();
        assert!(matches!(eigenvalues(&p), Err(ModelError::BrokenPtPhase { .. })));
        assert!(matches!(eigensystem(&p), Err(ModelError::BrokenPtPhase { .. })));
    }

    #[test]
    fn parity_matrix_properties() {
        let pm = parity_matrix();
        assert_eq!(pm, LinearOperator::from_real([[1.0, 0.0], [0.0, -1.0]]));
        assert_eq!(pm * pm, LinearOperator::identity());
        let m = standard().mass_matrix();
        assert!((pm * m * pm).max_abs_diff(&m.adjoint()) < 1e-14);
    }

    #[test]
    fn cprime_example_values() {
        let c = cprime_matrix(0.6).unwrap();
        let expected = LinearOperator::from_real([[1.25, -0.75], [0.75, -1.25]]);
        assert!(c.max_abs_diff(&expected) < 1e-14);
        assert!((c * c).max_abs_diff(&LinearOperator::identity()) < 1e-14);
        assert_eq!(cprime_matrix(0.0).unwrap(), parity_matrix());
        assert!(matches!(cprime_matrix(1.0), Err(ModelError::ExceptionalPoint { .. })));
        assert!(matches!(cprime_matrix(1.5), Err(ModelError::BrokenPtPhase { .. })));
    }

    #[test]
    fn cprime_transpose_fixes_eigenvectors() {
        let es = eigensystem(&standard()).unwrap();
        let ct = es.cprime_t();
        let ep = es.e_plus().components;
        let em = es.e_minus().components;
        assert!((ct.0 * ep - ep).norm() < 1e-14);
        assert!((ct.0 * em + em).norm() < 1e-14);
        // C' itself does not map e₊ onto a multiple of itself.
        let c_ep = es.cprime().0 * ep;
        assert!((c_ep[0] * ep[1] - c_ep[1] * ep[0]).norm() > 1e-3);
    }

    #[test]
    fn inverted_orientation_keeps_flavour_one_on_plus_branch() {
        let p = make_params(1.0, 2.0, 0.3, 0.0).unwrap();
        assert_eq!(p.orientation(), Orientation::Inverted);
        let es = eigensystem(&p).unwrap();
        assert!((es.m_plus_sq() - 1.1).abs() < 1e-14);
        assert!((es.m_minus_sq() - 1.9).abs() < 1e-14);
        assert!(es.theta() < 0.0);
        let m = p.mass_matrix();
        for (v, lambda) in [(es.e_plus(), es.m_plus_sq()), (es.e_minus(), es.m_minus_sq())] {
            let r = m.0 * v.components - v.components * Complex64::new(lambda, 0.0);
            assert!(r.norm() < 1e-12);
        }
        let ct = es.cprime_t();
        assert!((ct.0 * es.e_plus().components - es.e_plus().components).norm() < 1e-14);
    }
}
