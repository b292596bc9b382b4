//! Time-dependent flavour kets and their conjugate bras.
//!
//! States are evaluated eagerly at a time `t`. Negative times are allowed.
//!
//! Bases used for the probabilities:
//!
//! * `|φᵢ(t)⟩` with the tilde bras `⟨φ̃ᵢ(t)|` form a biorthonormal pair.
//! * `⟨φᵢ^C'PT(t)|` is the C'PT conjugate of `|φᵢ(t)⟩`; it is *not* orthogonal
//!   to the other flavour (`sinh 2θ` overlap).
//! * The mixed basis `{|φ₁⟩, |φ₂^C'⟩}` with bras `{⟨φ₁^C'PT|, ⟨φ₂^PT|}` is
//!   orthonormal once every ket and every bra is scaled by `√sech 2θ`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::inner::{dirac_dagger, pt_conjugate, CoStateVector, Conjugation, StateVector};
use crate::model::EigenSystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Flavour {
    One,
    Two,
}

impl Flavour {
    pub const ALL: [Flavour; 2] = [Flavour::One, Flavour::Two];

    pub fn index(self) -> usize {
        match self {
            Flavour::One => 1,
            Flavour::Two => 2,
        }
    }

    pub fn from_index(i: usize) -> Option<Self> {
        match i {
            1 => Some(Flavour::One),
            2 => Some(Flavour::Two),
            _ => None,
        }
    }

    pub fn other(self) -> Self {
        match self {
            Flavour::One => Flavour::Two,
            Flavour::Two => Flavour::One,
        }
    }
}

/// Whether the `√sech 2θ` factor of the mixed orthonormal basis is applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Normalisation {
    Raw,
    MixedBasis,
}

/// Zero-momentum-reduced mode function `ξ±(t) = exp(i ω± t)`; a non-zero
/// momentum enters only through `ω± = √(p² + m±²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeFunction {
    pub branch: Branch,
    pub omega: f64,
}

impl ModeFunction {
    pub fn new(branch: Branch, es: &EigenSystem) -> Self {
        let omega = match branch {
            Branch::Plus => es.omega_plus(),
            Branch::Minus => es.omega_minus(),
        };
        Self { branch, omega }
    }

    pub fn at(&self, t: f64) -> Complex64 {
        Complex64::from_polar(1.0, self.omega * t)
    }
}

pub fn xi(branch: Branch, t: f64, es: &EigenSystem) -> Complex64 {
    ModeFunction::new(branch, es).at(t)
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn norm_factor(norm: Normalisation, es: &EigenSystem) -> f64 {
    match norm {
        Normalisation::Raw => 1.0,
        Normalisation::MixedBasis => es.sech_2theta().sqrt(),
    }
}

/// `(e₊, e₋)` for flavour 1, `(e₋, e₊)` for flavour 2, with their branches.
fn leading_and_mixed(i: Flavour, es: &EigenSystem) -> [(StateVector, Branch); 2] {
    match i {
        Flavour::One => [(es.e_plus(), Branch::Plus), (es.e_minus(), Branch::Minus)],
        Flavour::Two => [(es.e_minus(), Branch::Minus), (es.e_plus(), Branch::Plus)],
    }
}

fn cpt_of(v: &StateVector, es: &EigenSystem) -> CoStateVector {
    CoStateVector::new(v.components.adjoint() * es.cpt_metric().0, Conjugation::Cpt)
}

/// `|φ₁(t)⟩ = cosh θ ξ₊ e₊ + sinh θ ξ₋ e₋`, `|φ₂(t)⟩ = cosh θ ξ₋ e₋ + sinh θ ξ₊ e₊`.
pub fn flavour_ket(i: Flavour, t: f64, es: &EigenSystem, norm: Normalisation) -> StateVector {
    let [(lead, lead_branch), (mix, mix_branch)] = leading_and_mixed(i, es);
    let ket = lead.scale(real(es.cosh_theta()) * xi(lead_branch, t, es))
        + mix.scale(real(es.sinh_theta()) * xi(mix_branch, t, es));
    let mut ket = ket.scale(real(norm_factor(norm, es)));
    ket.basis = crate::inner::Basis::Flavour;
    ket
}

/// Flavour-conjugate bra, biorthonormal to the flavour kets at every `t`;
/// the `sinh θ` term enters with a minus sign.
pub fn tilde_bra(i: Flavour, t: f64, es: &EigenSystem) -> CoStateVector {
    let [(lead, lead_branch), (mix, mix_branch)] = leading_and_mixed(i, es);
    let lead_bra = cpt_of(&lead, es).scale(real(es.cosh_theta()) * xi(lead_branch, t, es).conj());
    let mix_bra = cpt_of(&mix, es).scale(real(es.sinh_theta()) * xi(mix_branch, t, es).conj());
    (lead_bra - mix_bra).with_conjugation(Conjugation::Tilde)
}

/// C'PT conjugate of the flavour ket, built from its eigenvector expansion
/// with both terms positive.
pub fn cpt_bra(i: Flavour, t: f64, es: &EigenSystem, norm: Normalisation) -> CoStateVector {
    let [(lead, lead_branch), (mix, mix_branch)] = leading_and_mixed(i, es);
    let lead_bra = cpt_of(&lead, es).scale(real(es.cosh_theta()) * xi(lead_branch, t, es).conj());
    let mix_bra = cpt_of(&mix, es).scale(real(es.sinh_theta()) * xi(mix_branch, t, es).conj());
    (lead_bra + mix_bra).scale(real(norm_factor(norm, es)))
}

/// `C'ᵀ |φᵢ(t)⟩`: the `e₋` coefficient changes sign.
pub fn cprime_ket(i: Flavour, t: f64, es: &EigenSystem, norm: Normalisation) -> StateVector {
    flavour_ket(i, t, es, norm).apply(&es.cprime_t())
}

/// PT conjugate `|φᵢ(t)⟩† P`, which coincides with the C'PT conjugate of
/// `C'ᵀ|φᵢ(t)⟩`.
pub fn pt_bra(i: Flavour, t: f64, es: &EigenSystem, norm: Normalisation) -> CoStateVector {
    pt_conjugate(&flavour_ket(i, t, es, norm))
}

/// Dirac conjugate `|φᵢ(t)⟩†` of the raw flavour ket.
pub fn dirac_bra(i: Flavour, t: f64, es: &EigenSystem) -> CoStateVector {
    dirac_dagger(&flavour_ket(i, t, es, Normalisation::Raw))
}

/// Ket half of the mixed orthonormal basis: `|φ₁⟩` or `|φ₂^C'⟩`.
pub fn mixed_ket(i: Flavour, t: f64, es: &EigenSystem) -> StateVector {
    match i {
        Flavour::One => flavour_ket(Flavour::One, t, es, Normalisation::MixedBasis),
        Flavour::Two => cprime_ket(Flavour::Two, t, es, Normalisation::MixedBasis),
    }
}

/// Bra half of the mixed orthonormal basis: `⟨φ₁^C'PT|` or `⟨φ₂^PT|`.
pub fn mixed_bra(i: Flavour, t: f64, es: &EigenSystem) -> CoStateVector {
    match i {
        Flavour::One => cpt_bra(Flavour::One, t, es, Normalisation::MixedBasis),
        Flavour::Two => pt_bra(Flavour::Two, t, es, Normalisation::MixedBasis),
    }
}
