//! Kets, bras and the three inner products (Dirac, PT, C'PT).
//!
//! Every inner product is conjugate-then-contract: a ket is first mapped to a
//! bra by one of the conjugations below, and [`inner`] contracts the bra with
//! a ket. Density and projection operators reuse the same bras as outer
//! products.

use nalgebra::{RowVector2, Vector2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::{cprime_matrix, parity_matrix};
use crate::operator::LinearOperator;

/// Documentation tag only; arithmetic never looks at it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    Flavour,
    Mass,
}

/// Which conjugation produced a bra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Conjugation {
    Dirac,
    Pt,
    Cpt,
    Tilde,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateVector {
    pub components: Vector2<Complex64>,
    pub basis: Basis,
}

impl StateVector {
    pub fn new(components: Vector2<Complex64>, basis: Basis) -> Self {
        Self { components, basis }
    }

    pub fn from_real(a: f64, b: f64, basis: Basis) -> Self {
        Self::new(Vector2::new(Complex64::new(a, 0.0), Complex64::new(b, 0.0)), basis)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self::new(self.components * factor, self.basis)
    }

    pub fn apply(&self, op: &LinearOperator) -> Self {
        Self::new(op.0 * self.components, self.basis)
    }

    pub fn is_finite(&self) -> bool {
        self.components.iter().all(|z| z.is_finite())
    }

    /// `|self⟩⟨bra|`.
    pub fn outer(&self, bra: &CoStateVector) -> LinearOperator {
        LinearOperator(self.components * bra.components)
    }
}

impl std::ops::Add for StateVector {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.components + rhs.components, self.basis)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoStateVector {
    pub components: RowVector2<Complex64>,
    pub conjugation: Conjugation,
}

impl CoStateVector {
    pub fn new(components: RowVector2<Complex64>, conjugation: Conjugation) -> Self {
        Self {
            components,
            conjugation,
        }
    }

    pub fn zero(conjugation: Conjugation) -> Self {
        Self::new(RowVector2::zeros(), conjugation)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self::new(self.components * factor, self.conjugation)
    }

    pub fn is_finite(&self) -> bool {
        self.components.iter().all(|z| z.is_finite())
    }

    /// Relabels the bra; used when a bra is assembled from an explicit
    /// expansion rather than a conjugation.
    pub fn with_conjugation(mut self, conjugation: Conjugation) -> Self {
        self.conjugation = conjugation;
        self
    }
}

impl std::ops::Add for CoStateVector {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.components + rhs.components, self.conjugation)
    }
}

impl std::ops::Sub for CoStateVector {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.components - rhs.components, self.conjugation)
    }
}

/// `v†`.
pub fn dirac_dagger(v: &StateVector) -> CoStateVector {
    CoStateVector::new(v.components.adjoint(), Conjugation::Dirac)
}

/// `v‡ = v† P`.
pub fn pt_conjugate(v: &StateVector) -> CoStateVector {
    CoStateVector::new(v.components.adjoint() * parity_matrix().0, Conjugation::Pt)
}

/// `v§ = v† C' P`. A negative `eta` selects the inverted orientation.
pub fn cpt_conjugate(eta: f64, v: &StateVector) -> Result<CoStateVector> {
    let metric = cprime_matrix(eta)? * parity_matrix();
    Ok(CoStateVector::new(v.components.adjoint() * metric.0, Conjugation::Cpt))
}

/// `⟨bra|ket⟩`.
pub fn inner(bra: &CoStateVector, ket: &StateVector) -> Complex64 {
    bra.components[0] * ket.components[0] + bra.components[1] * ket.components[1]
}
