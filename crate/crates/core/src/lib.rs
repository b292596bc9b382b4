//! Flavour oscillations in a two-state system with a PT-symmetric,
//! non-Hermitian squared mass matrix
//!
//! ```text
//!        [  m1²   μ² ]
//! M²  =  [           ]
//!        [ -μ²   m2² ]
//! ```
//!
//! The crate builds the eigensystem and the two metric matrices (`P` and
//! `C'`), the Dirac, PT and C'PT inner products, every time-dependent flavour
//! ket and bra, and the density/projection operators whose traces give the
//! survival and transition probabilities. Closed-form results are kept next
//! to the explicit constructions so that each can be checked against the
//! other, and [`oracle`] provides brute-force reference paths that share no
//! code with either.

pub mod error;
pub mod inner;
pub mod model;
pub mod operator;
pub mod oracle;
pub mod probabilities;
pub mod states;

pub use error::{ModelError, Result};
pub use inner::{cpt_conjugate, dirac_dagger, inner, pt_conjugate, Basis, CoStateVector, Conjugation, StateVector};
pub use model::{
    cprime_matrix, eigensystem, eigenvalues, make_params, parity_matrix, EigenSystem, ModelParams, Orientation,
    Spectrum,
};
pub use operator::LinearOperator;
pub use probabilities::{Method, ProbabilityRecord};
pub use states::{Branch, Flavour, ModeFunction, Normalisation};
