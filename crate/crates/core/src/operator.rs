use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::Matrix2;
use num_complex::Complex64;

/// A complex 2×2 matrix: metrics, mass matrices, density and projection
/// operators.
#[derive(Clone, Copy, PartialEq)]
pub struct LinearOperator(pub Matrix2<Complex64>);

impl LinearOperator {
    pub fn from_real(rows: [[f64; 2]; 2]) -> Self {
        Self(Matrix2::new(
            Complex64::new(rows[0][0], 0.0),
            Complex64::new(rows[0][1], 0.0),
            Complex64::new(rows[1][0], 0.0),
            Complex64::new(rows[1][1], 0.0),
        ))
    }

    pub fn from_complex(rows: [[Complex64; 2]; 2]) -> Self {
        Self(Matrix2::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1]))
    }

    pub fn identity() -> Self {
        Self(Matrix2::identity())
    }

    pub fn zero() -> Self {
        Self(Matrix2::zeros())
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[(row, col)]
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn trace(&self) -> Complex64 {
        self.0[(0, 0)] + self.0[(1, 1)]
    }

    pub fn determinant(&self) -> Complex64 {
        self.0[(0, 0)] * self.0[(1, 1)] - self.0[(0, 1)] * self.0[(1, 0)]
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self(self.0 * factor)
    }

    /// Largest entry-wise modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entry-wise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }
}

impl Add for LinearOperator {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

impl Sub for LinearOperator {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(self.0 - rhs.0)
    }
}

impl Mul for LinearOperator {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self(self.0 * rhs.0)
    }
}

impl fmt::Debug for LinearOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.0[(0, 0)],
            self.0[(0, 1)],
            self.0[(1, 0)],
            self.0[(1, 1)]
        )
    }
}
