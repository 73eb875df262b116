//! Exact linear algebra over the rationals and prime fields.
//!
//! Rational elimination is fraction-free (Bareiss) on denominator-cleared rows;
//! prime-field elimination works directly on residues. Pivots are chosen as the
//! first nonzero entry of each column, lowest row first, so every basis returned
//! here is a deterministic function of the input matrix.

mod field;
mod matrix;

pub use field::{is_prime, FieldSpec, Scalar, MAX_MODULUS};
pub use matrix::{Matrix, Rref};

use crate::error::Result;

pub fn rank(a: &Matrix) -> usize {
    a.rank()
}

pub fn kernel_basis(a: &Matrix) -> Vec<Vec<Scalar>> {
    a.kernel_basis()
}

pub fn cokernel_basis(a: &Matrix) -> Vec<Vec<Scalar>> {
    a.cokernel_basis()
}

pub fn solve(a: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    a.solve(b)
}
