//! Dense complex linear algebra: the matrix type and a self-contained
//! non-Hermitian eigensolver (complex Schur via single-shift QR, real
//! Schur via Francis double-shift QR, triangular eigenvector solves).

mod eigvec;
mod matrix;
mod real_schur;
mod schur;

use alloc::vec::Vec;

pub use eigvec::{left_eigenvectors, normalize_vector, right_eigenvectors};
pub use matrix::{dot_c, vec_norm, Matrix};
pub use real_schur::{real_eigenvalues, real_schur_complex, RealMatrix};
pub use schur::{eigenvalues, hessenberg, hessenberg_qr, schur};

use crate::{Error, Result, C64};

/// Eigenvalues with right and left eigenvectors stored as unit-norm
/// columns in matching order.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub values: Vec<C64>,
    pub right: Matrix,
    pub left: Matrix,
}

/// Full eigendecomposition of a square complex matrix.
pub fn eig(a: &Matrix) -> Result<EigenDecomposition> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: a.cols(),
        });
    }
    let (t, z) = schur(a)?;
    Ok(EigenDecomposition {
        values: t.diag(),
        right: right_eigenvectors(&t, &z),
        left: left_eigenvectors(&t, &z),
    })
}

/// Full eigendecomposition of a real matrix; complex eigenvalues appear in
/// exact conjugate pairs.
pub fn eig_real(a: &RealMatrix) -> Result<EigenDecomposition> {
    let (t, z, values) = real_schur_complex(a)?;
    Ok(EigenDecomposition {
        values,
        right: right_eigenvectors(&t, &z),
        left: left_eigenvectors(&t, &z),
    })
}
