//! Validated operator types: Hermitian observables and density matrices.

use crate::cmatrix::{frob_norm, herm_deviation, require_finite, require_square, trace, CMatrix};
use crate::eigh::{eig_hermitian, min_eig_hermitian};
use crate::error::{CoreError, Result};
use crate::scalar::Scalar;

/// A Hermitian operator, validated at construction.
///
/// The Hermiticity requirement is relative:
/// `||A - A†||_F <= tol * max(1, ||A||_F)`.
#[derive(Debug, Clone)]
pub struct HermitianOperator<S: Scalar> {
    matrix: CMatrix<S>,
}

impl<S: Scalar> HermitianOperator<S> {
    /// Default Hermiticity tolerance (1e-12, stated for f64).
    pub fn default_tol() -> S {
        S::lit(1e-12)
    }

    pub fn new(matrix: CMatrix<S>) -> Result<Self> {
        Self::with_tol(matrix, Self::default_tol())
    }

    pub fn with_tol(matrix: CMatrix<S>, tol_herm: S) -> Result<Self> {
        require_square(&matrix, "HermitianOperator")?;
        require_finite(&matrix)?;
        let dev = herm_deviation(&matrix);
        let bound = tol_herm * S::one().max(frob_norm(&matrix));
        if dev > bound {
            return Err(CoreError::NotHermitian {
                deviation: dev.as_f64(),
                tolerance: bound.as_f64(),
            });
        }
        Ok(Self { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix<S> {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix<S> {
        self.matrix
    }

    /// Eigenvalues ascending with unitary eigenvector columns.
    pub fn eig(&self) -> Result<(Vec<S>, CMatrix<S>)> {
        eig_hermitian(&self.matrix)
    }
}

/// Positive-semidefiniteness verdict: flag plus the minimum eigenvalue for
/// diagnostics.
pub fn is_psd<S: Scalar>(a: &HermitianOperator<S>, tol: S) -> Result<(bool, S)> {
    let min_eig = min_eig_hermitian(a.matrix())?;
    Ok((min_eig >= -tol, min_eig))
}

/// A statistical operator: Hermitian, positive semidefinite, unit trace.
#[derive(Debug, Clone)]
pub struct DensityMatrix<S: Scalar> {
    matrix: CMatrix<S>,
}

impl<S: Scalar> DensityMatrix<S> {
    /// Validates Hermiticity (1e-12 relative), positivity (min eigenvalue
    /// >= -1e-10) and normalization (|Tr - 1| <= 1e-10).
    pub fn new(matrix: CMatrix<S>) -> Result<Self> {
        require_square(&matrix, "DensityMatrix")?;
        require_finite(&matrix)?;
        let dev = herm_deviation(&matrix);
        let bound = S::lit(1e-12) * S::one().max(frob_norm(&matrix));
        if dev > bound {
            return Err(CoreError::NotHermitian {
                deviation: dev.as_f64(),
                tolerance: bound.as_f64(),
            });
        }
        let tr = trace(&matrix);
        let tr_dev = (tr.re - S::one()).abs().max(tr.im.abs());
        if tr_dev > S::lit(1e-10) {
            return Err(CoreError::InvalidState(format!(
                "trace deviates from 1 by {:.3e}",
                tr_dev.as_f64()
            )));
        }
        let min_eig = min_eig_hermitian(&matrix)?;
        if min_eig < -S::lit(1e-10) {
            return Err(CoreError::NotPsd {
                min_eig: min_eig.as_f64(),
            });
        }
        Ok(Self { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix<S> {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix<S> {
        self.matrix
    }
}
