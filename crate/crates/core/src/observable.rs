//! Hermitian observables.

use std::ops::Deref;

use crate::eigen::{eig_hermitian, EigenDecomposition};
use crate::matrix::{require_hermitian, ComplexMatrix, MatrixError};

/// A validated Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    matrix: ComplexMatrix,
}

impl Observable {
    pub fn new(matrix: ComplexMatrix) -> Result<Self, MatrixError> {
        require_hermitian(&matrix)?;
        Ok(Self { matrix })
    }

    /// For results that are Hermitian by construction (sums and Kronecker
    /// products of Hermitian pieces). Symmetrizes away round-off instead of
    /// re-validating.
    pub(crate) fn from_hermitian_parts(matrix: ComplexMatrix) -> Self {
        Self {
            matrix: matrix.hermitized(),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn eig(&self) -> Result<EigenDecomposition, MatrixError> {
        eig_hermitian(&self.matrix)
    }

    /// Largest |eigenvalue|.
    pub fn operator_norm(&self) -> Result<f64, MatrixError> {
        let eig = self.eig()?;
        Ok(eig
            .values
            .iter()
            .fold(0.0f64, |acc, &v| acc.max(v.abs())))
    }
}

impl Deref for Observable {
    type Target = ComplexMatrix;

    fn deref(&self) -> &ComplexMatrix {
        &self.matrix
    }
}
