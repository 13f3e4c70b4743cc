//! Dense square complex matrices, row-major, for systems up to 16 dimensions.

use num_complex::Complex64;
use thiserror::Error;

use crate::tol;

#[derive(Debug, Error)]
pub enum MatrixError {
    #[error("expected {expected} entries for dimension {dim}, got {got}")]
    BadEntryCount {
        dim: usize,
        expected: usize,
        got: usize,
    },
    #[error("matrix entries must be finite")]
    NonFinite,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is not Hermitian (deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal {off_diagonal:.3e})")]
    ConvergenceFailure { sweeps: usize, off_diagonal: f64 },
}

/// Dense square matrix of complex doubles. The universal carrier for
/// observables, density matrices and everything built from them.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self, MatrixError> {
        if entries.len() != dim * dim {
            return Err(MatrixError::BadEntryCount {
                dim,
                expected: dim * dim,
                got: entries.len(),
            });
        }
        if !entries.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(MatrixError::NonFinite);
        }
        Ok(Self { dim, entries })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Build from real row-major entries.
    pub fn from_real(dim: usize, reals: &[f64]) -> Result<Self, MatrixError> {
        Self::new(dim, reals.iter().map(|&r| Complex64::new(r, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch in add");
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Self {
            dim: self.dim,
            entries,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch in sub");
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Self {
            dim: self.dim,
            entries,
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn scale_re(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch in matmul");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.entries[i * n + k];
                if aik.re == 0.0 && aik.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += aik * other.entries[k * n + j];
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.dim, v.len(), "dimension mismatch in matvec");
        let n = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..n {
                acc += self.entries[i * n + j] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.entries[j * n + i] = self.entries[i * n + j].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.entries[i * self.dim + i]).sum()
    }

    /// Kronecker product: entry ((i*db+k),(j*db+l)) = a(i,j) * b(k,l).
    pub fn kron(&self, other: &Self) -> Self {
        let da = self.dim;
        let db = other.dim;
        let n = da * db;
        let mut out = Self::zeros(n);
        for i in 0..da {
            for j in 0..da {
                let aij = self.entries[i * da + j];
                if aij.re == 0.0 && aij.im == 0.0 {
                    continue;
                }
                for k in 0..db {
                    for l in 0..db {
                        out.entries[(i * db + k) * n + (j * db + l)] =
                            aij * other.entries[k * db + l];
                    }
                }
            }
        }
        out
    }

    /// ab - ba.
    pub fn commutator(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.dim != other.dim {
            return Err(MatrixError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(self.matmul(other).sub(&other.matmul(self)))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise deviation from the conjugate transpose.
    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                let d = (self.entries[i * n + j] - self.entries[j * n + i].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Relative Hermiticity test: deviation <= tol * (1 + max |entry|).
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol * (1.0 + self.max_abs_entry())
    }

    /// (M + M^dagger) / 2. Kills round-off asymmetry in products that are
    /// Hermitian by construction.
    pub fn hermitized(&self) -> Self {
        self.add(&self.adjoint()).scale_re(0.5)
    }

    /// Spectral norm, i.e. the largest singular value, computed from the
    /// Hermitian eigenproblem of M^dagger M. Coincides with max |eigenvalue|
    /// for Hermitian and anti-Hermitian inputs.
    pub fn operator_norm(&self) -> Result<f64, MatrixError> {
        let gram = self.adjoint().matmul(self).hermitized();
        let eig = crate::eigen::eig_hermitian(&gram)?;
        let top = eig.values.last().copied().unwrap_or(0.0);
        Ok(top.max(0.0).sqrt())
    }
}

/// Validation-tolerance Hermiticity check used by the constructors.
pub(crate) fn require_hermitian(m: &ComplexMatrix) -> Result<(), MatrixError> {
    let deviation = m.hermitian_deviation();
    if deviation > tol::VALIDATION * (1.0 + m.max_abs_entry()) {
        return Err(MatrixError::NotHermitian { deviation });
    }
    Ok(())
}
