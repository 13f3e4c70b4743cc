//! Quantum states: unit pure vectors and unit-trace PSD density matrices.

use num_complex::Complex64;
use thiserror::Error;

use crate::eigen::eig_hermitian;
use crate::matrix::{ComplexMatrix, MatrixError};
use crate::tol;

#[derive(Debug, Error)]
pub enum StateError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("pure state norm {norm} is not 1")]
    NotUnitNorm { norm: f64 },
    #[error("density matrix trace {trace} is not 1")]
    TraceNotOne { trace: f64 },
    #[error("density matrix has negative eigenvalue {value:.3e}")]
    NegativeEigenvalue { value: f64 },
    #[error("amplitudes must be finite")]
    NonFinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateKind {
    Pure,
    Mixed,
}

#[derive(Debug, Clone, PartialEq)]
enum Repr {
    Pure(Vec<Complex64>),
    Mixed(ComplexMatrix),
}

/// A validated quantum state, pure or mixed.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    repr: Repr,
}

impl QuantumState {
    pub fn pure(amplitudes: Vec<Complex64>) -> Result<Self, StateError> {
        if !amplitudes
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
        {
            return Err(StateError::NonFinite);
        }
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > tol::VALIDATION {
            return Err(StateError::NotUnitNorm { norm });
        }
        Ok(Self {
            repr: Repr::Pure(amplitudes),
        })
    }

    /// Normalizes and wraps; handy for constructing states from raw amplitudes.
    pub fn pure_normalized(amplitudes: Vec<Complex64>) -> Result<Self, StateError> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(StateError::NonFinite);
        }
        let scaled = amplitudes.into_iter().map(|z| z / norm).collect();
        Self::pure(scaled)
    }

    pub fn mixed(density: ComplexMatrix) -> Result<Self, StateError> {
        crate::matrix::require_hermitian(&density)?;
        let trace = density.trace();
        if (trace.re - 1.0).abs() > tol::VALIDATION || trace.im.abs() > tol::VALIDATION {
            return Err(StateError::TraceNotOne { trace: trace.re });
        }
        let eig = eig_hermitian(&density)?;
        if let Some(&lowest) = eig.values.first() {
            if lowest < -tol::VALIDATION {
                return Err(StateError::NegativeEigenvalue { value: lowest });
            }
        }
        Ok(Self {
            repr: Repr::Mixed(density),
        })
    }

    /// Computational basis state |index> in the given dimension.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index out of range");
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self {
            repr: Repr::Pure(amplitudes),
        }
    }

    /// I/d.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            repr: Repr::Mixed(ComplexMatrix::identity(dim).scale_re(1.0 / dim as f64)),
        }
    }

    pub fn kind(&self) -> StateKind {
        match &self.repr {
            Repr::Pure(_) => StateKind::Pure,
            Repr::Mixed(_) => StateKind::Mixed,
        }
    }

    pub fn dim(&self) -> usize {
        match &self.repr {
            Repr::Pure(v) => v.len(),
            Repr::Mixed(m) => m.dim(),
        }
    }

    pub fn amplitudes(&self) -> Option<&[Complex64]> {
        match &self.repr {
            Repr::Pure(v) => Some(v),
            Repr::Mixed(_) => None,
        }
    }

    /// Density-matrix form, |v><v| for pure states.
    pub fn density_matrix(&self) -> ComplexMatrix {
        match &self.repr {
            Repr::Pure(v) => {
                let n = v.len();
                let mut m = ComplexMatrix::zeros(n);
                for i in 0..n {
                    for j in 0..n {
                        m.set(i, j, v[i] * v[j].conj());
                    }
                }
                m
            }
            Repr::Mixed(m) => m.clone(),
        }
    }

    /// Tr(rho M) for mixed states, <v|M|v> for pure states.
    pub fn expectation(&self, obs: &ComplexMatrix) -> Result<Complex64, MatrixError> {
        if obs.dim() != self.dim() {
            return Err(MatrixError::DimensionMismatch {
                left: obs.dim(),
                right: self.dim(),
            });
        }
        Ok(match &self.repr {
            Repr::Pure(v) => {
                let mv = obs.matvec(v);
                v.iter().zip(&mv).map(|(a, b)| a.conj() * b).sum()
            }
            Repr::Mixed(rho) => {
                let n = rho.dim();
                let mut acc = Complex64::new(0.0, 0.0);
                for i in 0..n {
                    for j in 0..n {
                        acc += rho.get(i, j) * obs.get(j, i);
                    }
                }
                acc
            }
        })
    }

    /// Real part of the expectation of a Hermitian observable.
    pub fn expectation_re(&self, obs: &ComplexMatrix) -> Result<f64, MatrixError> {
        Ok(self.expectation(obs)?.re)
    }

    /// Product state of two subsystems. Pure (x) pure stays pure; anything
    /// else becomes a density matrix.
    pub fn product(&self, other: &QuantumState) -> QuantumState {
        match (&self.repr, &other.repr) {
            (Repr::Pure(a), Repr::Pure(b)) => {
                let mut v = Vec::with_capacity(a.len() * b.len());
                for x in a {
                    for y in b {
                        v.push(x * y);
                    }
                }
                QuantumState {
                    repr: Repr::Pure(v),
                }
            }
            _ => QuantumState {
                repr: Repr::Mixed(self.density_matrix().kron(&other.density_matrix())),
            },
        }
    }
}
