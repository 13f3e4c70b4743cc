//! Ordered triples of observables and the global operator R built from them.
//!
//! R acts on the original system extended by one qubit:
//! R = sum_j H_j (x) sigma_j. Its square has the closed form
//! R^2 = sum_j H_j^2 (x) I + sum_j [H_j, H_{j+1}] (x) i sigma_{j+2},
//! indices cycling through {1, 2, 3}.

use num_complex::Complex64;

use crate::matrix::{ComplexMatrix, MatrixError};
use crate::observable::Observable;
use crate::pauli::{cyclic, pauli_matrices};

/// Exactly three Hermitian observables on a common space.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservableTriple {
    observables: [Observable; 3],
}

impl ObservableTriple {
    pub fn new(observables: [Observable; 3]) -> Result<Self, MatrixError> {
        let d = observables[0].dim();
        for obs in &observables[1..] {
            if obs.dim() != d {
                return Err(MatrixError::DimensionMismatch {
                    left: d,
                    right: obs.dim(),
                });
            }
        }
        Ok(Self { observables })
    }

    pub fn from_matrices(matrices: [ComplexMatrix; 3]) -> Result<Self, MatrixError> {
        let [a, b, c] = matrices;
        Self::new([Observable::new(a)?, Observable::new(b)?, Observable::new(c)?])
    }

    /// Subsystem dimension d (R lives on 2d).
    pub fn dim(&self) -> usize {
        self.observables[0].dim()
    }

    /// H_j for j in 1..=3.
    pub fn h(&self, j: usize) -> &Observable {
        assert!((1..=3).contains(&j), "observable index must be 1, 2 or 3");
        &self.observables[j - 1]
    }

    pub fn as_array(&self) -> &[Observable; 3] {
        &self.observables
    }

    /// Apply a matrix-level transformation to every member.
    pub fn map(
        &self,
        mut f: impl FnMut(usize, &ComplexMatrix) -> ComplexMatrix,
    ) -> Result<Self, MatrixError> {
        let a = Observable::new(f(0, self.observables[0].matrix()))?;
        let b = Observable::new(f(1, self.observables[1].matrix()))?;
        let c = Observable::new(f(2, self.observables[2].matrix()))?;
        Self::new([a, b, c])
    }

    /// R = sum_j H_j (x) sigma_j, Hermitian on dimension 2d.
    pub fn build_r(&self) -> Observable {
        let sigma = pauli_matrices();
        let mut acc = ComplexMatrix::zeros(2 * self.dim());
        for j in 0..3 {
            acc = acc.add(&self.observables[j].matrix().kron(&sigma[j]));
        }
        Observable::from_hermitian_parts(acc)
    }

    /// The closed form of R^2:
    /// sum_j H_j^2 (x) I + sum_j [H_j, H_{j+1}] (x) i sigma_{j+2}.
    pub fn r_squared_expansion(&self) -> Observable {
        let sigma = pauli_matrices();
        let id2 = ComplexMatrix::identity(2);
        let i = Complex64::new(0.0, 1.0);
        let mut acc = ComplexMatrix::zeros(2 * self.dim());
        for j in 0..3 {
            let hj = self.observables[j].matrix();
            acc = acc.add(&hj.matmul(hj).kron(&id2));
            let comm = hj
                .commutator(self.observables[cyclic(j, 1)].matrix())
                .expect("members share a dimension");
            acc = acc.add(&comm.kron(&sigma[cyclic(j, 2)].scale(i)));
        }
        Observable::from_hermitian_parts(acc)
    }

    /// Pairwise anti-commutation residuals of the commutators
    /// C_j = [H_j, H_{j+1}]: residual(j, k) = ||C_j C_k + C_k C_j|| for j != k,
    /// zero on the diagonal. All residuals below 1e-9 certify that the C_j
    /// generate a Clifford algebra, the condition under which the norm chain
    /// for R^2 saturates.
    pub fn anticommutation_profile(&self) -> Result<[[f64; 3]; 3], MatrixError> {
        let commutators: Vec<ComplexMatrix> = (0..3)
            .map(|j| {
                self.observables[j]
                    .matrix()
                    .commutator(self.observables[cyclic(j, 1)].matrix())
                    .expect("members share a dimension")
            })
            .collect();
        let mut profile = [[0.0; 3]; 3];
        for j in 0..3 {
            for k in 0..3 {
                if j == k {
                    continue;
                }
                let anti = commutators[j]
                    .matmul(&commutators[k])
                    .add(&commutators[k].matmul(&commutators[j]));
                profile[j][k] = anti.operator_norm()?;
            }
        }
        Ok(profile)
    }

    /// FNV-1a over the dimension and the raw entry bits of all three members.
    /// Ties floor estimates to the triple they were computed for.
    pub fn fingerprint(&self) -> u64 {
        let mut hash: u64 = 0xcbf29ce484222325;
        let mut eat = |bytes: &[u8]| {
            for &b in bytes {
                hash ^= b as u64;
                hash = hash.wrapping_mul(0x100000001b3);
            }
        };
        eat(&(self.dim() as u64).to_le_bytes());
        for obs in &self.observables {
            for z in obs.matrix().entries() {
                eat(&z.re.to_bits().to_le_bytes());
                eat(&z.im.to_bits().to_le_bytes());
            }
        }
        hash
    }
}
