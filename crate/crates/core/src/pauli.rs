//! The canonical qubit Pauli operators.

use num_complex::Complex64;

use crate::matrix::ComplexMatrix;
use crate::observable::Observable;
use crate::triple::ObservableTriple;

/// sigma_1, sigma_2, sigma_3 as raw matrices.
///
/// Sign convention: sigma_2 = ((0, -i), (i, 0)), so [s_j, s_{j+1}] = 2i s_{j+2}
/// cyclically.
pub fn pauli_matrices() -> [ComplexMatrix; 3] {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let sx = ComplexMatrix::new(2, vec![z, one, one, z]).expect("static entries");
    let sy = ComplexMatrix::new(2, vec![z, -i, i, z]).expect("static entries");
    let sz = ComplexMatrix::new(2, vec![one, z, z, -one]).expect("static entries");
    [sx, sy, sz]
}

/// The three Paulis as validated observables.
#[derive(Debug, Clone)]
pub struct PauliSet {
    sigma: [Observable; 3],
}

impl PauliSet {
    pub fn new() -> Self {
        let sigma = pauli_matrices().map(|m| Observable::new(m).expect("Paulis are Hermitian"));
        Self { sigma }
    }

    /// sigma_j for j in 1..=3.
    pub fn sigma(&self, j: usize) -> &Observable {
        assert!((1..=3).contains(&j), "Pauli index must be 1, 2 or 3");
        &self.sigma[j - 1]
    }

    pub fn as_array(&self) -> &[Observable; 3] {
        &self.sigma
    }
}

impl Default for PauliSet {
    fn default() -> Self {
        Self::new()
    }
}

/// The triple H_j = sigma_j on a single qubit.
pub fn pauli_triple() -> ObservableTriple {
    let set = PauliSet::new();
    ObservableTriple::new(set.sigma.clone()).expect("Paulis form a valid triple")
}

/// Cyclic successor on {0, 1, 2}: index j plus `offset`, wrapping mod 3.
#[inline]
pub(crate) fn cyclic(j: usize, offset: usize) -> usize {
    (j + offset) % 3
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_algebra_relations() {
        let s = pauli_matrices();
        let id = ComplexMatrix::identity(2);
        for j in 0..3 {
            // Involutive and traceless.
            assert!(s[j].matmul(&s[j]).sub(&id).max_abs_entry() < 1e-15);
            assert!(s[j].trace().norm() < 1e-15);
            // [s_j, s_{j+1}] = 2i s_{j+2}.
            let comm = s[j].commutator(&s[cyclic(j, 1)]).unwrap();
            let want = s[cyclic(j, 2)].scale(Complex64::new(0.0, 2.0));
            assert!(comm.sub(&want).max_abs_entry() < 1e-15);
        }
    }

    #[test]
    fn one_based_accessor() {
        let set = PauliSet::new();
        assert_eq!(set.sigma(3).matrix(), &pauli_matrices()[2]);
    }
}
