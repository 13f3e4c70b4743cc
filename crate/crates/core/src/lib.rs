//! Triple-observable uncertainty relations and the entanglement criteria
//! built on them.
//!
//! For three Hermitian observables H_1, H_2, H_3 on a d-dimensional system,
//! the global operator R = sum_j H_j (x) sigma_j on the system extended by
//! one qubit ties the local variances to the commutator expectations:
//!
//! * sum form: sum_j var(H_j) >= (1/sqrt(3)) sum_j |<[H_j, H_{j+1}]>|
//! * product form: prod_j var(H_j) >= (1/sqrt(3))^3 prod_j |<[H_j, H_{j+1}]>|
//!
//! both saturated by the eight qubit states with |<sigma_j>| = 1/sqrt(3).
//! The same operator separates states: for involutive triples (H_j^2 = I),
//! |Tr rho R| > sqrt(3 + 2 sqrt(3)) certifies entanglement, and so does a
//! variance of R below the product-state floor.
//!
//! Everything is verified numerically at desk scale (d <= 8): dense complex
//! linear algebra, a Jacobi eigensolver, seeded sampling for fuzz campaigns,
//! and JSON reports with bit-exact floats.

// Index loops mirror the matrix formulas they implement.
#![allow(clippy::needless_range_loop)]

pub mod campaign;
pub mod eigen;
pub mod fileio;
pub mod matrix;
pub mod observable;
mod optim;
pub mod pauli;
pub mod report;
pub mod sampling;
pub mod saturation;
pub mod state;
pub mod tol;
pub mod triple;
pub mod uncertainty;
pub mod witness;

pub use eigen::{eig_hermitian, EigenDecomposition};
pub use matrix::{ComplexMatrix, MatrixError};
pub use observable::Observable;
pub use pauli::{pauli_matrices, pauli_triple, PauliSet};
pub use state::{QuantumState, StateError, StateKind};
pub use triple::ObservableTriple;
pub use uncertainty::{audit_triple, variance, UncertaintyAudit, UncertaintyError};
pub use witness::{
    bloch_grid_floor, estimate_variance_floor, expectation_witness, variance_witness,
    FloorConfig, FloorEstimate, Verdict, WitnessError, WitnessMethod, WitnessReport,
};
