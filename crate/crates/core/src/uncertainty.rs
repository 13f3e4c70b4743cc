//! Variances and the triple uncertainty relations.
//!
//! For a triple (H_1, H_2, H_3) and a state, the sum form bounds
//! sum_j var(H_j) from below by (1/sqrt(3)) sum_j |<[H_j, H_{j+1}]>| and the
//! product form bounds prod_j var(H_j) by (1/sqrt(3))^3 prod_j |<[H_j, H_{j+1}]>|.
//! Both are audited as slacks (lhs - rhs) rather than booleans so saturation
//! studies keep the magnitudes.

use num_complex::Complex64;
use thiserror::Error;

use crate::matrix::MatrixError;
use crate::observable::Observable;
use crate::pauli::cyclic;
use crate::state::QuantumState;
use crate::tol;
use crate::triple::ObservableTriple;

#[derive(Debug, Error)]
pub enum UncertaintyError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("variance {value:.3e} is negative beyond round-off")]
    NegativeVariance { value: f64 },
    #[error("observable {index} has degenerate variance {variance:.3e}; the product form must be handled directly")]
    DegenerateVariance { index: usize, variance: f64 },
}

/// Everything the two inequalities are made of, for one (triple, state) pair.
#[derive(Debug, Clone, PartialEq)]
pub struct UncertaintyAudit {
    /// var(H_j), clamped at zero.
    pub variances: [f64; 3],
    /// |<[H_j, H_{j+1}]>|, cyclic.
    pub commutator_abs: [f64; 3],
    pub lhs_sum: f64,
    pub rhs_sum: f64,
    pub lhs_prod: f64,
    pub rhs_prod: f64,
    pub slack_sum: f64,
    pub slack_prod: f64,
}

pub(crate) fn inv_sqrt3() -> f64 {
    1.0 / 3.0_f64.sqrt()
}

/// <H^2> - <H>^2, clamped to zero when round-off dips below.
pub fn variance(obs: &Observable, state: &QuantumState) -> Result<f64, UncertaintyError> {
    let m = obs.matrix();
    let mean = state.expectation(m)?.re;
    let second = state.expectation(&m.matmul(m))?.re;
    let var = second - mean * mean;
    if var < -tol::VALIDATION {
        return Err(UncertaintyError::NegativeVariance { value: var });
    }
    Ok(var.max(0.0))
}

/// <[H_j, H_{j+1}]> for j = 1, 2, 3 (purely imaginary for Hermitian members).
pub fn commutator_expectations(
    t: &ObservableTriple,
    state: &QuantumState,
) -> Result<[Complex64; 3], UncertaintyError> {
    let mut out = [Complex64::new(0.0, 0.0); 3];
    for j in 0..3 {
        let comm = t.as_array()[j]
            .matrix()
            .commutator(t.as_array()[cyclic(j, 1)].matrix())?;
        out[j] = state.expectation(&comm)?;
    }
    Ok(out)
}

pub fn audit_triple(
    t: &ObservableTriple,
    state: &QuantumState,
) -> Result<UncertaintyAudit, UncertaintyError> {
    if state.dim() != t.dim() {
        return Err(MatrixError::DimensionMismatch {
            left: t.dim(),
            right: state.dim(),
        }
        .into());
    }
    let mut variances = [0.0; 3];
    for j in 0..3 {
        variances[j] = variance(&t.as_array()[j], state)?;
    }
    let comm = commutator_expectations(t, state)?;
    let commutator_abs = [comm[0].norm(), comm[1].norm(), comm[2].norm()];

    let k = inv_sqrt3();
    let lhs_sum = variances.iter().sum();
    let rhs_sum = k * commutator_abs.iter().sum::<f64>();
    let lhs_prod = variances.iter().product();
    let rhs_prod = k.powi(3) * commutator_abs.iter().product::<f64>();

    Ok(UncertaintyAudit {
        variances,
        commutator_abs,
        lhs_sum,
        rhs_sum,
        lhs_prod,
        rhs_prod,
        slack_sum: lhs_sum - rhs_sum,
        slack_prod: lhs_prod - rhs_prod,
    })
}

/// H_j' = H_j - <H_j> I. Centering leaves variances and commutators alone
/// while zeroing every first moment.
pub fn center_triple(
    t: &ObservableTriple,
    state: &QuantumState,
) -> Result<ObservableTriple, UncertaintyError> {
    if state.dim() != t.dim() {
        return Err(MatrixError::DimensionMismatch {
            left: t.dim(),
            right: state.dim(),
        }
        .into());
    }
    let mut means = [0.0; 3];
    for j in 0..3 {
        means[j] = state.expectation(t.as_array()[j].matrix())?.re;
    }
    let id = crate::matrix::ComplexMatrix::identity(t.dim());
    Ok(t.map(|j, m| m.sub(&id.scale_re(means[j])))?)
}

/// Rescale to equal variances: kappa_j = (prod_k var(H_k))^(1/6) / sqrt(var(H_j)),
/// so prod_j kappa_j = 1 and the product-form quantities are untouched.
pub fn equalize_variances(
    t: &ObservableTriple,
    state: &QuantumState,
) -> Result<(ObservableTriple, [f64; 3]), UncertaintyError> {
    let mut variances = [0.0; 3];
    for j in 0..3 {
        variances[j] = variance(&t.as_array()[j], state)?;
        if variances[j] <= tol::DEGENERATE_VARIANCE {
            return Err(UncertaintyError::DegenerateVariance {
                index: j + 1,
                variance: variances[j],
            });
        }
    }
    let product: f64 = variances.iter().product();
    let sixth_root = product.powf(1.0 / 6.0);
    let kappas = [
        sixth_root / variances[0].sqrt(),
        sixth_root / variances[1].sqrt(),
        sixth_root / variances[2].sqrt(),
    ];
    let scaled = t.map(|j, m| m.scale_re(kappas[j]))?;
    Ok((scaled, kappas))
}

/// Two-observable sanity check: var-product slack
/// dA * dB - |<[A, B]>| / 2, nonnegative for every physical state.
pub fn robertson_slack(
    a: &Observable,
    b: &Observable,
    state: &QuantumState,
) -> Result<f64, UncertaintyError> {
    let da = variance(a, state)?.sqrt();
    let db = variance(b, state)?.sqrt();
    let comm = a.matrix().commutator(b.matrix())?;
    let bound = 0.5 * state.expectation(&comm)?.norm();
    Ok(da * db - bound)
}
