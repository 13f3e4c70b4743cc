//! Separable-vs-entangled discrimination through the global operator R.
//!
//! Two routes:
//!
//! * Expectation threshold, for involutive triples (H_j^2 = I): every
//!   separable state on the composite space satisfies
//!   |Tr rho R| <= sqrt(3 + 2 sqrt(3)), while entangled states can reach 3.
//! * Variance floor: the minimum c of var(R) over product states lower-bounds
//!   the variance of every separable state, so var(R) < c certifies
//!   entanglement. c is estimated by multi-start local search over pure
//!   product states and, on qubit instances, cross-checked against a dense
//!   Bloch-sphere grid.
//!
//! Note that c can be exactly zero: for H_j = sigma_j the aligned product
//! states (|00> and its rotations) are eigenstates of R, so the variance
//! route flags nothing and the expectation threshold is the useful test.

use num_complex::Complex64;
use thiserror::Error;

use crate::matrix::{ComplexMatrix, MatrixError};
use crate::optim::NelderMead;
use crate::pauli::pauli_matrices;
use crate::sampling::{haar_pure_with, SampleConfig};
use crate::state::{QuantumState, StateError};
use crate::tol;
use crate::triple::ObservableTriple;

#[derive(Debug, Error)]
pub enum WitnessError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error("observable {index} is not involutive: ||H^2 - I|| = {deviation:.3e}")]
    InvolutionRequired { index: usize, deviation: f64 },
    #[error("state dimension {got} does not match composite dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("floor fingerprint {floor:#018x} does not match triple {triple:#018x}")]
    FloorMismatch { floor: u64, triple: u64 },
    #[error("mixture weights invalid: {reason}")]
    WeightInvalid { reason: String },
    #[error("invalid floor search config: {reason}")]
    ConfigInvalid { reason: String },
    #[error("internal moment bound violated: {name} = {value} exceeds {bound}")]
    MomentBound {
        name: &'static str,
        value: f64,
        bound: f64,
    },
    #[error("the Bloch-grid oracle needs qubit observables, got dimension {dim}")]
    GridRequiresQubit { dim: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Entangled,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessMethod {
    ExpectationThreshold,
    VarianceFloor,
}

/// Verdict plus every intermediate quantity, for auditability.
#[derive(Debug, Clone)]
pub struct WitnessReport {
    pub verdict: Verdict,
    pub method: WitnessMethod,
    /// |Tr rho R|.
    pub expectation_abs: f64,
    /// Tr rho R^2.
    pub second_moment: f64,
    /// Tr rho R^2 - (Tr rho R)^2.
    pub variance: f64,
    pub threshold_used: f64,
    /// Whether every H_j^2 = I held within tolerance.
    pub involutive: bool,
}

/// Outcome of the product-state variance minimization.
#[derive(Debug, Clone)]
pub struct FloorEstimate {
    /// Minimum variance of R over the sampled/refined pure product states.
    pub c: f64,
    pub argmin_mu: QuantumState,
    pub argmin_nu: QuantumState,
    pub restarts: usize,
    pub converged: bool,
    /// Fingerprint of the triple this floor belongs to.
    pub fingerprint: u64,
}

#[derive(Debug, Clone, Copy)]
pub struct FloorConfig {
    pub restarts: usize,
    pub max_iters: usize,
    /// Convergence tolerance on the local-search value spread.
    pub tol: f64,
    pub seed: u64,
}

impl Default for FloorConfig {
    fn default() -> Self {
        Self {
            restarts: 32,
            max_iters: 600,
            tol: 1e-12,
            seed: 7,
        }
    }
}

/// sqrt(3 + 2 sqrt(3)), the product/separable expectation bound for
/// involutive triples.
pub fn separable_expectation_threshold() -> f64 {
    (3.0 + 2.0 * 3.0_f64.sqrt()).sqrt()
}

/// ||H_j^2 - I|| for each member.
pub fn involution_deviations(t: &ObservableTriple) -> Result<[f64; 3], WitnessError> {
    let id = ComplexMatrix::identity(t.dim());
    let mut out = [0.0; 3];
    for j in 0..3 {
        let h = t.as_array()[j].matrix();
        out[j] = h.matmul(h).sub(&id).operator_norm()?;
    }
    Ok(out)
}

pub fn is_involutive(t: &ObservableTriple) -> Result<bool, WitnessError> {
    Ok(involution_deviations(t)?
        .iter()
        .all(|&d| d <= tol::INVOLUTION))
}

/// First and second moments of R in a state on the composite space.
#[derive(Debug, Clone, Copy)]
pub struct RMoments {
    pub expectation: f64,
    pub second_moment: f64,
    pub variance: f64,
}

pub fn r_moments(t: &ObservableTriple, rho: &QuantumState) -> Result<RMoments, WitnessError> {
    let expected = 2 * t.dim();
    if rho.dim() != expected {
        return Err(WitnessError::DimensionMismatch {
            expected,
            got: rho.dim(),
        });
    }
    let r = t.build_r();
    let expectation = rho.expectation(r.matrix())?.re;
    let second_moment = rho.expectation(&r.matrix().matmul(r.matrix()))?.re;
    Ok(RMoments {
        expectation,
        second_moment,
        variance: second_moment - expectation * expectation,
    })
}

/// Expectation-threshold witness for involutive triples. Entangled only when
/// |Tr rho R| clears sqrt(3 + 2 sqrt(3)) by more than the round-off margin.
pub fn expectation_witness(
    t: &ObservableTriple,
    rho: &QuantumState,
) -> Result<WitnessReport, WitnessError> {
    let deviations = involution_deviations(t)?;
    for (j, &dev) in deviations.iter().enumerate() {
        if dev > tol::INVOLUTION {
            return Err(WitnessError::InvolutionRequired {
                index: j + 1,
                deviation: dev,
            });
        }
    }
    let moments = r_moments(t, rho)?;

    // Global bounds for involutive triples; a failure here means an invalid
    // input slipped past validation.
    if moments.second_moment > 9.0 + tol::EQUALITY {
        return Err(WitnessError::MomentBound {
            name: "Tr rho R^2",
            value: moments.second_moment,
            bound: 9.0,
        });
    }
    if moments.expectation.abs() > 3.0 + tol::EQUALITY {
        return Err(WitnessError::MomentBound {
            name: "|Tr rho R|",
            value: moments.expectation.abs(),
            bound: 3.0,
        });
    }
    if moments.variance < -tol::EQUALITY {
        return Err(WitnessError::MomentBound {
            name: "var(R)",
            value: moments.variance,
            bound: 0.0,
        });
    }

    let threshold = separable_expectation_threshold();
    let verdict = if moments.expectation.abs() > threshold + tol::ENTANGLED_MARGIN {
        Verdict::Entangled
    } else {
        Verdict::Inconclusive
    };
    Ok(WitnessReport {
        verdict,
        method: WitnessMethod::ExpectationThreshold,
        expectation_abs: moments.expectation.abs(),
        second_moment: moments.second_moment,
        variance: moments.variance,
        threshold_used: threshold,
        involutive: true,
    })
}

/// Variance-floor witness: entangled when var(R) sits below the separable
/// floor by more than the round-off margin. The floor must have been computed
/// for the same triple.
pub fn variance_witness(
    t: &ObservableTriple,
    rho: &QuantumState,
    floor: &FloorEstimate,
) -> Result<WitnessReport, WitnessError> {
    let fingerprint = t.fingerprint();
    if floor.fingerprint != fingerprint {
        return Err(WitnessError::FloorMismatch {
            floor: floor.fingerprint,
            triple: fingerprint,
        });
    }
    let moments = r_moments(t, rho)?;
    let verdict = if moments.variance < floor.c - tol::ENTANGLED_MARGIN {
        Verdict::Entangled
    } else {
        Verdict::Inconclusive
    };
    Ok(WitnessReport {
        verdict,
        method: WitnessMethod::VarianceFloor,
        expectation_abs: moments.expectation.abs(),
        second_moment: moments.second_moment,
        variance: moments.variance,
        threshold_used: floor.c,
        involutive: is_involutive(t)?,
    })
}

/// Both sides of the mixture-concavity inequality: the variance of R in
/// rho = sum_j w_j mu_j (x) nu_j versus the weighted sum of the component
/// variances. Returns (lhs, rhs) with lhs >= rhs - 1e-9 for valid input.
pub fn separable_mixture_audit(
    components: &[(f64, QuantumState, QuantumState)],
    t: &ObservableTriple,
) -> Result<(f64, f64), WitnessError> {
    if components.is_empty() {
        return Err(WitnessError::WeightInvalid {
            reason: "no components".into(),
        });
    }
    let total: f64 = components.iter().map(|(w, _, _)| w).sum();
    if components.iter().any(|(w, _, _)| *w < 0.0) {
        return Err(WitnessError::WeightInvalid {
            reason: "negative weight".into(),
        });
    }
    if (total - 1.0).abs() > tol::VALIDATION {
        return Err(WitnessError::WeightInvalid {
            reason: format!("weights sum to {total}"),
        });
    }

    let d = t.dim();
    let mut rho_acc = ComplexMatrix::zeros(2 * d);
    let mut rhs = 0.0;
    for (w, mu, nu) in components {
        if mu.dim() != d || nu.dim() != 2 {
            return Err(WitnessError::DimensionMismatch {
                expected: d,
                got: mu.dim(),
            });
        }
        let product = mu.product(nu);
        rhs += w * r_moments(t, &product)?.variance;
        rho_acc = rho_acc.add(&product.density_matrix().scale_re(*w));
    }
    let rho = QuantumState::mixed(rho_acc.hermitized())?;
    let lhs = r_moments(t, &rho)?.variance;
    Ok((lhs, rhs))
}

// ---------------------------------------------------------------------------
// Floor estimation: multi-start local search over pure product states.
// ---------------------------------------------------------------------------

/// Amplitudes of a pure state of dimension m from 2m-2 angles
/// (m-1 polar magnitudes, m-1 phases; first amplitude real).
fn amplitudes_from_angles(angles: &[f64]) -> Vec<Complex64> {
    debug_assert!(angles.len().is_multiple_of(2));
    let m = angles.len() / 2 + 1;
    let thetas = &angles[..m - 1];
    let phis = &angles[m - 1..];
    let mut amps = Vec::with_capacity(m);
    let mut prefix = 1.0f64;
    for k in 0..m {
        let mag = if k < m - 1 {
            let v = prefix * thetas[k].cos();
            prefix *= thetas[k].sin();
            v
        } else {
            prefix
        };
        let amp = if k == 0 {
            Complex64::new(mag, 0.0)
        } else {
            Complex64::from_polar(1.0, phis[k - 1]) * mag
        };
        amps.push(amp);
    }
    amps
}

/// Inverse of `amplitudes_from_angles` up to global phase.
fn angles_from_state(state: &QuantumState) -> Vec<f64> {
    let raw = state.amplitudes().expect("pure state");
    let m = raw.len();
    // Fix the global phase so the first non-negligible amplitude is real.
    let reference = raw
        .iter()
        .find(|z| z.norm() > 1e-12)
        .copied()
        .unwrap_or(Complex64::new(1.0, 0.0));
    let phase = reference / reference.norm();
    let amps: Vec<Complex64> = raw.iter().map(|z| z * phase.conj()).collect();

    let mut thetas = vec![0.0; m - 1];
    let mut prefix = 1.0f64;
    for k in 0..m - 1 {
        let cosv = if prefix > 1e-12 {
            (amps[k].norm() / prefix).clamp(0.0, 1.0)
        } else {
            1.0
        };
        thetas[k] = cosv.acos();
        prefix *= thetas[k].sin();
    }
    let phis: Vec<f64> = (1..m)
        .map(|k| {
            if amps[k].norm() > 1e-14 {
                amps[k].im.atan2(amps[k].re)
            } else {
                0.0
            }
        })
        .collect();
    thetas.into_iter().chain(phis).collect()
}

/// var(R) at the pure product state described by concatenated
/// (mu angles, nu angles).
fn product_variance(r: &ComplexMatrix, dim_a: usize, angles: &[f64]) -> f64 {
    let mu_params = 2 * dim_a - 2;
    let mu = amplitudes_from_angles(&angles[..mu_params]);
    let nu = amplitudes_from_angles(&angles[mu_params..]);
    let mut v = Vec::with_capacity(2 * dim_a);
    for a in &mu {
        for b in &nu {
            v.push(a * b);
        }
    }
    let norm_sq: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    let w = r.matvec(&v);
    let e: f64 = v
        .iter()
        .zip(&w)
        .map(|(a, b)| (a.conj() * b).re)
        .sum::<f64>()
        / norm_sq;
    let m2: f64 = w.iter().map(|z| z.norm_sqr()).sum::<f64>() / norm_sq;
    m2 - e * e
}

/// Multi-start minimization of var(R) over pure product states mu (x) nu.
/// Restarts draw Haar-random initial pairs; each is refined by Nelder-Mead
/// on the angle parameterization.
pub fn estimate_variance_floor(
    t: &ObservableTriple,
    config: &FloorConfig,
) -> Result<FloorEstimate, WitnessError> {
    if config.restarts == 0 {
        return Err(WitnessError::ConfigInvalid {
            reason: "restarts must be >= 1".into(),
        });
    }
    if config.max_iters == 0 {
        return Err(WitnessError::ConfigInvalid {
            reason: "max_iters must be >= 1".into(),
        });
    }
    if !(config.tol.is_finite() && config.tol > 0.0) {
        return Err(WitnessError::ConfigInvalid {
            reason: format!("tol {} must be positive and finite", config.tol),
        });
    }

    let d = t.dim();
    let r = t.build_r();
    let objective = |angles: &[f64]| product_variance(r.matrix(), d, angles);
    let nm = NelderMead {
        max_iters: config.max_iters,
        tol: config.tol,
    };

    let base = SampleConfig::new(config.seed, d).expect("dimension is positive");
    let mut best: Option<(f64, Vec<f64>, bool)> = None;
    for restart in 0..config.restarts {
        let mut rng = base.split(restart as u64).rng();
        let mu0 = haar_pure_with(&mut rng, d);
        let nu0 = haar_pure_with(&mut rng, 2);
        let start: Vec<f64> = angles_from_state(&mu0)
            .into_iter()
            .chain(angles_from_state(&nu0))
            .collect();
        let outcome = nm.minimize(objective, &start, 0.4);
        let better = match &best {
            None => true,
            Some((value, _, _)) => outcome.value < *value,
        };
        if better {
            best = Some((outcome.value, outcome.point, outcome.converged));
        }
    }
    let (_, point, converged) = best.expect("at least one restart");

    let mu_params = 2 * d - 2;
    let argmin_mu = QuantumState::pure_normalized(amplitudes_from_angles(&point[..mu_params]))?;
    let argmin_nu = QuantumState::pure_normalized(amplitudes_from_angles(&point[mu_params..]))?;

    // The reported floor is the variance recomputed at the argmin through the
    // ordinary moment route, clamped at zero.
    let joint = argmin_mu.product(&argmin_nu);
    let c = r_moments(t, &joint)?.variance.max(0.0);

    Ok(FloorEstimate {
        c,
        argmin_mu,
        argmin_nu,
        restarts: config.restarts,
        converged,
        fingerprint: t.fingerprint(),
    })
}

// ---------------------------------------------------------------------------
// Bloch-grid oracle for qubit instances.
// ---------------------------------------------------------------------------

/// Expansion of a 4x4 Hermitian operator in the two-qubit Pauli basis, so
/// product-state expectations reduce to a bilinear form in the Bloch vectors.
struct PauliTable {
    c0: f64,
    a: [f64; 3],
    b: [f64; 3],
    ab: [[f64; 3]; 3],
}

impl PauliTable {
    fn build(x: &ComplexMatrix) -> Self {
        let sigma = pauli_matrices();
        let id = ComplexMatrix::identity(2);
        let quarter_trace = |m: &ComplexMatrix| -> f64 {
            let n = 4;
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..n {
                for j in 0..n {
                    acc += m.get(i, j) * x.get(j, i);
                }
            }
            acc.re / 4.0
        };
        let mut a = [0.0; 3];
        let mut b = [0.0; 3];
        let mut ab = [[0.0; 3]; 3];
        for i in 0..3 {
            a[i] = quarter_trace(&sigma[i].kron(&id));
            b[i] = quarter_trace(&id.kron(&sigma[i]));
            for j in 0..3 {
                ab[i][j] = quarter_trace(&sigma[i].kron(&sigma[j]));
            }
        }
        Self {
            c0: quarter_trace(&ComplexMatrix::identity(4)),
            a,
            b,
            ab,
        }
    }

    /// Coefficients of Tr[(mu(a) (x) nu(b)) X] as an affine function of b,
    /// with a fixed.
    fn fix_first(&self, a: &[f64; 3]) -> (f64, [f64; 3]) {
        let mut constant = self.c0;
        for i in 0..3 {
            constant += self.a[i] * a[i];
        }
        let mut linear = [0.0; 3];
        for j in 0..3 {
            linear[j] = self.b[j];
            for i in 0..3 {
                linear[j] += a[i] * self.ab[i][j];
            }
        }
        (constant, linear)
    }
}

fn bloch_vector(theta: f64, phi: f64) -> [f64; 3] {
    [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]
}

fn grid_variance(r_table: &PauliTable, r2_table: &PauliTable, angles: &[f64; 4]) -> f64 {
    let a = bloch_vector(angles[0], angles[1]);
    let b = bloch_vector(angles[2], angles[3]);
    let (e0, ev) = r_table.fix_first(&a);
    let (m0, mv) = r2_table.fix_first(&a);
    let e = e0 + ev[0] * b[0] + ev[1] * b[1] + ev[2] * b[2];
    let m = m0 + mv[0] * b[0] + mv[1] * b[1] + mv[2] * b[2];
    m - e * e
}

/// Compass descent on the four angles, shrinking the stencil until the step
/// is negligible.
fn compass_refine(
    r_table: &PauliTable,
    r2_table: &PauliTable,
    start: [f64; 4],
    step: f64,
) -> f64 {
    let mut h = step;
    let mut current = start;
    let mut value = grid_variance(r_table, r2_table, &current);
    while h > 1e-8 {
        let mut improved = false;
        for axis in 0..4 {
            for direction in [-1.0, 1.0] {
                let mut candidate = current;
                candidate[axis] += direction * h;
                let v = grid_variance(r_table, r2_table, &candidate);
                if v < value {
                    value = v;
                    current = candidate;
                    improved = true;
                }
            }
        }
        if !improved {
            h *= 0.5;
        }
    }
    value
}

/// Independent oracle for the qubit variance floor: a dense scan over both
/// Bloch spheres at step pi/60 per angle, then compass refinement from the
/// best grid point of every sufficiently separated basin on the first sphere.
/// Shares no code path with the multi-start estimator (Bloch bilinear form
/// vs amplitude parameterization, compass vs simplex descent).
pub fn bloch_grid_floor(t: &ObservableTriple) -> Result<f64, WitnessError> {
    if t.dim() != 2 {
        return Err(WitnessError::GridRequiresQubit { dim: t.dim() });
    }
    let r = t.build_r();
    let r2 = r.matrix().matmul(r.matrix()).hermitized();
    let r_table = PauliTable::build(r.matrix());
    let r2_table = PauliTable::build(&r2);

    let step = std::f64::consts::PI / 60.0;
    let thetas: Vec<f64> = (0..=60).map(|k| k as f64 * step).collect();
    let phis: Vec<f64> = (0..120).map(|k| k as f64 * step).collect();

    let points: Vec<(f64, f64, [f64; 3])> = thetas
        .iter()
        .flat_map(|&th| phis.iter().map(move |&ph| (th, ph, bloch_vector(th, ph))))
        .collect();

    // For every point on the first sphere, the best partner on the second.
    let mut per_a: Vec<(f64, [f64; 4])> = Vec::with_capacity(points.len());
    for &(th_a, ph_a, a) in &points {
        let (e0, ev) = r_table.fix_first(&a);
        let (m0, mv) = r2_table.fix_first(&a);
        let mut best_value = f64::INFINITY;
        let mut best_b = (0.0, 0.0);
        for &(th_b, ph_b, b) in &points {
            let e = e0 + ev[0] * b[0] + ev[1] * b[1] + ev[2] * b[2];
            let m = m0 + mv[0] * b[0] + mv[1] * b[1] + mv[2] * b[2];
            let value = m - e * e;
            if value < best_value {
                best_value = value;
                best_b = (th_b, ph_b);
            }
        }
        per_a.push((best_value, [th_a, ph_a, best_b.0, best_b.1]));
    }

    // Separated starting candidates, so a shallow secondary basin cannot
    // shadow the global one.
    per_a.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("finite variance"));
    let separation_cos = 0.3f64.cos();
    let mut starts: Vec<[f64; 4]> = Vec::new();
    for &(_, angles) in &per_a {
        if starts.len() >= 12 {
            break;
        }
        let a = bloch_vector(angles[0], angles[1]);
        let isolated = starts.iter().all(|s| {
            let chosen = bloch_vector(s[0], s[1]);
            a[0] * chosen[0] + a[1] * chosen[1] + a[2] * chosen[2] < separation_cos
        });
        if starts.is_empty() || isolated {
            starts.push(angles);
        }
    }

    let mut best = f64::INFINITY;
    for start in starts {
        best = best.min(compass_refine(&r_table, &r2_table, start, step));
    }
    Ok(best.max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::pauli_triple;
    use crate::sampling::{random_involutive_triple, SampleConfig};
    use crate::state::QuantumState;

    fn singlet() -> QuantumState {
        let inv = 1.0 / 2.0_f64.sqrt();
        QuantumState::pure(vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(-inv, 0.0),
            Complex64::new(inv, 0.0),
            Complex64::new(0.0, 0.0),
        ])
        .unwrap()
    }

    #[test]
    fn threshold_constant() {
        let thr = separable_expectation_threshold();
        assert!((thr * thr - (3.0 + 2.0 * 3.0_f64.sqrt())).abs() < 1e-15);
        // Reference digits from 30-digit decimal arithmetic.
        assert!((thr - 2.54245975683741).abs() < 1e-12);
    }

    #[test]
    fn singlet_is_flagged_entangled() {
        let t = pauli_triple();
        let report = expectation_witness(&t, &singlet()).unwrap();
        assert_eq!(report.verdict, Verdict::Entangled);
        assert!((report.expectation_abs - 3.0).abs() < 1e-12);
        assert!((report.second_moment - 9.0).abs() < 1e-12);
        assert!(report.variance.abs() < 1e-12);
        assert!(report.involutive);
    }

    #[test]
    fn aligned_and_mixed_states_are_inconclusive() {
        let t = pauli_triple();
        let zero_zero = QuantumState::basis(4, 0);
        let report = expectation_witness(&t, &zero_zero).unwrap();
        assert_eq!(report.verdict, Verdict::Inconclusive);
        assert!((report.expectation_abs - 1.0).abs() < 1e-12);

        let mixed = QuantumState::maximally_mixed(4);
        let report = expectation_witness(&t, &mixed).unwrap();
        assert_eq!(report.verdict, Verdict::Inconclusive);
        assert!(report.expectation_abs < 1e-12);
        assert!((report.second_moment - 3.0).abs() < 1e-12);
    }

    #[test]
    fn non_involutive_triples_are_refused() {
        let t = pauli_triple();
        let doubled = t.map(|_, m| m.scale_re(2.0)).unwrap();
        let err = expectation_witness(&doubled, &singlet()).unwrap_err();
        assert!(matches!(err, WitnessError::InvolutionRequired { .. }));
    }

    #[test]
    fn pauli_floor_is_zero_at_aligned_states() {
        let t = pauli_triple();
        let config = FloorConfig {
            restarts: 8,
            seed: 3,
            ..FloorConfig::default()
        };
        let floor = estimate_variance_floor(&t, &config).unwrap();
        assert!(floor.c <= 1e-9, "floor {}", floor.c);

        // The argmin is an aligned product pair: Bloch vectors coincide.
        let sigma = pauli_matrices();
        let mut dot = 0.0;
        for s in &sigma {
            dot += floor.argmin_mu.expectation_re(s).unwrap()
                * floor.argmin_nu.expectation_re(s).unwrap();
        }
        assert!(dot > 1.0 - 1e-6, "Bloch alignment {dot}");

        // And it sits at the eigenvalue-1 eigenstate of R.
        let joint = floor.argmin_mu.product(&floor.argmin_nu);
        let e = joint.expectation_re(t.build_r().matrix()).unwrap();
        assert!((e - 1.0).abs() < 1e-6);

        let oracle = bloch_grid_floor(&t).unwrap();
        assert!(oracle <= 1e-9, "grid oracle {oracle}");
    }

    #[test]
    fn commuting_triple_floor_is_zero() {
        let [_, _, sz] = pauli_matrices();
        let t = ObservableTriple::from_matrices([sz.clone(), sz.clone(), sz]).unwrap();
        let config = FloorConfig {
            restarts: 6,
            seed: 11,
            ..FloorConfig::default()
        };
        let floor = estimate_variance_floor(&t, &config).unwrap();
        assert!(floor.c <= 1e-9, "floor {}", floor.c);
    }

    #[test]
    fn estimator_agrees_with_grid_oracle() {
        let cfg = SampleConfig::new(41, 2).unwrap();
        let t = random_involutive_triple(&cfg);
        let floor = estimate_variance_floor(
            &t,
            &FloorConfig {
                restarts: 24,
                seed: 5,
                ..FloorConfig::default()
            },
        )
        .unwrap();
        let oracle = bloch_grid_floor(&t).unwrap();
        assert!(
            (floor.c - oracle).abs() < tol::GRID_AGREEMENT,
            "estimator {} vs oracle {}",
            floor.c,
            oracle
        );
    }

    #[test]
    fn variance_witness_flags_low_variance_eigenstates() {
        // Find an involutive qubit triple with a strictly positive floor and
        // feed it an entangled eigenvector of R.
        let cfg = SampleConfig::new(41, 2).unwrap();
        let t = random_involutive_triple(&cfg);
        let floor = estimate_variance_floor(
            &t,
            &FloorConfig {
                restarts: 24,
                seed: 5,
                ..FloorConfig::default()
            },
        )
        .unwrap();
        assert!(floor.c > 1e-3, "fixture needs a positive floor, got {}", floor.c);

        let eig = t.build_r().eig().unwrap();
        let top = QuantumState::pure_normalized(
            (0..4).map(|i| eig.vectors.get(i, 3)).collect(),
        )
        .unwrap();
        let report = variance_witness(&t, &top, &floor).unwrap();
        assert_eq!(report.verdict, Verdict::Entangled);
        assert!(report.variance < 1e-9);

        // The argmin product state itself sits exactly on the boundary.
        let boundary = floor.argmin_mu.product(&floor.argmin_nu);
        let report = variance_witness(&t, &boundary, &floor).unwrap();
        assert_eq!(report.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn zero_floor_flags_nothing() {
        // With c = 0 no state can sit below the floor, not even a maximally
        // entangled one; the expectation route is the useful test there.
        let t = pauli_triple();
        let floor = estimate_variance_floor(
            &t,
            &FloorConfig {
                restarts: 8,
                seed: 3,
                ..FloorConfig::default()
            },
        )
        .unwrap();
        assert!(floor.c <= 1e-9);
        let report = variance_witness(&t, &singlet(), &floor).unwrap();
        assert_eq!(report.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn floor_is_stable_across_restart_counts() {
        let cfg = SampleConfig::new(23, 2).unwrap();
        let t = random_involutive_triple(&cfg);
        let few = estimate_variance_floor(
            &t,
            &FloorConfig {
                restarts: 32,
                seed: 17,
                ..FloorConfig::default()
            },
        )
        .unwrap();
        let many = estimate_variance_floor(
            &t,
            &FloorConfig {
                restarts: 256,
                seed: 18,
                ..FloorConfig::default()
            },
        )
        .unwrap();
        assert!(
            (few.c - many.c).abs() < 1e-6,
            "32 restarts: {}, 256 restarts: {}",
            few.c,
            many.c
        );
    }

    #[test]
    fn floor_fingerprint_is_enforced() {
        let t = pauli_triple();
        let config = FloorConfig {
            restarts: 2,
            seed: 1,
            ..FloorConfig::default()
        };
        let floor = estimate_variance_floor(&t, &config).unwrap();
        let other = t.map(|_, m| m.scale_re(-1.0)).unwrap();
        let err = variance_witness(&other, &singlet(), &floor).unwrap_err();
        assert!(matches!(err, WitnessError::FloorMismatch { .. }));
    }

    #[test]
    fn floor_config_is_validated() {
        let t = pauli_triple();
        let bad = FloorConfig {
            restarts: 0,
            ..FloorConfig::default()
        };
        assert!(matches!(
            estimate_variance_floor(&t, &bad),
            Err(WitnessError::ConfigInvalid { .. })
        ));
    }

    #[test]
    fn mixture_audit_single_component_is_tight() {
        let t = pauli_triple();
        let mu = QuantumState::basis(2, 0);
        let nu = QuantumState::basis(2, 1);
        let (lhs, rhs) = separable_mixture_audit(&[(1.0, mu, nu)], &t).unwrap();
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn mixture_audit_aligned_pair() {
        // |00> and |11> are both eigenvalue-1 eigenstates of R, so the global
        // variance and the component average are both zero.
        let t = pauli_triple();
        let components = vec![
            (0.5, QuantumState::basis(2, 0), QuantumState::basis(2, 0)),
            (0.5, QuantumState::basis(2, 1), QuantumState::basis(2, 1)),
        ];
        let (lhs, rhs) = separable_mixture_audit(&components, &t).unwrap();
        assert!(lhs.abs() < 1e-12);
        assert!(rhs.abs() < 1e-12);
        assert!(lhs >= rhs - 1e-9);
    }

    #[test]
    fn mixture_audit_validates_weights() {
        let t = pauli_triple();
        let mu = QuantumState::basis(2, 0);
        let nu = QuantumState::basis(2, 0);
        let err =
            separable_mixture_audit(&[(0.7, mu.clone(), nu.clone())], &t).unwrap_err();
        assert!(matches!(err, WitnessError::WeightInvalid { .. }));
        let err = separable_mixture_audit(
            &[(1.5, mu.clone(), nu.clone()), (-0.5, mu, nu)],
            &t,
        )
        .unwrap_err();
        assert!(matches!(err, WitnessError::WeightInvalid { .. }));
    }

    #[test]
    fn angle_round_trip() {
        let mut rng = SampleConfig::new(99, 4).unwrap().rng();
        for _ in 0..20 {
            let state = haar_pure_with(&mut rng, 4);
            let angles = angles_from_state(&state);
            assert_eq!(angles.len(), 6);
            let rebuilt = amplitudes_from_angles(&angles);
            // Equal up to the fixed global phase.
            let original = state.amplitudes().unwrap();
            let overlap: Complex64 = original
                .iter()
                .zip(&rebuilt)
                .map(|(a, b)| a.conj() * b)
                .sum();
            assert!((overlap.norm() - 1.0).abs() < 1e-10);
        }
    }
}
