//! Verification campaigns: fuzz suites over random (triple, state) pairs and
//! the end-to-end example reproduction.

use std::time::Instant;

use num_complex::Complex64;
use rand::Rng;
use thiserror::Error;

use crate::eigen::eig_hermitian;
use crate::matrix::MatrixError;
use crate::pauli::pauli_triple;
use crate::report::{
    ExampleCheck, ExampleReport, RunReport, SaturationRow, SuiteSummary, TrialRow,
};
use crate::sampling::{
    ginibre_with, haar_pure_with, random_triple_with, SampleConfig, SampleError,
};
use crate::saturation::{appendix_state, saturating_partner, SignPattern};
use crate::state::QuantumState;
use crate::tol;
use crate::uncertainty::{audit_triple, UncertaintyError};
use crate::witness::{
    expectation_witness, r_moments, separable_expectation_threshold, Verdict, WitnessError,
};

#[derive(Debug, Error)]
pub enum CampaignError {
    #[error("dimension {dim} rejected: commutators vanish identically, the campaign is vacuous")]
    VacuousDimension { dim: usize },
    #[error("dimension {dim} outside the supported range 2..=8")]
    DimensionOutOfRange { dim: usize },
    #[error(transparent)]
    Sample(#[from] SampleError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Uncertainty(#[from] UncertaintyError),
    #[error(transparent)]
    Witness(#[from] WitnessError),
}

/// The four fuzz suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Sum-form slack >= -1e-9 on random (triple, state) pairs.
    SumForm,
    /// Product-form slack >= -1e-9.
    ProdForm,
    /// ||R^2 - expansion|| <= 1e-10 (1 + ||R||^2).
    RSquared,
    /// var(R) >= -1e-9 on random composite states.
    Schwarz,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::SumForm => "sumform",
            Suite::ProdForm => "prodform",
            Suite::RSquared => "rsq",
            Suite::Schwarz => "schwarz",
        }
    }

    /// Slack floor a trial must clear.
    pub fn tolerance(self) -> f64 {
        match self {
            Suite::RSquared => 0.0,
            _ => -tol::EQUALITY,
        }
    }
}

/// What `verify` runs: one suite or all of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteSelection {
    One(Suite),
    All,
}

impl SuiteSelection {
    pub fn suites(self) -> Vec<Suite> {
        match self {
            SuiteSelection::One(s) => vec![s],
            SuiteSelection::All => vec![
                Suite::SumForm,
                Suite::ProdForm,
                Suite::RSquared,
                Suite::Schwarz,
            ],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SuiteSelection::One(s) => s.name(),
            SuiteSelection::All => "all",
        }
    }
}

impl std::str::FromStr for SuiteSelection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sumform" => Ok(Self::One(Suite::SumForm)),
            "prodform" => Ok(Self::One(Suite::ProdForm)),
            "rsq" => Ok(Self::One(Suite::RSquared)),
            "schwarz" => Ok(Self::One(Suite::Schwarz)),
            "all" => Ok(Self::All),
            other => Err(format!(
                "unknown suite '{other}' (expected sumform, prodform, rsq, schwarz or all)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub suite: SuiteSelection,
    pub dim: usize,
    pub trials: u64,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct VerifyOutcome {
    pub report: RunReport,
    pub rows: Vec<TrialRow>,
}

/// Draw a state for the subsystem: pure and mixed in equal proportion,
/// mixed ranks uniform in 1..=dim.
fn random_state_with(rng: &mut rand_chacha::ChaCha8Rng, dim: usize) -> QuantumState {
    if rng.gen_bool(0.5) {
        haar_pure_with(rng, dim)
    } else {
        let rank = rng.gen_range(1..=dim);
        ginibre_with(rng, dim, rank)
    }
}

fn run_trial(suite: Suite, rng: &mut rand_chacha::ChaCha8Rng, dim: usize) -> Result<f64, CampaignError> {
    match suite {
        Suite::SumForm | Suite::ProdForm => {
            let t = random_triple_with(rng, dim, 1.0);
            let state = random_state_with(rng, dim);
            let audit = audit_triple(&t, &state)?;
            Ok(match suite {
                Suite::SumForm => audit.slack_sum,
                _ => audit.slack_prod,
            })
        }
        Suite::RSquared => {
            let t = random_triple_with(rng, dim, 1.0);
            let r = t.build_r();
            let direct = r.matrix().matmul(r.matrix());
            let residual = direct.sub(t.r_squared_expansion().matrix()).frobenius_norm();
            let r_norm = r.operator_norm()?;
            let limit = tol::EXPANSION_IDENTITY * (1.0 + r_norm * r_norm);
            Ok(limit - residual)
        }
        Suite::Schwarz => {
            let t = random_triple_with(rng, dim, 1.0);
            let state = random_state_with(rng, 2 * dim);
            Ok(r_moments(&t, &state)?.variance)
        }
    }
}

/// Run a verification campaign. Exit semantics live with the caller:
/// zero failures means success.
pub fn run_verify(config: &VerifyConfig) -> Result<VerifyOutcome, CampaignError> {
    if config.dim <= 1 {
        return Err(CampaignError::VacuousDimension { dim: config.dim });
    }
    if config.dim > 8 {
        return Err(CampaignError::DimensionOutOfRange { dim: config.dim });
    }

    let started = Instant::now();
    let base = SampleConfig::new(config.seed, config.dim)?;
    let suites = config.suite.suites();

    let mut rows = Vec::with_capacity(suites.len() * config.trials as usize);
    let mut summaries = Vec::with_capacity(suites.len());
    for (suite_index, &suite) in suites.iter().enumerate() {
        let mut passes = 0u64;
        let mut worst: Option<f64> = None;
        for trial in 0..config.trials {
            let stream = ((suite_index as u64) << 32) | trial;
            let trial_cfg = base.split(stream);
            let mut rng = trial_cfg.rng();
            let slack = run_trial(suite, &mut rng, config.dim)?;
            let pass = slack >= suite.tolerance();
            if pass {
                passes += 1;
            }
            worst = Some(match worst {
                None => slack,
                Some(w) => w.min(slack),
            });
            rows.push(TrialRow {
                suite: suite.name().into(),
                trial,
                dim: config.dim,
                seed: trial_cfg.seed(),
                slack,
                pass,
            });
        }
        summaries.push(SuiteSummary {
            suite: suite.name().into(),
            trials: config.trials,
            passes,
            failures: config.trials - passes,
            worst_slack: worst,
            tolerance: suite.tolerance(),
        });
    }

    let trials: u64 = summaries.iter().map(|s| s.trials).sum();
    let passes: u64 = summaries.iter().map(|s| s.passes).sum();
    let report = RunReport {
        command: format!(
            "verify --suite {} --dim {} --trials {} --seed {}",
            config.suite.name(),
            config.dim,
            config.trials,
            config.seed
        ),
        seed: config.seed,
        dim: config.dim,
        trials,
        passes,
        failures: trials - passes,
        suites: summaries,
        wall_time_ms: started.elapsed().as_secs_f64() * 1e3,
    };
    Ok(VerifyOutcome { report, rows })
}

/// The two-qubit singlet (|01> - |10>) / sqrt(2).
pub fn singlet_state() -> QuantumState {
    let inv = 1.0 / 2.0_f64.sqrt();
    QuantumState::pure(vec![
        Complex64::new(0.0, 0.0),
        Complex64::new(-inv, 0.0),
        Complex64::new(inv, 0.0),
        Complex64::new(0.0, 0.0),
    ])
    .expect("unit norm")
}

/// Recompute the whole worked example for H_j = sigma_j: the spectrum of
/// R^2, the singlet expectation, the separable threshold, the verdicts and
/// the eight-state saturation audit.
pub fn run_example() -> Result<ExampleReport, CampaignError> {
    let started = Instant::now();
    let t = pauli_triple();
    let r = t.build_r();

    let r2 = r.matrix().matmul(r.matrix()).hermitized();
    let eig = eig_hermitian(&r2)?;
    let max_eigenvalue = *eig.values.last().expect("4x4 spectrum");
    let top_column = eig.values.len() - 1;

    let singlet = singlet_state();
    let singlet_amps = singlet.amplitudes().expect("pure");
    let overlap: Complex64 = (0..4)
        .map(|i| eig.vectors.get(i, top_column).conj() * singlet_amps[i])
        .sum();
    let singlet_overlap = overlap.norm();

    let moments = r_moments(&t, &singlet)?;
    let singlet_expectation_abs = moments.expectation.abs();
    let threshold = separable_expectation_threshold();

    let singlet_verdict = expectation_witness(&t, &singlet)?.verdict;
    let aligned_verdict = expectation_witness(&t, &QuantumState::basis(4, 0))?.verdict;
    let mixed_verdict = expectation_witness(&t, &QuantumState::maximally_mixed(4))?.verdict;

    let mut saturation = Vec::with_capacity(8);
    let mut saturation_ok = true;
    for pattern in SignPattern::all() {
        let mu = appendix_state(pattern);
        let audit = audit_triple(&t, &mu)?;
        let partner = saturating_partner(&t, &mu)?;
        let gap = (partner.achieved - partner.target).abs();
        saturation_ok &= audit.slack_sum.abs() <= tol::EQUALITY
            && audit.slack_prod.abs() <= tol::EQUALITY
            && gap <= tol::EQUALITY;
        saturation.push(SaturationRow {
            pattern: pattern.to_string(),
            slack_sum: audit.slack_sum,
            slack_prod: audit.slack_prod,
            partner_gap: gap,
        });
    }

    // Threshold digits pinned against 30-digit decimal arithmetic.
    let threshold_reference = 2.54245975683741;

    let checks = vec![
        ExampleCheck {
            name: "max eigenvalue of R^2 is 9".into(),
            pass: (max_eigenvalue - 9.0).abs() <= 1e-10,
        },
        ExampleCheck {
            name: "maximizing eigenvector is the singlet".into(),
            pass: singlet_overlap >= 1.0 - tol::EQUALITY,
        },
        ExampleCheck {
            name: "singlet expectation magnitude is 3".into(),
            pass: (singlet_expectation_abs - 3.0).abs() <= 1e-10,
        },
        ExampleCheck {
            name: "separable threshold reproduces 12 digits".into(),
            pass: (threshold - threshold_reference).abs() <= 1e-12,
        },
        ExampleCheck {
            name: "verdicts: singlet entangled, |00> and I/4 inconclusive".into(),
            pass: singlet_verdict == Verdict::Entangled
                && aligned_verdict == Verdict::Inconclusive
                && mixed_verdict == Verdict::Inconclusive,
        },
        ExampleCheck {
            name: "eight saturating states: slacks and partner gaps vanish".into(),
            pass: saturation_ok,
        },
    ];
    let all_passed = checks.iter().all(|c| c.pass);

    Ok(ExampleReport {
        max_r_squared_eigenvalue: max_eigenvalue,
        singlet_overlap,
        singlet_expectation_abs,
        separable_threshold: threshold,
        saturation,
        checks,
        all_passed,
        wall_time_ms: started.elapsed().as_secs_f64() * 1e3,
    })
}
