//! On-disk formats: structured JSON documents for matrices, states, triples,
//! floor estimates and witness verdicts. Complex numbers are `[re, im]`
//! pairs, matrices row-major, floats at 17 significant digits.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::ComplexMatrix;
use crate::report::to_json;
use crate::state::QuantumState;
use crate::triple::ObservableTriple;
use crate::witness::{FloorEstimate, Verdict, WitnessMethod, WitnessReport};

#[derive(Debug, Error)]
pub enum FileError {
    #[error("{path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: String,
        source: serde_json::Error,
    },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
enum MatrixTag {
    #[serde(rename = "matrix")]
    Matrix,
}

/// A square complex matrix: `{"dim": d, "kind": "matrix", "entries": [[re, im], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub dim: usize,
    kind: MatrixTag,
    pub entries: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
enum StateTag {
    #[serde(rename = "pure")]
    Pure,
    #[serde(rename = "mixed")]
    Mixed,
}

/// A state: `kind` is `"pure"` (entries = dim amplitudes) or `"mixed"`
/// (entries = dim^2 density entries, row-major).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateDoc {
    pub dim: usize,
    kind: StateTag,
    pub entries: Vec<[f64; 2]>,
}

/// A floor estimate with its argmin states and the fingerprint of the triple
/// it was computed for.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FloorDoc {
    pub c: f64,
    pub argmin_mu: StateDoc,
    pub argmin_nu: StateDoc,
    pub restarts: usize,
    pub converged: bool,
    pub triple_fingerprint: String,
    /// Bloch-grid oracle value, present when the estimate was cross-checked.
    pub grid_check: Option<f64>,
}

/// Witness verdict plus all intermediate moments.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessDoc {
    pub verdict: String,
    pub method: String,
    pub expectation_abs: f64,
    pub second_moment: f64,
    pub variance: f64,
    pub threshold_used: f64,
    pub involutive: bool,
}

fn pack(z: &Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn unpack(pair: [f64; 2]) -> Complex64 {
    Complex64::new(pair[0], pair[1])
}

pub fn matrix_to_doc(m: &ComplexMatrix) -> MatrixDoc {
    MatrixDoc {
        dim: m.dim(),
        kind: MatrixTag::Matrix,
        entries: m.entries().iter().map(pack).collect(),
    }
}

pub fn doc_to_matrix(doc: &MatrixDoc) -> Result<ComplexMatrix, String> {
    ComplexMatrix::new(doc.dim, doc.entries.iter().map(|&p| unpack(p)).collect())
        .map_err(|e| e.to_string())
}

pub fn state_to_doc(state: &QuantumState) -> StateDoc {
    match state.amplitudes() {
        Some(amps) => StateDoc {
            dim: state.dim(),
            kind: StateTag::Pure,
            entries: amps.iter().map(pack).collect(),
        },
        None => StateDoc {
            dim: state.dim(),
            kind: StateTag::Mixed,
            entries: state.density_matrix().entries().iter().map(pack).collect(),
        },
    }
}

pub fn doc_to_state(doc: &StateDoc) -> Result<QuantumState, String> {
    match doc.kind {
        StateTag::Pure => {
            if doc.entries.len() != doc.dim {
                return Err(format!(
                    "field 'entries': expected {} amplitudes, got {}",
                    doc.dim,
                    doc.entries.len()
                ));
            }
            QuantumState::pure(doc.entries.iter().map(|&p| unpack(p)).collect())
                .map_err(|e| e.to_string())
        }
        StateTag::Mixed => {
            let density =
                ComplexMatrix::new(doc.dim, doc.entries.iter().map(|&p| unpack(p)).collect())
                    .map_err(|e| e.to_string())?;
            QuantumState::mixed(density).map_err(|e| e.to_string())
        }
    }
}

pub fn triple_to_docs(t: &ObservableTriple) -> Vec<MatrixDoc> {
    t.as_array()
        .iter()
        .map(|obs| matrix_to_doc(obs.matrix()))
        .collect()
}

pub fn docs_to_triple(docs: &[MatrixDoc]) -> Result<ObservableTriple, String> {
    if docs.len() != 3 {
        return Err(format!("a triple needs exactly 3 matrices, got {}", docs.len()));
    }
    let a = doc_to_matrix(&docs[0]).map_err(|e| format!("matrix 1: {e}"))?;
    let b = doc_to_matrix(&docs[1]).map_err(|e| format!("matrix 2: {e}"))?;
    let c = doc_to_matrix(&docs[2]).map_err(|e| format!("matrix 3: {e}"))?;
    ObservableTriple::from_matrices([a, b, c]).map_err(|e| e.to_string())
}

pub fn floor_to_doc(floor: &FloorEstimate, grid_check: Option<f64>) -> FloorDoc {
    FloorDoc {
        c: floor.c,
        argmin_mu: state_to_doc(&floor.argmin_mu),
        argmin_nu: state_to_doc(&floor.argmin_nu),
        restarts: floor.restarts,
        converged: floor.converged,
        triple_fingerprint: format!("{:016x}", floor.fingerprint),
        grid_check,
    }
}

pub fn doc_to_floor(doc: &FloorDoc) -> Result<FloorEstimate, String> {
    let fingerprint = u64::from_str_radix(&doc.triple_fingerprint, 16)
        .map_err(|e| format!("field 'triple_fingerprint': {e}"))?;
    Ok(FloorEstimate {
        c: doc.c,
        argmin_mu: doc_to_state(&doc.argmin_mu).map_err(|e| format!("argmin_mu: {e}"))?,
        argmin_nu: doc_to_state(&doc.argmin_nu).map_err(|e| format!("argmin_nu: {e}"))?,
        restarts: doc.restarts,
        converged: doc.converged,
        fingerprint,
    })
}

pub fn witness_to_doc(report: &WitnessReport) -> WitnessDoc {
    WitnessDoc {
        verdict: match report.verdict {
            Verdict::Entangled => "entangled".into(),
            Verdict::Inconclusive => "inconclusive".into(),
        },
        method: match report.method {
            WitnessMethod::ExpectationThreshold => "expectation_threshold".into(),
            WitnessMethod::VarianceFloor => "variance_floor".into(),
        },
        expectation_abs: report.expectation_abs,
        second_moment: report.second_moment,
        variance: report.variance,
        threshold_used: report.threshold_used,
        involutive: report.involutive,
    }
}

fn read_to_string(path: &Path) -> Result<String, FileError> {
    std::fs::read_to_string(path).map_err(|source| FileError::Read {
        path: path.display().to_string(),
        source,
    })
}

fn parse<T: for<'de> Deserialize<'de>>(path: &Path, text: &str) -> Result<T, FileError> {
    serde_json::from_str(text).map_err(|source| FileError::Parse {
        path: path.display().to_string(),
        source,
    })
}

fn invalid(path: &Path, message: String) -> FileError {
    FileError::Invalid {
        path: path.display().to_string(),
        message,
    }
}

pub fn load_matrix(path: &Path) -> Result<ComplexMatrix, FileError> {
    let doc: MatrixDoc = parse(path, &read_to_string(path)?)?;
    doc_to_matrix(&doc).map_err(|m| invalid(path, m))
}

pub fn load_state(path: &Path) -> Result<QuantumState, FileError> {
    let doc: StateDoc = parse(path, &read_to_string(path)?)?;
    doc_to_state(&doc).map_err(|m| invalid(path, m))
}

/// A triple file is a JSON array of three matrix documents.
pub fn load_triple(path: &Path) -> Result<ObservableTriple, FileError> {
    let docs: Vec<MatrixDoc> = parse(path, &read_to_string(path)?)?;
    docs_to_triple(&docs).map_err(|m| invalid(path, m))
}

pub fn load_floor(path: &Path) -> Result<FloorEstimate, FileError> {
    let doc: FloorDoc = parse(path, &read_to_string(path)?)?;
    doc_to_floor(&doc).map_err(|m| invalid(path, m))
}

pub fn save_json(path: &Path, value: &impl Serialize) -> Result<(), FileError> {
    std::fs::write(path, to_json(value) + "\n").map_err(|source| FileError::Write {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::pauli_triple;
    use crate::witness::{estimate_variance_floor, FloorConfig};

    #[test]
    fn matrix_docs_round_trip() {
        let t = pauli_triple();
        let doc = matrix_to_doc(t.h(2).matrix());
        let json = to_json(&doc);
        let parsed: MatrixDoc = serde_json::from_str(&json).unwrap();
        let rebuilt = doc_to_matrix(&parsed).unwrap();
        assert_eq!(&rebuilt, t.h(2).matrix());
    }

    #[test]
    fn state_docs_round_trip_both_kinds() {
        let pure = QuantumState::basis(2, 1);
        let rebuilt = doc_to_state(&state_to_doc(&pure)).unwrap();
        assert_eq!(rebuilt, pure);

        let mixed = QuantumState::maximally_mixed(3);
        let rebuilt = doc_to_state(&state_to_doc(&mixed)).unwrap();
        assert_eq!(rebuilt, mixed);
    }

    #[test]
    fn triple_docs_round_trip() {
        let t = pauli_triple();
        let docs = triple_to_docs(&t);
        let rebuilt = docs_to_triple(&docs).unwrap();
        assert_eq!(rebuilt.fingerprint(), t.fingerprint());
    }

    #[test]
    fn floor_docs_round_trip() {
        let t = pauli_triple();
        let floor = estimate_variance_floor(
            &t,
            &FloorConfig {
                restarts: 2,
                seed: 1,
                ..FloorConfig::default()
            },
        )
        .unwrap();
        let doc = floor_to_doc(&floor, Some(0.0));
        let json = to_json(&doc);
        let parsed: FloorDoc = serde_json::from_str(&json).unwrap();
        let rebuilt = doc_to_floor(&parsed).unwrap();
        assert_eq!(rebuilt.fingerprint, floor.fingerprint);
        assert_eq!(rebuilt.c, floor.c);
        assert_eq!(rebuilt.argmin_mu, floor.argmin_mu);
    }

    #[test]
    fn malformed_documents_are_rejected() {
        let bad: Result<MatrixDoc, _> = serde_json::from_str("{\"dim\": 2}");
        assert!(bad.is_err());

        let wrong_kind: Result<MatrixDoc, _> =
            serde_json::from_str("{\"dim\": 1, \"kind\": \"pure\", \"entries\": [[1.0, 0.0]]}");
        assert!(wrong_kind.is_err());

        // Valid JSON, invalid payload: non-unit pure vector.
        let doc: StateDoc = serde_json::from_str(
            "{\"dim\": 2, \"kind\": \"pure\", \"entries\": [[1.0, 0.0], [1.0, 0.0]]}",
        )
        .unwrap();
        assert!(doc_to_state(&doc).is_err());
    }
}
