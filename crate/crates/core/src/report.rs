//! Campaign and example reports, serialized with every float at 17
//! significant digits so re-parsing is bit-exact and reruns diff cleanly.

use std::io;

use serde::{Deserialize, Serialize};

/// JSON formatter writing floats as `d.dddddddddddddddde[+-]exp`
/// (17 significant digits, enough to round-trip any finite f64).
struct Digits17;

impl serde_json::ser::Formatter for Digits17 {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Serialize any report to JSON with 17-significant-digit floats.
/// Panics on non-finite floats, which validated values never contain.
pub fn to_json(value: &impl Serialize) -> String {
    let mut out = Vec::new();
    let mut serializer = serde_json::Serializer::with_formatter(&mut out, Digits17);
    value
        .serialize(&mut serializer)
        .expect("report serialization cannot fail");
    String::from_utf8(out).expect("serde_json emits UTF-8")
}

/// Format one float the same way the JSON reports do.
pub fn format_f64(value: f64) -> String {
    format!("{value:.16e}")
}

/// Summary of one suite inside a verification campaign.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub suite: String,
    pub trials: u64,
    pub passes: u64,
    pub failures: u64,
    /// Smallest slack seen across trials; `None` for an empty campaign.
    pub worst_slack: Option<f64>,
    /// Slack floor a trial must clear to pass.
    pub tolerance: f64,
}

/// Self-contained record of one `verify` run: the echoed command line plus
/// seed reproduce every numeric field exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub seed: u64,
    pub dim: usize,
    pub trials: u64,
    pub passes: u64,
    pub failures: u64,
    pub suites: Vec<SuiteSummary>,
    /// Wall time; the only field excluded from determinism comparisons.
    pub wall_time_ms: f64,
}

impl RunReport {
    /// Copy with the timing field zeroed, for rerun comparisons.
    pub fn without_timing(&self) -> Self {
        Self {
            wall_time_ms: 0.0,
            ..self.clone()
        }
    }
}

/// One trial of a suite campaign; the flat row behind the CSV output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRow {
    pub suite: String,
    pub trial: u64,
    pub dim: usize,
    /// Per-trial sub-seed (stream split of the campaign seed).
    pub seed: u64,
    /// Slack for this trial; passing means slack >= tolerance.
    pub slack: f64,
    pub pass: bool,
}

pub fn trials_to_csv(rows: &[TrialRow]) -> String {
    let mut out = String::from("suite,trial,dim,seed,slack,pass\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.suite,
            row.trial,
            row.dim,
            row.seed,
            format_f64(row.slack),
            row.pass
        ));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExampleCheck {
    pub name: String,
    pub pass: bool,
}

/// Per-pattern saturation row in the example report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SaturationRow {
    pub pattern: String,
    pub slack_sum: f64,
    pub slack_prod: f64,
    /// |achieved - target| for the partner construction.
    pub partner_gap: f64,
}

/// Output of the end-to-end example run: the Pauli triple, its global
/// operator, the singlet, and the eight saturating states.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExampleReport {
    pub max_r_squared_eigenvalue: f64,
    pub singlet_overlap: f64,
    pub singlet_expectation_abs: f64,
    pub separable_threshold: f64,
    pub saturation: Vec<SaturationRow>,
    pub checks: Vec<ExampleCheck>,
    pub all_passed: bool,
    /// Excluded from determinism comparisons.
    pub wall_time_ms: f64,
}

impl ExampleReport {
    pub fn without_timing(&self) -> Self {
        Self {
            wall_time_ms: 0.0,
            ..self.clone()
        }
    }
}
