//! Batch driver for the dyadic triangular Fejer verification scans.
//!
//! Each command turns an [`ExperimentConfig`] into report rows; verdict rows
//! carry `:PASS` or `:FAIL` in their status.

pub mod config;
pub mod experiments;
pub mod report;
pub mod sampling;
pub mod verdict;

pub use config::{ConfigError, ExperimentConfig, Mode};
pub use experiments::{atom_zero_check, lemma3_sweep, run, Command, Lemma3Sweep, VerifyError};
pub use report::{render, Format, ReportRow};
pub use sampling::SamplingPolicy;

/// True when no row records a failed verdict.
pub fn all_passed(rows: &[ReportRow]) -> bool {
    !rows.iter().any(ReportRow::is_failure)
}
