//! The five scans and the dispatch between them.

mod atoms;
mod growth;
mod identities;
mod opnorm;
mod pointwise;

use thiserror::Error;
use trifejer_core::Error as CoreError;

use crate::config::{ConfigError, ExperimentConfig};
use crate::report::ReportRow;
use crate::verdict::Verdict;

pub use atoms::atom_zero_check;
pub use identities::{lemma3_sweep, Lemma3Sweep};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("invalid configuration")]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Core(#[from] CoreError),
}

pub type Result<T> = std::result::Result<T, VerifyError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Command {
    Identities,
    Growth,
    Pointwise,
    Atoms,
    Opnorm,
    All,
}

pub fn run(command: Command, cfg: &ExperimentConfig) -> Result<Vec<ReportRow>> {
    cfg.validate()?;
    match command {
        Command::Identities => identities::run(cfg),
        Command::Growth => growth::run(cfg),
        Command::Pointwise => pointwise::run(cfg),
        Command::Atoms => atoms::run(cfg),
        Command::Opnorm => opnorm::run(cfg),
        Command::All => {
            let mut rows = Vec::new();
            for c in [
                Command::Identities,
                Command::Growth,
                Command::Pointwise,
                Command::Atoms,
                Command::Opnorm,
            ] {
                rows.extend(run(c, cfg)?);
            }
            Ok(rows)
        }
    }
}

/// `label:PASS`, `label:FAIL[...]`, or `label:EXPLORATORY` when the row may not decide.
fn verdict_status(label: &str, v: &Verdict, exploratory: bool) -> String {
    if exploratory {
        format!("{label}:EXPLORATORY")
    } else if v.pass {
        format!("{label}:PASS")
    } else {
        format!(
            "{label}:FAIL[N={} max={:.6e} median={:.6e} slope={:.4}]",
            v.argmax_level, v.max, v.median, v.slope
        )
    }
}

fn verdict_row(experiment: &str, v: &Verdict, status: String) -> ReportRow {
    let normalizer = if v.median > 0.0 { v.median } else { 1.0 };
    ReportRow::new(format!("{experiment}:verdict"), v.max, normalizer, status)
}

fn exact_status(ok: bool, witness: impl FnOnce() -> String) -> String {
    if ok {
        "exact:PASS".to_string()
    } else {
        format!("exact:FAIL[{}]", witness())
    }
}
