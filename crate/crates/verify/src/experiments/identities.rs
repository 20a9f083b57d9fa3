//! Exact identity families over their full index grids.

use rayon::prelude::*;
use trifejer_core::kernels::{
    dirichlet, dirichlet_closed_form_check_with, dirichlet_shift_check_with, lemma3_check,
    paley_check_with, reflection_identity_check_with, triangular_fejer_scaled, CheckReport,
    DirichletSource, KernelMethod, Lemma3Report, Lemma3Variant, TriangularScan,
};
use trifejer_core::{Resolution, StepFunction1D};

use super::{exact_status, Result};
use crate::config::{ConfigError, ExperimentConfig, Mode};
use crate::report::ReportRow;

pub const DEFAULT_RESOLUTION: u32 = 7;

fn exact_source(n: usize, res: Resolution) -> trifejer_core::Result<StepFunction1D<i64>> {
    dirichlet(n, res)
}

fn shifted_source(n: usize, res: Resolution) -> trifejer_core::Result<StepFunction1D<i64>> {
    dirichlet(n.saturating_sub(1), res)
}

/// Runs `check` over `cases` and reports the first failing case in case order.
fn family<C: Sync + std::fmt::Debug>(
    name: &str,
    cases: Vec<C>,
    check: impl Fn(&C) -> trifejer_core::Result<CheckReport> + Sync,
) -> Result<ReportRow> {
    let reports: Vec<CheckReport> = cases
        .par_iter()
        .map(&check)
        .collect::<trifejer_core::Result<_>>()?;
    let cells: usize = reports.iter().map(|r| r.cells_checked).sum();
    let first = reports
        .iter()
        .zip(&cases)
        .find_map(|(r, c)| r.mismatch.as_ref().map(|m| format!("case={c:?} {m}")));
    let status = exact_status(first.is_none(), || first.clone().unwrap_or_default());
    Ok(ReportRow::new(format!("identity:{name}"), cells as f64, 1.0, status).n(cases.len()))
}

/// Outcome of the eight-term decomposition for one variant over a whole grid.
#[derive(Debug, Clone)]
pub struct Lemma3Sweep {
    pub variant: Lemma3Variant,
    pub cases: usize,
    pub first_failure: Option<Lemma3Report>,
}

/// Every `n = 2^N q1 + q2` with `1 <= N <= min(4, L - 1)`, `1 <= q1 < 2^{L-N}`, `q2 < 2^N`.
pub fn lemma3_sweep(resolution: u32, variant: Lemma3Variant) -> trifejer_core::Result<Lemma3Sweep> {
    let res = Resolution::new(resolution)?;
    let mut cases = Vec::new();
    for level in 1..=4.min(resolution.saturating_sub(1)) {
        for q1 in 1..(1usize << (resolution - level)) {
            for q2 in 0..(1usize << level) {
                cases.push(((q1 << level) + q2, level));
            }
        }
    }
    let reports: Vec<Lemma3Report> = cases
        .par_iter()
        .map(|&(n, level)| lemma3_check(n, level, res, variant))
        .collect::<trifejer_core::Result<_>>()?;
    Ok(Lemma3Sweep {
        variant,
        cases: cases.len(),
        first_failure: reports.into_iter().find(|r| !r.passed()),
    })
}

fn lemma3_rows(resolution: u32) -> Result<Vec<ReportRow>> {
    let named = [
        ("statement", Lemma3Variant::STATEMENT),
        ("proof", Lemma3Variant::PROOF),
    ];
    let mut rows = Vec::new();
    let mut validated = Vec::new();
    for (name, variant) in named {
        let sweep = lemma3_sweep(resolution, variant)?;
        let status = match &sweep.first_failure {
            None => {
                validated.push(name);
                "exact:VALIDATES".to_string()
            }
            Some(r) => {
                let m = r.mismatch.as_ref().expect("failed report has a mismatch");
                format!(
                    "exact:REJECTED[N={} n={} x={} y={} target={} terms={:?}]",
                    r.level, r.n, m.x, m.y, m.target, m.terms
                )
            }
        };
        rows.push(
            ReportRow::new(format!("identity:lemma3:{name}"), sweep.cases as f64, 1.0, status)
                .n(sweep.cases),
        );
    }
    let status = exact_status(!validated.is_empty(), || "no index variant reproduces the paired sum".into());
    rows.push(ReportRow::new("identity:lemma3", validated.len() as f64, 1.0, status));
    Ok(rows)
}

/// DEFINITION and PAIRED constructions of `n K_n^tri` for every `n <= 2^M`.
fn triangular_routes(res: Resolution) -> Result<ReportRow> {
    let top = res.cells();
    let scan: Vec<_> = TriangularScan::new(res).collect();
    let mismatches: Vec<Option<String>> = scan
        .par_iter()
        .map(|(n, k)| {
            let paired = triangular_fejer_scaled(*n, res, KernelMethod::Paired)?;
            Ok(k.first_difference(&paired).map(|(x, y)| {
                format!(
                    "n={n} x={x} y={y} definition={} paired={}",
                    k.get(x, y),
                    paired.get(x, y)
                )
            }))
        })
        .collect::<trifejer_core::Result<_>>()?;
    let first = mismatches.into_iter().flatten().next();
    let status = exact_status(first.is_none(), || first.clone().unwrap_or_default());
    let cells = (top * top * top) as f64;
    Ok(ReportRow::new("identity:tr-kernel", cells, 1.0, status).n(top))
}

pub fn run(cfg: &ExperimentConfig) -> Result<Vec<ReportRow>> {
    let m = cfg.resolution_or(DEFAULT_RESOLUTION)?;
    if cfg.mode_for(m) != Mode::Exact && cfg.mode.is_some() {
        return Err(ConfigError::NeedsExact("identities").into());
    }
    let res = Resolution::new(m)?;
    let source: DirichletSource = if cfg.mutate {
        &shifted_source
    } else {
        &exact_source
    };
    let top = 1usize << m;
    let mut rows = Vec::new();

    rows.push(family("paley", (0..=m).collect(), |&k| {
        paley_check_with(k, res, source)
    })?);
    rows.push(family("closed-form", (0..=top).collect(), |&n| {
        dirichlet_closed_form_check_with(n, res, source)
    })?);
    let mut shift_cases = Vec::new();
    for level in 0..=m {
        for k in 0..=(1usize << level) {
            for l in 0..(1usize << (m - level)) {
                shift_cases.push((k, l, level));
            }
        }
    }
    rows.push(family("shift", shift_cases, |&(k, l, level)| {
        dirichlet_shift_check_with(k, l, level, res, source)
    })?);
    let mut reflection_cases = Vec::new();
    for level in 0..=m {
        for j in 0..=(1usize << level) {
            reflection_cases.push((j, level));
        }
    }
    rows.push(family("reflection", reflection_cases, |&(j, level)| {
        reflection_identity_check_with(j, level, res, source)
    })?);
    rows.push(triangular_routes(res)?);
    rows.extend(lemma3_rows(cfg.lemma3_resolution.min(m))?);
    Ok(rows)
}
