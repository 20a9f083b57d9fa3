//! Growth of the weighted one-dimensional families and of the
//! two-dimensional kernel sums off the support cube.

use rayon::prelude::*;
use trifejer_core::kernels::{
    alpha_kernel_sum_with, paired_sum, weighted_family, DirichletTable, WeightedKind,
};
use trifejer_core::measure::{integrate_abs_p_2d, Region};
use trifejer_core::{Rational, Resolution, Scalar, StepFunction2D};

use super::{verdict_row, verdict_status, Result};
use crate::config::ExperimentConfig;
use crate::report::ReportRow;
use crate::sampling::sample_range;
use crate::verdict::judge;

pub const DEFAULT_RESOLUTION_1D: u32 = 12;
pub const DEFAULT_RESOLUTION_2D: u32 = 8;
pub const DEFAULT_P_1D: [f64; 6] = [0.6, 0.75, 0.85, 0.9, 0.95, 1.0];
pub const DEFAULT_P_2D: [f64; 4] = [0.85, 0.9, 0.95, 1.0];

fn status(p: f64) -> &'static str {
    if p == 1.0 {
        "exact"
    } else {
        "float"
    }
}

/// `int_G |f|^p` for `f` at resolution `N`, exact at `p = 1`.
fn integral_1d(values: &[i64], p: f64) -> f64 {
    let cells = values.len() as i64;
    if p == 1.0 {
        let total: i64 = values.iter().map(|v| v.abs()).sum();
        return (Rational::from_i64(total) / Rational::from_i64(cells)).to_f64();
    }
    values.iter().map(|v| (v.abs() as f64).powf(p)).sum::<f64>() / cells as f64
}

struct Series {
    experiment: &'static str,
    p: f64,
    exploratory: bool,
    points: Vec<(u32, f64)>,
}

fn verdicts(series: Vec<Series>, factor: f64) -> Vec<ReportRow> {
    series
        .into_iter()
        .map(|s| {
            let v = judge(&s.points, factor);
            let st = verdict_status(status(s.p), &v, s.exploratory);
            verdict_row(s.experiment, &v, st).p(s.p)
        })
        .collect()
}

fn one_dimensional(cfg: &ExperimentConfig) -> Result<Vec<ReportRow>> {
    let top = cfg.resolution_1d_or(DEFAULT_RESOLUTION_1D)?;
    let default_levels: Vec<u32> = (4.min(top)..=top).collect();
    let levels = cfg.levels_or(&default_levels, top)?;
    let ps: Vec<f64> = cfg
        .p_grid_or(&DEFAULT_P_1D)?
        .into_iter()
        .filter(|&p| cfg.exploratory || p > 0.5)
        .collect();
    let kinds = [
        ("sup1", WeightedKind::Sup1, 2.0),
        ("lemma1", WeightedKind::Lemma1, 3.0),
        ("sup3", WeightedKind::Sup3, 3.0),
    ];
    let mut rows = Vec::new();
    let mut series = Vec::new();
    for (name, kind, a) in kinds {
        let envelopes = levels
            .par_iter()
            .map(|&level| weighted_family(kind, level, Resolution::new(level)?))
            .collect::<trifejer_core::Result<Vec<_>>>()?;
        for &p in &ps {
            let mut points = Vec::new();
            for (&level, env) in levels.iter().zip(&envelopes) {
                let measured = integral_1d(env.values(), p);
                let normalizer = (level as f64 * (a * p - 1.0)).exp2();
                let row = ReportRow::new(name, measured, normalizer, status(p)).p(p).level(level);
                points.push((level, row.ratio));
                rows.push(row);
            }
            series.push(Series {
                experiment: name,
                p,
                exploratory: p <= 0.5,
                points,
            });
        }
    }
    rows.extend(verdicts(series, cfg.factor));
    Ok(rows)
}

/// `sup` over the sampled indices of `int_{Ibar x Ibar} |kernel|^p`, one
/// value per `p`, with the index attaining it.
fn sup_over<F>(indices: &[usize], ps: &[f64], level: u32, kernel: F) -> Result<Vec<(f64, usize)>>
where
    F: Fn(usize) -> trifejer_core::Result<StepFunction2D<i64>> + Sync,
{
    let per_index = indices
        .par_iter()
        .map(|&i| {
            let k = kernel(i)?;
            ps.iter()
                .map(|&p| integrate_abs_p_2d(&k, Region::CompBoth(level), p))
                .collect::<trifejer_core::Result<Vec<f64>>>()
        })
        .collect::<trifejer_core::Result<Vec<_>>>()?;
    Ok((0..ps.len())
        .map(|j| {
            indices
                .iter()
                .zip(&per_index)
                .fold((f64::NEG_INFINITY, 0), |best, (&i, v)| {
                    if v[j] > best.0 {
                        (v[j], i)
                    } else {
                        best
                    }
                })
        })
        .collect())
}

fn two_dimensional(cfg: &ExperimentConfig) -> Result<Vec<ReportRow>> {
    let top = cfg.resolution_or(DEFAULT_RESOLUTION_2D)?;
    let default_levels: Vec<u32> = (3.min(top)..=top).collect();
    let levels = cfg.levels_or(&default_levels, top)?;
    let ps: Vec<f64> = cfg
        .p_grid_or(&DEFAULT_P_2D)?
        .into_iter()
        .filter(|&p| cfg.exploratory || p > 0.8)
        .collect();
    if ps.is_empty() {
        return Ok(Vec::new());
    }
    let mut rows = Vec::new();
    let mut cor1 = vec![Vec::new(); ps.len()];
    let mut cor2 = vec![Vec::new(); ps.len()];
    for &level in &levels {
        let res = Resolution::new(level)?;
        let t = 1usize << level;
        let table = DirichletTable::new(res, t)?;
        let normalizers: Vec<f64> = ps.iter().map(|p| (level as f64 * (3.0 * p - 2.0)).exp2()).collect();

        let ns = sample_range(1, t, cfg.sampling, cfg.samples, cfg.seed, 0x100 + level as u64);
        let best = sup_over(&ns, &ps, level, |n| StepFunction2D::new(res, paired_sum(n, &table)?))?;
        for (j, &(measured, n)) in best.iter().enumerate() {
            let row = ReportRow::new("cor1", measured, normalizers[j], status(ps[j])).p(ps[j]).level(level).n(n);
            cor1[j].push((level, row.ratio));
            rows.push(row);
        }

        let qs = sample_range(0, t - 1, cfg.sampling, cfg.samples, cfg.seed, 0x200 + level as u64);
        let best = sup_over(&qs, &ps, level, |q| {
            let pairs: Vec<(usize, usize)> = (q..t).map(|k| (k, k - q)).collect();
            alpha_kernel_sum_with(&pairs, &table)
        })?;
        for (j, &(measured, q)) in best.iter().enumerate() {
            let row = ReportRow::new("cor2", measured, normalizers[j], status(ps[j])).p(ps[j]).level(level).q(q);
            cor2[j].push((level, row.ratio));
            rows.push(row);
        }
    }
    let mut series = Vec::new();
    for (j, &p) in ps.iter().enumerate() {
        for (name, pts) in [("cor1", &cor1[j]), ("cor2", &cor2[j])] {
            series.push(Series {
                experiment: name,
                p,
                exploratory: p <= 0.8,
                points: pts.clone(),
            });
        }
    }
    rows.extend(verdicts(series, cfg.factor));
    Ok(rows)
}

pub fn run(cfg: &ExperimentConfig) -> Result<Vec<ReportRow>> {
    let mut rows = one_dimensional(cfg)?;
    rows.extend(two_dimensional(cfg)?);
    Ok(rows)
}
