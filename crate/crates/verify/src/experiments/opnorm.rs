//! Operator-norm desk checks: uniform `L_1` size of `K_n^tri` and the
//! `H_p -> L_p` ratios of `sigma_n^tri` on seeded test functions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use trifejer_core::hardy::{hp_quasinorm, make_atom, AtomProfile};
use trifejer_core::measure::lp_quasinorm;
use trifejer_core::operators::{
    fourier_coefficients, synthesize, triangular_kernel_l1_norm, TriangularMultiplier,
};
use trifejer_core::{Field, Rational, Resolution, Scalar, StepFunction2D};

use super::{exact_status, verdict_row, verdict_status, Result};
use crate::config::{ExperimentConfig, Mode};
use crate::report::ReportRow;
use crate::sampling::sample_range;
use crate::verdict::judge;

pub const DEFAULT_RESOLUTION: u32 = 9;
pub const DEFAULT_P: [f64; 4] = [0.85, 0.9, 0.95, 1.0];
/// Largest allowed ratio between the per-block maxima of `||K_n^tri||_1`.
pub const BLOCK_VARIATION: f64 = 2.0;
/// Blocks `[2^N, 2^{N+1})` below this level are too short to compare.
pub const FIRST_BLOCK: u32 = 3;

fn order(n: usize) -> u32 {
    usize::BITS - 1 - n.leading_zeros()
}

fn kernel_norms(m: u32) -> Result<Vec<ReportRow>> {
    let top = 1usize << m;
    let norms = (1..=top)
        .into_par_iter()
        .map(triangular_kernel_l1_norm)
        .collect::<trifejer_core::Result<Vec<Rational>>>()?;
    let mut rows = Vec::new();
    let mut lower_ok = true;
    let mut block_max: Vec<(u32, f64, usize)> = Vec::new();
    for (i, norm) in norms.iter().enumerate() {
        let n = i + 1;
        // |int K_n| = (n - 1)/n
        let mean = Rational::new((n as i64 - 1).into(), (n as i64).into());
        lower_ok &= *norm >= mean;
        let v = norm.to_f64();
        let level = order(n);
        rows.push(ReportRow::new("opnorm:kernel-l1", v, 1.0, "exact").level(level).n(n));
        if level >= FIRST_BLOCK && (n << 1) <= (top << 1) && level < m {
            match block_max.last_mut() {
                Some(b) if b.0 == level => {
                    if v > b.1 {
                        b.1 = v;
                        b.2 = n;
                    }
                }
                _ => block_max.push((level, v, n)),
            }
        }
    }
    rows.push(ReportRow::new(
        "opnorm:kernel-l1-lower-bound",
        top as f64,
        1.0,
        exact_status(lower_ok, || "||K_n||_1 < (n-1)/n".into()),
    ));
    for &(level, v, n) in &block_max {
        rows.push(ReportRow::new("opnorm:kernel-l1-block-max", v, 1.0, "exact").level(level).n(n));
    }
    if !block_max.is_empty() {
        let hi = block_max.iter().map(|b| b.1).fold(f64::NEG_INFINITY, f64::max);
        let lo = block_max.iter().map(|b| b.1).fold(f64::INFINITY, f64::min);
        let ok = hi <= BLOCK_VARIATION * lo;
        rows.push(ReportRow::new(
            "opnorm:kernel-l1:verdict",
            hi,
            lo,
            exact_status(ok, || format!("block maxima vary by {:.4}", hi / lo)),
        ));
    }
    Ok(rows)
}

/// Seeded atoms at levels 1..3 and two seeded zero-mean functions.
fn test_functions<S: Field>(res: Resolution, p: f64, seed: u64) -> Result<Vec<StepFunction2D<S>>> {
    let m = res.levels();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0b5);
    let mut out = Vec::new();
    for level in 1..=3u32.min(m.saturating_sub(1)) {
        for profile in [AtomProfile::HaarSplit, AtomProfile::SeededRandom(rng.gen())] {
            let (u, v) = (rng.gen_range(0..res.cells()), rng.gen_range(0..res.cells()));
            out.push(make_atom::<S>(p, level, u, v, res, profile)?.payload);
        }
    }
    for _ in 0..2 {
        let raw: Vec<i64> = (0..res.cells() * res.cells()).map(|_| rng.gen_range(-1000..=1000)).collect();
        let count = raw.len() as i64;
        let sum: i64 = raw.iter().sum();
        let f = StepFunction2D::new(res, raw.iter().map(|r| S::from_i64(count * r - sum)).collect())?;
        out.push(f);
    }
    Ok(out)
}

fn hp_ratios<S: Field>(cfg: &ExperimentConfig, m: u32, ps: &[f64], label: &str) -> Result<Vec<ReportRow>> {
    let res = Resolution::new(m)?;
    let mut ns = Vec::new();
    for level in 1..=m {
        let hi = ((1usize << (level + 1)) - 1).min(1 << m);
        ns.extend(sample_range(1 << level, hi, cfg.sampling, cfg.samples, cfg.seed, 0x400 + level as u64));
    }
    let mut rows = Vec::new();
    for &p in ps {
        let fs = test_functions::<S>(res, p, cfg.seed)?;
        // per level: (max ratio, n)
        let mut best: Vec<(u32, f64, usize)> = (1..=m).map(|l| (l, 0.0, 1usize << l)).collect();
        for f in &fs {
            let hp = hp_quasinorm(f, p)?;
            let spectrum = fourier_coefficients(f);
            let ratios = ns
                .par_iter()
                .map(|&n| {
                    let mult = TriangularMultiplier::new(n)?;
                    let s = synthesize(&spectrum.scale_by(|i, j| mult.value(i, j)));
                    Ok(lp_quasinorm(&s, p)? / hp)
                })
                .collect::<trifejer_core::Result<Vec<f64>>>()?;
            for (&n, r) in ns.iter().zip(ratios) {
                let b = &mut best[order(n) as usize - 1];
                if r > b.1 {
                    b.1 = r;
                    b.2 = n;
                }
            }
        }
        let status = if label == "exact" && p == 1.0 { "exact" } else { "float" };
        let mut points = Vec::new();
        for &(level, r, n) in &best {
            rows.push(ReportRow::new("opnorm:hp-lp", r, 1.0, status).p(p).level(level).n(n));
            points.push((level, r));
        }
        let v = judge(&points, cfg.factor);
        let st = verdict_status(status, &v, p <= 0.8);
        rows.push(verdict_row("opnorm:hp-lp", &v, st).p(p));
    }
    Ok(rows)
}

pub fn run(cfg: &ExperimentConfig) -> Result<Vec<ReportRow>> {
    let m = cfg.resolution_or(DEFAULT_RESOLUTION)?;
    let ps: Vec<f64> = cfg
        .p_grid_or(&DEFAULT_P)?
        .into_iter()
        .filter(|&p| cfg.exploratory || p > 0.8)
        .collect();
    let mut rows = kernel_norms(m)?;
    if m >= 2 && !ps.is_empty() {
        let mode = cfg.mode_for(m);
        rows.extend(match mode {
            Mode::Exact => hp_ratios::<Rational>(cfg, m, &ps, mode.label())?,
            Mode::Float => hp_ratios::<f64>(cfg, m, &ps, mode.label())?,
        });
    }
    Ok(rows)
}
