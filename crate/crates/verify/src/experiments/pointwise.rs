//! Pointwise bounds for the local `L_1` mass of `K_n^tri` away from the
//! support cube, evaluated on every level-`N` block.

use rayon::prelude::*;
use trifejer_core::kernels::{paired_sum, DirichletTable};
use trifejer_core::{Rational, Resolution, Scalar};

use super::{verdict_row, verdict_status, Result};
use crate::config::{ConfigError, ExperimentConfig};
use crate::report::ReportRow;
use crate::verdict::judge;

pub const DEFAULT_RESOLUTION: u32 = 7;
pub const DEFAULT_LEVELS: [u32; 3] = [2, 3, 4];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Lemma {
    /// `x` and `y` off `I_N`.
    BothOff,
    /// `x` off `I_N`, `y` on it; carries the extra `D_{2^N}(y)` term.
    XOff,
}

impl Lemma {
    fn name(self) -> &'static str {
        match self {
            Lemma::BothOff => "lemma4",
            Lemma::XOff => "lemma5",
        }
    }

    fn contains(self, bx: usize, by: usize) -> bool {
        match self {
            Lemma::BothOff => bx != 0 && by != 0,
            Lemma::XOff => bx != 0 && by == 0,
        }
    }
}

/// Orders `n = 2^N q1 + q2` with `q2 in {0, 1, 2^{N-1}, 2^N - 1}`, `q1 in {1, 2, 2^{M-N} - 1}`.
fn orders(level: u32, m: u32) -> Vec<(usize, usize, usize)> {
    let t = 1usize << level;
    let mut q1s = vec![1, 2, (1usize << (m - level)) - 1];
    let mut q2s = vec![0, 1, t / 2, t - 1];
    q1s.sort_unstable();
    q1s.dedup();
    q2s.sort_unstable();
    q2s.dedup();
    let mut out = Vec::new();
    for &q1 in &q1s {
        for &q2 in &q2s {
            out.push(((q1 << level) + q2, q1, q2));
        }
    }
    out
}

/// Empirical constant for one order: `max LHS / RHS` over blocks with a
/// positive bracket, or the first block where the bracket vanishes but the
/// mass does not.
struct Outcome {
    constant: f64,
    violation: Option<(usize, usize)>,
}

/// Bracket values on the level-`N` blocks, which are the cells at resolution `N`.
fn brackets(level: u32, q2: usize, lemma: Lemma) -> Result<Vec<i64>> {
    let res = Resolution::new(level)?;
    let t = 1usize << level;
    let table = DirichletTable::new(res, t)?;
    let l = res.cells();
    let mut out = vec![0i64; l * l];
    for bx in 0..l {
        for by in 0..l {
            if !lemma.contains(bx, by) {
                continue;
            }
            let first: i64 = (0..q2).map(|k| table.row(k)[bx] * table.row(q2 - k)[by]).sum();
            let second: i64 = (q2 + 1..=t).map(|k| table.row(k)[bx] * table.row(k - q2)[by]).sum();
            let mut b = first.abs() + second.abs();
            if lemma == Lemma::XOff {
                let s: i64 = (1..=t).map(|k| table.row(k)[bx]).sum();
                b += table.row(t)[by] * s.abs();
            }
            out[bx * l + by] = b;
        }
    }
    Ok(out)
}

fn evaluate(n: usize, q2: usize, level: u32, m: u32, lemma: Lemma) -> Result<Outcome> {
    let res = Resolution::new(m)?;
    let table = DirichletTable::new(res, n)?;
    let kernel = paired_sum(n, &table)?;
    let side = res.cells();
    let blocks = 1usize << level;
    let width = side / blocks;
    let mut mass = vec![0i64; blocks * blocks];
    for x in 0..side {
        for y in 0..side {
            mass[(x / width) * blocks + y / width] += kernel[x * side + y].abs();
        }
    }
    let rhs = brackets(level, q2, lemma)?;
    // LHS / RHS = mass 2^{3N} / (n 4^M bracket)
    let scale = Rational::from_i64(1i64 << (3 * level))
        / (Rational::from_i64(n as i64) * Rational::from_i64(1i64 << (2 * m)));
    let mut best = Rational::from_i64(0);
    let mut violation = None;
    for bx in 0..blocks {
        for by in 0..blocks {
            if !lemma.contains(bx, by) {
                continue;
            }
            let (a, b) = (mass[bx * blocks + by], rhs[bx * blocks + by]);
            if b == 0 {
                if a != 0 && violation.is_none() {
                    violation = Some((bx, by));
                }
                continue;
            }
            let r = &scale * Rational::from_i64(a) / Rational::from_i64(b);
            if r > best {
                best = r;
            }
        }
    }
    Ok(Outcome {
        constant: best.to_f64(),
        violation,
    })
}

pub fn run(cfg: &ExperimentConfig) -> Result<Vec<ReportRow>> {
    let m = cfg.resolution_or(DEFAULT_RESOLUTION)?;
    let levels = cfg.levels_or(&DEFAULT_LEVELS, m)?;
    if let Some(&top) = levels.last() {
        if top + 2 > m {
            return Err(ConfigError::Other(format!(
                "pointwise bounds need resolution at least N + 2 = {}",
                top + 2
            ))
            .into());
        }
    }
    if levels.first() == Some(&0) {
        return Err(ConfigError::Other("pointwise bounds need N >= 1".into()).into());
    }
    let mut rows = Vec::new();
    for lemma in [Lemma::BothOff, Lemma::XOff] {
        let name = lemma.name();
        let mut points = Vec::new();
        let mut implication_holds = true;
        for &level in &levels {
            let cases = orders(level, m);
            let outcomes = cases
                .par_iter()
                .map(|&(n, _, q2)| evaluate(n, q2, level, m, lemma))
                .collect::<Result<Vec<_>>>()?;
            let mut c_level = 0.0f64;
            let mut worst_n = cases[0].0;
            for (&(n, _, q2), o) in cases.iter().zip(&outcomes) {
                let st = match o.violation {
                    None => "exact".to_string(),
                    Some((bx, by)) => {
                        implication_holds = false;
                        format!("exact:FAIL[rhs=0 lhs>0 block=({bx},{by})]")
                    }
                };
                rows.push(ReportRow::new(name, o.constant, 1.0, st).level(level).n(n).q(q2));
                if o.constant > c_level {
                    c_level = o.constant;
                    worst_n = n;
                }
            }
            rows.push(ReportRow::new(format!("{name}:constant"), c_level, 1.0, "exact").level(level).n(worst_n));
            points.push((level, c_level));
        }
        let v = judge(&points, cfg.factor);
        let mut st = verdict_status("exact", &v, false);
        if !implication_holds && v.pass {
            st = "exact:FAIL[rhs=0 does not force lhs=0]".to_string();
        }
        rows.push(verdict_row(name, &v, st));
    }
    Ok(rows)
}
