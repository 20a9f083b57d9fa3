//! Quasi-locality of `sigma_n^tri` on atoms and the exact vanishing below
//! the support scale.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use trifejer_core::hardy::{make_atom, quasilocality_profile, Atom, AtomProfile, AtomRegion};
use trifejer_core::operators::{fourier_coefficients, synthesize, TriangularMultiplier};
use trifejer_core::{Field, Rational, Resolution};

use super::{exact_status, verdict_row, verdict_status, Result};
use crate::config::{ExperimentConfig, Mode};
use crate::report::ReportRow;
use crate::sampling::sample_range;
use crate::verdict::judge;

pub const DEFAULT_RESOLUTION: u32 = 8;
pub const DEFAULT_LEVELS: [u32; 3] = [2, 3, 4];
pub const DEFAULT_P: [f64; 4] = [0.85, 0.9, 0.95, 1.0];

const REGIONS: [(AtomRegion, &str); 4] = [
    (AtomRegion::CompBoth, "atoms:comp-both"),
    (AtomRegion::CompXOnly, "atoms:comp-x-only"),
    (AtomRegion::CompYOnly, "atoms:comp-y-only"),
    (AtomRegion::ComplementOfCube, "atoms:complement"),
];

/// The split atom plus two seeded ones, each on a seeded support cube.
fn atom_specs(level: u32, res: Resolution, seed: u64) -> Vec<(AtomProfile, usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (0xa70 + level as u64));
    let cells = res.cells();
    let mut specs = vec![(AtomProfile::HaarSplit, rng.gen_range(0..cells), rng.gen_range(0..cells))];
    for _ in 0..2 {
        let s = rng.gen();
        specs.push((AtomProfile::SeededRandom(s), rng.gen_range(0..cells), rng.gen_range(0..cells)));
    }
    specs
}

/// Largest `|sigma_n^tri a|` over `n < 2^N`, computed exactly; zero means the
/// mean vanishes identically for every such `n`.
pub fn atom_zero_check(atom: &Atom<Rational>) -> trifejer_core::Result<Rational> {
    let spectrum = fourier_coefficients(&atom.payload);
    let mut worst = Rational::from_integer(0.into());
    for n in 1..(1usize << atom.level) {
        let m = TriangularMultiplier::new(n)?;
        let s = synthesize(&spectrum.scale_by(|i, j| m.value(i, j)));
        let sup = s.sup_norm();
        if sup > worst {
            worst = sup;
        }
    }
    Ok(worst)
}

fn profiles<S: Field>(
    specs: &[(AtomProfile, usize, usize)],
    p_grid: &[f64],
    level: u32,
    res: Resolution,
    ns: &[usize],
) -> Result<Vec<Vec<[f64; 4]>>> {
    // result[n index][p index] = max over atoms per region
    let atoms: Vec<Vec<Atom<S>>> = p_grid
        .iter()
        .map(|&p| {
            specs
                .iter()
                .map(|&(profile, u, v)| make_atom::<S>(p, level, u, v, res, profile))
                .collect::<trifejer_core::Result<Vec<_>>>()
        })
        .collect::<trifejer_core::Result<_>>()?;
    let out = ns
        .par_iter()
        .map(|&n| {
            atoms
                .iter()
                .zip(p_grid)
                .map(|(family, &p)| {
                    let mut best = [0.0f64; 4];
                    for a in family {
                        let q = quasilocality_profile(a, n, p)?;
                        for (b, (region, _)) in best.iter_mut().zip(REGIONS) {
                            *b = b.max(q.get(region));
                        }
                    }
                    Ok(best)
                })
                .collect::<trifejer_core::Result<Vec<_>>>()
        })
        .collect::<trifejer_core::Result<Vec<_>>>()?;
    Ok(out)
}

pub fn run(cfg: &ExperimentConfig) -> Result<Vec<ReportRow>> {
    let m = cfg.resolution_or(DEFAULT_RESOLUTION)?;
    let levels = cfg.levels_or(&DEFAULT_LEVELS, m)?;
    let p_grid = cfg.p_grid_or(&DEFAULT_P)?;
    let p_grid: Vec<f64> = p_grid.into_iter().filter(|&p| cfg.exploratory || p > 0.8).collect();
    let res = Resolution::new(m)?;
    let mode = cfg.mode_for(m);
    let mut rows = Vec::new();
    // per (region, p): (N, max over n and atoms)
    let mut series = vec![vec![Vec::new(); p_grid.len()]; REGIONS.len()];
    for &level in &levels {
        if level >= m {
            return Err(crate::config::ConfigError::Other(format!(
                "atoms at level {level} need resolution above {m}"
            ))
            .into());
        }
        let specs = atom_specs(level, res, cfg.seed);

        // exact vanishing for n < 2^N, for every atom and exponent
        let mut worst = Rational::from_integer(0.into());
        for &p in &p_grid {
            for &(profile, u, v) in &specs {
                let a = make_atom::<Rational>(p, level, u, v, res, profile)?;
                let w = atom_zero_check(&a)?;
                if w > worst {
                    worst = w;
                }
            }
        }
        let zero = worst == Rational::from_integer(0.into());
        let st = exact_status(zero, || format!("sup|sigma_n a|={worst} for some n<2^N"));
        let measured = trifejer_core::Scalar::to_f64(&worst);
        rows.push(ReportRow::new("atoms:zero", measured, 1.0, st).level(level).n((1usize << level) - 1));

        if p_grid.is_empty() {
            continue;
        }
        let ns = sample_range(1 << level, 1 << m, cfg.sampling, cfg.samples, cfg.seed, 0x300 + level as u64);
        let values = match mode {
            Mode::Exact => profiles::<Rational>(&specs, &p_grid, level, res, &ns)?,
            Mode::Float => profiles::<f64>(&specs, &p_grid, level, res, &ns)?,
        };
        for (j, &p) in p_grid.iter().enumerate() {
            let st = if mode == Mode::Exact && p == 1.0 { "exact" } else { "float" };
            for (r, (_, name)) in REGIONS.iter().enumerate() {
                let mut top = 0.0f64;
                for (i, &n) in ns.iter().enumerate() {
                    let v = values[i][j][r];
                    top = top.max(v);
                    rows.push(ReportRow::new(*name, v, 1.0, st).p(p).level(level).n(n));
                }
                series[r][j].push((level, top));
            }
        }
    }
    for (r, (_, name)) in REGIONS.iter().enumerate() {
        for (j, &p) in p_grid.iter().enumerate() {
            if series[r][j].is_empty() {
                continue;
            }
            let v = judge(&series[r][j], cfg.factor);
            let st = if mode == Mode::Exact && p == 1.0 { "exact" } else { "float" };
            let status = verdict_status(st, &v, p <= 0.8);
            rows.push(verdict_row(name, &v, status).p(p));
        }
    }
    Ok(rows)
}
