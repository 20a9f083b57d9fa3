//! Exact integration over dyadic regions, `L_p` and weak-`L_p` quasinorms,
//! and cellwise suprema over families of step functions.

use num::{BigInt, One};

use crate::dyadic::{prefix, Resolution};
use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};
use crate::stepfn::{StepFunction, StepFunction1D, StepFunction2D};

/// Subsets of `G` built from dyadic intervals around the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Set1D {
    Full,
    /// `I_N(center)`, `center` a cell index.
    Interval { level: u32, center: usize },
    /// `G \ I_N`.
    Complement(u32),
    /// `J_k = I_k \ I_{k+1}`.
    Ring(u32),
}

/// Subsets of `G x G` used by the quasi-locality estimates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Full,
    /// `I_N(x) x I_N(y)`, centers given as cell indices.
    Cube { level: u32, x: usize, y: usize },
    /// `(G \ I_N) x (G \ I_N)`.
    CompBoth(u32),
    /// `(G \ I_N) x I_N`.
    CompXOnly(u32),
    /// `I_N x (G \ I_N)`.
    CompYOnly(u32),
    /// `J_i x J_j`.
    Ring(u32, u32),
}

fn in_set(set: Set1D, cell: usize, levels: u32) -> bool {
    match set {
        Set1D::Full => true,
        Set1D::Interval { level, center } => {
            prefix(cell, level, levels) == prefix(center, level, levels)
        }
        Set1D::Complement(level) => prefix(cell, level, levels) != 0,
        Set1D::Ring(k) => prefix(cell, k, levels) == 0 && prefix(cell, k + 1, levels) != 0,
    }
}

impl Set1D {
    pub fn validate(self, res: Resolution) -> Result<()> {
        match self {
            Set1D::Full => Ok(()),
            Set1D::Interval { level, center } => {
                res.check_level(level)?;
                if center >= res.cells() {
                    return Err(Error::CellOutOfRange {
                        cell: center,
                        resolution: res.levels(),
                    });
                }
                Ok(())
            }
            Set1D::Complement(level) => res.check_level(level),
            Set1D::Ring(k) => res.check_level(k + 1),
        }
    }

    pub fn contains(self, cell: usize, res: Resolution) -> bool {
        in_set(self, cell, res.levels())
    }
}

impl Region {
    pub fn validate(self, res: Resolution) -> Result<()> {
        let (a, b) = self.factors();
        a.validate(res)?;
        b.validate(res)
    }

    /// Every region here is a product of two one-dimensional sets.
    pub fn factors(self) -> (Set1D, Set1D) {
        match self {
            Region::Full => (Set1D::Full, Set1D::Full),
            Region::Cube { level, x, y } => (
                Set1D::Interval { level, center: x },
                Set1D::Interval { level, center: y },
            ),
            Region::CompBoth(n) => (Set1D::Complement(n), Set1D::Complement(n)),
            Region::CompXOnly(n) => (
                Set1D::Complement(n),
                Set1D::Interval {
                    level: n,
                    center: 0,
                },
            ),
            Region::CompYOnly(n) => (
                Set1D::Interval {
                    level: n,
                    center: 0,
                },
                Set1D::Complement(n),
            ),
            Region::Ring(i, j) => (Set1D::Ring(i), Set1D::Ring(j)),
        }
    }

    pub fn contains(self, x: usize, y: usize, res: Resolution) -> bool {
        let (a, b) = self.factors();
        a.contains(x, res) && b.contains(y, res)
    }
}

fn check_exponent(p: f64) -> Result<()> {
    if p > 0.0 && p.is_finite() {
        Ok(())
    } else {
        Err(Error::BadExponent(p))
    }
}

fn measure_of(count: usize, bits: u32) -> Rational {
    Rational::new(BigInt::from(count), BigInt::one() << bits as usize)
}

/// Sum of `|v|` over the cells of a 1D set, in the function's own carrier.
pub fn abs_sum_1d<S: Scalar>(f: &StepFunction1D<S>, set: Set1D) -> Result<S> {
    set.validate(f.resolution())?;
    let levels = f.resolution().levels();
    let mut acc = S::zero();
    for (cell, v) in f.values().iter().enumerate() {
        if in_set(set, cell, levels) {
            acc += &v.abs();
        }
    }
    Ok(acc)
}

/// Sum of `|v|` over the cells of a region, in the function's own carrier.
pub fn abs_sum_2d<S: Scalar>(f: &StepFunction2D<S>, region: Region) -> Result<S> {
    let res = f.resolution();
    region.validate(res)?;
    let (a, b) = region.factors();
    let levels = res.levels();
    let mut acc = S::zero();
    for x in 0..f.side() {
        if !in_set(a, x, levels) {
            continue;
        }
        for (y, v) in f.row(x).iter().enumerate() {
            if in_set(b, y, levels) {
                acc += &v.abs();
            }
        }
    }
    Ok(acc)
}

/// `int_set |f| dmu`, exact.
pub fn integrate_abs_1d<S: Scalar>(f: &StepFunction1D<S>, set: Set1D) -> Result<Rational> {
    let sum = abs_sum_1d(f, set)?.to_rational();
    Ok(sum * measure_of(1, f.cell_bits()))
}

/// `int_region |f| dmu`, exact.
pub fn integrate_abs_2d<S: Scalar>(f: &StepFunction2D<S>, region: Region) -> Result<Rational> {
    let sum = abs_sum_2d(f, region)?.to_rational();
    Ok(sum * measure_of(1, f.cell_bits()))
}

fn pow_sum<'a, S: Scalar>(values: impl Iterator<Item = &'a S>, p: f64) -> f64 {
    values.map(|v| v.to_f64().abs().powf(p)).sum()
}

/// `int_set |f|^p dmu`. Exact through [`Rational`] for `p = 1`.
pub fn integrate_abs_p_1d<S: Scalar>(f: &StepFunction1D<S>, set: Set1D, p: f64) -> Result<f64> {
    check_exponent(p)?;
    if p == 1.0 {
        return Ok(integrate_abs_1d(f, set)?.to_f64());
    }
    set.validate(f.resolution())?;
    let levels = f.resolution().levels();
    let s = pow_sum(
        f.values()
            .iter()
            .enumerate()
            .filter(|(c, _)| in_set(set, *c, levels))
            .map(|(_, v)| v),
        p,
    );
    Ok(s * (-(f.cell_bits() as f64)).exp2())
}

/// `int_region |f|^p dmu`. Exact through [`Rational`] for `p = 1`.
pub fn integrate_abs_p_2d<S: Scalar>(f: &StepFunction2D<S>, region: Region, p: f64) -> Result<f64> {
    check_exponent(p)?;
    if p == 1.0 {
        return Ok(integrate_abs_2d(f, region)?.to_f64());
    }
    let res = f.resolution();
    region.validate(res)?;
    let (a, b) = region.factors();
    let levels = res.levels();
    let mut s = 0.0;
    for x in 0..f.side() {
        if in_set(a, x, levels) {
            s += pow_sum(
                f.row(x)
                    .iter()
                    .enumerate()
                    .filter(|(y, _)| in_set(b, *y, levels))
                    .map(|(_, v)| v),
                p,
            );
        }
    }
    Ok(s * (-(f.cell_bits() as f64)).exp2())
}

/// `||f||_p = (int |f|^p)^{1/p}`.
pub fn lp_quasinorm<S: Scalar, F: StepFunction<S>>(f: &F, p: f64) -> Result<f64> {
    check_exponent(p)?;
    if p == 1.0 {
        let mut acc = S::zero();
        for v in f.values() {
            acc += &v.abs();
        }
        return Ok((acc.to_rational() * measure_of(1, f.cell_bits())).to_f64());
    }
    let s = pow_sum(f.values().iter(), p) * (-(f.cell_bits() as f64)).exp2();
    Ok(s.powf(1.0 / p))
}

/// `sup_lambda lambda mu(|f| > lambda)^{1/p}`, evaluated exactly at the
/// attained levels `a` as `a mu(|f| >= a)^{1/p}`.
pub fn weak_lp_quasinorm<S: Scalar, F: StepFunction<S>>(f: &F, p: f64) -> Result<f64> {
    check_exponent(p)?;
    let mut abs: Vec<S> = f.values().iter().map(|v| v.abs()).collect();
    abs.sort_by(|a, b| b.partial_cmp(a).expect("comparable values"));
    let total = abs.len() as f64;
    let mut best = 0.0f64;
    let mut i = 0;
    while i < abs.len() {
        let mut j = i + 1;
        while j < abs.len() && abs[j] == abs[i] {
            j += 1;
        }
        // cells 0..j all satisfy |f| >= abs[i]
        let level = abs[i].to_f64();
        if level > 0.0 {
            best = best.max(level * (j as f64 / total).powf(1.0 / p));
        }
        i = j;
    }
    Ok(best)
}

/// Cellwise supremum of absolute values over a family of 1D step functions.
#[derive(Debug, Clone, PartialEq)]
pub struct SupEnvelope<S> {
    res: Resolution,
    values: Vec<S>,
}

impl<S: Scalar> SupEnvelope<S> {
    pub fn start(first: &StepFunction1D<S>) -> Self {
        Self {
            res: first.resolution(),
            values: first.values().iter().map(|v| v.abs()).collect(),
        }
    }

    pub fn absorb(&mut self, f: &StepFunction1D<S>) -> Result<()> {
        self.res.check_same(f.resolution())?;
        self.absorb_values(f.values());
        Ok(())
    }

    pub(crate) fn from_abs_values(res: Resolution, values: Vec<S>) -> Self {
        Self { res, values }
    }

    pub(crate) fn absorb_values(&mut self, values: &[S]) {
        for (e, v) in self.values.iter_mut().zip(values) {
            let a = v.abs();
            if a > *e {
                *e = a;
            }
        }
    }

    pub fn resolution(&self) -> Resolution {
        self.res
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn to_function(&self) -> StepFunction1D<S> {
        StepFunction1D::new(self.res, self.values.clone()).expect("envelope length")
    }
}

/// Streams the family, keeping one member alive at a time.
pub fn sup_envelope<S: Scalar>(
    family: impl IntoIterator<Item = StepFunction1D<S>>,
) -> Result<SupEnvelope<S>> {
    let mut it = family.into_iter();
    let first = it.next().ok_or(Error::EmptyFamily)?;
    let mut env = SupEnvelope::start(&first);
    drop(first);
    for f in it {
        env.absorb(&f)?;
    }
    Ok(env)
}
