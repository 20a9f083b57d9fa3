//! Eight-term decomposition of `sum_{k=1}^{n-1} D_k(x) D_{n-k}(y)` for
//! `n = 2^N q1 + q2`, with the tail factors `w_l(2^N x)`, `D_l(2^N x)`
//! evaluated on the coarser grid of the shifted point.
//!
//! Two index conventions circulate for this decomposition. [`Lemma3Variant`]
//! selects among them; [`lemma3_check`] tests a variant exactly against the
//! paired kernel sum.

use crate::dyadic::{tail_cell, walsh_sign, Resolution};
use crate::error::{Error, Result};
use crate::stepfn::StepFunction2D;

use super::bilinear;
use super::dirichlet::DirichletTable;
use super::triangular::paired_sum;

/// Inner Dirichlet index in the fifth term, `sum_{k=q2+1}^{2^N} D_k(x) D_{k-q2-?}(y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum T5Index {
    /// `D_{k - q2 - 1}(y)`.
    ShiftedByOne,
    /// `D_{k - q2}(y)`.
    Direct,
}

/// Upper limit of the inner sum in the first term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InnerRange {
    /// `k = 1, ..., q2 - 1`.
    Open,
    /// `k = 1, ..., q2`; the extra term carries `D_0 = 0`.
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Lemma3Variant {
    pub t5: T5Index,
    pub t1: InnerRange,
}

impl Default for Lemma3Variant {
    /// The index conventions used in the derivation; they reproduce the paired sum exactly.
    fn default() -> Self {
        Self::PROOF
    }
}

impl Lemma3Variant {
    /// `D_{k-q2-1}` in the fifth term, `k < q2` in the first.
    pub const STATEMENT: Lemma3Variant = Lemma3Variant {
        t5: T5Index::ShiftedByOne,
        t1: InnerRange::Open,
    };

    /// `D_{k-q2}` in the fifth term, `k <= q2` in the first.
    pub const PROOF: Lemma3Variant = Lemma3Variant {
        t5: T5Index::Direct,
        t1: InnerRange::Closed,
    };

    pub const ALL: [Lemma3Variant; 4] = [
        Lemma3Variant::STATEMENT,
        Lemma3Variant {
            t5: T5Index::ShiftedByOne,
            t1: InnerRange::Closed,
        },
        Lemma3Variant {
            t5: T5Index::Direct,
            t1: InnerRange::Open,
        },
        Lemma3Variant::PROOF,
    ];
}

/// The eight summands, in order, each as an exact integer grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Lemma3Terms {
    pub n: usize,
    pub level: u32,
    pub q1: usize,
    pub q2: usize,
    pub variant: Lemma3Variant,
    pub terms: [StepFunction2D<i64>; 8],
}

impl Lemma3Terms {
    pub fn total(&self) -> StepFunction2D<i64> {
        let mut acc = self.terms[0].clone();
        for t in &self.terms[1..] {
            acc = acc.add(t).expect("same resolution");
        }
        acc
    }
}

/// Where a variant's decomposition first departs from the paired sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma3Mismatch {
    pub x: usize,
    pub y: usize,
    pub target: i64,
    pub terms: [i64; 8],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma3Report {
    pub n: usize,
    pub level: u32,
    pub q1: usize,
    pub q2: usize,
    pub variant: Lemma3Variant,
    pub mismatch: Option<Lemma3Mismatch>,
}

impl Lemma3Report {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

struct Builder {
    l: usize,
    levels: u32,
    level: u32,
    tail_levels: u32,
    table: DirichletTable,
    tail_table: DirichletTable,
}

impl Builder {
    fn tail(&self, x: usize) -> usize {
        tail_cell(x, self.level, self.levels)
    }

    /// `x -> w_j(2^N x)`.
    fn tail_walsh(&self, j: usize) -> Result<Vec<i64>> {
        Resolution::new(self.tail_levels)?.check_walsh_index(j)?;
        Ok((0..self.l)
            .map(|x| walsh_sign(j, self.tail(x), self.tail_levels) as i64)
            .collect())
    }

    /// `x -> D_j(2^N x)`.
    fn tail_dirichlet(&self, j: usize) -> Vec<i64> {
        let row = self.tail_table.row(j);
        (0..self.l).map(|x| row[self.tail(x)]).collect()
    }

    fn walsh(&self, j: usize) -> Vec<i64> {
        (0..self.l)
            .map(|x| walsh_sign(j, x, self.levels) as i64)
            .collect()
    }

    fn d(&self, k: usize) -> &[i64] {
        self.table.row(k)
    }

    fn dsum(&self, ks: impl Iterator<Item = usize>) -> Vec<i64> {
        let mut acc = vec![0i64; self.l];
        for k in ks {
            for (a, v) in acc.iter_mut().zip(self.d(k)) {
                *a += v;
            }
        }
        acc
    }

    fn separable(&self, factors: &[(Vec<i64>, Vec<i64>)]) -> Vec<i64> {
        let terms: Vec<(&[i64], &[i64])> = factors
            .iter()
            .map(|(a, b)| (a.as_slice(), b.as_slice()))
            .collect();
        bilinear(self.l, &terms)
    }

    fn kernel_pairs(&self, pairs: impl Iterator<Item = (usize, usize)>) -> Vec<i64> {
        let terms: Vec<(&[i64], &[i64])> = pairs
            .filter(|&(a, b)| a != 0 && b != 0)
            .map(|(a, b)| (self.d(a), self.d(b)))
            .collect();
        bilinear(self.l, &terms)
    }

    fn grid(&self, v: Vec<i64>) -> StepFunction2D<i64> {
        StepFunction2D::new(self.table.resolution(), v).expect("grid size")
    }

    fn zero(&self) -> StepFunction2D<i64> {
        StepFunction2D::zeros(self.table.resolution())
    }
}

/// `grid(x, y) * fx(x) * fy(y)`.
fn scale_axes(mut grid: Vec<i64>, l: usize, fx: Option<&[i64]>, fy: Option<&[i64]>) -> Vec<i64> {
    for x in 0..l {
        let sx = fx.map_or(1, |f| f[x]);
        for y in 0..l {
            let sy = fy.map_or(1, |f| f[y]);
            grid[x * l + y] *= sx * sy;
        }
    }
    grid
}

fn split(n: usize, level: u32) -> (usize, usize) {
    (n >> level, n & ((1usize << level) - 1))
}

pub fn lemma3_terms(n: usize, level: u32, res: Resolution) -> Result<Lemma3Terms> {
    lemma3_terms_with(n, level, res, Lemma3Variant::default())
}

pub fn lemma3_terms_with(
    n: usize,
    level: u32,
    res: Resolution,
    variant: Lemma3Variant,
) -> Result<Lemma3Terms> {
    res.check_level(level)?;
    res.check_kernel_index(n)?;
    let (q1, q2) = split(n, level);
    if q1 == 0 {
        return Err(Error::Invalid(format!("n = {n} < 2^N = {}", 1usize << level)));
    }
    let top = 1usize << level;
    let levels = res.levels();
    let tail_levels = levels - level;
    let b = Builder {
        l: res.cells(),
        levels,
        level,
        tail_levels,
        table: DirichletTable::new(res, n.max(top))?,
        tail_table: DirichletTable::new(Resolution::new(tail_levels)?, q1)?,
    };
    let l = b.l;
    let d_top = b.d(top).to_vec();
    let w_top = b.walsh(top - 1);
    let ls = 0..q1;

    // T1
    let t1_upper = match variant.t1 {
        InnerRange::Open => q2.saturating_sub(1),
        InnerRange::Closed => q2,
    };
    let t1 = if t1_upper == 0 {
        b.zero()
    } else {
        let tails = ls
            .clone()
            .map(|j| Ok((b.tail_walsh(j)?, b.tail_walsh(q1 - j)?)))
            .collect::<Result<Vec<_>>>()?;
        let outer = b.separable(&tails);
        let inner = b.kernel_pairs((1..=t1_upper).map(|k| (k, q2 - k)));
        b.grid(outer.iter().zip(&inner).map(|(a, c)| a * c).collect())
    };

    // T2
    let t2 = {
        let tails = ls
            .clone()
            .map(|j| Ok((b.tail_walsh(j)?, b.tail_dirichlet(q1 - j))))
            .collect::<Result<Vec<_>>>()?;
        let sx = b.dsum(1..=top);
        b.grid(scale_axes(b.separable(&tails), l, Some(&sx), Some(&d_top)))
    };

    // T3: q2 K_{q2}(y) = sum_{j < q2} D_j(y)
    let t3 = if q2 == 0 {
        b.zero()
    } else {
        let tails = ls
            .clone()
            .map(|j| Ok((b.tail_dirichlet(j), b.tail_walsh(q1 - j)?)))
            .collect::<Result<Vec<_>>>()?;
        let sy = b.dsum(0..q2);
        b.grid(scale_axes(b.separable(&tails), l, Some(&d_top), Some(&sy)))
    };

    // T4
    let t4 = {
        let tails: Vec<_> = ls
            .clone()
            .map(|j| (b.tail_dirichlet(j), b.tail_dirichlet(q1 - j)))
            .collect();
        let mut g = scale_axes(b.separable(&tails), l, Some(&d_top), Some(&d_top));
        g.iter_mut().for_each(|v| *v *= top as i64);
        b.grid(g)
    };

    // T5
    let t5 = {
        let tails = ls
            .clone()
            .map(|j| Ok((b.tail_walsh(j)?, b.tail_walsh(q1 - j - 1)?)))
            .collect::<Result<Vec<_>>>()?;
        let outer = scale_axes(b.separable(&tails), l, None, Some(&w_top));
        let shift = match variant.t5 {
            T5Index::ShiftedByOne => q2 + 1,
            T5Index::Direct => q2,
        };
        let inner = b.kernel_pairs((q2 + 1..=top).map(|k| (k, k - shift)));
        b.grid(outer.iter().zip(&inner).map(|(a, c)| -a * c).collect())
    };

    // T6
    let t6 = {
        let tails = ls
            .clone()
            .map(|j| Ok((b.tail_dirichlet(j), b.tail_walsh(q1 - j - 1)?)))
            .collect::<Result<Vec<_>>>()?;
        let sy = b.dsum((q2 + 1..=top).map(|k| k - q2));
        let wy: Vec<i64> = w_top.iter().zip(&sy).map(|(w, s)| -w * s).collect();
        b.grid(scale_axes(b.separable(&tails), l, Some(&d_top), Some(&wy)))
    };

    // T7
    let t7 = if q2 <= 1 {
        b.zero()
    } else {
        let wx = b.tail_walsh(q1)?;
        let inner = b.kernel_pairs((1..q2).map(|k| (k, q2 - k)));
        b.grid(scale_axes(inner, l, Some(&wx), None))
    };

    // T8
    let t8 = if q2 <= 1 {
        b.zero()
    } else {
        let fx: Vec<i64> = d_top
            .iter()
            .zip(b.tail_dirichlet(q1))
            .map(|(a, c)| a * c)
            .collect();
        let fy = b.dsum(1..q2);
        b.grid(scale_axes(vec![1; l * l], l, Some(&fx), Some(&fy)))
    };

    Ok(Lemma3Terms {
        n,
        level,
        q1,
        q2,
        variant,
        terms: [t1, t2, t3, t4, t5, t6, t7, t8],
    })
}

/// Compares the decomposition against `sum_{k=1}^{n-1} D_k(x) D_{n-k}(y)`.
pub fn lemma3_check(
    n: usize,
    level: u32,
    res: Resolution,
    variant: Lemma3Variant,
) -> Result<Lemma3Report> {
    let terms = lemma3_terms_with(n, level, res, variant)?;
    let table = DirichletTable::new(res, n)?;
    let target = paired_sum(n, &table)?;
    let total = terms.total();
    let l = res.cells();
    let mismatch = crate::stepfn::StepFunction::values(&total)
        .iter()
        .zip(&target)
        .position(|(a, b)| a != b)
        .map(|i| {
            let (x, y) = (i / l, i % l);
            let mut per = [0i64; 8];
            for (p, t) in per.iter_mut().zip(&terms.terms) {
                *p = *t.get(x, y);
            }
            Lemma3Mismatch {
                x,
                y,
                target: target[i],
                terms: per,
            }
        });
    Ok(Lemma3Report {
        n,
        level,
        q1: terms.q1,
        q2: terms.q2,
        variant,
        mismatch,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::{triangular_fejer_scaled, KernelMethod};

    fn res(m: u32) -> Resolution {
        Resolution::new(m).unwrap()
    }

    #[test]
    fn empty_sums_vanish_for_q2_zero() {
        let t = lemma3_terms(8, 2, res(4)).unwrap();
        assert_eq!((t.q1, t.q2), (2, 0));
        let zero = StepFunction2D::zeros(res(4));
        assert_eq!(t.terms[0], zero);
        assert_eq!(t.terms[6], zero);
        assert_eq!(t.terms[7], zero);
    }

    #[test]
    fn single_block_matches_paired_sum() {
        for level in 1..=4u32 {
            let n = 1usize << level;
            let r = lemma3_check(n, level, res(5), Lemma3Variant::default()).unwrap();
            assert!(r.passed(), "{:?}", r.mismatch);
        }
    }

    #[test]
    fn n6_level1_is_scaled_fejer_kernel() {
        let t = lemma3_terms(6, 1, res(4)).unwrap();
        assert_eq!((t.q1, t.q2), (3, 0));
        let k = triangular_fejer_scaled(6, res(4), KernelMethod::Definition).unwrap();
        assert_eq!(t.total(), k);
    }

    #[test]
    fn default_variant_on_full_small_grid() {
        for m in 1..=5u32 {
            for level in 1..m {
                for q1 in 1..(1usize << (m - level)) {
                    for q2 in 0..(1usize << level) {
                        let n = (q1 << level) + q2;
                        let r = lemma3_check(n, level, res(m), Lemma3Variant::default()).unwrap();
                        assert!(r.passed(), "m={m} N={level} n={n}: {:?}", r.mismatch);
                    }
                }
            }
        }
    }

    #[test]
    fn first_term_range_is_immaterial() {
        for n in 4..16 {
            let a = lemma3_terms_with(n, 2, res(4), Lemma3Variant::ALL[2]).unwrap();
            let b = lemma3_terms_with(n, 2, res(4), Lemma3Variant::PROOF).unwrap();
            assert_eq!(a.terms, b.terms);
        }
    }

    #[test]
    fn shifted_t5_index_fails_somewhere() {
        let r = lemma3_check(5, 1, res(4), Lemma3Variant::STATEMENT).unwrap();
        let m = r.mismatch.expect("shifted index must disagree");
        assert_ne!(m.terms.iter().sum::<i64>(), m.target);
    }

    #[test]
    fn top_block_allowed_when_q2_is_zero() {
        // q1 = 2^{M-N}: w_{q1}(2^N x) is not resolvable but only multiplies empty sums
        let r = lemma3_check(16, 2, res(4), Lemma3Variant::default()).unwrap();
        assert!(r.passed());
        assert!(lemma3_terms(3, 2, res(4)).is_err());
        assert!(lemma3_terms(17, 2, res(4)).is_err());
    }
}
