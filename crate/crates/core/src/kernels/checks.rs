//! Exact cellwise checkers for one-dimensional Dirichlet kernel identities.
//!
//! Each checker takes the kernel under test from a [`DirichletSource`] so a
//! harness can swap in a deliberately broken implementation.

use crate::dyadic::{prefix, tail_cell, walsh_sign, Resolution, WalshIndex};
use crate::error::Result;
use crate::stepfn::{StepFunction, StepFunction1D};

use super::dirichlet::dirichlet;

/// Produces `D_n` at a given resolution.
pub type DirichletSource<'a> = &'a (dyn Fn(usize, Resolution) -> Result<StepFunction1D<i64>> + Sync);

/// First cell where the two sides of an identity disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub x: usize,
    pub y: Option<usize>,
    pub left: i64,
    pub right: i64,
}

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.y {
            Some(y) => write!(f, "x={} y={} lhs={} rhs={}", self.x, y, self.left, self.right),
            None => write!(f, "x={} lhs={} rhs={}", self.x, self.left, self.right),
        }
    }
}

/// Outcome of an exact identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub cells_checked: usize,
    pub mismatch: Option<Mismatch>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }

    pub(crate) fn compare(left: &[i64], right: &[i64]) -> Self {
        let mismatch = left
            .iter()
            .zip(right)
            .position(|(a, b)| a != b)
            .map(|x| Mismatch {
                x,
                y: None,
                left: left[x],
                right: right[x],
            });
        Self {
            cells_checked: left.len(),
            mismatch,
        }
    }
}

fn exact(n: usize, res: Resolution) -> Result<StepFunction1D<i64>> {
    dirichlet(n, res)
}

/// `D_{2^k} = 2^k 1_{I_k}`.
pub fn paley_check(k: u32, res: Resolution) -> Result<CheckReport> {
    paley_check_with(k, res, &exact)
}

pub fn paley_check_with(k: u32, res: Resolution, source: DirichletSource) -> Result<CheckReport> {
    res.check_level(k)?;
    let d = source(1 << k, res)?;
    let m = res.levels();
    let want: Vec<i64> = (0..res.cells())
        .map(|c| if prefix(c, k, m) == 0 { 1i64 << k } else { 0 })
        .collect();
    Ok(CheckReport::compare(d.values(), &want))
}

/// On `J_i = I_i \ I_{i+1}`:
/// `D_n(x) = w_{n^{(i)}}(x) (sum_{r<i} n_r 2^r - n_i 2^i)`.
///
/// When `n_i = 1` this is `-w_{n^{(i+1)}}(x) (...)`, the form usually quoted;
/// that form has the wrong sign on `J_i` whenever `n_i = 0` and the low bits
/// of `n` are not all zero (e.g. `n = 1` on `J_1`).
pub fn dirichlet_closed_form_check(n: usize, res: Resolution) -> Result<CheckReport> {
    dirichlet_closed_form_check_with(n, res, &exact)
}

pub fn dirichlet_closed_form_check_with(
    n: usize,
    res: Resolution,
    source: DirichletSource,
) -> Result<CheckReport> {
    res.check_kernel_index(n)?;
    let d = source(n, res)?;
    let m = res.levels();
    let idx = WalshIndex(n);
    let mut checked = 0;
    for i in 0..m {
        let bracket = idx.low(i) as i64 - ((idx.bit(i) as i64) << i);
        let tail = idx.tail(i);
        // J_i: top i bits zero, bit i set
        let start = 1usize << (m - 1 - i);
        for x in start..2 * start {
            checked += 1;
            // n = 2^M is the only case with tail >= 2^M, and its bracket vanishes
            let rhs = if bracket == 0 {
                0
            } else {
                walsh_sign(tail, x, m) as i64 * bracket
            };
            let lhs = d.values()[x];
            if lhs != rhs {
                return Ok(CheckReport {
                    cells_checked: checked,
                    mismatch: Some(Mismatch {
                        x,
                        y: None,
                        left: lhs,
                        right: rhs,
                    }),
                });
            }
        }
    }
    Ok(CheckReport {
        cells_checked: checked,
        mismatch: None,
    })
}

/// `D_{k + l 2^N}(x) = w_l(2^N x) D_k(x) + D_{2^N}(x) D_l(2^N x)`.
pub fn dirichlet_shift_check(k: usize, l: usize, level: u32, res: Resolution) -> Result<CheckReport> {
    dirichlet_shift_check_with(k, l, level, res, &exact)
}

pub fn dirichlet_shift_check_with(
    k: usize,
    l: usize,
    level: u32,
    res: Resolution,
    source: DirichletSource,
) -> Result<CheckReport> {
    res.check_level(level)?;
    let block = 1usize << level;
    if k > block {
        return Err(crate::Error::Invalid(format!("k = {k} exceeds 2^N = {block}")));
    }
    let total = k + l * block;
    res.check_kernel_index(total)?;
    let m = res.levels();
    let tail_res = Resolution::new(m - level)?;
    tail_res.check_walsh_index(l)?;
    let lhs = source(total, res)?;
    let dk = source(k, res)?;
    let dblock = source(block, res)?;
    let dl_tail = source(l, tail_res)?;
    let rhs: Vec<i64> = (0..res.cells())
        .map(|x| {
            let t = tail_cell(x, level, m);
            walsh_sign(l, t, m - level) as i64 * dk.values()[x]
                + dblock.values()[x] * dl_tail.values()[t]
        })
        .collect();
    Ok(CheckReport::compare(lhs.values(), &rhs))
}

/// `w_{2^N - 1} D_j = D_{2^N} - D_{2^N - j}` for `0 <= j <= 2^N`.
pub fn reflection_identity_check(j: usize, level: u32, res: Resolution) -> Result<CheckReport> {
    reflection_identity_check_with(j, level, res, &exact)
}

pub fn reflection_identity_check_with(
    j: usize,
    level: u32,
    res: Resolution,
    source: DirichletSource,
) -> Result<CheckReport> {
    res.check_level(level)?;
    let block = 1usize << level;
    if j > block {
        return Err(crate::Error::Invalid(format!("j = {j} exceeds 2^N = {block}")));
    }
    let m = res.levels();
    let dj = source(j, res)?;
    let dblock = source(block, res)?;
    let dref = source(block - j, res)?;
    let lhs: Vec<i64> = (0..res.cells())
        .map(|x| walsh_sign(block - 1, x, m) as i64 * dj.values()[x])
        .collect();
    let rhs: Vec<i64> = dblock
        .values()
        .iter()
        .zip(dref.values())
        .map(|(a, b)| a - b)
        .collect();
    Ok(CheckReport::compare(&lhs, &rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn res(m: u32) -> Resolution {
        Resolution::new(m).unwrap()
    }

    #[test]
    fn paley_all_levels() {
        for k in 0..=6 {
            assert!(paley_check(k, res(6)).unwrap().passed());
        }
    }

    #[test]
    fn closed_form_examples() {
        for k in 0..=4 {
            assert!(dirichlet_closed_form_check(1 << k, res(4)).unwrap().passed());
        }
        assert!(dirichlet_closed_form_check(1, res(4)).unwrap().passed());
        assert!(dirichlet_closed_form_check(3, res(4)).unwrap().passed());
        for n in 0..=64 {
            assert!(dirichlet_closed_form_check(n, res(6)).unwrap().passed(), "n = {n}");
        }
    }

    #[test]
    fn quoted_sign_fails_when_bit_i_is_clear() {
        // n = 1 on J_1: D_1 = 1 but -w_0 (1 - 0) = -1
        let d = dirichlet(1, res(3)).unwrap();
        assert_eq!(d.values()[2], 1);
        let quoted = -(walsh_sign(WalshIndex(1).tail(2), 2, 3) as i64);
        assert_eq!(quoted, -1);
    }

    #[test]
    fn closed_form_on_j0_for_n1() {
        // on J_0 the formula reads -w_0 (0 - 1) = 1
        let d = dirichlet(1, res(3)).unwrap();
        for x in 4..8 {
            assert_eq!(d.values()[x], 1);
        }
    }

    #[test]
    fn shift_examples() {
        // k = 1, l = 1, N = 1 at x = 0: D_3(0) = 3
        let r = dirichlet_shift_check(1, 1, 1, res(4)).unwrap();
        assert!(r.passed());
        for k in 0..=4 {
            assert!(dirichlet_shift_check(k, 0, 2, res(4)).unwrap().passed());
        }
        assert!(dirichlet_shift_check(4, 3, 2, res(4)).unwrap().passed());
        assert!(dirichlet_shift_check(5, 0, 2, res(4)).is_err());
        assert!(dirichlet_shift_check(4, 4, 2, res(4)).is_err());
    }

    #[test]
    fn shift_exhaustive_small() {
        for m in 0..=5u32 {
            for level in 0..=m {
                for k in 0..=(1usize << level) {
                    for l in 0..(1usize << (m - level)) {
                        if k + (l << level) > 1 << m {
                            continue;
                        }
                        let r = dirichlet_shift_check(k, l, level, res(m)).unwrap();
                        assert!(r.passed(), "m={m} N={level} k={k} l={l}: {:?}", r.mismatch);
                    }
                }
            }
        }
    }

    #[test]
    fn reflection_examples() {
        assert!(reflection_identity_check(0, 3, res(5)).unwrap().passed());
        assert!(reflection_identity_check(8, 3, res(5)).unwrap().passed());
        assert!(reflection_identity_check(1, 2, res(4)).unwrap().passed());
        for m in 0..=5u32 {
            for level in 0..=m {
                for j in 0..=(1usize << level) {
                    assert!(reflection_identity_check(j, level, res(m)).unwrap().passed());
                }
            }
        }
    }

    #[test]
    fn broken_source_is_caught() {
        let off_by_one = |n: usize, r: Resolution| dirichlet(n.saturating_sub(1), r);
        let r = dirichlet_closed_form_check_with(3, res(4), &off_by_one).unwrap();
        let m = r.mismatch.expect("mutation must be detected");
        assert_ne!(m.left, m.right);
        assert!(!paley_check_with(2, res(4), &off_by_one).unwrap().passed());
    }
}
