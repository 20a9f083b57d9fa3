use std::collections::HashMap;

use crate::dyadic::Resolution;
use crate::error::{Error, Result};
use crate::stepfn::StepFunction2D;

use super::bilinear;
use super::dirichlet::DirichletTable;

/// Index maps `k -> (alpha_1(n, k), alpha_2(n, k))` for kernel sums
/// `sum_k D_{alpha_1}(x) D_{alpha_2}(y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlphaKind {
    /// `(k, n - k)` for `k < n`.
    Triangle,
    /// `(k, k - q)` for `q <= k < n`; with `n = 2^N` this is the shifted diagonal.
    Shifted { q: usize },
    /// Explicit pairs; `n` must equal the number of pairs.
    Table(Vec<(usize, usize)>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaFamily {
    pub kind: AlphaKind,
    /// Bound `C` on how often each component may repeat a value.
    pub bound: usize,
}

impl AlphaFamily {
    pub fn new(kind: AlphaKind, bound: usize) -> Self {
        Self { kind, bound }
    }

    pub fn pairs(&self, n: usize) -> Result<Vec<(usize, usize)>> {
        match &self.kind {
            AlphaKind::Triangle => Ok((0..n).map(|k| (k, n - k)).collect()),
            AlphaKind::Shifted { q } => Ok((*q..n).map(|k| (k, k - q)).collect()),
            AlphaKind::Table(pairs) => {
                if pairs.len() != n {
                    return Err(Error::Invalid(format!(
                        "table has {} pairs, n = {n}",
                        pairs.len()
                    )));
                }
                Ok(pairs.clone())
            }
        }
    }

    /// Each value of `alpha_j(n, .)` may be taken at most `bound` times.
    pub fn check_multiplicity(&self, n: usize) -> Result<()> {
        let pairs = self.pairs(n)?;
        for component in [1u8, 2] {
            let mut counts: HashMap<usize, usize> = HashMap::new();
            for &(a, b) in &pairs {
                *counts.entry(if component == 1 { a } else { b }).or_default() += 1;
            }
            if let Some((&value, &count)) = counts
                .iter()
                .filter(|(_, &c)| c > self.bound)
                .min_by_key(|(&v, _)| v)
            {
                return Err(Error::Multiplicity {
                    component,
                    value,
                    count,
                    bound: self.bound,
                });
            }
        }
        Ok(())
    }
}

/// `sum_k D_{alpha_1(n,k)}(x) D_{alpha_2(n,k)}(y)` after validating the
/// multiplicity bound.
pub fn alpha_kernel_sum(
    family: &AlphaFamily,
    n: usize,
    res: Resolution,
) -> Result<StepFunction2D<i64>> {
    family.check_multiplicity(n)?;
    let pairs = family.pairs(n)?;
    let max = pairs.iter().map(|&(a, b)| a.max(b)).max().unwrap_or(0);
    let table = DirichletTable::new(res, max)?;
    alpha_kernel_sum_with(&pairs, &table)
}

/// Same sum over explicit pairs with a prebuilt table; no multiplicity check.
pub fn alpha_kernel_sum_with(
    pairs: &[(usize, usize)],
    table: &DirichletTable,
) -> Result<StepFunction2D<i64>> {
    let res = table.resolution();
    for &(a, b) in pairs {
        let top = a.max(b);
        if top > table.max_n() {
            return Err(Error::IndexTooLarge {
                index: top,
                resolution: res.levels(),
            });
        }
    }
    let terms: Vec<(&[i64], &[i64])> = pairs
        .iter()
        .filter(|&&(a, b)| a != 0 && b != 0)
        .map(|&(a, b)| (table.row(a), table.row(b)))
        .collect();
    StepFunction2D::new(res, bilinear(res.cells(), &terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::{triangular_fejer_scaled, KernelMethod};

    fn res(m: u32) -> Resolution {
        Resolution::new(m).unwrap()
    }

    #[test]
    fn triangle_is_scaled_fejer() {
        let r = res(4);
        let fam = AlphaFamily::new(AlphaKind::Triangle, 1);
        for n in 1..=16 {
            let s = alpha_kernel_sum(&fam, n, r).unwrap();
            let k = triangular_fejer_scaled(n, r, KernelMethod::Definition).unwrap();
            assert_eq!(s, k, "n = {n}");
        }
    }

    #[test]
    fn shifted_top_is_zero() {
        let r = res(4);
        for level in 1..=4u32 {
            let top = 1usize << level;
            let fam = AlphaFamily::new(AlphaKind::Shifted { q: top - 1 }, 1);
            assert_eq!(alpha_kernel_sum(&fam, top, r).unwrap(), StepFunction2D::zeros(r));
        }
    }

    #[test]
    fn table_multiplicity_violation() {
        let fam = AlphaFamily::new(AlphaKind::Table(vec![(2, 1), (2, 3), (2, 0)]), 1);
        match alpha_kernel_sum(&fam, 3, res(3)) {
            Err(Error::Multiplicity {
                component, count, ..
            }) => {
                assert_eq!(component, 1);
                assert_eq!(count, 3);
            }
            other => panic!("expected multiplicity error, got {other:?}"),
        }
        let ok = AlphaFamily::new(AlphaKind::Table(vec![(2, 1), (2, 3), (2, 0)]), 3);
        assert!(alpha_kernel_sum(&ok, 3, res(3)).is_ok());
        assert!(alpha_kernel_sum(&ok, 2, res(3)).is_err());
    }

    #[test]
    fn index_overflow() {
        let fam = AlphaFamily::new(AlphaKind::Table(vec![(9, 1)]), 1);
        assert!(matches!(
            alpha_kernel_sum(&fam, 1, res(3)),
            Err(Error::IndexTooLarge { .. })
        ));
    }
}
