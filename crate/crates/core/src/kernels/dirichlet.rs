use crate::dyadic::{walsh_sign, Resolution};
use crate::error::{Error, Result};
use crate::scalar::{Field, Rational};
use crate::stepfn::StepFunction1D;

/// `w_n` as an integer step function.
pub fn walsh_function(n: usize, res: Resolution) -> Result<StepFunction1D<i64>> {
    res.check_walsh_index(n)?;
    let m = res.levels();
    Ok(StepFunction1D::from_fn(res, |c| walsh_sign(n, c, m) as i64))
}

/// `D_n = sum_{k < n} w_k`, by direct summation. `D_0 = 0`.
pub fn dirichlet(n: usize, res: Resolution) -> Result<StepFunction1D<i64>> {
    res.check_kernel_index(n)?;
    let m = res.levels();
    Ok(StepFunction1D::from_fn(res, |c| {
        (0..n).map(|k| walsh_sign(k, c, m) as i64).sum()
    }))
}

/// `n K_n = sum_{j < n} D_j`.
pub fn fejer_1d_scaled(n: usize, res: Resolution) -> Result<StepFunction1D<i64>> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let table = DirichletTable::new(res, n)?;
    let l = res.cells();
    let mut acc = vec![0i64; l];
    for j in 0..n {
        for (a, d) in acc.iter_mut().zip(table.row(j)) {
            *a += d;
        }
    }
    StepFunction1D::new(res, acc)
}

/// One-dimensional Fejer kernel `K_n = (1/n) sum_{j < n} D_j`.
pub fn fejer_1d(n: usize, res: Resolution) -> Result<StepFunction1D<Rational>> {
    let scaled = fejer_1d_scaled(n, res)?;
    Ok(scaled.map(|v| <Rational as Field>::ratio(*v, n as i64)))
}

/// All of `D_0, ..., D_max` at one resolution, built by `D_{k+1} = D_k + w_k`.
#[derive(Debug, Clone)]
pub struct DirichletTable {
    res: Resolution,
    max_n: usize,
    values: Vec<i64>,
}

impl DirichletTable {
    pub fn new(res: Resolution, max_n: usize) -> Result<Self> {
        res.check_kernel_index(max_n)?;
        let l = res.cells();
        let m = res.levels();
        let mut values = vec![0i64; (max_n + 1) * l];
        for k in 0..max_n {
            let (done, rest) = values.split_at_mut((k + 1) * l);
            let prev = &done[k * l..];
            for (c, v) in rest[..l].iter_mut().enumerate() {
                *v = prev[c] + walsh_sign(k, c, m) as i64;
            }
        }
        Ok(Self { res, max_n, values })
    }

    pub fn resolution(&self) -> Resolution {
        self.res
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    /// Values of `D_k` over all cells. Panics if `k > max_n`.
    pub fn row(&self, k: usize) -> &[i64] {
        let l = self.res.cells();
        &self.values[k * l..(k + 1) * l]
    }

    pub fn get(&self, k: usize) -> Result<StepFunction1D<i64>> {
        if k > self.max_n {
            return Err(Error::IndexTooLarge {
                index: k,
                resolution: self.res.levels(),
            });
        }
        StepFunction1D::new(self.res, self.row(k).to_vec())
    }
}
