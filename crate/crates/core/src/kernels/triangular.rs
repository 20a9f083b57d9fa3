use rayon::prelude::*;

use crate::dyadic::{walsh_sign, Resolution};
use crate::error::{Error, Result};
use crate::scalar::{Field, Rational};
use crate::stepfn::StepFunction2D;

use super::dirichlet::DirichletTable;
use super::bilinear;

/// Construction route for the triangular Fejer kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelMethod {
    /// Average of the triangular Dirichlet kernels `D_k^tri`, `k < n`.
    Definition,
    /// `sum_{i=1}^{n-1} D_{n-i}(x) D_i(y)`.
    Paired,
}

fn walsh_rows(res: Resolution) -> Vec<Vec<i64>> {
    let m = res.levels();
    (0..res.cells())
        .map(|n| (0..res.cells()).map(|c| walsh_sign(n, c, m) as i64).collect())
        .collect()
}

/// Adds `sum_{i + j = s} w_i(x) w_j(y)` into `grid`.
fn add_antidiagonal(grid: &mut [i64], s: usize, walsh: &[Vec<i64>]) {
    let l = walsh.len();
    let lo = s.saturating_sub(l - 1);
    let hi = s.min(l - 1);
    grid.par_chunks_mut(l).enumerate().for_each(|(x, row)| {
        for i in lo..=hi {
            let wi = walsh[i][x];
            for (r, wj) in row.iter_mut().zip(&walsh[s - i]) {
                *r += wi * wj;
            }
        }
    });
}

/// `D_k^tri(x, y) = sum_{i < k} sum_{j < k - i} w_i(x) w_j(y)`.
pub fn triangular_dirichlet(k: usize, res: Resolution) -> Result<StepFunction2D<i64>> {
    res.check_kernel_index(k)?;
    let l = res.cells();
    let walsh = walsh_rows(res);
    let mut grid = vec![0i64; l * l];
    for s in 0..k {
        add_antidiagonal(&mut grid, s, &walsh);
    }
    StepFunction2D::new(res, grid)
}

/// Streams `n K_n^tri = sum_{k < n} D_k^tri` for `n = 1, 2, ..., 2^M`
/// straight from the definition, one anti-diagonal of Walsh products per step.
pub struct TriangularScan {
    res: Resolution,
    walsh: Vec<Vec<i64>>,
    next_n: usize,
    dtri: Vec<i64>,
    acc: Vec<i64>,
}

impl TriangularScan {
    pub fn new(res: Resolution) -> Self {
        let l = res.cells();
        Self {
            res,
            walsh: walsh_rows(res),
            next_n: 1,
            dtri: vec![0; l * l],
            acc: vec![0; l * l],
        }
    }
}

impl Iterator for TriangularScan {
    type Item = (usize, StepFunction2D<i64>);

    fn next(&mut self) -> Option<Self::Item> {
        let n = self.next_n;
        if n > self.res.cells() {
            return None;
        }
        if n > 1 {
            // D_{n-1}^tri = D_{n-2}^tri + anti-diagonal n - 2
            add_antidiagonal(&mut self.dtri, n - 2, &self.walsh);
            for (a, d) in self.acc.iter_mut().zip(&self.dtri) {
                *a += d;
            }
        }
        self.next_n += 1;
        let out = StepFunction2D::new(self.res, self.acc.clone()).expect("grid size");
        Some((n, out))
    }
}

/// `sum_{i=1}^{n-1} D_{n-i}(x) D_i(y)`, with `D_k` taken from `table`.
pub fn paired_sum(n: usize, table: &DirichletTable) -> Result<Vec<i64>> {
    if n > table.max_n() {
        return Err(Error::IndexTooLarge {
            index: n,
            resolution: table.resolution().levels(),
        });
    }
    let terms: Vec<(&[i64], &[i64])> = (1..n).map(|i| (table.row(n - i), table.row(i))).collect();
    Ok(bilinear(table.resolution().cells(), &terms))
}

/// `n K_n^tri`, integer valued.
pub fn triangular_fejer_scaled(
    n: usize,
    res: Resolution,
    method: KernelMethod,
) -> Result<StepFunction2D<i64>> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    res.check_kernel_index(n)?;
    match method {
        KernelMethod::Definition => {
            let (_, k) = TriangularScan::new(res)
                .nth(n - 1)
                .expect("n within the scan range");
            Ok(k)
        }
        KernelMethod::Paired => {
            let table = DirichletTable::new(res, n)?;
            StepFunction2D::new(res, paired_sum(n, &table)?)
        }
    }
}

/// Triangular Fejer kernel `K_n^tri = (1/n) sum_{k < n} D_k^tri`.
pub fn triangular_fejer_kernel(
    n: usize,
    res: Resolution,
    method: KernelMethod,
) -> Result<StepFunction2D<Rational>> {
    let scaled = triangular_fejer_scaled(n, res, method)?;
    Ok(scaled.map(|v| <Rational as Field>::ratio(*v, n as i64)))
}

/// `n K_n^sq = sum_{j < n} D_j(x) D_j(y)`.
pub fn marcinkiewicz_kernel_scaled(n: usize, res: Resolution) -> Result<StepFunction2D<i64>> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let table = DirichletTable::new(res, n)?;
    let terms: Vec<(&[i64], &[i64])> = (1..n).map(|j| (table.row(j), table.row(j))).collect();
    StepFunction2D::new(res, bilinear(res.cells(), &terms))
}

/// Marcinkiewicz kernel `K_n^sq = (1/n) sum_{j < n} D_j(x) D_j(y)`.
pub fn marcinkiewicz_kernel(n: usize, res: Resolution) -> Result<StepFunction2D<Rational>> {
    let scaled = marcinkiewicz_kernel_scaled(n, res)?;
    Ok(scaled.map(|v| <Rational as Field>::ratio(*v, n as i64)))
}
