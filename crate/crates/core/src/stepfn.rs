//! Piecewise-constant functions on `G` and `G x G`.

use crate::dyadic::{DyadicPoint, Resolution};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Common view of a step function as a flat array of equal-measure cells.
pub trait StepFunction<S> {
    /// Number of group factors (1 or 2).
    const DIM: u32;

    fn resolution(&self) -> Resolution;
    fn values(&self) -> &[S];

    /// `log2` of the number of cells; each cell has measure `2^-cell_bits`.
    fn cell_bits(&self) -> u32 {
        Self::DIM * self.resolution().levels()
    }
}

/// A function constant on every `I_M(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StepFunction1D<S> {
    res: Resolution,
    values: Vec<S>,
}

/// A function constant on every `I_M(x) x I_M(y)`, stored row-major with `x` as the row.
#[derive(Debug, Clone, PartialEq)]
pub struct StepFunction2D<S> {
    res: Resolution,
    values: Vec<S>,
}

impl<S> StepFunction<S> for StepFunction1D<S> {
    const DIM: u32 = 1;

    fn resolution(&self) -> Resolution {
        self.res
    }

    fn values(&self) -> &[S] {
        &self.values
    }
}

impl<S> StepFunction<S> for StepFunction2D<S> {
    const DIM: u32 = 2;

    fn resolution(&self) -> Resolution {
        self.res
    }

    fn values(&self) -> &[S] {
        &self.values
    }
}

impl<S> StepFunction1D<S> {
    pub fn new(res: Resolution, values: Vec<S>) -> Result<Self> {
        if values.len() != res.cells() {
            return Err(Error::Invalid(format!(
                "expected {} cells, got {}",
                res.cells(),
                values.len()
            )));
        }
        Ok(Self { res, values })
    }

    pub fn from_fn(res: Resolution, f: impl FnMut(usize) -> S) -> Self {
        Self {
            res,
            values: (0..res.cells()).map(f).collect(),
        }
    }

    pub fn get(&self, cell: usize) -> &S {
        &self.values[cell]
    }

    pub fn at(&self, x: DyadicPoint) -> Result<&S> {
        self.res.check_same(x.resolution())?;
        Ok(&self.values[x.bits()])
    }

    pub fn into_values(self) -> Vec<S> {
        self.values
    }

    pub fn map<T>(&self, f: impl FnMut(&S) -> T) -> StepFunction1D<T> {
        StepFunction1D {
            res: self.res,
            values: self.values.iter().map(f).collect(),
        }
    }
}

impl<S: Scalar> StepFunction1D<S> {
    pub fn zeros(res: Resolution) -> Self {
        Self::constant(res, S::zero())
    }

    pub fn constant(res: Resolution, c: S) -> Self {
        Self {
            res,
            values: vec![c; res.cells()],
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.clone() - b.clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.clone() * b.clone())
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|v| v.clone() * c.clone())
    }

    fn zip(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Result<Self> {
        self.res.check_same(other.res)?;
        Ok(Self {
            res: self.res,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn sup_norm(&self) -> S {
        sup_abs(&self.values)
    }
}

impl<S> StepFunction2D<S> {
    pub fn new(res: Resolution, values: Vec<S>) -> Result<Self> {
        let expect = res.cells() * res.cells();
        if values.len() != expect {
            return Err(Error::Invalid(format!(
                "expected {expect} cells, got {}",
                values.len()
            )));
        }
        Ok(Self { res, values })
    }

    pub fn from_fn(res: Resolution, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let l = res.cells();
        let mut values = Vec::with_capacity(l * l);
        for x in 0..l {
            for y in 0..l {
                values.push(f(x, y));
            }
        }
        Self { res, values }
    }

    pub fn side(&self) -> usize {
        self.res.cells()
    }

    pub fn get(&self, x: usize, y: usize) -> &S {
        &self.values[x * self.side() + y]
    }

    pub fn at(&self, x: DyadicPoint, y: DyadicPoint) -> Result<&S> {
        self.res.check_same(x.resolution())?;
        self.res.check_same(y.resolution())?;
        Ok(self.get(x.bits(), y.bits()))
    }

    pub fn row(&self, x: usize) -> &[S] {
        let l = self.side();
        &self.values[x * l..(x + 1) * l]
    }

    pub fn into_values(self) -> Vec<S> {
        self.values
    }

    pub fn map<T>(&self, f: impl FnMut(&S) -> T) -> StepFunction2D<T> {
        StepFunction2D {
            res: self.res,
            values: self.values.iter().map(f).collect(),
        }
    }
}

impl<S: Scalar> StepFunction2D<S> {
    pub fn zeros(res: Resolution) -> Self {
        Self::constant(res, S::zero())
    }

    pub fn constant(res: Resolution, c: S) -> Self {
        Self {
            res,
            values: vec![c; res.cells() * res.cells()],
        }
    }

    /// `(x, y) -> f(x) g(y)`.
    pub fn outer(f: &StepFunction1D<S>, g: &StepFunction1D<S>) -> Result<Self> {
        f.res.check_same(g.res)?;
        Ok(Self::from_fn(f.res, |x, y| {
            f.values[x].clone() * g.values[y].clone()
        }))
    }

    /// `(x, y) -> f(x)`.
    pub fn embed_x(f: &StepFunction1D<S>) -> Self {
        Self::from_fn(f.res, |x, _| f.values[x].clone())
    }

    /// `(x, y) -> f(y)`.
    pub fn embed_y(f: &StepFunction1D<S>) -> Self {
        Self::from_fn(f.res, |_, y| f.values[y].clone())
    }

    /// `(x, y) -> f(x + a, y + b)` under dyadic addition.
    pub fn translate(&self, a: usize, b: usize) -> Self {
        let l = self.side();
        Self::from_fn(self.res, |x, y| self.values[(x ^ a) * l + (y ^ b)].clone())
    }

    pub fn transpose(&self) -> Self {
        let l = self.side();
        Self::from_fn(self.res, |x, y| self.values[y * l + x].clone())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.clone() - b.clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.clone() * b.clone())
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|v| v.clone() * c.clone())
    }

    fn zip(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Result<Self> {
        self.res.check_same(other.res)?;
        Ok(Self {
            res: self.res,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn sup_norm(&self) -> S {
        sup_abs(&self.values)
    }

    /// First cell (row-major) where the two functions differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        let l = self.side();
        self.values
            .iter()
            .zip(&other.values)
            .position(|(a, b)| a != b)
            .map(|i| (i / l, i % l))
    }
}

pub(crate) fn sup_abs<S: Scalar>(values: &[S]) -> S {
    let mut best = S::zero();
    for v in values {
        let a = v.abs();
        if a > best {
            best = a;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn res(m: u32) -> Resolution {
        Resolution::new(m).unwrap()
    }

    #[test]
    fn length_is_checked() {
        assert!(StepFunction1D::<i64>::new(res(2), vec![0; 3]).is_err());
        assert!(StepFunction2D::<i64>::new(res(2), vec![0; 16]).is_ok());
    }

    #[test]
    fn translate_is_xor() {
        let f = StepFunction2D::from_fn(res(2), |x, y| (x * 4 + y) as i64);
        let g = f.translate(1, 2);
        assert_eq!(*g.get(0, 0), *f.get(1, 2));
        assert_eq!(g.translate(1, 2), f);
    }

    #[test]
    fn outer_and_embed() {
        let f = StepFunction1D::from_fn(res(2), |x| x as i64);
        let g = StepFunction1D::from_fn(res(2), |y| 1 - y as i64);
        let h = StepFunction2D::outer(&f, &g).unwrap();
        assert_eq!(*h.get(3, 2), -3);
        assert_eq!(
            h,
            StepFunction2D::embed_x(&f)
                .mul(&StepFunction2D::embed_y(&g))
                .unwrap()
        );
        assert_eq!(h.sup_norm(), 6);
    }
}
