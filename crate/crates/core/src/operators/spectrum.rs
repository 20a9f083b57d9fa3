//! Walsh-Fourier coefficients on `G x G` and spectral truncations.

use crate::dyadic::Resolution;
use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::stepfn::{StepFunction, StepFunction2D};

use super::fwht::fwht_2d_in_place;

/// The coefficients `f^(i, j)`, `0 <= i, j < 2^M`, stored row-major in `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumGrid2D<S> {
    res: Resolution,
    coeffs: Vec<S>,
}

impl<S: Field> SpectrumGrid2D<S> {
    pub fn new(res: Resolution, coeffs: Vec<S>) -> Result<Self> {
        if coeffs.len() != res.cells() * res.cells() {
            return Err(Error::Invalid(format!(
                "{} coefficients at resolution {}",
                coeffs.len(),
                res.levels()
            )));
        }
        Ok(Self { res, coeffs })
    }

    pub fn resolution(&self) -> Resolution {
        self.res
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.coeffs[i * self.res.cells() + j]
    }

    pub fn coefficients(&self) -> &[S] {
        &self.coeffs
    }

    /// Multiplies `f^(i, j)` by `m(i, j)`.
    pub fn scale_by(&self, m: impl Fn(usize, usize) -> S) -> Self {
        let l = self.res.cells();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let w = m(k / l, k % l);
                if w.is_zero() {
                    S::zero()
                } else {
                    c.clone() * w
                }
            })
            .collect();
        Self { res: self.res, coeffs }
    }

    /// Keeps the coefficients where `keep(i, j)` holds.
    pub fn truncate(&self, keep: impl Fn(usize, usize) -> bool) -> Self {
        self.scale_by(|i, j| if keep(i, j) { S::one() } else { S::zero() })
    }
}

pub fn fourier_coefficients<S: Field>(f: &StepFunction2D<S>) -> SpectrumGrid2D<S> {
    let res = f.resolution();
    let mut v = f.values().to_vec();
    fwht_2d_in_place(&mut v, res.cells()).expect("grid side is a power of two");
    let cells = res.cells() as i64;
    let coeffs = v.iter().map(|c| c.div_i64(cells).div_i64(cells)).collect();
    SpectrumGrid2D { res, coeffs }
}

/// `sum_{i,j} f^(i, j) w_i(x) w_j(y)`.
pub fn synthesize<S: Field>(spec: &SpectrumGrid2D<S>) -> StepFunction2D<S> {
    if spec.coeffs.iter().all(|c| c.is_zero()) {
        return StepFunction2D::zeros(spec.res);
    }
    let mut v = spec.coeffs.clone();
    fwht_2d_in_place(&mut v, spec.res.cells()).expect("grid side is a power of two");
    StepFunction2D::new(spec.res, v).expect("grid size")
}

fn check_order(k: usize, res: Resolution) -> Result<()> {
    if k > res.cells() {
        return Err(Error::IndexTooLarge {
            index: k,
            resolution: res.levels(),
        });
    }
    Ok(())
}

/// `S_k^tri f`: the coefficients with `i + j <= k - 1`.
pub fn triangular_partial_sum<S: Field>(k: usize, f: &StepFunction2D<S>) -> Result<StepFunction2D<S>> {
    check_order(k, f.resolution())?;
    Ok(synthesize(&fourier_coefficients(f).truncate(|i, j| i + j < k)))
}

/// `S_{m,n} f`: the coefficients with `i < m`, `j < n`.
pub fn rectangular_partial_sum<S: Field>(
    m: usize,
    n: usize,
    f: &StepFunction2D<S>,
) -> Result<StepFunction2D<S>> {
    check_order(m, f.resolution())?;
    check_order(n, f.resolution())?;
    Ok(synthesize(&fourier_coefficients(f).truncate(|i, j| i < m && j < n)))
}

pub fn square_partial_sum<S: Field>(m: usize, f: &StepFunction2D<S>) -> Result<StepFunction2D<S>> {
    rectangular_partial_sum(m, m, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::walsh_function;
    use crate::scalar::{Rational, Scalar};

    fn res(m: u32) -> Resolution {
        Resolution::new(m).unwrap()
    }

    fn r(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    fn walsh2(i: usize, j: usize, m: u32) -> StepFunction2D<Rational> {
        let wi = walsh_function(i, res(m)).unwrap().map(|v| r(*v));
        let wj = walsh_function(j, res(m)).unwrap().map(|v| r(*v));
        StepFunction2D::outer(&wi, &wj).unwrap()
    }

    fn sample(m: u32) -> StepFunction2D<Rational> {
        StepFunction2D::from_fn(res(m), |x, y| r(((x * 7 + y * 3) % 11) as i64 - 5))
    }

    #[test]
    fn walsh_product_spectrum() {
        let s = fourier_coefficients(&walsh2(2, 3, 3));
        for i in 0..8 {
            for j in 0..8 {
                let want = if (i, j) == (2, 3) { r(1) } else { r(0) };
                assert_eq!(s.get(i, j), &want);
            }
        }
        let c = fourier_coefficients(&StepFunction2D::constant(res(2), r(5)));
        assert_eq!(c.get(0, 0), &r(5));
        assert!(c.coefficients()[1..].iter().all(|v| v == &r(0)));
    }

    #[test]
    fn round_trip_is_exact() {
        let f = sample(4);
        assert_eq!(synthesize(&fourier_coefficients(&f)), f);
    }

    #[test]
    fn coefficient_matches_integral() {
        let f = sample(3);
        let s = fourier_coefficients(&f);
        for (i, j) in [(0, 0), (1, 5), (7, 2)] {
            let w = walsh2(i, j, 3);
            let integral = f
                .values()
                .iter()
                .zip(w.values())
                .fold(r(0), |a, (x, y)| a + x * y)
                / r(64);
            assert_eq!(s.get(i, j), &integral);
        }
    }

    #[test]
    fn triangular_truncation_of_walsh_product() {
        let f = walsh2(2, 3, 3);
        for k in 0..=8 {
            let s = triangular_partial_sum(k, &f).unwrap();
            if k >= 6 {
                assert_eq!(s, f);
            } else {
                assert_eq!(s, StepFunction2D::zeros(res(3)));
            }
        }
        let g = sample(3);
        let s1 = triangular_partial_sum(1, &g).unwrap();
        let mean = fourier_coefficients(&g).get(0, 0).clone();
        assert_eq!(s1, StepFunction2D::constant(res(3), mean));
        assert!(triangular_partial_sum(9, &g).is_err());
    }

    #[test]
    fn rectangular_examples() {
        let f = sample(3);
        assert_eq!(square_partial_sum(8, &f).unwrap(), f);
        let w1 = walsh2(1, 0, 3);
        assert_eq!(rectangular_partial_sum(2, 8, &w1).unwrap(), w1);
        assert_eq!(
            rectangular_partial_sum(1, 8, &w1).unwrap(),
            StepFunction2D::zeros(res(3))
        );
        assert!(rectangular_partial_sum(9, 1, &f).is_err());
    }

    #[test]
    fn dyadic_square_sums_are_conditional_expectations() {
        let m = 4;
        let f = sample(m);
        for n in 0..=m {
            let s = square_partial_sum(1 << n, &f).unwrap();
            let block = 1usize << (m - n);
            let e = StepFunction2D::from_fn(res(m), |x, y| {
                let (bx, by) = (x / block * block, y / block * block);
                let mut acc = r(0);
                for s in bx..bx + block {
                    for t in by..by + block {
                        acc += f.get(s, t);
                    }
                }
                acc / r((block * block) as i64)
            });
            assert_eq!(s, e, "n = {n}");
        }
    }
}
