//! Triangular and Marcinkiewicz Fejer means, each by two independent routes.
//!
//! With `S_0 = 0`, the mean `sigma_n = (1/n) sum_{k<n} S_k` keeps the
//! coefficient `(i, j)` in `S_k^tri` for `i + j + 1 <= k <= n - 1` and in
//! `S_k^sq` for `max(i, j) + 1 <= k <= n - 1`. Counting those `k` gives the
//! multipliers below. The convolution route instead uses the kernels built by
//! direct Walsh summation.

use num::{BigInt, BigRational};

use crate::dyadic::Resolution;
use crate::error::{Error, Result};
use crate::kernels::{marcinkiewicz_kernel_scaled, triangular_fejer_scaled, KernelMethod};
use crate::scalar::{Field, Rational};
use crate::stepfn::{StepFunction, StepFunction2D};

use super::fwht::fwht_2d_in_place;
use super::spectrum::{fourier_coefficients, synthesize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    /// Scale the spectrum, then invert.
    Multiplier,
    /// Convolve with the kernel.
    Convolution,
}

/// `m(i, j) = (n - 1 - i - j)_+ / n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TriangularMultiplier {
    pub n: usize,
}

impl TriangularMultiplier {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        Ok(Self { n })
    }

    /// `n m(i, j)`.
    pub fn numerator(&self, i: usize, j: usize) -> i64 {
        (self.n as i64 - 1 - i as i64 - j as i64).max(0)
    }

    pub fn value<S: Field>(&self, i: usize, j: usize) -> S {
        S::ratio(self.numerator(i, j), self.n as i64)
    }
}

/// `m(i, j) = (n - 1 - max(i, j))_+ / n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SquareMultiplier {
    pub n: usize,
}

impl SquareMultiplier {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        Ok(Self { n })
    }

    pub fn numerator(&self, i: usize, j: usize) -> i64 {
        (self.n as i64 - 1 - i.max(j) as i64).max(0)
    }

    pub fn value<S: Field>(&self, i: usize, j: usize) -> S {
        S::ratio(self.numerator(i, j), self.n as i64)
    }
}

/// `2^{-2M} sum_{s,t} f(s, t) g(x + s, y + t)`, evaluated spectrally.
pub fn dyadic_convolve<S: Field>(f: &StepFunction2D<S>, g: &StepFunction2D<S>) -> Result<StepFunction2D<S>> {
    let res = f.resolution();
    res.check_same(g.resolution())?;
    let side = res.cells();
    let mut a = f.values().to_vec();
    let mut b = g.values().to_vec();
    fwht_2d_in_place(&mut a, side)?;
    fwht_2d_in_place(&mut b, side)?;
    let mut h: Vec<S> = a.into_iter().zip(b).map(|(x, y)| x * y).collect();
    fwht_2d_in_place(&mut h, side)?;
    let cells = side as i64;
    let norm = cells * cells;
    StepFunction2D::new(res, h.iter().map(|v| v.div_i64(norm).div_i64(norm)).collect())
}

fn check_order(n: usize, res: Resolution) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    res.check_kernel_index(n)
}

fn convolve_scaled<S: Field>(
    n: usize,
    f: &StepFunction2D<S>,
    kernel: StepFunction2D<i64>,
) -> Result<StepFunction2D<S>> {
    let k = kernel.map(|v| S::from_i64(*v));
    Ok(dyadic_convolve(f, &k)?.map(|v| v.div_i64(n as i64)))
}

/// `sigma_n^tri f = (1/n) sum_{k<n} S_k^tri f`.
pub fn triangular_fejer_mean<S: Field>(
    n: usize,
    f: &StepFunction2D<S>,
    route: Route,
) -> Result<StepFunction2D<S>> {
    let res = f.resolution();
    check_order(n, res)?;
    match route {
        Route::Multiplier => {
            let m = TriangularMultiplier::new(n)?;
            Ok(synthesize(&fourier_coefficients(f).scale_by(|i, j| m.value(i, j))))
        }
        Route::Convolution => {
            convolve_scaled(n, f, triangular_fejer_scaled(n, res, KernelMethod::Paired)?)
        }
    }
}

/// `sigma_n^sq f = (1/n) sum_{k<n} S_k^sq f`.
pub fn marcinkiewicz_fejer_mean<S: Field>(
    n: usize,
    f: &StepFunction2D<S>,
    route: Route,
) -> Result<StepFunction2D<S>> {
    let res = f.resolution();
    check_order(n, res)?;
    match route {
        Route::Multiplier => {
            let m = SquareMultiplier::new(n)?;
            Ok(synthesize(&fourier_coefficients(f).scale_by(|i, j| m.value(i, j))))
        }
        Route::Convolution => convolve_scaled(n, f, marcinkiewicz_kernel_scaled(n, res)?),
    }
}

/// `||K_n^tri||_1`, exact.
///
/// `K_n^tri` only involves `w_i`, `i < n`, so it is evaluated on the
/// coarsest grid with at least `n` cells per axis by inverting the
/// integer multiplier.
pub fn triangular_kernel_l1_norm(n: usize) -> Result<Rational> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let levels = n.next_power_of_two().trailing_zeros();
    let res = Resolution::new(levels)?;
    let side = res.cells();
    let m = TriangularMultiplier::new(n)?;
    let mut v: Vec<i64> = (0..side * side)
        .map(|k| m.numerator(k / side, k % side))
        .collect();
    fwht_2d_in_place(&mut v, side)?;
    let total: i64 = v.iter().map(|a| a.abs()).sum();
    let den = BigInt::from(n) * BigInt::from(side) * BigInt::from(side);
    Ok(BigRational::new(BigInt::from(total), den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::triangular_fejer_kernel;
    use crate::measure::{integrate_abs_2d, Region};
    use crate::operators::triangular_partial_sum;
    use crate::scalar::Scalar;
    use proptest::prelude::*;

    fn res(m: u32) -> Resolution {
        Resolution::new(m).unwrap()
    }

    fn r(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    fn grid(m: u32, seed: u64) -> StepFunction2D<Rational> {
        StepFunction2D::from_fn(res(m), |x, y| {
            let h = (x as u64 * 2654435761 + y as u64 * 40503 + seed * 97) % 17;
            r(h as i64 - 8)
        })
    }

    fn naive_convolve(f: &StepFunction2D<Rational>, g: &StepFunction2D<Rational>) -> StepFunction2D<Rational> {
        let l = f.side();
        StepFunction2D::from_fn(f.resolution(), |x, y| {
            let mut acc = r(0);
            for s in 0..l {
                for t in 0..l {
                    acc += &(f.get(s, t) * g.get(x ^ s, y ^ t));
                }
            }
            acc / r((l * l) as i64)
        })
    }

    #[test]
    fn spectral_convolution_matches_double_sum() {
        for m in 0..=3 {
            let f = grid(m, 1);
            let g = grid(m, 2);
            assert_eq!(dyadic_convolve(&f, &g).unwrap(), naive_convolve(&f, &g));
        }
    }

    #[test]
    fn multiplier_values() {
        let m = TriangularMultiplier::new(3).unwrap();
        assert_eq!(m.value::<Rational>(0, 0), Rational::new(2.into(), 3.into()));
        assert_eq!(m.numerator(1, 1), 0);
        assert_eq!(m.numerator(1, 0), 1);
        assert!(TriangularMultiplier::new(0).is_err());
        let q = SquareMultiplier::new(4).unwrap();
        assert_eq!(q.numerator(2, 1), 1);
        assert_eq!(q.numerator(3, 0), 0);
    }

    #[test]
    fn constant_maps_to_shrunk_constant() {
        let c = StepFunction2D::constant(res(3), r(6));
        for n in 1..=8usize {
            let want = StepFunction2D::constant(res(3), r(6 * (n as i64 - 1)) / r(n as i64));
            for route in [Route::Multiplier, Route::Convolution] {
                assert_eq!(triangular_fejer_mean(n, &c, route).unwrap(), want);
                assert_eq!(marcinkiewicz_fejer_mean(n, &c, route).unwrap(), want);
            }
        }
    }

    #[test]
    fn averaging_identity() {
        let f = grid(3, 5);
        for n in 1..=8 {
            let mut acc = StepFunction2D::zeros(res(3));
            for k in 0..n {
                acc = acc.add(&triangular_partial_sum(k, &f).unwrap()).unwrap();
            }
            let avg = acc.map(|v| v / r(n as i64));
            assert_eq!(triangular_fejer_mean(n, &f, Route::Multiplier).unwrap(), avg);
        }
    }

    #[test]
    fn routes_agree_exactly_small() {
        for m in 1..=4u32 {
            let f = grid(m, m as u64);
            for n in 1..=(1usize << m) {
                let a = triangular_fejer_mean(n, &f, Route::Multiplier).unwrap();
                let b = triangular_fejer_mean(n, &f, Route::Convolution).unwrap();
                assert_eq!(a, b, "tri M={m} n={n}");
                let a = marcinkiewicz_fejer_mean(n, &f, Route::Multiplier).unwrap();
                let b = marcinkiewicz_fejer_mean(n, &f, Route::Convolution).unwrap();
                assert_eq!(a, b, "sq M={m} n={n}");
            }
        }
    }

    #[test]
    fn walsh_products_beyond_support_vanish() {
        let f = StepFunction2D::from_fn(res(3), |x, y| {
            r((crate::dyadic::walsh_sign(2, x, 3) * crate::dyadic::walsh_sign(3, y, 3)) as i64)
        });
        for n in 1..=6 {
            let s = triangular_fejer_mean(n, &f, Route::Convolution).unwrap();
            assert_eq!(s, StepFunction2D::zeros(res(3)));
        }
        let s = triangular_fejer_mean(8, &f, Route::Convolution).unwrap();
        assert_eq!(s, f.map(|v| v * Rational::new(2.into(), 8.into())));
    }

    #[test]
    fn rejects_bad_orders() {
        let f = grid(2, 0);
        assert!(matches!(
            triangular_fejer_mean(0, &f, Route::Multiplier),
            Err(Error::ZeroOrder)
        ));
        assert!(marcinkiewicz_fejer_mean(5, &f, Route::Convolution).is_err());
    }

    #[test]
    fn kernel_l1_norm_matches_kernel() {
        for n in 1..=16usize {
            let k = triangular_fejer_kernel(n, res(4), KernelMethod::Definition).unwrap();
            let direct = integrate_abs_2d(&k, Region::Full).unwrap();
            assert_eq!(triangular_kernel_l1_norm(n).unwrap(), direct, "n = {n}");
        }
    }

    #[test]
    fn float_routes_agree_at_moderate_resolution() {
        let f = StepFunction2D::from_fn(res(6), |x, y| ((x * 31 + y * 17) % 13) as f64 / 7.0 - 0.9);
        for n in [1usize, 5, 17, 40, 64] {
            let a = triangular_fejer_mean(n, &f, Route::Multiplier).unwrap();
            let b = triangular_fejer_mean(n, &f, Route::Convolution).unwrap();
            let scale = a.sup_norm().max(1e-300);
            let diff = a.sub(&b).unwrap().sup_norm();
            assert!(diff / scale < 1e-12, "n = {n}: {diff}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn linear_and_bounded_by_kernel_norm(
            a in prop::collection::vec(-9i64..9, 64),
            b in prop::collection::vec(-9i64..9, 64),
            n in 1usize..=8,
            c in -5i64..5,
        ) {
            let f = StepFunction2D::new(res(3), a.iter().map(|v| r(*v)).collect()).unwrap();
            let g = StepFunction2D::new(res(3), b.iter().map(|v| r(*v)).collect()).unwrap();
            let lhs = triangular_fejer_mean(n, &f.scale(&r(c)).add(&g).unwrap(), Route::Multiplier).unwrap();
            let rhs = triangular_fejer_mean(n, &f, Route::Multiplier).unwrap().scale(&r(c))
                .add(&triangular_fejer_mean(n, &g, Route::Multiplier).unwrap()).unwrap();
            prop_assert_eq!(&lhs, &rhs);
            let s = triangular_fejer_mean(n, &f, Route::Multiplier).unwrap();
            prop_assert!(s.sup_norm() <= f.sup_norm() * triangular_kernel_l1_norm(n).unwrap());
        }
    }
}
