//! Cross-module checks through the public API, against naive Walsh sums.

use num::{BigInt, One, Zero};
use proptest::prelude::*;
use trifejer_core::hardy::{hp_quasinorm, make_atom, maximal_function, AtomProfile};
use trifejer_core::kernels::{dirichlet, marcinkiewicz_kernel, triangular_fejer_kernel, KernelMethod};
use trifejer_core::measure::{integrate_abs_1d, integrate_abs_2d, lp_quasinorm, Region, Set1D};
use trifejer_core::operators::{
    marcinkiewicz_fejer_mean, triangular_fejer_mean, triangular_kernel_l1_norm, Route,
};
use trifejer_core::{Rational, Resolution, StepFunction, StepFunction2D};

/// `w_n` as a product of Rademacher factors; `x_k` is bit `k` counted from the top.
fn walsh(n: usize, cell: usize, m: u32) -> i64 {
    let mut sign = 1;
    for k in 0..m {
        if (n >> k) & 1 == 1 && (cell >> (m - 1 - k)) & 1 == 1 {
            sign = -sign;
        }
    }
    sign
}

fn naive_dirichlet(n: usize, cell: usize, m: u32) -> i64 {
    (0..n).map(|k| walsh(k, cell, m)).sum()
}

fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `K_n^tri(x, y) = (1/n) sum_{k<n} sum_{i+j<k} w_i(x) w_j(y)`.
fn naive_triangular(n: usize, x: usize, y: usize, m: u32) -> Rational {
    let mut s = 0i64;
    for k in 0..n {
        for i in 0..k {
            for j in 0..k - i {
                s += walsh(i, x, m) * walsh(j, y, m);
            }
        }
    }
    rat(s, n as i64)
}

fn naive_square(n: usize, x: usize, y: usize, m: u32) -> Rational {
    let s: i64 = (0..n)
        .map(|k| naive_dirichlet(k, x, m) * naive_dirichlet(k, y, m))
        .sum();
    rat(s, n as i64)
}

/// `(f * K)(x, y) = 4^-M sum_{s,t} f(s, t) K(x xor s, y xor t)`.
fn naive_convolve(f: &[i64], kernel: impl Fn(usize, usize) -> Rational, m: u32) -> Vec<Rational> {
    let side = 1usize << m;
    let mut out = Vec::with_capacity(side * side);
    for x in 0..side {
        for y in 0..side {
            let mut acc = Rational::zero();
            for s in 0..side {
                for t in 0..side {
                    acc += kernel(x ^ s, y ^ t) * BigInt::from(f[s * side + t]);
                }
            }
            out.push(acc / BigInt::from(side * side));
        }
    }
    out
}

#[test]
fn dirichlet_matches_walsh_sums() {
    for m in 0..=5 {
        let res = Resolution::new(m).unwrap();
        for n in 0..=res.cells() {
            let d = dirichlet(n, res).unwrap();
            for c in 0..res.cells() {
                assert_eq!(*d.get(c), naive_dirichlet(n, c, m), "n={n} cell={c} M={m}");
            }
        }
    }
}

#[test]
fn dirichlet_integrates_to_one() {
    let res = Resolution::new(6).unwrap();
    for n in 1..=64 {
        let d = dirichlet(n, res).unwrap();
        let mean: i64 = d.values().iter().sum();
        assert_eq!(mean, 64, "n={n}");
    }
    for k in 0..=6 {
        let d = dirichlet(1 << k, res).unwrap();
        assert!(integrate_abs_1d(&d, Set1D::Full).unwrap().is_one());
    }
}

#[test]
fn kernels_match_naive_sums() {
    let m = 3;
    let res = Resolution::new(m).unwrap();
    for n in 1..=8 {
        let tri = triangular_fejer_kernel(n, res, KernelMethod::Paired).unwrap();
        let sq = marcinkiewicz_kernel(n, res).unwrap();
        for x in 0..8 {
            for y in 0..8 {
                assert_eq!(*tri.get(x, y), naive_triangular(n, x, y, m), "tri n={n} ({x},{y})");
                assert_eq!(*sq.get(x, y), naive_square(n, x, y, m), "sq n={n} ({x},{y})");
            }
        }
    }
}

#[test]
fn kernel_values_at_origin() {
    let res = Resolution::new(5).unwrap();
    for n in 1..=32i64 {
        let tri = triangular_fejer_kernel(n as usize, res, KernelMethod::Paired).unwrap();
        let sq = marcinkiewicz_kernel(n as usize, res).unwrap();
        assert_eq!(*tri.get(0, 0), rat(n * n - 1, 6));
        assert_eq!(*sq.get(0, 0), rat((n - 1) * (2 * n - 1), 6));
    }
}

#[test]
fn kernel_l1_norm_agrees_with_full_grid_integral() {
    let res = Resolution::new(5).unwrap();
    for n in 1..=32 {
        let k = triangular_fejer_kernel(n, res, KernelMethod::Definition).unwrap();
        let direct = integrate_abs_2d(&k, Region::Full).unwrap();
        assert_eq!(triangular_kernel_l1_norm(n).unwrap(), direct, "n={n}");
    }
}

#[test]
fn atoms_are_killed_below_their_level() {
    let res = Resolution::new(5).unwrap();
    for level in 1..=3 {
        for profile in [AtomProfile::HaarSplit, AtomProfile::SeededRandom(level as u64)] {
            let atom = make_atom::<Rational>(1.0, level, 7, 19, res, profile).unwrap();
            assert!(atom.satisfies_atom_conditions());
            for n in 1..(1usize << level) {
                let s = triangular_fejer_mean(n, &atom.payload, Route::Convolution).unwrap();
                assert!(s.values().iter().all(Zero::is_zero), "N={level} n={n}");
            }
        }
    }
}

#[test]
fn hardy_quasinorm_dominates_lebesgue() {
    let res = Resolution::new(4).unwrap();
    let atom = make_atom::<f64>(0.9, 1, 3, 12, res, AtomProfile::SeededRandom(5)).unwrap();
    let mf = maximal_function(&atom.payload);
    for (m, f) in mf.function().values().iter().zip(atom.payload.values()) {
        assert!(*m >= f.abs());
    }
    let hp = hp_quasinorm(&atom.payload, 0.9).unwrap();
    let lp = lp_quasinorm(&atom.payload, 0.9).unwrap();
    assert!(hp >= lp);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn triangular_mean_is_convolution_with_naive_kernel(
        values in proptest::collection::vec(-9i64..=9, 64),
        n in 1usize..=8,
    ) {
        let m = 3;
        let res = Resolution::new(m).unwrap();
        let f = StepFunction2D::new(res, values.iter().map(|v| Rational::from_integer(BigInt::from(*v))).collect()).unwrap();
        let oracle = naive_convolve(&values, |x, y| naive_triangular(n, x, y, m), m);
        let got = triangular_fejer_mean(n, &f, Route::Multiplier).unwrap();
        prop_assert_eq!(got.values(), &oracle[..]);
    }

    #[test]
    fn square_mean_is_convolution_with_naive_kernel(
        values in proptest::collection::vec(-9i64..=9, 16),
        n in 1usize..=4,
    ) {
        let m = 2;
        let res = Resolution::new(m).unwrap();
        let f = StepFunction2D::new(res, values.iter().map(|v| Rational::from_integer(BigInt::from(*v))).collect()).unwrap();
        let oracle = naive_convolve(&values, |x, y| naive_square(n, x, y, m), m);
        let got = marcinkiewicz_fejer_mean(n, &f, Route::Multiplier).unwrap();
        prop_assert_eq!(got.values(), &oracle[..]);
    }

    #[test]
    fn mean_is_bounded_by_kernel_norm(
        values in proptest::collection::vec(-1.0f64..1.0, 256),
        n in 1usize..=16,
    ) {
        let res = Resolution::new(4).unwrap();
        let f = StepFunction2D::new(res, values).unwrap();
        let bound = triangular_kernel_l1_norm(n).unwrap();
        let bound = num::ToPrimitive::to_f64(&bound).unwrap() * f.sup_norm();
        let s = triangular_fejer_mean(n, &f, Route::Multiplier).unwrap();
        prop_assert!(s.sup_norm() <= bound * (1.0 + 1e-12) + 1e-12);
    }
}
