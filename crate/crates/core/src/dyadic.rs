//! Bit-level model of the dyadic group at finite resolution.
//!
//! A point at resolution `M` is stored as a cell index in `[0, 2^M)` whose
//! binary digits, most significant first, are the coordinates
//! `(x_0, ..., x_{M-1})`. With this ordering the dyadic interval `I_n(x)`
//! is the contiguous block of indices sharing the top `n` bits of `x`.

use crate::error::{Error, Result};

pub const MAX_RESOLUTION: u32 = 30;

/// Number of coordinates kept, `M`. Cells have measure `2^-M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Resolution(u32);

impl Resolution {
    /// Resolution 0 is the trivial one-cell grid produced by dropping every coordinate.
    pub fn new(levels: u32) -> Result<Self> {
        if levels > MAX_RESOLUTION {
            return Err(Error::BadResolution(levels));
        }
        Ok(Self(levels))
    }

    pub fn levels(self) -> u32 {
        self.0
    }

    /// `L = 2^M`.
    pub fn cells(self) -> usize {
        1usize << self.0
    }

    pub fn check_level(self, level: u32) -> Result<()> {
        if level > self.0 {
            Err(Error::LevelTooDeep {
                level,
                resolution: self.0,
            })
        } else {
            Ok(())
        }
    }

    pub fn check_same(self, other: Resolution) -> Result<()> {
        if self != other {
            Err(Error::ResolutionMismatch {
                left: self.0,
                right: other.0,
            })
        } else {
            Ok(())
        }
    }

    /// Fails unless `w_n` is constant on the cells of this grid.
    pub fn check_walsh_index(self, n: usize) -> Result<()> {
        if n >= self.cells() {
            Err(Error::IndexTooLarge {
                index: n,
                resolution: self.0,
            })
        } else {
            Ok(())
        }
    }

    /// Fails unless `D_n` is constant on the cells of this grid (`n <= 2^M`).
    pub fn check_kernel_index(self, n: usize) -> Result<()> {
        if n > self.cells() {
            Err(Error::IndexTooLarge {
                index: n,
                resolution: self.0,
            })
        } else {
            Ok(())
        }
    }
}

/// A resolution-`M` truncation of an element of the dyadic group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DyadicPoint {
    bits: usize,
    res: Resolution,
}

impl DyadicPoint {
    pub fn new(bits: usize, res: Resolution) -> Result<Self> {
        if bits >= res.cells() {
            return Err(Error::CellOutOfRange {
                cell: bits,
                resolution: res.levels(),
            });
        }
        Ok(Self { bits, res })
    }

    pub fn zero(res: Resolution) -> Self {
        Self { bits: 0, res }
    }

    pub fn bits(self) -> usize {
        self.bits
    }

    pub fn resolution(self) -> Resolution {
        self.res
    }

    /// Coordinate `x_k`, `k < M`.
    pub fn coord(self, k: u32) -> Result<u8> {
        if k >= self.res.levels() {
            return Err(Error::LevelTooDeep {
                level: k,
                resolution: self.res.levels(),
            });
        }
        Ok(coord_of(self.bits, k, self.res.levels()))
    }
}

#[inline]
pub(crate) fn coord_of(cell: usize, k: u32, levels: u32) -> u8 {
    ((cell >> (levels - 1 - k)) & 1) as u8
}

/// Coordinatewise addition mod 2.
pub fn xor_add(x: DyadicPoint, y: DyadicPoint) -> Result<DyadicPoint> {
    x.res.check_same(y.res)?;
    Ok(DyadicPoint {
        bits: x.bits ^ y.bits,
        res: x.res,
    })
}

/// `r_k(x) = (-1)^{x_k}`.
pub fn rademacher(k: u32, x: DyadicPoint) -> Result<i8> {
    Ok(if x.coord(k)? == 0 { 1 } else { -1 })
}

/// Walsh-Paley function `w_n(x) = (-1)^{sum_k n_k x_k}`.
pub fn walsh(n: usize, x: DyadicPoint) -> Result<i8> {
    x.res.check_walsh_index(n)?;
    Ok(walsh_sign(n, x.bits, x.res.levels()))
}

/// Cell-index form of [`walsh`]; the caller guarantees `n < 2^levels`.
#[inline]
pub fn walsh_sign(n: usize, cell: usize, levels: u32) -> i8 {
    if (n & reverse_bits(cell, levels)).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Reverses the low `levels` bits of `v`, mapping a cell index to the
/// integer whose bit `k` is the coordinate `x_k`.
#[inline]
pub fn reverse_bits(v: usize, levels: u32) -> usize {
    if levels == 0 {
        0
    } else {
        v.reverse_bits() >> (usize::BITS - levels)
    }
}

/// `2^N x = (x_N, x_{N+1}, ...)`, a point at resolution `M - N`.
pub fn tail_shift(level: u32, x: DyadicPoint) -> Result<DyadicPoint> {
    x.res.check_level(level)?;
    let res = Resolution(x.res.levels() - level);
    Ok(DyadicPoint {
        bits: tail_cell(x.bits, level, x.res.levels()),
        res,
    })
}

#[inline]
pub(crate) fn tail_cell(cell: usize, level: u32, levels: u32) -> usize {
    let keep = levels - level;
    if keep == 0 {
        0
    } else {
        cell & ((1usize << keep) - 1)
    }
}

/// Membership of `x` in `I_n(center)`.
pub fn in_interval(level: u32, center: DyadicPoint, x: DyadicPoint) -> Result<bool> {
    center.res.check_same(x.res)?;
    center.res.check_level(level)?;
    Ok(prefix(center.bits, level, x.res.levels()) == prefix(x.bits, level, x.res.levels()))
}

#[inline]
pub(crate) fn prefix(cell: usize, level: u32, levels: u32) -> usize {
    cell >> (levels - level)
}

/// Index `n` of a Walsh function together with its bit algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WalshIndex(pub usize);

impl WalshIndex {
    /// Bit `n_i`.
    pub fn bit(self, i: u32) -> usize {
        if i >= usize::BITS {
            0
        } else {
            (self.0 >> i) & 1
        }
    }

    /// `|n|`, the position of the top set bit; `None` for `n = 0`.
    pub fn order(self) -> Option<u32> {
        if self.0 == 0 {
            None
        } else {
            Some(usize::BITS - 1 - self.0.leading_zeros())
        }
    }

    /// `n^{(s)} = sum_{k >= s} n_k 2^k`, i.e. `n` with its low `s` bits cleared.
    pub fn tail(self, s: u32) -> usize {
        if s >= usize::BITS {
            0
        } else {
            self.0 & !((1usize << s) - 1)
        }
    }

    /// `sum_{r < i} n_r 2^r`.
    pub fn low(self, i: u32) -> usize {
        if i >= usize::BITS {
            self.0
        } else {
            self.0 & ((1usize << i) - 1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(bits: usize, m: u32) -> DyadicPoint {
        DyadicPoint::new(bits, Resolution::new(m).unwrap()).unwrap()
    }

    #[test]
    fn xor_examples() {
        assert_eq!(xor_add(pt(0, 4), pt(0, 4)).unwrap().bits(), 0);
        assert_eq!(xor_add(pt(0b1010, 4), pt(0b1010, 4)).unwrap().bits(), 0);
        assert_eq!(xor_add(pt(0b1100, 4), pt(0b0101, 4)).unwrap().bits(), 0b1001);
        assert!(xor_add(pt(1, 3), pt(1, 4)).is_err());
    }

    #[test]
    fn rademacher_examples() {
        assert_eq!(rademacher(0, pt(0b0100, 4)).unwrap(), 1);
        assert_eq!(rademacher(0, pt(0b1000, 4)).unwrap(), -1);
        assert_eq!(rademacher(2, pt(0b0010, 4)).unwrap(), -1);
        assert!(rademacher(4, pt(0, 4)).is_err());
    }

    #[test]
    fn walsh_examples() {
        for c in 0..16 {
            assert_eq!(walsh(0, pt(c, 4)).unwrap(), 1);
        }
        assert_eq!(walsh(1, pt(0b1000, 4)).unwrap(), -1);
        assert_eq!(walsh(3, pt(0b0100, 4)).unwrap(), -1);
        assert!(walsh(16, pt(0, 4)).is_err());
    }

    #[test]
    fn tail_shift_examples() {
        assert_eq!(tail_shift(0, pt(0b1101, 4)).unwrap(), pt(0b1101, 4));
        let z = tail_shift(4, pt(0b1101, 4)).unwrap();
        assert_eq!(z.resolution().levels(), 0);
        assert_eq!(z.bits(), 0);
        assert_eq!(tail_shift(2, pt(0b1101, 4)).unwrap(), pt(0b01, 2));
        assert!(tail_shift(5, pt(0, 4)).is_err());
    }

    #[test]
    fn interval_examples() {
        assert!(in_interval(0, pt(0, 4), pt(0b1111, 4)).unwrap());
        assert!(in_interval(2, pt(0, 4), pt(0b0011, 4)).unwrap());
        assert!(!in_interval(2, pt(0, 4), pt(0b0100, 4)).unwrap());
        assert!(in_interval(5, pt(0, 4), pt(0, 4)).is_err());
    }

    #[test]
    fn character_law_exhaustive() {
        for m in 0..=6u32 {
            let l = 1usize << m;
            for n in 0..l {
                for x in 0..l {
                    for y in 0..l {
                        let lhs = walsh_sign(n, x ^ y, m);
                        assert_eq!(lhs, walsh_sign(n, x, m) * walsh_sign(n, y, m));
                    }
                }
            }
        }
    }

    #[test]
    fn orthonormality_exact() {
        use crate::scalar::{Field, Rational};
        for m in 0..=5u32 {
            let l = 1usize << m;
            for a in 0..l {
                for b in 0..l {
                    let s: i64 = (0..l)
                        .map(|x| (walsh_sign(a, x, m) * walsh_sign(b, x, m)) as i64)
                        .sum();
                    let inner = <Rational as Field>::ratio(s, l as i64);
                    let expect = <Rational as Field>::ratio((a == b) as i64, 1);
                    assert_eq!(inner, expect);
                }
            }
        }
    }

    #[test]
    fn order_and_tail() {
        assert_eq!(WalshIndex(0).order(), None);
        assert_eq!(WalshIndex(1).order(), Some(0));
        assert_eq!(WalshIndex(13).order(), Some(3));
        assert_eq!(WalshIndex(13).tail(0), 13);
        assert_eq!(WalshIndex(13).tail(2), 12);
        assert_eq!(WalshIndex(13).tail(4), 0);
        assert_eq!(WalshIndex(13).low(3), 5);
    }

    proptest! {
        #[test]
        fn order_brackets(n in 1usize..(1 << 31)) {
            let k = WalshIndex(n).order().unwrap();
            prop_assert!(1usize << k <= n && n < 1usize << (k + 1));
            prop_assert_eq!(WalshIndex(n).bit(k), 1);
            prop_assert_eq!(n, (1usize << k) + (n - (1usize << k)));
        }

        #[test]
        fn tail_clears_low_bits(n in 0usize..(1 << 31), s in 0u32..=31) {
            prop_assert_eq!(WalshIndex(n).tail(s), n - (n % (1usize << s)));
            prop_assert_eq!(WalshIndex(n).tail(s) + WalshIndex(n).low(s), n);
        }

        #[test]
        fn xor_is_involution(x in 0usize..1024, y in 0usize..1024) {
            let (a, b) = (pt(x, 10), pt(y, 10));
            prop_assert_eq!(xor_add(xor_add(a, b).unwrap(), b).unwrap(), a);
        }
    }
}
