//! Fast Walsh-Hadamard transform in Paley order.

use rayon::prelude::*;

use crate::dyadic::reverse_bits;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn levels_of(len: usize) -> Result<u32> {
    if len == 0 || !len.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(len));
    }
    Ok(len.trailing_zeros())
}

/// `v[k] <- sum_x v[x] w_k(x)`.
///
/// Applying it twice multiplies by `v.len()`.
pub fn fwht_in_place<S: Scalar>(v: &mut [S]) -> Result<()> {
    let levels = levels_of(v.len())?;
    let mut h = 1;
    while h < v.len() {
        for block in v.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let sum = a.clone() + b.clone();
                let diff = a.clone() - b.clone();
                *a = sum;
                *b = diff;
            }
        }
        h *= 2;
    }
    // Hadamard order -> Paley order
    for k in 0..v.len() {
        let r = reverse_bits(k, levels);
        if k < r {
            v.swap(k, r);
        }
    }
    Ok(())
}

pub fn fwht_1d<S: Scalar>(values: &[S]) -> Result<Vec<S>> {
    let mut v = values.to_vec();
    fwht_in_place(&mut v)?;
    Ok(v)
}

/// Separable transform of a row-major `side x side` grid: rows, then columns.
pub fn fwht_2d_in_place<S: Scalar>(v: &mut [S], side: usize) -> Result<()> {
    levels_of(side)?;
    if v.len() != side * side {
        return Err(Error::Invalid(format!(
            "grid of {} values is not {side} x {side}",
            v.len()
        )));
    }
    v.par_chunks_mut(side)
        .try_for_each(|row| fwht_in_place(row))?;
    let mut t = transpose(v, side);
    t.par_chunks_mut(side)
        .try_for_each(|row| fwht_in_place(row))?;
    v.clone_from_slice(&transpose(&t, side));
    Ok(())
}

fn transpose<S: Clone>(v: &[S], side: usize) -> Vec<S> {
    (0..side * side)
        .map(|i| v[(i % side) * side + i / side].clone())
        .collect()
}
