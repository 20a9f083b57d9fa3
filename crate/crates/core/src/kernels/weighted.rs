use crate::dyadic::{walsh_sign, Resolution};
use crate::error::Result;
use crate::measure::SupEnvelope;

/// Weighted partial-sum families of one-dimensional Dirichlet kernels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightedKind {
    /// `sup_{1 <= n <= 2^N} |sum_{j=1}^n D_j|`.
    Sup1,
    /// `sup_{1 <= n <= 2^N} |sum_{k=1}^n D_k (n - k + 1)|`.
    Lemma1,
    /// `sup_{0 <= q < 2^N} |sum_{k=q}^{2^N - 1} D_k (k - q + 1)|`.
    Sup3,
}

fn add_walsh(acc: &mut [i64], k: usize, levels: u32, sign: i64) {
    for (c, v) in acc.iter_mut().enumerate() {
        *v += sign * walsh_sign(k, c, levels) as i64;
    }
}

/// Cellwise supremum over the family, built incrementally in `O(2^N 2^M)`.
pub fn weighted_family(kind: WeightedKind, level: u32, res: Resolution) -> Result<SupEnvelope<i64>> {
    res.check_level(level)?;
    let l = res.cells();
    let m = res.levels();
    let top = 1usize << level;
    let mut env = SupEnvelope::from_abs_values(res, vec![0i64; l]);
    match kind {
        WeightedKind::Sup1 | WeightedKind::Lemma1 => {
            let mut d = vec![0i64; l]; // D_j
            let mut partial = vec![0i64; l]; // sum_{j <= n} D_j
            let mut weighted = vec![0i64; l]; // sum_{m <= n} partial_m
            for n in 1..=top {
                add_walsh(&mut d, n - 1, m, 1);
                for c in 0..l {
                    partial[c] += d[c];
                    weighted[c] += partial[c];
                }
                match kind {
                    WeightedKind::Sup1 => env.absorb_values(&partial),
                    _ => env.absorb_values(&weighted),
                }
            }
        }
        WeightedKind::Sup3 => {
            // descending q: V_q = sum_{k >= q} (k + 1) D_k - q sum_{k >= q} D_k
            let mut d = vec![0i64; l];
            for k in 0..top {
                add_walsh(&mut d, k, m, 1);
            }
            let mut first = vec![0i64; l];
            let mut plain = vec![0i64; l];
            let mut v = vec![0i64; l];
            for q in (0..top).rev() {
                add_walsh(&mut d, q, m, -1); // d = D_q
                for c in 0..l {
                    first[c] += (q as i64 + 1) * d[c];
                    plain[c] += d[c];
                    v[c] = first[c] - q as i64 * plain[c];
                }
                env.absorb_values(&v);
            }
        }
    }
    Ok(env)
}
