//! Deterministic choice of the orders `n` (or shifts `q`) a scan visits.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SamplingPolicy {
    /// Every value when the range holds at most `count` values, else `Seeded`.
    Auto,
    All,
    /// Endpoints, powers of two and their neighbours, alternating-bit values.
    DyadicEndpoints,
    /// The dyadic endpoints plus seeded values up to `count`.
    Seeded,
}

/// Values `2^k`, `2^k +- 1` and `1010...` patterns inside `[lo, hi]`, with both ends.
pub fn special_values(lo: usize, hi: usize) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    if lo > hi {
        return out;
    }
    let mut push = |v: usize| {
        if (lo..=hi).contains(&v) {
            out.insert(v);
        }
    };
    push(lo);
    push(hi);
    push(lo + 1);
    push(hi.saturating_sub(1));
    let bits = usize::BITS - hi.leading_zeros();
    for k in 0..=bits {
        let t = 1usize << k;
        push(t);
        push(t + 1);
        push(t - 1);
    }
    for len in [bits, bits.saturating_sub(1)] {
        let alt = (0..len).filter(|i| (len - 1 - i) % 2 == 0).fold(0usize, |a, i| a | (1 << i));
        push(alt);
    }
    out
}

/// Sorted sample of `[lo, hi]`. `salt` separates the streams of different scans.
pub fn sample_range(
    lo: usize,
    hi: usize,
    policy: SamplingPolicy,
    count: usize,
    seed: u64,
    salt: u64,
) -> Vec<usize> {
    if lo > hi {
        return Vec::new();
    }
    let size = hi - lo + 1;
    let policy = match policy {
        SamplingPolicy::Auto if size <= count => SamplingPolicy::All,
        SamplingPolicy::Auto => SamplingPolicy::Seeded,
        other => other,
    };
    match policy {
        SamplingPolicy::All => (lo..=hi).collect(),
        SamplingPolicy::DyadicEndpoints => special_values(lo, hi).into_iter().collect(),
        _ => {
            let mut set = special_values(lo, hi);
            let target = count.min(size).max(set.len());
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15));
            while set.len() < target {
                set.insert(rng.gen_range(lo..=hi));
            }
            set.into_iter().collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranges_are_exhaustive() {
        assert_eq!(sample_range(1, 8, SamplingPolicy::Auto, 32, 1, 0), (1..=8).collect::<Vec<_>>());
        assert!(sample_range(5, 4, SamplingPolicy::All, 32, 1, 0).is_empty());
    }

    #[test]
    fn seeded_samples_keep_specials_and_repeat() {
        let a = sample_range(64, 127, SamplingPolicy::Auto, 16, 9, 3);
        let b = sample_range(64, 127, SamplingPolicy::Auto, 16, 9, 3);
        assert_eq!(a, b);
        assert_eq!(a.len(), 16);
        for v in [64, 65, 126, 127, 0b1010101] {
            assert!(a.contains(&v), "{v} missing from {a:?}");
        }
        assert!(a.windows(2).all(|w| w[0] < w[1]));
        assert_ne!(a, sample_range(64, 127, SamplingPolicy::Auto, 16, 10, 3));
    }

    #[test]
    fn alternating_patterns() {
        let s = special_values(1, 40);
        assert!(s.contains(&0b10101));
        assert!(s.contains(&32) && s.contains(&33) && s.contains(&31));
    }
}
