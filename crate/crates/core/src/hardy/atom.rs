use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dyadic::{coord_of, prefix, Resolution};
use crate::error::{Error, Result};
use crate::scalar::{Field, Rational, Scalar};
use crate::stepfn::{StepFunction, StepFunction2D};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AtomProfile {
    /// `+-2^{2N/p}` on the two halves of the cube split along `x` at level `N + 1`.
    HaarSplit,
    /// Seeded values, centred and rescaled so the sup-norm budget is attained.
    SeededRandom(u64),
}

/// A `p`-atom supported on `I_N(u) x I_N(v)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Atom<S> {
    pub p: f64,
    pub level: u32,
    pub u: usize,
    pub v: usize,
    pub payload: StepFunction2D<S>,
}

impl<S: Field> Atom<S> {
    /// `mu(I)^{-1/p} = 2^{2N/p}`.
    pub fn budget(&self) -> f64 {
        (2.0 * self.level as f64 / self.p).exp2()
    }

    pub fn resolution(&self) -> Resolution {
        self.payload.resolution()
    }

    pub fn in_support(&self, x: usize, y: usize) -> bool {
        let m = self.resolution().levels();
        prefix(x, self.level, m) == prefix(self.u, self.level, m)
            && prefix(y, self.level, m) == prefix(self.v, self.level, m)
    }

    /// Exact integral of the payload.
    pub fn mean(&self) -> Rational {
        let mut acc = Rational::from_i64(0);
        for v in self.payload.values() {
            acc += &v.to_rational();
        }
        acc / Rational::from_i64(self.payload.values().len() as i64)
    }

    /// Zero mean, sup-norm within the budget and vanishing off the cube.
    pub fn satisfies_atom_conditions(&self) -> bool {
        let l = self.payload.side();
        let bound = self.budget() * (1.0 + 1e-12);
        let mut ok = self.mean() == Rational::from_i64(0);
        for x in 0..l {
            for y in 0..l {
                let a = self.payload.get(x, y);
                ok &= a.to_f64().abs() <= bound;
                ok &= self.in_support(x, y) || a.is_zero();
            }
        }
        ok
    }
}

pub fn make_atom<S: Field>(
    p: f64,
    level: u32,
    u: usize,
    v: usize,
    res: Resolution,
    profile: AtomProfile,
) -> Result<Atom<S>> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::BadExponent(p));
    }
    res.check_level(level)?;
    let m = res.levels();
    if level == m {
        return Err(Error::Invalid(format!(
            "a nonzero atom at level {level} needs resolution above {m}"
        )));
    }
    for c in [u, v] {
        if c >= res.cells() {
            return Err(Error::CellOutOfRange {
                cell: c,
                resolution: m,
            });
        }
    }
    let amp = S::from_f64((2.0 * level as f64 / p).exp2());
    let (pu, pv) = (prefix(u, level, m), prefix(v, level, m));
    let inside = |x: usize, y: usize| prefix(x, level, m) == pu && prefix(y, level, m) == pv;
    let payload = match profile {
        AtomProfile::HaarSplit => StepFunction2D::from_fn(res, |x, y| {
            if !inside(x, y) {
                S::zero()
            } else if coord_of(x, level, m) == 0 {
                amp.clone()
            } else {
                -amp.clone()
            }
        }),
        AtomProfile::SeededRandom(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let side = 1usize << (m - level);
            let mut raw: Vec<i64> = (0..side * side).map(|_| rng.gen_range(-1000..=1000)).collect();
            if raw.iter().all(|r| *r == raw[0]) {
                raw[0] += 1;
            }
            let count = raw.len() as i64;
            let sum: i64 = raw.iter().sum();
            // count * (r - mean), integer valued
            let centred: Vec<i64> = raw.iter().map(|r| count * r - sum).collect();
            let peak = centred.iter().map(|c| c.abs()).max().expect("nonempty cube");
            let (x0, y0) = (pu << (m - level), pv << (m - level));
            StepFunction2D::from_fn(res, |x, y| {
                if !inside(x, y) {
                    S::zero()
                } else {
                    let c = centred[(x - x0) * side + (y - y0)];
                    amp.mul_i64(c).div_i64(peak)
                }
            })
        }
    };
    Ok(Atom {
        p,
        level,
        u,
        v,
        payload,
    })
}
