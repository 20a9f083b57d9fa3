use crate::error::Result;
use crate::measure::{integrate_abs_p_2d, Region};
use crate::operators::{triangular_fejer_mean, Route};
use crate::scalar::Field;
use crate::stepfn::StepFunction2D;

use super::atom::Atom;

/// Parts of the complement of the atom's support cube `I = I_N(u) x I_N(v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AtomRegion {
    /// Both coordinates off their interval.
    CompBoth,
    /// `x` off, `y` on.
    CompXOnly,
    /// `x` on, `y` off.
    CompYOnly,
    /// `(G x G) \ I`.
    ComplementOfCube,
}

/// `int |sigma_n^tri a|^p` over each part of the complement of the support.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuasiLocality {
    pub comp_both: f64,
    pub comp_x_only: f64,
    pub comp_y_only: f64,
}

impl QuasiLocality {
    pub fn total(&self) -> f64 {
        self.comp_both + self.comp_x_only + self.comp_y_only
    }

    pub fn get(&self, region: AtomRegion) -> f64 {
        match region {
            AtomRegion::CompBoth => self.comp_both,
            AtomRegion::CompXOnly => self.comp_x_only,
            AtomRegion::CompYOnly => self.comp_y_only,
            AtomRegion::ComplementOfCube => self.total(),
        }
    }
}

/// `sigma_n^tri a` translated so that the support cube sits at the origin.
fn centred_mean<S: Field>(atom: &Atom<S>, n: usize) -> Result<StepFunction2D<S>> {
    let s = triangular_fejer_mean(n, &atom.payload, Route::Multiplier)?;
    Ok(s.translate(atom.u, atom.v))
}

pub fn quasilocality_profile<S: Field>(atom: &Atom<S>, n: usize, p: f64) -> Result<QuasiLocality> {
    let s = centred_mean(atom, n)?;
    let level = atom.level;
    Ok(QuasiLocality {
        comp_both: integrate_abs_p_2d(&s, Region::CompBoth(level), p)?,
        comp_x_only: integrate_abs_p_2d(&s, Region::CompXOnly(level), p)?,
        comp_y_only: integrate_abs_p_2d(&s, Region::CompYOnly(level), p)?,
    })
}

pub fn quasilocality_integral<S: Field>(
    atom: &Atom<S>,
    n: usize,
    p: f64,
    region: AtomRegion,
) -> Result<f64> {
    Ok(quasilocality_profile(atom, n, p)?.get(region))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::Resolution;
    use crate::hardy::{make_atom, AtomProfile};
    use crate::measure::integrate_abs_2d;
    use crate::scalar::{Rational, Scalar};
    use crate::stepfn::StepFunction;
    use num::Zero;

    fn res(m: u32) -> Resolution {
        Resolution::new(m).unwrap()
    }

    #[test]
    fn vanishes_below_support_scale() {
        for level in 1..=3u32 {
            let a: Atom<Rational> =
                make_atom(0.85, level, 9, 22, res(5), AtomProfile::SeededRandom(3)).unwrap();
            // with S_0 = 0 the multiplier also kills i + j = n - 1, so n = 2^N vanishes too
            for n in 1..=(1usize << level) {
                let s = triangular_fejer_mean(n, &a.payload, Route::Multiplier).unwrap();
                assert!(s.values().iter().all(|v| v.is_zero()));
                let q = quasilocality_profile(&a, n, 0.85).unwrap();
                assert_eq!(q.total(), 0.0);
            }
        }
    }

    #[test]
    fn partition_matches_direct_complement() {
        let m = 5;
        let a: Atom<Rational> = make_atom(1.0, 2, 13, 6, res(m), AtomProfile::HaarSplit).unwrap();
        for n in [4usize, 5, 7, 11, 32] {
            let s = centred_mean(&a, n).unwrap();
            let parts = [Region::CompBoth(2), Region::CompXOnly(2), Region::CompYOnly(2)]
                .map(|r| integrate_abs_2d(&s, r).unwrap());
            let whole = integrate_abs_2d(&s, Region::Full).unwrap()
                - integrate_abs_2d(&s, Region::Cube { level: 2, x: 0, y: 0 }).unwrap();
            assert_eq!(parts.iter().fold(Rational::from_i64(0), |a, b| a + b), whole);
            let q = quasilocality_profile(&a, n, 1.0).unwrap();
            assert!((q.get(AtomRegion::ComplementOfCube) - whole.to_f64()).abs() <= 1e-12 * whole.to_f64().max(1.0));
            // the split atom only carries w_i(x) w_j(y) with i >= 2^N, which enter once n >= 2^N + 2
            assert_eq!(q.total() > 0.0, n >= 6);
        }
    }

    #[test]
    fn translation_does_not_change_integrals() {
        let at = |u, v| -> QuasiLocality {
            let a: Atom<f64> = make_atom(0.9, 2, u, v, res(5), AtomProfile::SeededRandom(11)).unwrap();
            quasilocality_profile(&a, 9, 0.9).unwrap()
        };
        let base = at(0, 0);
        let moved = at(17, 30);
        for r in [AtomRegion::CompBoth, AtomRegion::CompXOnly, AtomRegion::CompYOnly] {
            assert!((base.get(r) - moved.get(r)).abs() <= 1e-9 * base.get(r).max(1e-300));
        }
    }
}
