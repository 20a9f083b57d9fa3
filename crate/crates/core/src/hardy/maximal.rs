use crate::error::Result;
use crate::measure::lp_quasinorm;
use crate::scalar::Field;
use crate::stepfn::{StepFunction, StepFunction2D};

/// `f*(x, y) = sup_{n >= 1} |average of f over I_n(x) x I_n(y)|`.
#[derive(Debug, Clone, PartialEq)]
pub struct MaximalFunction<S> {
    values: StepFunction2D<S>,
}

impl<S> MaximalFunction<S> {
    pub fn function(&self) -> &StepFunction2D<S> {
        &self.values
    }

    pub fn into_inner(self) -> StepFunction2D<S> {
        self.values
    }
}

/// Averages at every level `n = 1..M` by repeated 4-to-1 coarsening; levels
/// beyond `M` only see `f` itself.
pub fn maximal_function<S: Field>(f: &StepFunction2D<S>) -> MaximalFunction<S> {
    let m = f.resolution().levels();
    let l = f.side();
    let mut best: Vec<S> = f.values().iter().map(|v| v.abs()).collect();
    let mut sums = f.values().to_vec();
    let mut side = l;
    for coarse in (1..m).rev() {
        let half = side / 2;
        let next: Vec<S> = (0..half * half)
            .map(|k| {
                let (a, b) = (2 * (k / half), 2 * (k % half));
                let mut acc = sums[a * side + b].clone();
                acc += &sums[a * side + b + 1];
                acc += &sums[(a + 1) * side + b];
                acc += &sums[(a + 1) * side + b + 1];
                acc
            })
            .collect();
        sums = next;
        side = half;
        let shift = m - coarse;
        let count = 1i64 << (2 * shift);
        let avg: Vec<S> = sums.iter().map(|s| s.div_i64(count).abs()).collect();
        for (k, b) in best.iter_mut().enumerate() {
            let (x, y) = (k / l, k % l);
            let a = &avg[(x >> shift) * side + (y >> shift)];
            if *a > *b {
                *b = a.clone();
            }
        }
    }
    MaximalFunction {
        values: StepFunction2D::new(f.resolution(), best).expect("grid size"),
    }
}

/// `||f||_{H_p} = ||f*||_p`.
pub fn hp_quasinorm<S: Field>(f: &StepFunction2D<S>, p: f64) -> Result<f64> {
    lp_quasinorm(maximal_function(f).function(), p)
}
