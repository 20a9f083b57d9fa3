//! Dirichlet-type kernels on `G` and `G x G` and exact checkers for the
//! identities they satisfy.
//!
//! Integer-valued kernels are built in `i64`. Kernels with a `1/n` factor are
//! also available scaled by `n` so that identity checks stay in integers.

mod alpha;
mod checks;
mod dirichlet;
mod lemma3;
mod triangular;
mod weighted;

pub use alpha::{alpha_kernel_sum, alpha_kernel_sum_with, AlphaFamily, AlphaKind};
pub use checks::{
    dirichlet_closed_form_check, dirichlet_closed_form_check_with, dirichlet_shift_check,
    dirichlet_shift_check_with, paley_check, paley_check_with, reflection_identity_check,
    reflection_identity_check_with, CheckReport, DirichletSource, Mismatch,
};
pub use dirichlet::{dirichlet, fejer_1d, fejer_1d_scaled, walsh_function, DirichletTable};
pub use lemma3::{
    lemma3_check, lemma3_terms, lemma3_terms_with, InnerRange, Lemma3Report, Lemma3Terms,
    Lemma3Variant, T5Index,
};
pub use triangular::{
    marcinkiewicz_kernel, marcinkiewicz_kernel_scaled, paired_sum, triangular_dirichlet,
    triangular_fejer_kernel, triangular_fejer_scaled, KernelMethod, TriangularScan,
};
pub use weighted::{weighted_family, WeightedKind};

use rayon::prelude::*;

/// `sum_t a_t(x) b_t(y)` on an `l x l` grid, rows evaluated in parallel.
pub(crate) fn bilinear(l: usize, terms: &[(&[i64], &[i64])]) -> Vec<i64> {
    let mut out = vec![0i64; l * l];
    out.par_chunks_mut(l).enumerate().for_each(|(x, row)| {
        for (a, b) in terms {
            let ax = a[x];
            if ax == 0 {
                continue;
            }
            for (r, &bv) in row.iter_mut().zip(b.iter()) {
                *r += ax * bv;
            }
        }
    });
    out
}
