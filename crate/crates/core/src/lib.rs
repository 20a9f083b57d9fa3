//! Exact finite-resolution Walsh-Fourier analysis on the dyadic group `G`
//! and on `G x G`.
//!
//! Functions live on the `2^M` (or `4^M`) equal cells of a fixed
//! resolution. Integer-valued kernels are carried in `i64`, exact work with
//! denominators in [`Rational`], and the float mode in `f64`.

pub mod dyadic;
pub mod error;
pub mod hardy;
pub mod kernels;
pub mod measure;
pub mod operators;
pub mod scalar;
pub mod stepfn;

pub use dyadic::{DyadicPoint, Resolution, WalshIndex};
pub use error::{Error, Result};
pub use scalar::{Field, Rational, Scalar};
pub use stepfn::{StepFunction, StepFunction1D, StepFunction2D};
