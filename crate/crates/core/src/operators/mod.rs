//! Walsh-Fourier transforms, partial sums and Fejer means on `G x G`.

mod fwht;
mod means;
mod spectrum;

pub use fwht::{fwht_1d, fwht_2d_in_place, fwht_in_place};
pub use means::{
    dyadic_convolve, marcinkiewicz_fejer_mean, triangular_fejer_mean, triangular_kernel_l1_norm,
    Route, SquareMultiplier, TriangularMultiplier,
};
pub use spectrum::{
    fourier_coefficients, rectangular_partial_sum, square_partial_sum, synthesize,
    triangular_partial_sum, SpectrumGrid2D,
};
