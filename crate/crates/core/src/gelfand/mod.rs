//! Sampled maximal ideal space, Gelfand transforms and essential spectra.
//!
//! A point is `(λ, s, y, z)`: a base point `λ` on the circle, the piecewise
//! fiber coordinate `s ∈ [0,1]`, a QC functional `y` over `λ` and `z ∈ [0, ∞]`.
//! Either `z = ∞` or `λ = 1`. On a point, Toeplitz leaves take the value
//! `s a(λ⁻) + (1−s) a(λ⁺)`, multipliers `ϑ(z)`, and compositions
//! `e^{i z η̂(y)}` (0 at `z = ∞`).
//!
//! QC functionals are replaced by approach paths: the sampled space is the
//! path-reachable part of the true one.

mod point;
mod spectrum;

pub use point::{gelfand_evaluate, Extended, IdealPoint, QcSurrogate};
pub use spectrum::{
    default_t_values, hausdorff_distance, hausdorff_points, ideal_points, log_t_values, spectrum_general,
    spectrum_product, spectrum_sum, SpectrumGrids, SpectrumSet, DEFAULT_RESOLUTION,
};
