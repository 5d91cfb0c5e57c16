//! Finite-section laboratory for the C*-algebra generated by Toeplitz operators
//! with piecewise (quasi)continuous symbols, parabolic composition operators and
//! continuous Fourier multipliers on the Hardy space H²(𝔻).
//!
//! The crate is organised bottom-up:
//!
//! * [`symbols`]: boundary symbols on the circle, multiplier symbols on
//!   `[0, ∞]`, analytic self-map data and cluster-set sampling.
//! * [`ops`]: finite matrix truncations in the monomial basis and the
//!   evaluation of formal algebra expressions.
//! * [`gelfand`]: sampled points of the maximal ideal space, Gelfand
//!   transforms and essential-spectrum sets.
//! * [`verify`]: compactness diagnostics, operator-identity residuals and
//!   series convergence checks.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod csv;
mod error;
pub mod gelfand;
pub mod ops;
pub mod quadrature;
pub mod series;
pub mod symbols;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;

pub use gelfand::{
    gelfand_evaluate, hausdorff_distance, spectrum_general, spectrum_product, spectrum_sum, Extended, IdealPoint,
    QcSurrogate, SpectrumGrids, SpectrumSet,
};
pub use ops::{
    composition_matrix, eigenvalues, evaluate_expression, evaluate_expression_with, multiplier_matrix, singular_values,
    toeplitz_matrix, EvalOptions, Expr, OperatorMatrix,
};
pub use quadrature::QuadratureScheme;
pub use symbols::{
    cluster_set, winding_index, AnalyticSymbol, ClusterSampling, ClusterSet, EtaMap, MultiplierSymbol, ParabolicParam,
    PiecewiseSymbol, SelfMap, ToeplitzSymbol,
};
pub use verify::{
    choose_alpha, compactness_profile, finite_section_eigenvalues, identity_residual, series_approximation,
    CompactnessReport, IdentityForm, SeriesConfig, SeriesResult, ThresholdPolicy, Verdict,
};

pub(crate) const TWO_PI: f64 = std::f64::consts::TAU;

/// Normalises an angle into `[0, 2π)`.
pub fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TWO_PI);
    if t >= TWO_PI {
        0.0
    } else {
        t
    }
}
