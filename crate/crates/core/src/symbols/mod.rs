//! Boundary symbols, multiplier symbols and analytic self-map data.

mod analytic;
pub mod cluster;
mod eta;
pub mod literal;
mod multiplier;
mod piecewise;
mod winding;

pub use analytic::{AnalyticSymbol, ToeplitzSymbol};
pub use cluster::{cluster_set, sample_paths, ClusterSampling, ClusterSet, PathKind, QcSample};
pub use eta::{EtaKind, EtaMap, ParabolicParam, SelfMap};
pub use multiplier::{MultiplierKind, MultiplierSymbol, LIMIT_TOLERANCE};
pub use piecewise::{
    step_coefficient, step_value, ContinuousPart, Jump, PiecewiseSymbol, SampledGrid, TrigPolynomial, ANGLE_EPS,
    MAX_FOURIER_INDEX, REMAINDER_GRID,
};
pub use winding::{winding_index, winding_index_with_margin, DEFAULT_MARGIN};
