//! Shared fixtures for the criterion benchmarks.

use hardy_spectra::{MultiplierSymbol, ParabolicParam, PiecewiseSymbol, SelfMap, C64};

pub fn unit_step() -> PiecewiseSymbol {
    PiecewiseSymbol::step(0.0, C64::new(1.0, 0.0)).expect("finite height")
}

pub fn parabolic_i() -> SelfMap {
    SelfMap::Parabolic(ParabolicParam::new(C64::new(0.0, 1.0)).expect("Im a > 0"))
}

pub fn exponential_i() -> MultiplierSymbol {
    MultiplierSymbol::exponential(C64::new(0.0, 1.0)).expect("Im a > 0")
}
