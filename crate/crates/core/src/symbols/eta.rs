//! Analytic data for the self-maps `φ(z) = (2iz + η(z)(1−z)) / (2i + η(z)(1−z))`.
//!
//! With `η ≡ a` constant this is the parabolic non-automorphism
//! `φ_a(z) = ((2i−a)z + a) / (−az + a + 2i)`, conjugate to `w ↦ w + a` on the
//! upper half-plane.

use std::fmt;

use crate::symbols::literal::format_complex;
use crate::{series, Error, Result, C64, TWO_PI};

const SPOT_RADII: [f64; 8] = [0.0, 0.25, 0.5, 0.75, 0.9, 0.99, 0.999, 0.9999];
const SPOT_ANGLES: usize = 256;
const BOUNDARY_SAMPLES: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
pub enum EtaKind {
    Constant(C64),
    /// Ascending coefficients.
    Polynomial(Vec<C64>),
    /// `2i + exp(−(1+z)/(1−z))`: discontinuous at `1`, `1 < Im η ≤ 3`.
    SingularInner,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EtaMap {
    kind: EtaKind,
    epsilon: f64,
    sup_norm: f64,
    label: String,
}

impl fmt::Display for EtaMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

impl EtaMap {
    /// Builds the map with the largest lower bound for `Im η` the closed form
    /// or a boundary scan certifies.
    pub fn new(kind: EtaKind) -> Result<Self> {
        let epsilon = derived_epsilon(&kind);
        Self::with_epsilon(kind, epsilon)
    }

    /// Builds the map with a user-declared `ε`, spot-checked on a disc grid.
    pub fn with_epsilon(kind: EtaKind, epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0) {
            return Err(Error::InvalidArgument(format!("η needs Im η ≥ ε > 0, got ε = {epsilon}")));
        }
        let label = match &kind {
            EtaKind::Constant(c) => format!("const:{}", format_complex(*c)),
            EtaKind::Polynomial(p) => {
                format!("poly:{}", p.iter().map(|c| format_complex(*c)).collect::<Vec<_>>().join(","))
            }
            EtaKind::SingularInner => "eta-exp".to_string(),
        };
        let mut map = EtaMap { kind, epsilon, sup_norm: 0.0, label };
        let mut sup: f64 = 0.0;
        for z in spot_grid(!matches!(map.kind, EtaKind::SingularInner)) {
            let v = map.value(z);
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::InvalidArgument(format!("η is not finite at {z}")));
            }
            if v.im < epsilon * (1.0 - 1e-12) {
                return Err(Error::InvalidArgument(format!("Im η({z}) = {} is below ε = {epsilon}", v.im)));
            }
            sup = sup.max(v.norm());
        }
        map.sup_norm = match &map.kind {
            EtaKind::Constant(c) => c.norm(),
            EtaKind::SingularInner => 3.0,
            EtaKind::Polynomial(p) => {
                let h = TWO_PI / BOUNDARY_SAMPLES as f64;
                sup.max(boundary_max(p) + 0.5 * h * derivative_bound(p))
            }
        };
        Ok(map)
    }

    pub fn constant(c: C64) -> Result<Self> {
        Self::new(EtaKind::Constant(c))
    }

    pub fn polynomial(coeffs: Vec<C64>) -> Result<Self> {
        Self::new(EtaKind::Polynomial(coeffs))
    }

    pub fn singular_inner() -> Self {
        Self::with_epsilon(EtaKind::SingularInner, 1.0).expect("closed form satisfies Im η > 1")
    }

    pub fn kind(&self) -> &EtaKind {
        &self.kind
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn sup_norm(&self) -> f64 {
        self.sup_norm
    }

    /// Canonical literal, also the key under which ideal points register `η`.
    pub fn label(&self) -> &str {
        &self.label
    }

    /// `η(z)`; may be non-finite at boundary singularities.
    pub fn value(&self, z: C64) -> C64 {
        match &self.kind {
            EtaKind::Constant(c) => *c,
            EtaKind::Polynomial(p) => series::eval(p, z),
            EtaKind::SingularInner => {
                let one = C64::new(1.0, 0.0);
                C64::new(0.0, 2.0) + (-(one + z) / (one - z)).exp()
            }
        }
    }

    /// First `len` Taylor coefficients at `0`.
    pub fn taylor(&self, len: usize) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); len];
        match &self.kind {
            EtaKind::Constant(c) => {
                if len > 0 {
                    out[0] = *c;
                }
            }
            EtaKind::Polynomial(p) => {
                for (slot, &c) in out.iter_mut().zip(p) {
                    *slot = c;
                }
            }
            EtaKind::SingularInner => {
                // −(1+z)/(1−z) = −1 − 2z − 2z² − …
                let mut h = vec![C64::new(-2.0, 0.0); len.max(1)];
                h[0] = C64::new(-1.0, 0.0);
                out = series::exp(&h, len);
                if len > 0 {
                    out[0] += C64::new(0.0, 2.0);
                }
            }
        }
        out
    }

    /// Finite values of `η` on the spot-check grid (boundary included for
    /// non-singular maps).
    pub fn grid_values(&self) -> Vec<C64> {
        spot_grid(!matches!(self.kind, EtaKind::SingularInner))
            .map(|z| self.value(z))
            .filter(|v| v.re.is_finite() && v.im.is_finite())
            .collect()
    }

    pub fn is_constant(&self) -> Option<C64> {
        match &self.kind {
            EtaKind::Constant(c) => Some(*c),
            _ => None,
        }
    }
}

fn derivative_bound(p: &[C64]) -> f64 {
    p.iter().enumerate().map(|(k, c)| k as f64 * c.norm()).sum()
}

fn boundary_max(p: &[C64]) -> f64 {
    let h = TWO_PI / BOUNDARY_SAMPLES as f64;
    (0..BOUNDARY_SAMPLES).map(|k| series::eval(p, C64::from_polar(1.0, k as f64 * h)).norm()).fold(0.0, f64::max)
}

fn derived_epsilon(kind: &EtaKind) -> f64 {
    match kind {
        EtaKind::Constant(c) => c.im,
        EtaKind::SingularInner => 1.0,
        EtaKind::Polynomial(p) => {
            // Im η is harmonic: its minimum over the closed disc is on the circle
            let h = TWO_PI / BOUNDARY_SAMPLES as f64;
            let min = (0..BOUNDARY_SAMPLES)
                .map(|k| series::eval(p, C64::from_polar(1.0, k as f64 * h)).im)
                .fold(f64::INFINITY, f64::min);
            min - 0.5 * h * derivative_bound(p)
        }
    }
}

fn spot_grid(include_boundary: bool) -> impl Iterator<Item = C64> {
    let radii = SPOT_RADII.iter().copied().chain(include_boundary.then_some(1.0));
    radii.flat_map(|r| {
        let n = if r == 0.0 { 1 } else { SPOT_ANGLES };
        (0..n).map(move |k| C64::from_polar(r, TWO_PI * k as f64 / SPOT_ANGLES as f64))
    })
}

/// Parabolic parameter `a` with `Im a > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParabolicParam {
    a: C64,
}

impl ParabolicParam {
    pub fn new(a: C64) -> Result<Self> {
        if !(a.im > 0.0) || !a.re.is_finite() {
            return Err(Error::InvalidArgument(format!("parabolic parameter needs Im a > 0, got {a}")));
        }
        Ok(ParabolicParam { a })
    }

    pub fn a(&self) -> C64 {
        self.a
    }

    /// `φ_a(z)`.
    pub fn map(&self, z: C64) -> C64 {
        let two_i = C64::new(0.0, 2.0);
        ((two_i - self.a) * z + self.a) / (-self.a * z + self.a + two_i)
    }

    pub fn to_eta(&self) -> EtaMap {
        EtaMap::constant(self.a).expect("Im a > 0 is a valid constant η")
    }
}

/// Analytic self-map of the disc given by `η` or a parabolic parameter.
#[derive(Debug, Clone, PartialEq)]
pub enum SelfMap {
    Eta(EtaMap),
    Parabolic(ParabolicParam),
}

impl SelfMap {
    /// The `η` the map is built from (`η ≡ a` for parabolic maps).
    pub fn eta(&self) -> EtaMap {
        match self {
            SelfMap::Eta(e) => e.clone(),
            SelfMap::Parabolic(p) => p.to_eta(),
        }
    }

    pub fn value(&self, z: C64) -> C64 {
        match self {
            SelfMap::Parabolic(p) => p.map(z),
            SelfMap::Eta(e) => {
                let two_i = C64::new(0.0, 2.0);
                let w = e.value(z) * (C64::new(1.0, 0.0) - z);
                (two_i * z + w) / (two_i + w)
            }
        }
    }

    /// First `len` Taylor coefficients of `φ`.
    pub fn taylor(&self, len: usize) -> Result<Vec<C64>> {
        let eta = self.eta().taylor(len);
        // η(z)(1−z)
        let mut w = vec![C64::new(0.0, 0.0); len];
        for k in 0..len {
            w[k] = eta[k] - if k > 0 { eta[k - 1] } else { C64::new(0.0, 0.0) };
        }
        let two_i = C64::new(0.0, 2.0);
        let mut num = w.clone();
        let mut den = w;
        if len > 1 {
            num[1] += two_i;
        }
        if len > 0 {
            den[0] += two_i;
        }
        let phi0 = num.first().copied().unwrap_or_default() / den.first().copied().unwrap_or(two_i);
        if phi0.norm() >= 1.0 - 1e-12 {
            return Err(Error::InvalidSelfMap { modulus: phi0.norm() });
        }
        series::div(&num, &den, len)
    }
}
