//! Piecewise continuous boundary symbols.
//!
//! A symbol is a continuous part plus a finite linear combination of canonical
//! steps `u_λ(e^{iθ}) = (θ − θ_λ)/2π` on the arc `(θ_λ, θ_λ + 2π)`. Each step
//! jumps from 1 (left limit) to 0 (right limit) at `λ`, so one-sided limits
//! and Fourier coefficients of the step part are exact.
//!
//! Pointwise values at a jump are the right limit.

use std::collections::BTreeMap;
use std::sync::Arc;

use rustfft::FftPlanner;

use crate::{normalize_angle, Error, Result, C64, TWO_PI};

/// Largest `|n|` accepted by [`PiecewiseSymbol::fourier_coefficient`].
pub const MAX_FOURIER_INDEX: i64 = 1 << 22;

/// Grid size used for the continuous remainder of products and sums that
/// leave the trigonometric-polynomial class.
pub const REMAINDER_GRID: usize = 1 << 16;

/// Two jump locations closer than this (mod 2π) are the same point.
pub const ANGLE_EPS: f64 = 1e-12;

const ZERO: C64 = C64::new(0.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jump {
    pub angle: f64,
    pub height: C64,
}

/// Finite Fourier series `Σ c_n e^{inθ}`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TrigPolynomial {
    coeffs: BTreeMap<i64, C64>,
}

impl TrigPolynomial {
    pub fn constant(c: C64) -> Self {
        Self::from_coeffs([(0, c)])
    }

    pub fn monomial(n: i64) -> Self {
        Self::from_coeffs([(n, C64::new(1.0, 0.0))])
    }

    pub fn from_coeffs(coeffs: impl IntoIterator<Item = (i64, C64)>) -> Self {
        let mut map = BTreeMap::new();
        for (n, c) in coeffs {
            *map.entry(n).or_insert(ZERO) += c;
        }
        map.retain(|_, c| *c != ZERO);
        TrigPolynomial { coeffs: map }
    }

    /// Analytic polynomial with ascending coefficients `c_0, c_1, …`.
    pub fn analytic(coeffs: &[C64]) -> Self {
        Self::from_coeffs(coeffs.iter().enumerate().map(|(n, &c)| (n as i64, c)))
    }

    pub fn coefficient(&self, n: i64) -> C64 {
        self.coeffs.get(&n).copied().unwrap_or(ZERO)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, C64)> + '_ {
        self.coeffs.iter().map(|(&n, &c)| (n, c))
    }

    pub fn value(&self, theta: f64) -> C64 {
        self.coeffs.iter().map(|(&n, &c)| c * C64::from_polar(1.0, n as f64 * theta)).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_coeffs(self.terms().chain(other.terms()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = BTreeMap::new();
        for (n, a) in self.terms() {
            for (m, b) in other.terms() {
                *out.entry(n + m).or_insert(ZERO) += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::from_coeffs(self.terms().map(|(n, c)| (n, c * s)))
    }

    pub fn conj(&self) -> Self {
        Self::from_coeffs(self.terms().map(|(n, c)| (-n, c.conj())))
    }

    /// `Σ |c_n|`, an upper bound for the sup norm.
    pub fn abs_sum(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).sum()
    }

    /// `Σ |n c_n|`, an upper bound for the derivative in θ.
    pub fn derivative_bound(&self) -> f64 {
        self.coeffs.iter().map(|(&n, c)| n.unsigned_abs() as f64 * c.norm()).sum()
    }
}

/// Periodic samples at `θ_k = 2πk/G` with linear interpolation in angle.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledGrid {
    values: Arc<[C64]>,
}

impl SampledGrid {
    pub fn new(values: Vec<C64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::MalformedSymbol("sampled grid needs at least two points".into()));
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::MalformedSymbol("sampled grid contains non-finite values".into()));
        }
        Ok(SampledGrid { values: values.into() })
    }

    pub fn from_fn(size: usize, f: impl Fn(f64) -> C64) -> Result<Self> {
        let h = TWO_PI / size as f64;
        Self::new((0..size).map(|k| f(k as f64 * h)).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn value(&self, theta: f64) -> C64 {
        let g = self.values.len();
        let x = normalize_angle(theta) / TWO_PI * g as f64;
        let k = (x.floor() as usize).min(g - 1);
        let frac = x - k as f64;
        let a = self.values[k];
        let b = self.values[(k + 1) % g];
        a + (b - a) * frac
    }

    /// Exact Fourier coefficients of the piecewise-linear interpolant for
    /// `n = -max_abs..=max_abs`: the DFT of the samples times `sinc²(πn/G)`.
    pub fn coefficients(&self, max_abs: usize) -> Vec<C64> {
        let g = self.values.len();
        let mut buf: Vec<C64> = self.values.to_vec();
        FftPlanner::new().plan_fft_forward(g).process(&mut buf);
        let inv_g = 1.0 / g as f64;
        (-(max_abs as i64)..=max_abs as i64)
            .map(|n| {
                let dft = buf[n.rem_euclid(g as i64) as usize] * inv_g;
                dft * sinc_squared(std::f64::consts::PI * n as f64 / g as f64)
            })
            .collect()
    }
}

fn sinc_squared(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        let s = x.sin() / x;
        s * s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ContinuousPart {
    Trig(TrigPolynomial),
    Sampled(SampledGrid),
}

impl ContinuousPart {
    fn value(&self, theta: f64) -> C64 {
        match self {
            ContinuousPart::Trig(p) => p.value(theta),
            ContinuousPart::Sampled(g) => g.value(theta),
        }
    }
}

/// Value of the canonical step at `1` evaluated at angular offset `delta`.
pub fn step_value(delta: f64) -> f64 {
    let x = (delta / TWO_PI).rem_euclid(1.0);
    if x >= 1.0 {
        0.0
    } else {
        x
    }
}

/// Closed-form `û_1(n)`: `1/2` at `n = 0`, `i/(2πn)` otherwise.
pub fn step_coefficient(n: i64) -> C64 {
    if n == 0 {
        C64::new(0.5, 0.0)
    } else {
        C64::new(0.0, 1.0 / (TWO_PI * n as f64))
    }
}

fn same_angle(a: f64, b: f64) -> bool {
    let d = (a - b).rem_euclid(TWO_PI);
    d < ANGLE_EPS || TWO_PI - d < ANGLE_EPS
}

#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseSymbol {
    continuous: ContinuousPart,
    jumps: Vec<Jump>,
}

impl PiecewiseSymbol {
    pub fn new(continuous: ContinuousPart, jumps: Vec<Jump>) -> Result<Self> {
        let mut normalized: Vec<Jump> = Vec::with_capacity(jumps.len());
        for j in jumps {
            if !j.angle.is_finite() || !j.height.re.is_finite() || !j.height.im.is_finite() {
                return Err(Error::MalformedSymbol(format!("non-finite jump {j:?}")));
            }
            let angle = normalize_angle(j.angle);
            if normalized.iter().any(|k| same_angle(k.angle, angle)) {
                return Err(Error::MalformedSymbol(format!("duplicate jump location at angle {angle}")));
            }
            normalized.push(Jump { angle, height: j.height });
        }
        normalized.sort_by(|a, b| a.angle.total_cmp(&b.angle));
        if let ContinuousPart::Trig(p) = &continuous {
            if p.terms().any(|(_, c)| !c.re.is_finite() || !c.im.is_finite()) {
                return Err(Error::MalformedSymbol("non-finite trigonometric coefficient".into()));
            }
        }
        Ok(PiecewiseSymbol { continuous, jumps: normalized })
    }

    pub fn trig(p: TrigPolynomial) -> Self {
        PiecewiseSymbol { continuous: ContinuousPart::Trig(p), jumps: Vec::new() }
    }

    pub fn constant(c: C64) -> Self {
        Self::trig(TrigPolynomial::constant(c))
    }

    /// `z^n` on the circle; negative `n` gives powers of `conj(z)`.
    pub fn monomial(n: i64) -> Self {
        Self::trig(TrigPolynomial::monomial(n))
    }

    /// `height · u_λ` with `λ = e^{i·angle}`.
    pub fn step(angle: f64, height: C64) -> Result<Self> {
        Self::new(ContinuousPart::Trig(TrigPolynomial::default()), vec![Jump { angle, height }])
    }

    pub fn continuous_part(&self) -> &ContinuousPart {
        &self.continuous
    }

    pub fn jumps(&self) -> &[Jump] {
        &self.jumps
    }

    pub fn is_continuous(&self) -> bool {
        self.jumps.iter().all(|j| j.height == ZERO)
    }

    pub fn value(&self, theta: f64) -> C64 {
        let mut v = self.continuous.value(theta);
        for j in &self.jumps {
            v += j.height * step_value(theta - j.angle);
        }
        v
    }

    /// `(a(λ⁻), a(λ⁺))` at `λ = e^{iθ}`.
    pub fn one_sided_limits(&self, theta: f64) -> (C64, C64) {
        let c = self.continuous.value(theta);
        let (mut left, mut right) = (c, c);
        for j in &self.jumps {
            if same_angle(theta, j.angle) {
                left += j.height;
            } else {
                let v = j.height * step_value(theta - j.angle);
                left += v;
                right += v;
            }
        }
        (left, right)
    }

    pub fn fourier_coefficient(&self, n: i64) -> Result<C64> {
        if n.abs() > MAX_FOURIER_INDEX {
            return Err(Error::IndexOutOfRange { index: n, max: MAX_FOURIER_INDEX });
        }
        let cont = match &self.continuous {
            ContinuousPart::Trig(p) => p.coefficient(n),
            ContinuousPart::Sampled(g) => {
                let h = TWO_PI / g.len() as f64;
                let dft: C64 = g
                    .values()
                    .iter()
                    .enumerate()
                    .map(|(k, &v)| v * C64::from_polar(1.0, -(n as f64) * k as f64 * h))
                    .sum();
                dft / g.len() as f64 * sinc_squared(std::f64::consts::PI * n as f64 / g.len() as f64)
            }
        };
        Ok(cont + self.step_part_coefficient(n))
    }

    fn step_part_coefficient(&self, n: i64) -> C64 {
        let base = step_coefficient(n);
        self.jumps.iter().map(|j| j.height * base * C64::from_polar(1.0, -(n as f64) * j.angle)).sum()
    }

    /// Coefficients for `n = -max_abs..=max_abs`; entry `n + max_abs` holds `â(n)`.
    pub fn fourier_coefficients(&self, max_abs: usize) -> Result<Vec<C64>> {
        if max_abs as i64 > MAX_FOURIER_INDEX {
            return Err(Error::IndexOutOfRange { index: max_abs as i64, max: MAX_FOURIER_INDEX });
        }
        let mut out = match &self.continuous {
            ContinuousPart::Trig(p) => {
                (-(max_abs as i64)..=max_abs as i64).map(|n| p.coefficient(n)).collect::<Vec<_>>()
            }
            ContinuousPart::Sampled(g) => g.coefficients(max_abs),
        };
        if !self.jumps.is_empty() {
            for (slot, n) in out.iter_mut().zip(-(max_abs as i64)..) {
                *slot += self.step_part_coefficient(n);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: C64) -> Self {
        let continuous = match &self.continuous {
            ContinuousPart::Trig(p) => ContinuousPart::Trig(p.scale(s)),
            ContinuousPart::Sampled(g) => {
                ContinuousPart::Sampled(SampledGrid { values: g.values().iter().map(|&v| v * s).collect() })
            }
        };
        let jumps = self.jumps.iter().map(|j| Jump { angle: j.angle, height: j.height * s }).collect();
        PiecewiseSymbol { continuous, jumps }
    }

    pub fn conj(&self) -> Self {
        let continuous = match &self.continuous {
            ContinuousPart::Trig(p) => ContinuousPart::Trig(p.conj()),
            ContinuousPart::Sampled(g) => {
                ContinuousPart::Sampled(SampledGrid { values: g.values().iter().map(|v| v.conj()).collect() })
            }
        };
        let jumps = self.jumps.iter().map(|j| Jump { angle: j.angle, height: j.height.conj() }).collect();
        PiecewiseSymbol { continuous, jumps }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if let (ContinuousPart::Trig(p), ContinuousPart::Trig(q)) = (&self.continuous, &other.continuous) {
            let mut jumps = self.jumps.clone();
            for j in &other.jumps {
                match jumps.iter_mut().find(|k| same_angle(k.angle, j.angle)) {
                    Some(k) => k.height += j.height,
                    None => jumps.push(*j),
                }
            }
            return Self::new(ContinuousPart::Trig(p.add(q)), jumps);
        }
        self.combine(other, |a, b| a + b)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if let (ContinuousPart::Trig(p), ContinuousPart::Trig(q)) = (&self.continuous, &other.continuous) {
            if self.jumps.is_empty() && other.jumps.is_empty() {
                return Ok(Self::trig(p.mul(q)));
            }
        }
        self.combine(other, |a, b| a * b)
    }

    /// Pointwise combination: jump heights from the combined one-sided limits,
    /// continuous remainder resampled on [`REMAINDER_GRID`].
    fn combine(&self, other: &Self, op: impl Fn(C64, C64) -> C64) -> Result<Self> {
        let mut angles: Vec<f64> = self.jumps.iter().map(|j| j.angle).collect();
        for j in &other.jumps {
            if !angles.iter().any(|&a| same_angle(a, j.angle)) {
                angles.push(j.angle);
            }
        }
        let jumps: Vec<Jump> = angles
            .iter()
            .map(|&angle| {
                let (la, ra) = self.one_sided_limits(angle);
                let (lb, rb) = other.one_sided_limits(angle);
                Jump { angle, height: op(la, lb) - op(ra, rb) }
            })
            .collect();
        let remainder = SampledGrid::from_fn(REMAINDER_GRID, |theta| {
            let mut v = op(self.value(theta), other.value(theta));
            for j in &jumps {
                v -= j.height * step_value(theta - j.angle);
            }
            v
        })?;
        Self::new(ContinuousPart::Sampled(remainder), jumps)
    }

    /// Every value taken is real (up to exact zero imaginary parts).
    pub fn is_real_valued(&self) -> bool {
        let cont = match &self.continuous {
            ContinuousPart::Trig(p) => p.terms().all(|(n, c)| p.coefficient(-n) == c.conj()),
            ContinuousPart::Sampled(g) => g.values().iter().all(|v| v.im == 0.0),
        };
        cont && self.jumps.iter().all(|j| j.height.im == 0.0)
    }

    /// Sup norm estimated from `samples` equispaced values plus all one-sided
    /// limits at jumps.
    pub fn sup_norm_estimate(&self, samples: usize) -> f64 {
        let h = TWO_PI / samples as f64;
        let grid = (0..samples).map(|k| self.value(k as f64 * h).norm());
        let limits = self.jumps.iter().flat_map(|j| {
            let (l, r) = self.one_sided_limits(j.angle);
            [l.norm(), r.norm()]
        });
        grid.chain(limits).fold(0.0, f64::max)
    }
}
