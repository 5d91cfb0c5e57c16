//! Continuous multiplier symbols on `[0, ∞]`.

use std::fmt;
use std::sync::Arc;

use crate::{series, Error, Result, C64};

/// How far out the log grid used for validation reaches.
const LOG_GRID_MAX: f64 = 1e8;
const LOG_GRID_POINTS: usize = 2001;
/// Declared tolerance for `ϑ(t) → ϑ(∞)`.
pub const LIMIT_TOLERANCE: f64 = 1e-6;

type Evaluator = Arc<dyn Fn(f64) -> C64 + Send + Sync>;

#[derive(Clone)]
pub enum MultiplierKind {
    Constant(C64),
    /// `e^{iat}` with `Im a > 0`.
    Exponential(C64),
    /// `(−it)ⁿ e^{−αt} / n!`.
    SeriesTerm {
        order: u32,
        alpha: f64,
    },
    /// `p(t)/q(t)`, ascending coefficients, `deg p ≤ deg q`.
    Rational {
        numerator: Vec<C64>,
        denominator: Vec<C64>,
    },
    Product(Vec<MultiplierSymbol>),
    Sum(Vec<MultiplierSymbol>),
    Custom {
        label: String,
        f: Evaluator,
        at_infinity: C64,
    },
}

impl fmt::Debug for MultiplierKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MultiplierKind::Constant(c) => write!(f, "Constant({c})"),
            MultiplierKind::Exponential(a) => write!(f, "Exponential({a})"),
            MultiplierKind::SeriesTerm { order, alpha } => write!(f, "SeriesTerm(n={order}, alpha={alpha})"),
            MultiplierKind::Rational { numerator, denominator } => {
                write!(f, "Rational({numerator:?} / {denominator:?})")
            }
            MultiplierKind::Product(v) => f.debug_tuple("Product").field(v).finish(),
            MultiplierKind::Sum(v) => f.debug_tuple("Sum").field(v).finish(),
            MultiplierKind::Custom { label, at_infinity, .. } => write!(f, "Custom({label}, ∞ ↦ {at_infinity})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct MultiplierSymbol {
    kind: MultiplierKind,
    at_infinity: C64,
    sup_norm: f64,
}

impl PartialEq for MultiplierSymbol {
    /// Structural identity is not decidable for custom evaluators; two
    /// multipliers compare equal when they print the same.
    fn eq(&self, other: &Self) -> bool {
        format!("{self:?}") == format!("{other:?}")
    }
}

impl MultiplierSymbol {
    pub fn new(kind: MultiplierKind) -> Result<Self> {
        let at_infinity = match &kind {
            MultiplierKind::Constant(c) => *c,
            MultiplierKind::Exponential(a) => {
                if a.im <= 0.0 {
                    return Err(Error::InvalidArgument(format!("exponential multiplier needs Im a > 0, got {a}")));
                }
                C64::new(0.0, 0.0)
            }
            MultiplierKind::SeriesTerm { alpha, .. } => {
                if *alpha <= 0.0 {
                    return Err(Error::InvalidArgument(format!("series term needs alpha > 0, got {alpha}")));
                }
                C64::new(0.0, 0.0)
            }
            MultiplierKind::Rational { numerator, denominator } => rational_at_infinity(numerator, denominator)?,
            MultiplierKind::Product(parts) => parts.iter().map(|p| p.at_infinity).product(),
            MultiplierKind::Sum(parts) => parts.iter().map(|p| p.at_infinity).sum(),
            MultiplierKind::Custom { at_infinity, .. } => *at_infinity,
        };
        let mut sym = MultiplierSymbol { kind, at_infinity, sup_norm: 0.0 };
        sym.sup_norm = sym.validate()?;
        Ok(sym)
    }

    pub fn constant(c: C64) -> Self {
        Self::new(MultiplierKind::Constant(c)).expect("constants are valid multipliers")
    }

    /// `ϑ_a(t) = e^{iat}`.
    pub fn exponential(a: C64) -> Result<Self> {
        Self::new(MultiplierKind::Exponential(a))
    }

    /// `ϑ_n(t) = (−it)ⁿ e^{−αt} / n!`.
    pub fn series_term(order: u32, alpha: f64) -> Result<Self> {
        Self::new(MultiplierKind::SeriesTerm { order, alpha })
    }

    pub fn rational(numerator: Vec<C64>, denominator: Vec<C64>) -> Result<Self> {
        Self::new(MultiplierKind::Rational { numerator, denominator })
    }

    pub fn custom(
        label: impl Into<String>,
        at_infinity: C64,
        f: impl Fn(f64) -> C64 + Send + Sync + 'static,
    ) -> Result<Self> {
        Self::new(MultiplierKind::Custom { label: label.into(), f: Arc::new(f), at_infinity })
    }

    pub fn product(parts: Vec<MultiplierSymbol>) -> Result<Self> {
        Self::new(MultiplierKind::Product(parts))
    }

    pub fn sum(parts: Vec<MultiplierSymbol>) -> Result<Self> {
        Self::new(MultiplierKind::Sum(parts))
    }

    pub fn kind(&self) -> &MultiplierKind {
        &self.kind
    }

    pub fn value_at_infinity(&self) -> C64 {
        self.at_infinity
    }

    /// Sup norm over the validation grid and `t = ∞`.
    pub fn sup_norm(&self) -> f64 {
        self.sup_norm
    }

    pub fn value(&self, t: f64) -> C64 {
        match &self.kind {
            MultiplierKind::Constant(c) => *c,
            MultiplierKind::Exponential(a) => (C64::new(0.0, 1.0) * a * t).exp(),
            MultiplierKind::SeriesTerm { order, alpha } => series_term_value(*order, *alpha, t),
            MultiplierKind::Rational { numerator, denominator } => {
                let tz = C64::new(t, 0.0);
                series::eval(numerator, tz) / series::eval(denominator, tz)
            }
            MultiplierKind::Product(parts) => parts.iter().map(|p| p.value(t)).product(),
            MultiplierKind::Sum(parts) => parts.iter().map(|p| p.value(t)).sum(),
            MultiplierKind::Custom { f, .. } => f(t),
        }
    }

    /// Value on `[0, ∞]`, `None` meaning `∞`.
    pub fn value_extended(&self, t: Option<f64>) -> C64 {
        t.map_or(self.at_infinity, |t| self.value(t))
    }

    pub fn is_real_valued(&self) -> bool {
        self.at_infinity.im == 0.0 && log_grid().all(|t| self.value(t).im == 0.0)
    }

    fn validate(&self) -> Result<f64> {
        let mut sup = self.at_infinity.norm();
        for t in log_grid() {
            let v = self.value(t);
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::InvalidArgument(format!("multiplier is not finite at t = {t}")));
            }
            sup = sup.max(v.norm());
        }
        let tail = self.value(LOG_GRID_MAX);
        if (tail - self.at_infinity).norm() > LIMIT_TOLERANCE {
            return Err(Error::InvalidArgument(format!(
                "multiplier does not approach its value at infinity: ϑ({LOG_GRID_MAX:e}) = {tail}, ϑ(∞) = {}",
                self.at_infinity
            )));
        }
        Ok(sup)
    }
}

fn series_term_value(order: u32, alpha: f64, t: f64) -> C64 {
    // (−it)ⁿ/n! accumulated term by term to avoid overflow of tⁿ and n!
    let mut v = C64::new((-alpha * t).exp(), 0.0);
    for k in 1..=order {
        v *= C64::new(0.0, -t / k as f64);
    }
    v
}

fn rational_at_infinity(num: &[C64], den: &[C64]) -> Result<C64> {
    let degree = |p: &[C64]| p.iter().rposition(|c| c.norm() != 0.0);
    let dq = degree(den).ok_or_else(|| Error::InvalidArgument("rational multiplier has zero denominator".into()))?;
    match degree(num) {
        None => Ok(C64::new(0.0, 0.0)),
        Some(dp) if dp < dq => Ok(C64::new(0.0, 0.0)),
        Some(dp) if dp == dq => Ok(num[dp] / den[dq]),
        Some(_) => Err(Error::InvalidArgument("rational multiplier is unbounded at infinity".into())),
    }
}

/// `0` followed by a log-spaced grid on `[1e-6, 1e8]`.
fn log_grid() -> impl Iterator<Item = f64> {
    let (lo, hi) = (1e-6f64.ln(), LOG_GRID_MAX.ln());
    std::iter::once(0.0)
        .chain((0..LOG_GRID_POINTS).map(move |k| (lo + (hi - lo) * k as f64 / (LOG_GRID_POINTS - 1) as f64).exp()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn exponential_with_a_equal_i_is_decaying() {
        let th = MultiplierSymbol::exponential(c(0.0, 1.0)).unwrap();
        assert!((th.value(1.0) - c((-1.0f64).exp(), 0.0)).norm() < 1e-15);
        assert_eq!(th.value_at_infinity(), c(0.0, 0.0));
        assert!(th.is_real_valued());
        assert!((th.sup_norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn exponential_requires_upper_half_plane() {
        assert!(MultiplierSymbol::exponential(c(1.0, 0.0)).is_err());
    }

    #[test]
    fn series_term_closed_form() {
        let th = MultiplierSymbol::series_term(3, 2.0).unwrap();
        let t = 1.7f64;
        let want = c(0.0, -t).powu(3) * (-2.0 * t).exp() / 6.0;
        assert!((th.value(t) - want).norm() < 1e-15);
    }

    #[test]
    fn rational_limits() {
        let inv = MultiplierSymbol::rational(vec![c(1.0, 0.0)], vec![c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert_eq!(inv.value_at_infinity(), c(0.0, 0.0));
        assert!((inv.value(1.0) - c(0.5, 0.0)).norm() < 1e-15);
        let ratio = MultiplierSymbol::rational(vec![c(0.0, 0.0), c(2.0, 0.0)], vec![c(1.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(ratio.unwrap().value_at_infinity(), c(2.0, 0.0));
        assert!(MultiplierSymbol::rational(vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0)]).is_err());
    }

    #[test]
    fn custom_must_converge_to_declared_limit() {
        assert!(MultiplierSymbol::custom("bad", c(1.0, 0.0), |t| C64::new((-t).exp(), 0.0)).is_err());
        assert!(MultiplierSymbol::custom("ok", c(0.0, 0.0), |t| C64::new((-t).exp(), 0.0)).is_ok());
    }

    #[test]
    fn product_limit_and_value() {
        let a = MultiplierSymbol::exponential(c(0.0, 1.0)).unwrap();
        let b = MultiplierSymbol::constant(c(2.0, 0.0));
        let p = MultiplierSymbol::product(vec![a, b]).unwrap();
        assert!((p.value(0.0) - c(2.0, 0.0)).norm() < 1e-15);
        assert_eq!(p.value_at_infinity(), c(0.0, 0.0));
    }
}
