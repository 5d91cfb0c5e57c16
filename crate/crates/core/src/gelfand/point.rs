use crate::ops::Expr;
use crate::symbols::{ToeplitzSymbol, ANGLE_EPS};
use crate::{normalize_angle, Error, Result, C64, TWO_PI};

/// Point of `[0, ∞]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extended {
    Finite(f64),
    Infinity,
}

impl Extended {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Extended::Infinity)
    }
}

/// Stand-in for a point of the QC fiber: an approach path and the limit value
/// it assigns to each registered `η`, keyed by the map's label.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct QcSurrogate {
    pub path: String,
    pub values: Vec<(String, C64)>,
}

impl QcSurrogate {
    pub fn new(path: impl Into<String>, values: Vec<(String, C64)>) -> Self {
        QcSurrogate { path: path.into(), values }
    }

    pub fn value(&self, label: &str) -> Option<C64> {
        self.values.iter().find(|(l, _)| l == label).map(|(_, v)| *v)
    }
}

/// Sampled point `(λ, s, y, z)` of the maximal ideal space. A finite `z` forces
/// `λ = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealPoint {
    lambda: f64,
    s: f64,
    z: Extended,
    surrogate: QcSurrogate,
}

impl IdealPoint {
    pub fn new(lambda: f64, s: f64, z: Extended, surrogate: QcSurrogate) -> Result<Self> {
        if !lambda.is_finite() {
            return Err(Error::InvalidArgument(format!("fiber angle must be finite, got {lambda}")));
        }
        let lambda = normalize_angle(lambda);
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::InvalidArgument(format!("fiber coordinate s must lie in [0,1], got {s}")));
        }
        if let Extended::Finite(t) = z {
            if !(t >= 0.0 && t.is_finite()) {
                return Err(Error::InvalidArgument(format!("z must be a nonnegative real or infinity, got {t}")));
            }
            if lambda > ANGLE_EPS && TWO_PI - lambda > ANGLE_EPS {
                return Err(Error::InvalidArgument(format!("finite z = {t} requires λ = 1, got angle {lambda}")));
            }
        }
        Ok(IdealPoint { lambda, s, z, surrogate })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn z(&self) -> Extended {
        self.z
    }

    pub fn surrogate(&self) -> &QcSurrogate {
        &self.surrogate
    }

    fn eta_value(&self, label: &str) -> Result<C64> {
        self.surrogate.value(label).ok_or_else(|| {
            Error::Configuration(format!("η `{label}` is not registered with the ideal point's QC surrogate"))
        })
    }
}

/// `Γ(e)(p)`: the Gelfand transform of the coset of `e` evaluated at `p`.
pub fn gelfand_evaluate(e: &Expr, p: &IdealPoint) -> Result<C64> {
    Ok(match e {
        Expr::Identity => C64::new(1.0, 0.0),
        Expr::Toeplitz(ToeplitzSymbol::Piecewise(a)) => {
            let (left, right) = a.one_sided_limits(p.lambda);
            right + (left - right) * p.s
        }
        Expr::Toeplitz(ToeplitzSymbol::Analytic(h)) => {
            let lambda = C64::from_polar(1.0, p.lambda);
            let w = match h.eta() {
                Some(eta) => p.eta_value(eta.label())?,
                None => C64::new(0.0, 0.0),
            };
            h.boundary_value(lambda, w)
        }
        Expr::Multiplier(th) => match p.z {
            Extended::Finite(t) => th.value(t),
            Extended::Infinity => th.value_at_infinity(),
        },
        Expr::Composition(m) => match p.z {
            // |e^{izw}| ≤ e^{−εz} → 0
            Extended::Infinity => C64::new(0.0, 0.0),
            Extended::Finite(t) => {
                let w = p.eta_value(m.eta().label())?;
                (C64::new(0.0, t) * w).exp()
            }
        },
        Expr::Sum(a, b) => gelfand_evaluate(a, p)? + gelfand_evaluate(b, p)?,
        Expr::Product(a, b) => gelfand_evaluate(a, p)? * gelfand_evaluate(b, p)?,
        Expr::Scale(s, a) => s * gelfand_evaluate(a, p)?,
        Expr::Adjoint(a) => gelfand_evaluate(a, p)?.conj(),
    })
}
