use std::ops::{Add, Mul, Neg, Sub};

use crate::ops::{composition_matrix, multiplier_matrix, toeplitz_matrix, OperatorMatrix};
use crate::quadrature::{QuadratureScheme, DEFAULT_TOLERANCE};
use crate::symbols::{EtaMap, MultiplierSymbol, SelfMap, ToeplitzSymbol};
use crate::{Error, Result, C64};

/// Formal word in the generators, closed under sums, products, scalars and
/// adjoints.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Identity,
    Toeplitz(ToeplitzSymbol),
    Multiplier(MultiplierSymbol),
    Composition(SelfMap),
    Sum(Box<Expr>, Box<Expr>),
    Product(Box<Expr>, Box<Expr>),
    Scale(C64, Box<Expr>),
    Adjoint(Box<Expr>),
}

impl Expr {
    pub fn toeplitz(s: impl Into<ToeplitzSymbol>) -> Self {
        Expr::Toeplitz(s.into())
    }

    pub fn multiplier(s: MultiplierSymbol) -> Self {
        Expr::Multiplier(s)
    }

    pub fn composition(m: SelfMap) -> Self {
        Expr::Composition(m)
    }

    pub fn adjoint(self) -> Self {
        Expr::Adjoint(Box::new(self))
    }

    pub fn scale(self, s: C64) -> Self {
        Expr::Scale(s, Box::new(self))
    }

    /// `AB − BA`.
    pub fn commutator(a: Expr, b: Expr) -> Self {
        a.clone() * b.clone() - b * a
    }

    pub fn contains_product(&self) -> bool {
        match self {
            Expr::Product(..) => true,
            Expr::Sum(a, b) => a.contains_product() || b.contains_product(),
            Expr::Scale(_, a) | Expr::Adjoint(a) => a.contains_product(),
            _ => false,
        }
    }

    /// Every `η` the expression depends on, first occurrence order, unique by
    /// label.
    pub fn etas(&self) -> Vec<EtaMap> {
        let mut out: Vec<EtaMap> = Vec::new();
        self.collect_etas(&mut out);
        out
    }

    fn collect_etas(&self, out: &mut Vec<EtaMap>) {
        let mut push = |e: EtaMap| {
            if !out.iter().any(|x| x.label() == e.label()) {
                out.push(e);
            }
        };
        match self {
            Expr::Composition(m) => push(m.eta()),
            Expr::Toeplitz(ToeplitzSymbol::Analytic(a)) => {
                if let Some(e) = a.eta() {
                    push(e);
                }
            }
            Expr::Sum(a, b) | Expr::Product(a, b) => {
                a.collect_etas(out);
                b.collect_etas(out);
            }
            Expr::Scale(_, a) | Expr::Adjoint(a) => a.collect_etas(out),
            _ => {}
        }
    }
}

impl Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        Expr::Sum(Box::new(self), Box::new(rhs))
    }
}

impl Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        self + (-rhs)
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        self.scale(C64::new(-1.0, 0.0))
    }
}

impl Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::Product(Box::new(self), Box::new(rhs))
    }
}

impl Mul<Expr> for C64 {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        rhs.scale(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    /// Expressions containing products are evaluated at `padding · N` and
    /// cropped to `N`; `1` multiplies plain `N × N` sections.
    pub padding: usize,
    /// Absolute tolerance for multiplier quadrature.
    pub tolerance: f64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { padding: 2, tolerance: DEFAULT_TOLERANCE }
    }
}

pub fn evaluate_expression(e: &Expr, n: usize) -> Result<OperatorMatrix> {
    evaluate_expression_with(e, n, &EvalOptions::default())
}

pub fn evaluate_expression_with(e: &Expr, n: usize, opts: &EvalOptions) -> Result<OperatorMatrix> {
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    if opts.padding == 0 {
        return Err(Error::Configuration("padding factor must be at least 1".into()));
    }
    let w = if e.contains_product() { n * opts.padding } else { n };
    let mut ctx = EvalContext { dim: w, tolerance: opts.tolerance, scheme: None };
    let full = ctx.eval(e)?;
    if w == n {
        Ok(full)
    } else {
        full.principal_block(n)
    }
}

struct EvalContext {
    dim: usize,
    tolerance: f64,
    scheme: Option<QuadratureScheme>,
}

impl EvalContext {
    fn eval(&mut self, e: &Expr) -> Result<OperatorMatrix> {
        let n = self.dim;
        match e {
            Expr::Identity => Ok(OperatorMatrix::identity(n)),
            Expr::Toeplitz(s) => toeplitz_matrix(s, n),
            Expr::Composition(m) => composition_matrix(m, n),
            Expr::Multiplier(th) => {
                if self.scheme.is_none() {
                    self.scheme = Some(QuadratureScheme::for_dimension(n)?.with_tolerance(self.tolerance)?);
                }
                multiplier_matrix(th, n, self.scheme.as_ref().expect("initialised above"))
            }
            Expr::Sum(a, b) => self.eval(a)?.add(&self.eval(b)?),
            Expr::Product(a, b) => self.eval(a)?.matmul(&self.eval(b)?),
            Expr::Scale(s, a) => Ok(self.eval(a)?.scale(*s)),
            Expr::Adjoint(a) => Ok(self.eval(a)?.adjoint()),
        }
    }
}
