use crate::ops::{evaluate_expression, Expr};
use crate::symbols::{AnalyticSymbol, MultiplierSymbol, ParabolicParam, SelfMap};
use crate::{Error, Result};

/// Which multiplier `h` is paired with `C_{φ_a}` in `T_h C_{φ_a} = D_{ϑ_a}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityForm {
    /// `h = 2i / (2i + a(1−z))`, for which the identity holds.
    Corrected,
    /// `h = 2i(1−z) / (2i + a(1−z))`, which does not satisfy it.
    Printed,
}

/// Max modulus of the leading `m × m` block of `lhs − rhs` at dimension `n`.
pub fn block_residual(lhs: &Expr, rhs: &Expr, n: usize, m: usize) -> Result<f64> {
    if m == 0 || m > n {
        return Err(Error::InvalidArgument(format!("block {m} outside 1..={n}")));
    }
    let diff = lhs.clone() - rhs.clone();
    Ok(evaluate_expression(&diff, n)?.principal_block(m)?.max_modulus())
}

/// `T_h C_{φ_a}` and `D_{ϑ_a}` for the given form.
pub fn identity_sides(a: &ParabolicParam, form: IdentityForm) -> Result<(Expr, Expr)> {
    let h = match form {
        IdentityForm::Corrected => AnalyticSymbol::ParabolicMultiplier(*a),
        IdentityForm::Printed => AnalyticSymbol::PrintedParabolicMultiplier(*a),
    };
    let lhs = Expr::toeplitz(h) * Expr::composition(SelfMap::Parabolic(*a));
    let rhs = Expr::multiplier(MultiplierSymbol::exponential(a.a())?);
    Ok((lhs, rhs))
}

/// Block residual of `T_h C_{φ_a} − D_{ϑ_a}`; requires `m ≤ n/8`.
pub fn identity_residual(a: &ParabolicParam, n: usize, m: usize, form: IdentityForm) -> Result<f64> {
    if m == 0 || 8 * m > n {
        return Err(Error::InvalidArgument(format!("block size {m} must satisfy 1 ≤ M ≤ N/8 = {}", n / 8)));
    }
    let (lhs, rhs) = identity_sides(a, form)?;
    block_residual(&lhs, &rhs, n, m)
}
