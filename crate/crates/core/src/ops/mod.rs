//! Finite sections in the monomial basis `z⁰, …, z^{N−1}` of `H²(𝔻)`.

mod builders;
mod expr;
mod matrix;

pub use builders::{
    composition_matrix, composition_matrix_from_taylor, multiplier_matrix, multiplier_matrix_with_report,
    toeplitz_matrix, QuadratureReport,
};
pub use expr::{evaluate_expression, evaluate_expression_with, EvalOptions, Expr};
pub use matrix::OperatorMatrix;

use crate::{Error, Result, C64};

/// All singular values, nonincreasing.
pub fn singular_values(m: &OperatorMatrix) -> Result<Vec<f64>> {
    let mut s = m.as_mat().singular_values().map_err(|e| Error::Decomposition(format!("{e:?}")))?;
    s.sort_by(|a, b| b.total_cmp(a));
    Ok(s)
}

/// Eigenvalues, unordered. Triangular input returns its diagonal exactly,
/// which keeps nilpotent sections such as the shift at zero.
pub fn eigenvalues(m: &OperatorMatrix) -> Result<Vec<C64>> {
    let n = m.dim();
    let zero = C64::new(0.0, 0.0);
    let lower = (0..n).all(|k| (0..k).all(|j| m.get(j, k) == zero));
    let upper = (0..n).all(|k| (k + 1..n).all(|j| m.get(j, k) == zero));
    if lower || upper {
        return Ok((0..n).map(|j| m.get(j, j)).collect());
    }
    m.as_mat().eigenvalues().map_err(|e| Error::Decomposition(format!("{e:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::PiecewiseSymbol;

    #[test]
    fn identity_singular_values() {
        assert_eq!(singular_values(&OperatorMatrix::identity(4)).unwrap(), vec![1.0; 4]);
    }

    #[test]
    fn shift_singular_values() {
        let s = toeplitz_matrix(&PiecewiseSymbol::monomial(1).into(), 6).unwrap();
        let sv = singular_values(&s).unwrap();
        assert!(sv[..5].iter().all(|v| (v - 1.0).abs() < 1e-14));
        assert!(sv[5].abs() < 1e-14);
    }

    #[test]
    fn rank_one_singular_values() {
        let u = [1.0, 2.0, 2.0];
        let v = [0.0, 3.0, 4.0];
        let m = OperatorMatrix::from_fn(3, |i, j| C64::new(u[i] * v[j], 0.0)).unwrap();
        let sv = singular_values(&m).unwrap();
        assert!((sv[0] - 15.0).abs() < 1e-12);
        assert!(sv[1] < 1e-12 && sv[2] < 1e-12);
    }

    #[test]
    fn nilpotent_shift_eigenvalues() {
        let s = toeplitz_matrix(&PiecewiseSymbol::monomial(1).into(), 32).unwrap();
        assert!(eigenvalues(&s).unwrap().iter().all(|l| l.norm() == 0.0));
    }
}
