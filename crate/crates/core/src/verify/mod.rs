//! Numerical checks: compactness from singular value decay, operator-identity
//! residuals, series convergence and finite-section eigenvalues.

mod compactness;
mod identity;
mod series;

use std::fmt::Write as _;

pub use compactness::{
    classify, compactness_profile, compactness_profile_with, CompactnessReport, ThresholdPolicy, Verdict,
};
pub use identity::{block_residual, identity_residual, identity_sides, IdentityForm};
pub use series::{choose_alpha, log_slope, series_approximation, series_ratio, SeriesConfig, SeriesResult};

use crate::csv::{fmt_f64, header_comment};
use crate::ops::{eigenvalues, evaluate_expression, Expr};
use crate::{Result, C64};

/// Eigenvalues of the `n`-section, unordered.
pub fn finite_section_eigenvalues(e: &Expr, n: usize) -> Result<Vec<C64>> {
    eigenvalues(&evaluate_expression(e, n)?)
}

/// `re,im` rows under a header that flags the values as a diagnostic.
pub fn eigenvalues_csv(values: &[C64], meta: &[(&str, String)]) -> String {
    let mut meta = meta.to_vec();
    meta.push(("caveat", "finite-section-eigenvalues-need-not-converge-to-the-essential-spectrum".into()));
    let mut out = header_comment(&meta);
    out.push_str("re,im\n");
    for v in values {
        let _ = writeln!(out, "{},{}", fmt_f64(v.re), fmt_f64(v.im));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::{MultiplierSymbol, PiecewiseSymbol};

    #[test]
    fn eigenvalue_examples() {
        let shift = Expr::toeplitz(PiecewiseSymbol::monomial(1));
        assert!(finite_section_eigenvalues(&shift, 16).unwrap().iter().all(|l| l.norm() == 0.0));
        let id = finite_section_eigenvalues(&Expr::Identity, 8).unwrap();
        assert!(id.iter().all(|l| *l == C64::new(1.0, 0.0)));
        let d = Expr::multiplier(MultiplierSymbol::exponential(C64::new(0.0, 1.0)).unwrap());
        for l in finite_section_eigenvalues(&d, 32).unwrap() {
            assert!(l.im.abs() < 1e-10 && l.re > -1e-10 && l.re <= 1.0 + 1e-10, "{l}");
        }
    }

    #[test]
    fn caveat_in_header() {
        let csv = eigenvalues_csv(&[C64::new(0.0, 0.0)], &[]);
        assert!(csv.starts_with("# caveat="));
    }
}
