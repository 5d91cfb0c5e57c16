//! Analytic boundary symbols built from `η` or a parabolic parameter.
//!
//! Their Toeplitz matrices are lower triangular, with Taylor coefficients down
//! the subdiagonals.

use crate::symbols::{EtaMap, ParabolicParam, PiecewiseSymbol};
use crate::{series, Result, C64};

#[derive(Debug, Clone, PartialEq)]
pub enum AnalyticSymbol {
    /// Polynomial with ascending coefficients.
    Polynomial(Vec<C64>),
    /// `η` itself.
    Eta(EtaMap),
    /// `(2i + η(z)(1−z)) / 2i`.
    CompositionPrefactor(EtaMap),
    /// `(iα − η(z))ⁿ`.
    SeriesFactor { eta: EtaMap, alpha: f64, power: u32 },
    /// `2i / (2i + a(1−z))`, the multiplier with `T_h C_{φ_a} = D_{ϑ_a}`.
    ParabolicMultiplier(ParabolicParam),
    /// `2i(1−z) / (2i + a(1−z))`, kept as a regression fixture: it does not
    /// satisfy the product identity.
    PrintedParabolicMultiplier(ParabolicParam),
}

impl AnalyticSymbol {
    /// The `η` whose boundary behaviour the symbol inherits, if any.
    pub fn eta(&self) -> Option<EtaMap> {
        match self {
            AnalyticSymbol::Polynomial(_) => None,
            AnalyticSymbol::Eta(e) | AnalyticSymbol::CompositionPrefactor(e) => Some(e.clone()),
            AnalyticSymbol::SeriesFactor { eta, .. } => Some(eta.clone()),
            AnalyticSymbol::ParabolicMultiplier(p) | AnalyticSymbol::PrintedParabolicMultiplier(p) => Some(p.to_eta()),
        }
    }

    /// First `len` Taylor coefficients.
    pub fn taylor(&self, len: usize) -> Result<Vec<C64>> {
        let two_i = C64::new(0.0, 2.0);
        let one_minus_z = |len: usize| {
            let mut v = vec![C64::new(0.0, 0.0); len];
            if len > 0 {
                v[0] = C64::new(1.0, 0.0);
            }
            if len > 1 {
                v[1] = C64::new(-1.0, 0.0);
            }
            v
        };
        Ok(match self {
            AnalyticSymbol::Polynomial(p) => {
                let mut v: Vec<C64> = p.iter().copied().take(len).collect();
                v.resize(len, C64::new(0.0, 0.0));
                v
            }
            AnalyticSymbol::Eta(e) => e.taylor(len),
            AnalyticSymbol::CompositionPrefactor(e) => {
                let mut v = series::mul(&e.taylor(len), &one_minus_z(len), len);
                if len > 0 {
                    v[0] += two_i;
                }
                v.iter().map(|c| c / two_i).collect()
            }
            AnalyticSymbol::SeriesFactor { eta, alpha, power } => {
                let base: Vec<C64> = eta
                    .taylor(len)
                    .iter()
                    .enumerate()
                    .map(|(k, &c)| if k == 0 { C64::new(0.0, *alpha) - c } else { -c })
                    .collect();
                series::pow(&base, *power, len)
            }
            AnalyticSymbol::ParabolicMultiplier(p) | AnalyticSymbol::PrintedParabolicMultiplier(p) => {
                let mut den: Vec<C64> = one_minus_z(len).iter().map(|c| c * p.a()).collect();
                if len > 0 {
                    den[0] += two_i;
                }
                let num = if matches!(self, AnalyticSymbol::ParabolicMultiplier(_)) {
                    vec![two_i]
                } else {
                    one_minus_z(len).iter().map(|c| c * two_i).collect()
                };
                series::div(&num, &den, len)?
            }
        })
    }

    /// Boundary value at `λ` given the value `w` assigned to `η` there.
    pub fn boundary_value(&self, lambda: C64, w: C64) -> C64 {
        let two_i = C64::new(0.0, 2.0);
        let one_minus = C64::new(1.0, 0.0) - lambda;
        match self {
            AnalyticSymbol::Polynomial(p) => series::eval(p, lambda),
            AnalyticSymbol::Eta(_) => w,
            AnalyticSymbol::CompositionPrefactor(_) => (two_i + w * one_minus) / two_i,
            AnalyticSymbol::SeriesFactor { alpha, power, .. } => (C64::new(0.0, *alpha) - w).powu(*power),
            AnalyticSymbol::ParabolicMultiplier(_) => two_i / (two_i + w * one_minus),
            AnalyticSymbol::PrintedParabolicMultiplier(_) => two_i * one_minus / (two_i + w * one_minus),
        }
    }
}

/// Symbol of a Toeplitz leaf.
#[derive(Debug, Clone, PartialEq)]
pub enum ToeplitzSymbol {
    Piecewise(PiecewiseSymbol),
    Analytic(AnalyticSymbol),
}

impl From<PiecewiseSymbol> for ToeplitzSymbol {
    fn from(s: PiecewiseSymbol) -> Self {
        ToeplitzSymbol::Piecewise(s)
    }
}

impl From<AnalyticSymbol> for ToeplitzSymbol {
    fn from(s: AnalyticSymbol) -> Self {
        ToeplitzSymbol::Analytic(s)
    }
}

impl ToeplitzSymbol {
    /// `â(n)` for `n = -max_abs..=max_abs`, entry `n + max_abs`.
    pub fn fourier_coefficients(&self, max_abs: usize) -> Result<Vec<C64>> {
        match self {
            ToeplitzSymbol::Piecewise(s) => s.fourier_coefficients(max_abs),
            ToeplitzSymbol::Analytic(a) => {
                let mut out = vec![C64::new(0.0, 0.0); max_abs];
                out.extend(a.taylor(max_abs + 1)?);
                Ok(out)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn parabolic_multiplier_for_a_equal_i() {
        // 2i / (2i + i(1−z)) = 2/(3−z) = 2/3 + 2/9 z + 2/27 z² + …
        let h = AnalyticSymbol::ParabolicMultiplier(ParabolicParam::new(c(0.0, 1.0)).unwrap());
        let t = h.taylor(3).unwrap();
        for (g, w) in t.iter().zip([2.0 / 3.0, 2.0 / 9.0, 2.0 / 27.0]) {
            assert!((g - c(w, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn printed_multiplier_vanishes_at_one() {
        let p = ParabolicParam::new(c(0.0, 1.0)).unwrap();
        let h = AnalyticSymbol::PrintedParabolicMultiplier(p);
        assert_eq!(h.boundary_value(c(1.0, 0.0), p.a()), c(0.0, 0.0));
        // 2(1−z)/(3−z) = 2/3 − 4/9 z + …
        let t = h.taylor(2).unwrap();
        assert!((t[1] - c(-4.0 / 9.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn series_factor_is_constant_for_constant_eta() {
        let eta = EtaMap::constant(c(0.0, 1.0)).unwrap();
        let f = AnalyticSymbol::SeriesFactor { eta, alpha: 2.0, power: 3 };
        let t = f.taylor(4).unwrap();
        assert!((t[0] - c(0.0, -1.0)).norm() < 1e-15);
        assert!(t[1..].iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn prefactor_taylor_matches_boundary_form() {
        let eta = EtaMap::polynomial(vec![c(0.0, 2.0), c(0.5, 0.0)]).unwrap();
        let f = AnalyticSymbol::CompositionPrefactor(eta.clone());
        let coeffs = f.taylor(4).unwrap();
        let z = C64::from_polar(1.0, 0.7);
        let direct = f.boundary_value(z, eta.value(z));
        assert!((series::eval(&coeffs, z) - direct).norm() < 1e-15);
    }
}
