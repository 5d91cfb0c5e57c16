use std::fmt::Write as _;

use crate::csv::{fmt_f64, header_comment};
use crate::ops::{composition_matrix, multiplier_matrix, toeplitz_matrix, OperatorMatrix};
use crate::quadrature::QuadratureScheme;
use crate::symbols::{AnalyticSymbol, EtaMap, MultiplierSymbol, SelfMap, ToeplitzSymbol};
use crate::{Error, Result, C64};

/// `α = max(2S²/ε, 2S)` with `S = sup|η|`, `ε ≤ Im η`. Then
/// `|iα − η|² ≤ S² − 2αε + α² < α²`, so the series ratio is below 1.
pub fn choose_alpha(eta: &EtaMap) -> Result<f64> {
    let (s, eps) = (eta.sup_norm(), eta.epsilon());
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!("η needs ε > 0, got {eps}")));
    }
    Ok((2.0 * s * s / eps).max(2.0 * s))
}

/// `sup |iα − η| / α` over the map's sample points.
pub fn series_ratio(eta: &EtaMap, alpha: f64) -> f64 {
    let ia = C64::new(0.0, alpha);
    eta.grid_values().iter().map(|v| (ia - v).norm()).fold(0.0, f64::max) / alpha
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig {
    pub alpha: f64,
    /// Highest term index `K`; the partial sum runs over `n = 0..=K`.
    pub terms: usize,
    pub dim: usize,
    pub block: usize,
    /// `sup |iα − η| / α`, recorded at construction.
    pub ratio: f64,
}

impl SeriesConfig {
    pub fn new(eta: &EtaMap, alpha: f64, terms: usize, dim: usize, block: usize) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidArgument(format!("alpha must be positive, got {alpha}")));
        }
        if block == 0 || block > dim {
            return Err(Error::InvalidArgument(format!("block {block} outside 1..={dim}")));
        }
        let ratio = series_ratio(eta, alpha);
        if ratio >= 1.0 {
            return Err(Error::Configuration(format!(
                "series ratio sup|iα−η|/α = {ratio:.4} ≥ 1 for α = {alpha}; choose_alpha gives {:.6}",
                choose_alpha(eta).unwrap_or(f64::NAN)
            )));
        }
        Ok(SeriesConfig { alpha, terms, dim, block, ratio })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesResult {
    /// `T_{(2i+η(1−z))/2i} Σ_{n≤K} T_{(iα−η)ⁿ} D_{ϑ_n}`.
    pub matrix: OperatorMatrix,
    /// `(k, block residual against C_φ)` for `k = 0..=K`.
    pub residuals: Vec<(usize, f64)>,
}

impl SeriesResult {
    pub fn to_csv(&self, meta: &[(&str, String)]) -> String {
        let mut out = header_comment(meta);
        out.push_str("k,residual\n");
        for (k, r) in &self.residuals {
            let _ = writeln!(out, "{k},{}", fmt_f64(*r));
        }
        out
    }
}

/// Partial sums of `C_φ = T_{(2i+η(1−z))/2i} Σ_n T_{(iα−η)ⁿ} D_{ϑ_n}` with
/// `ϑ_n(t) = (−it)ⁿ e^{−αt}/n!`.
///
/// Every Toeplitz factor has an analytic symbol and so a lower-triangular
/// matrix; products with it are exact on finite sections.
pub fn series_approximation(eta: &EtaMap, cfg: &SeriesConfig) -> Result<SeriesResult> {
    if cfg.ratio >= 1.0 {
        return Err(Error::Configuration("series ratio must be below 1; use choose_alpha".into()));
    }
    let n = cfg.dim;
    let target = composition_matrix(&SelfMap::Eta(eta.clone()), n)?;
    let prefactor = toeplitz_matrix(&ToeplitzSymbol::Analytic(AnalyticSymbol::CompositionPrefactor(eta.clone())), n)?;
    let q = QuadratureScheme::for_dimension(n)?;
    let mut sum = OperatorMatrix::zeros(n);
    let mut residuals = Vec::with_capacity(cfg.terms + 1);
    let mut approx = OperatorMatrix::zeros(n);
    for k in 0..=cfg.terms {
        let power = u32::try_from(k).map_err(|_| Error::InvalidArgument("term count too large".into()))?;
        let factor = toeplitz_matrix(
            &ToeplitzSymbol::Analytic(AnalyticSymbol::SeriesFactor { eta: eta.clone(), alpha: cfg.alpha, power }),
            n,
        )?;
        let theta = MultiplierSymbol::series_term(power, cfg.alpha)?;
        let d = multiplier_matrix(&theta, n, &q)?;
        sum = sum.add(&factor.matmul(&d)?)?;
        approx = prefactor.matmul(&sum)?;
        let r = target.sub(&approx)?.principal_block(cfg.block)?.max_modulus();
        residuals.push((k, r));
    }
    Ok(SeriesResult { matrix: approx, residuals })
}

/// Least-squares slope of `ln r_k` against `k`.
pub fn log_slope(curve: &[(usize, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = curve.iter().filter(|(_, r)| *r > 0.0).map(|&(k, r)| (k as f64, r.ln())).collect();
    let n = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / n, sy / n);
    let (num, den) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + (x - mx) * (y - my), b + (x - mx) * (x - mx)));
    num / den
}
