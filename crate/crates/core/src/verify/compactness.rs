use std::fmt;
use std::fmt::Write as _;

use crate::csv::{fmt_f64, header_comment};
use crate::ops::{evaluate_expression_with, singular_values, EvalOptions, Expr};
use crate::{Error, Result};

/// Decision thresholds for [`compactness_profile`]. Engineering choices, not
/// derived quantities.
///
/// Let `σ_k(N)` be the singular values of the `N`-section and
/// `floor = noise_floor · σ_1(N_max)`.
///
/// * non-compact if either `σ_{k†}(N_max) ≥ plateau_ratio · σ_{k†}(N_min)` and
///   `σ_{k†}(N_max) ≥ plateau_fraction · σ_1(N_max)`, or `σ_{k†}` stays above
///   `floor` and grows by at least `growth` between consecutive `N`;
/// * otherwise compact if `σ_{k*}(N_max) ≤ compact_ratio · σ_1(N_max)` and
///   `σ_{k*}(N_{i+1}) ≤ (1 + stability) σ_{k*}(N_i) + floor` for all `i`;
/// * otherwise inconclusive.
///
/// Finite sections of a compact operator converge in norm, so singular values
/// at a fixed index settle; sustained growth at a fixed index is the signature
/// of a non-compact remainder that the finite sections resolve ever more
/// sharply.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdPolicy {
    pub compact_index: usize,
    pub compact_ratio: f64,
    pub stability: f64,
    pub noncompact_index: usize,
    pub plateau_ratio: f64,
    pub plateau_fraction: f64,
    pub growth: f64,
    pub noise_floor: f64,
}

impl Default for ThresholdPolicy {
    fn default() -> Self {
        ThresholdPolicy {
            compact_index: 32,
            compact_ratio: 0.05,
            stability: 0.05,
            noncompact_index: 8,
            plateau_ratio: 0.5,
            plateau_fraction: 0.1,
            growth: 1.5,
            noise_floor: 1e-10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Compact,
    NonCompact,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Compact => "compact",
            Verdict::NonCompact => "non-compact",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

impl std::str::FromStr for Verdict {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "compact" => Ok(Verdict::Compact),
            "non-compact" => Ok(Verdict::NonCompact),
            "inconclusive" => Ok(Verdict::Inconclusive),
            _ => Err(Error::parse(s, "expected compact, non-compact or inconclusive")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompactnessReport {
    pub dims: Vec<usize>,
    pub ks: Vec<usize>,
    /// `sigma[i][j] = σ_{ks[j]}(dims[i])`, 1-based `k`.
    pub sigma: Vec<Vec<f64>>,
    /// Full singular value lists per dimension.
    pub spectra: Vec<Vec<f64>>,
    pub verdict: Verdict,
    pub policy: ThresholdPolicy,
}

impl CompactnessReport {
    pub fn sigma_at(&self, dim_index: usize, k: usize) -> f64 {
        self.spectra[dim_index].get(k - 1).copied().unwrap_or(0.0)
    }

    /// Verdict and thresholds on a `#` line, then rows `N,k,sigma`.
    pub fn to_csv(&self) -> String {
        let p = &self.policy;
        let mut out = header_comment(&[
            ("verdict", self.verdict.to_string()),
            ("k_star", p.compact_index.to_string()),
            ("compact_ratio", p.compact_ratio.to_string()),
            ("stability", p.stability.to_string()),
            ("k_dagger", p.noncompact_index.to_string()),
            ("plateau_ratio", p.plateau_ratio.to_string()),
            ("plateau_fraction", p.plateau_fraction.to_string()),
            ("growth", p.growth.to_string()),
            ("noise_floor", p.noise_floor.to_string()),
        ]);
        out.push_str("N,k,sigma\n");
        for (i, &n) in self.dims.iter().enumerate() {
            for (j, &k) in self.ks.iter().enumerate() {
                let _ = writeln!(out, "{n},{k},{}", fmt_f64(self.sigma[i][j]));
            }
        }
        out
    }
}

pub fn compactness_profile(e: &Expr, dims: &[usize], ks: &[usize]) -> Result<CompactnessReport> {
    compactness_profile_with(e, dims, ks, &ThresholdPolicy::default(), &EvalOptions::default())
}

pub fn compactness_profile_with(
    e: &Expr,
    dims: &[usize],
    ks: &[usize],
    policy: &ThresholdPolicy,
    opts: &EvalOptions,
) -> Result<CompactnessReport> {
    if dims.is_empty() || dims.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("dimension list must be nonempty and strictly ascending".into()));
    }
    let n_min = dims[0];
    for &k in ks.iter().chain([&policy.compact_index, &policy.noncompact_index]) {
        if k == 0 || k > n_min {
            return Err(Error::InvalidArgument(format!("index {k} outside 1..={n_min}")));
        }
    }
    let spectra =
        dims.iter().map(|&n| singular_values(&evaluate_expression_with(e, n, opts)?)).collect::<Result<Vec<_>>>()?;
    let sigma = spectra.iter().map(|s| ks.iter().map(|&k| s[k - 1]).collect()).collect();
    let verdict = classify(&spectra, policy);
    Ok(CompactnessReport { dims: dims.to_vec(), ks: ks.to_vec(), sigma, spectra, verdict, policy: *policy })
}

/// Applies `policy` to singular value lists ordered by ascending dimension.
pub fn classify(spectra: &[Vec<f64>], policy: &ThresholdPolicy) -> Verdict {
    let last = spectra.last().expect("at least one dimension");
    let sigma1 = last[0];
    let floor = policy.noise_floor * sigma1;
    let at = |k: usize| -> Vec<f64> { spectra.iter().map(|s| s[k - 1]).collect() };

    let nc = at(policy.noncompact_index);
    let (nc_first, nc_last) = (nc[0], *nc.last().expect("nonempty"));
    let plateau = nc_last >= policy.plateau_ratio * nc_first && nc_last >= policy.plateau_fraction * sigma1;
    let growing = nc.len() > 1 && nc.iter().all(|&v| v > floor) && nc.windows(2).all(|w| w[1] >= policy.growth * w[0]);
    if sigma1 > 0.0 && (plateau || growing) {
        return Verdict::NonCompact;
    }

    let cs = at(policy.compact_index);
    let small = *cs.last().expect("nonempty") <= policy.compact_ratio * sigma1;
    let stable = cs.windows(2).all(|w| w[1] <= (1.0 + policy.stability) * w[0] + floor);
    if small && stable {
        Verdict::Compact
    } else {
        Verdict::Inconclusive
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flat(n: usize, head: &[f64], tail: f64) -> Vec<f64> {
        (0..n).map(|k| head.get(k).copied().unwrap_or(tail)).collect()
    }

    #[test]
    fn zero_operator_is_compact() {
        let s = vec![vec![0.0; 64], vec![0.0; 128]];
        assert_eq!(classify(&s, &ThresholdPolicy::default()), Verdict::Compact);
    }

    #[test]
    fn identity_is_non_compact() {
        let s = vec![vec![1.0; 64], vec![1.0; 128]];
        assert_eq!(classify(&s, &ThresholdPolicy::default()), Verdict::NonCompact);
    }

    #[test]
    fn growing_tail_is_non_compact() {
        let s = vec![flat(64, &[0.15], 1e-8), flat(64, &[0.15], 5e-8), flat(64, &[0.15], 2e-7)];
        assert_eq!(classify(&s, &ThresholdPolicy::default()), Verdict::NonCompact);
    }

    #[test]
    fn drifting_tail_is_inconclusive() {
        // σ_8 is steady but small, σ_32 doubles between sections
        let head = |tail: f64| -> Vec<f64> {
            (0..64)
                .map(|k| {
                    if k == 0 {
                        1.0
                    } else if k < 20 {
                        0.05
                    } else {
                        tail
                    }
                })
                .collect()
        };
        let s = vec![head(0.01), head(0.02)];
        assert_eq!(classify(&s, &ThresholdPolicy::default()), Verdict::Inconclusive);
    }

    #[test]
    fn verdict_round_trip() {
        for v in [Verdict::Compact, Verdict::NonCompact, Verdict::Inconclusive] {
            assert_eq!(v.to_string().parse::<Verdict>().unwrap(), v);
        }
    }
}
