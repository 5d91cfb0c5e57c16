//! Cluster sets of `η` at a boundary point by path sampling.
//!
//! Paths are written in the upper half-plane chart `w ↦ λ(w−i)/(w+i)`, which
//! sends `w → ∞` to `λ`. A path is a curve `w(s)` with `s ↓ 0`:
//!
//! * Stolz rays `w = e^{iβ}/s` (radial at `β = π/2`),
//! * tangential arcs `w = ±1/s + i/√s`,
//! * horocycles `w = ±1/s + ic`.
//!
//! Along a path where every sampled map converges, the path contributes its
//! extrapolated limit, snapped to the boundary value when that exists and
//! agrees; otherwise its tail samples are kept.

use std::f64::consts::PI;

use crate::symbols::EtaMap;
use crate::{Error, Result, C64};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PathKind {
    /// `w = e^{iβ}/s`.
    Stolz { beta: f64 },
    /// `w = σ/s + i/√s`, `σ = ±1`.
    Tangential { sign: f64 },
    /// `w = σ/s + ic`.
    Horocycle { c: f64, sign: f64 },
}

impl PathKind {
    fn w(&self, s: f64) -> C64 {
        match *self {
            PathKind::Stolz { beta } => C64::from_polar(1.0 / s, beta),
            PathKind::Tangential { sign } => C64::new(sign / s, 1.0 / s.sqrt()),
            PathKind::Horocycle { c, sign } => C64::new(sign / s, c),
        }
    }

    pub fn label(&self) -> String {
        match *self {
            PathKind::Stolz { beta } => format!("stolz:{beta:.6}"),
            PathKind::Tangential { sign } => format!("tangential:{}", if sign > 0.0 { '+' } else { '-' }),
            PathKind::Horocycle { c, sign } => {
                format!("horocycle:{c:e}:{}", if sign > 0.0 { '+' } else { '-' })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusterSampling {
    pub paths: Vec<PathKind>,
    /// Largest and smallest path parameter; samples are log-spaced between.
    pub s_max: f64,
    pub s_min: f64,
    pub samples_per_path: usize,
    /// Number of trailing samples kept from a non-convergent path.
    pub tail: usize,
    /// Relative agreement of successive extrapolations that marks convergence.
    pub convergence_tol: f64,
    /// Points closer than this are merged.
    pub dedup_tol: f64,
}

impl Default for ClusterSampling {
    fn default() -> Self {
        let mut paths: Vec<PathKind> =
            [1.0, 2.0, 3.0, 4.0, 5.0].iter().map(|k| PathKind::Stolz { beta: k * PI / 6.0 }).collect();
        for sign in [1.0, -1.0] {
            paths.push(PathKind::Tangential { sign });
            for c in [1e-3, 1e-2, 1e-1, 1.0] {
                paths.push(PathKind::Horocycle { c, sign });
            }
        }
        // s ≥ 1e-5 keeps 1 − z accurate to ~1e-11 relative in double precision
        ClusterSampling {
            paths,
            s_max: 1e-1,
            s_min: 1e-5,
            samples_per_path: 400,
            tail: 100,
            convergence_tol: 1e-6,
            dedup_tol: 1e-9,
        }
    }
}

impl ClusterSampling {
    fn validate(&self) -> Result<()> {
        if !(self.s_min > 0.0 && self.s_min < self.s_max && self.s_max <= 1.0) {
            return Err(Error::Configuration(format!(
                "cluster sampling needs 0 < s_min < s_max ≤ 1, got {} and {}",
                self.s_min, self.s_max
            )));
        }
        if self.samples_per_path < 4 || self.tail == 0 || self.tail > self.samples_per_path {
            return Err(Error::Configuration("cluster sampling needs ≥ 4 samples and 0 < tail ≤ samples".into()));
        }
        if self.paths.is_empty() {
            return Err(Error::Configuration("cluster sampling needs at least one path".into()));
        }
        Ok(())
    }

    fn parameters(&self) -> Vec<f64> {
        let (hi, lo) = (self.s_max.ln(), self.s_min.ln());
        let n = self.samples_per_path;
        (0..n).map(|k| (hi + (lo - hi) * k as f64 / (n - 1) as f64).exp()).collect()
    }
}

/// Joint values of several maps at one sample point of one path.
#[derive(Debug, Clone, PartialEq)]
pub struct QcSample {
    pub path: String,
    pub values: Vec<C64>,
}

/// Samples every path jointly for all `etas` at `λ = e^{iθ}`. Returns the
/// samples and the number of skipped non-finite evaluations.
pub fn sample_paths(etas: &[EtaMap], theta: f64, sampling: &ClusterSampling) -> Result<(Vec<QcSample>, usize)> {
    sampling.validate()?;
    let lambda = C64::from_polar(1.0, theta);
    let params = sampling.parameters();
    let i = C64::new(0.0, 1.0);
    let mut out = Vec::new();
    let mut skipped = 0;
    for path in &sampling.paths {
        let label = path.label();
        let mut rows: Vec<(f64, Vec<C64>)> = Vec::with_capacity(params.len());
        for &s in &params {
            let w = path.w(s);
            let z = lambda * (w - i) / (w + i);
            let values: Vec<C64> = etas.iter().map(|e| e.value(z)).collect();
            if values.iter().all(|v| v.re.is_finite() && v.im.is_finite()) && z.norm() < 1.0 {
                rows.push((s, values));
            } else {
                skipped += 1;
            }
        }
        if let Some(mut limits) = converged_limits(&rows, sampling.convergence_tol) {
            // a path limit that matches a finite boundary value is that value
            for (limit, eta) in limits.iter_mut().zip(etas) {
                let b = eta.value(lambda);
                if b.re.is_finite()
                    && b.im.is_finite()
                    && (b - *limit).norm() <= sampling.convergence_tol * b.norm().max(1.0)
                {
                    *limit = b;
                }
            }
            out.push(QcSample { path: label, values: limits });
        } else {
            let start = rows.len().saturating_sub(sampling.tail);
            out.extend(rows[start..].iter().map(|(_, v)| QcSample { path: label.clone(), values: v.clone() }));
        }
    }
    Ok((out, skipped))
}

/// Quadratic extrapolation to `s = 0` from the last three rows, compared with
/// the same from the three before; `None` unless every map agrees.
fn converged_limits(rows: &[(f64, Vec<C64>)], tol: f64) -> Option<Vec<C64>> {
    let n = rows.len();
    if n < 4 {
        return None;
    }
    let extrap = |r: &[(f64, Vec<C64>)], k: usize| -> C64 {
        // Lagrange interpolation at s = 0
        let (s0, s1, s2) = (r[0].0, r[1].0, r[2].0);
        let l0 = s1 * s2 / ((s0 - s1) * (s0 - s2));
        let l1 = s0 * s2 / ((s1 - s0) * (s1 - s2));
        let l2 = s0 * s1 / ((s2 - s0) * (s2 - s1));
        r[0].1[k] * l0 + r[1].1[k] * l1 + r[2].1[k] * l2
    };
    let last = &rows[n - 3..];
    let prev = &rows[n - 4..n - 1];
    let k_count = rows[0].1.len();
    let mut limits = Vec::with_capacity(k_count);
    for k in 0..k_count {
        let (a, b) = (extrap(last, k), extrap(prev, k));
        if !((a - b).norm() <= tol * a.norm().max(1.0)) {
            return None;
        }
        limits.push(a);
    }
    Some(limits)
}

/// Merges points within `tol` of an earlier point, keeping first occurrences.
pub fn dedup_points(points: impl IntoIterator<Item = C64>, tol: f64) -> Vec<C64> {
    let mut out: Vec<C64> = Vec::new();
    for p in points {
        if !out.iter().any(|q| (p - q).norm() <= tol) {
            out.push(p);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusterSet {
    pub points: Vec<C64>,
    pub paths: Vec<String>,
    pub samples_per_path: usize,
    pub skipped: usize,
    /// Recorded `sup |η|`; every point lies within this radius.
    pub radius: f64,
}

/// Approximates `C_λ(η)` at `λ = e^{iθ}` by sampling approach paths.
pub fn cluster_set(eta: &EtaMap, theta: f64, sampling: &ClusterSampling) -> Result<ClusterSet> {
    let (samples, skipped) = sample_paths(std::slice::from_ref(eta), theta, sampling)?;
    let points = dedup_points(samples.iter().map(|s| s.values[0]), sampling.dedup_tol);
    Ok(ClusterSet {
        points,
        paths: sampling.paths.iter().map(PathKind::label).collect(),
        samples_per_path: sampling.samples_per_path,
        skipped,
        radius: eta.sup_norm(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn constant_eta_single_point() {
        let cs = cluster_set(&EtaMap::constant(c(0.0, 1.0)).unwrap(), 0.0, &ClusterSampling::default()).unwrap();
        assert_eq!(cs.points, vec![c(0.0, 1.0)]);
    }

    #[test]
    fn continuous_eta_converges_to_boundary_value() {
        // i(2+z)/2 at z = 1
        let eta = EtaMap::polynomial(vec![c(0.0, 1.0), c(0.0, 0.5)]).unwrap();
        let cs = cluster_set(&eta, 0.0, &ClusterSampling::default()).unwrap();
        assert_eq!(cs.points.len(), 1, "{:?}", cs.points);
        assert!((cs.points[0] - c(0.0, 1.5)).norm() < 1e-6);
    }

    #[test]
    fn paths_stay_inside_the_disc() {
        let sampling = ClusterSampling::default();
        let i = c(0.0, 1.0);
        for path in &sampling.paths {
            for s in sampling.parameters() {
                let w = path.w(s);
                assert!(((w - i) / (w + i)).norm() < 1.0, "{path:?} at s={s}");
            }
        }
    }

    #[test]
    fn invalid_sampling_rejected() {
        let sampling = ClusterSampling { s_min: 1.0, ..ClusterSampling::default() };
        assert!(cluster_set(&EtaMap::singular_inner(), 0.0, &sampling).is_err());
    }
}
