use std::collections::HashSet;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::csv::{fmt_f64, header_comment};
use crate::gelfand::{gelfand_evaluate, Extended, IdealPoint, QcSurrogate};
use crate::ops::Expr;
use crate::symbols::{sample_paths, ClusterSampling, EtaMap, PiecewiseSymbol, ToeplitzSymbol};
use crate::{Error, Result, C64, TWO_PI};

/// Sampling grids for the ideal space.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumGrids {
    /// Finite `t` values; `t = ∞` is always added.
    pub t_values: Vec<f64>,
    pub s_points: usize,
    /// Equispaced base points on the circle; jump angles are added.
    pub lambda_points: usize,
    pub cluster: ClusterSampling,
    /// QC surrogates kept per base point, evenly subsampled.
    pub max_cluster_points: usize,
    /// Largest allowed distance between images of neighbouring `t` values;
    /// intervals exceeding it are bisected. `None` keeps the raw grid.
    pub resolution: Option<f64>,
}

/// Default for [`SpectrumGrids::resolution`].
pub const DEFAULT_RESOLUTION: f64 = 5e-4;
const MAX_BISECTION_DEPTH: u32 = 16;

impl Default for SpectrumGrids {
    fn default() -> Self {
        SpectrumGrids {
            t_values: default_t_values(),
            s_points: 101,
            lambda_points: 64,
            cluster: ClusterSampling::default(),
            max_cluster_points: 64,
            resolution: Some(DEFAULT_RESOLUTION),
        }
    }
}

/// `0` and 200 log-spaced points on `[1e-3, 40]`.
pub fn default_t_values() -> Vec<f64> {
    log_t_values(200, 1e-3, 40.0).expect("valid default grid")
}

/// `0` followed by `count` log-spaced points on `[lo, hi]`.
pub fn log_t_values(count: usize, lo: f64, hi: f64) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi.is_finite() && (hi > lo || (count == 1 && hi == lo))) || count == 0 {
        return Err(Error::Configuration(format!(
            "t-grid needs count ≥ 1 and 0 < lo < hi, got {count} on [{lo}, {hi}]"
        )));
    }
    if count == 1 {
        return Ok(vec![0.0, lo]);
    }
    let (a, b) = (lo.ln(), hi.ln());
    let last = (count - 1) as f64;
    Ok(std::iter::once(0.0).chain((0..count).map(|k| (a + (b - a) * k as f64 / last).exp())).collect())
}

impl SpectrumGrids {
    pub fn with_t_values(mut self, t: Vec<f64>) -> Result<Self> {
        if t.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::Configuration("t-grid values must be finite and nonnegative".into()));
        }
        self.t_values = t;
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        if self.s_points == 0 || self.lambda_points == 0 || self.max_cluster_points == 0 {
            return Err(Error::Configuration("grid sizes must be positive".into()));
        }
        if self.t_values.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::Configuration("t-grid values must be finite and nonnegative".into()));
        }
        if let Some(r) = self.resolution {
            if !(r.is_finite() && r > 0.0) {
                return Err(Error::Configuration(format!("resolution must be positive, got {r}")));
            }
        }
        Ok(())
    }

    /// Images of the finite `t`-grid under `g`, with points inserted until
    /// neighbouring images are within `max(resolution, floor)`. `floor` is the
    /// image spacing of the `s`-grid: finer `t` sampling cannot reduce the
    /// Hausdorff error of the swept region below it.
    fn trace<F>(&self, floor: f64, g: F) -> Result<Vec<C64>>
    where
        F: Fn(f64) -> Result<C64>,
    {
        let ts = &self.t_values;
        let mut out = Vec::with_capacity(ts.len());
        let Some(&first) = ts.first() else { return Ok(out) };
        let mut prev = g(first)?;
        out.push(prev);
        for w in ts.windows(2) {
            let next = g(w[1])?;
            if let Some(r) = self.resolution {
                bisect(&g, (w[0], prev), (w[1], next), r.max(floor), MAX_BISECTION_DEPTH, &mut out)?;
            }
            out.push(next);
            prev = next;
        }
        Ok(out)
    }

    fn s_values(&self) -> Vec<f64> {
        let n = self.s_points;
        if n == 1 {
            return vec![0.5];
        }
        (0..n).map(|k| k as f64 / (n - 1) as f64).collect()
    }

    fn z_values(&self) -> Vec<Extended> {
        self.t_values.iter().map(|&t| Extended::Finite(t)).chain(std::iter::once(Extended::Infinity)).collect()
    }

    fn lambda_values(&self, jumps: &[f64]) -> Vec<f64> {
        let mut out: Vec<f64> =
            (0..self.lambda_points).map(|k| TWO_PI * k as f64 / self.lambda_points as f64).collect();
        for &j in jumps {
            if !out.iter().any(|&l| (l - j).abs() < 1e-12) {
                out.push(j);
            }
        }
        out
    }

    /// QC surrogates for `etas` at angle `theta`.
    fn surrogates(&self, etas: &[EtaMap], theta: f64) -> Result<Vec<QcSurrogate>> {
        if etas.is_empty() {
            return Ok(vec![QcSurrogate::default()]);
        }
        let (samples, _) = sample_paths(etas, theta, &self.cluster)?;
        let picked: Vec<_> = if samples.len() <= self.max_cluster_points {
            samples
        } else {
            let m = self.max_cluster_points;
            (0..m).map(|k| samples[k * samples.len() / m].clone()).collect()
        };
        Ok(picked
            .into_iter()
            .map(|s| {
                let values = etas.iter().map(|e| e.label().to_string()).zip(s.values).collect();
                QcSurrogate::new(s.path, values)
            })
            .collect())
    }
}

/// Pushes interior images of `(a, b)` in increasing `t`.
fn bisect<F>(g: &F, a: (f64, C64), b: (f64, C64), tol: f64, depth: u32, out: &mut Vec<C64>) -> Result<()>
where
    F: Fn(f64) -> Result<C64>,
{
    if depth == 0 || (b.1 - a.1).norm() <= tol {
        return Ok(());
    }
    // geometric midpoint keeps log-spaced grids log-spaced
    let t = if a.0 > 0.0 { (a.0 * b.0).sqrt() } else { 0.5 * (a.0 + b.0) };
    let mid = (t, g(t)?);
    bisect(g, a, mid, tol, depth - 1, out)?;
    out.push(mid.1);
    bisect(g, mid, b, tol, depth - 1, out)
}

/// Finite sample of a spectrum with the grids that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSet {
    pub points: Vec<C64>,
    pub metadata: Vec<(String, String)>,
}

impl SpectrumSet {
    pub fn from_points(points: Vec<C64>) -> Self {
        SpectrumSet { points, metadata: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `#` metadata line, `re,im` header, one point per row.
    pub fn to_csv(&self) -> String {
        let meta: Vec<(&str, String)> = self.metadata.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
        let mut out = header_comment(&meta);
        out.push_str("re,im\n");
        for p in &self.points {
            let _ = writeln!(out, "{},{}", fmt_f64(p.re), fmt_f64(p.im));
        }
        out
    }

    pub fn conj(&self) -> Self {
        SpectrumSet { points: self.points.iter().map(|p| p.conj()).collect(), metadata: self.metadata.clone() }
    }
}

/// Removes exact duplicates, keeping the first occurrence.
fn dedup_exact(points: impl IntoIterator<Item = C64>) -> Vec<C64> {
    let key = |p: &C64| {
        let n = |x: f64| if x == 0.0 { 0u64 } else { x.to_bits() };
        (n(p.re), n(p.im))
    };
    let mut seen = HashSet::new();
    points.into_iter().filter(|p| seen.insert(key(p))).collect()
}

/// Largest distance between consecutive values.
fn max_gap(values: &[C64]) -> f64 {
    values.windows(2).map(|w| (w[1] - w[0]).norm()).fold(0.0, f64::max)
}

fn fiber(a: &PiecewiseSymbol, theta: f64, s: f64) -> C64 {
    let (left, right) = a.one_sided_limits(theta);
    right + (left - right) * s
}

fn metadata(grids: &SpectrumGrids, extra: &[(&str, String)]) -> Vec<(String, String)> {
    let mut m = vec![
        ("t_points".to_string(), (grids.t_values.len() + 1).to_string()),
        ("s_points".to_string(), grids.s_points.to_string()),
        ("resolution".to_string(), grids.resolution.map_or("none".to_string(), |r| r.to_string())),
    ];
    m.extend(extra.iter().map(|(k, v)| (k.to_string(), v.clone())));
    m
}

/// `{(s a(1⁻) + (1−s) a(1⁺)) e^{iwt}}` over `s`, cluster samples `w` of `η`
/// at `1` and `t ∈ [0, ∞]`, with `e^{iw∞} = 0`.
pub fn spectrum_product(a: &PiecewiseSymbol, eta: &EtaMap, grids: &SpectrumGrids) -> Result<SpectrumSet> {
    grids.validate()?;
    let ws = grids.surrogates(std::slice::from_ref(eta), 0.0)?;
    let ss = grids.s_values();
    let floor = max_gap(&ss.iter().map(|&s| fiber(a, 0.0, s)).collect::<Vec<_>>());
    let rows: Vec<Vec<C64>> = ss
        .par_iter()
        .map(|&s| {
            let f = fiber(a, 0.0, s);
            let mut out = Vec::new();
            for w in &ws {
                let w = w.values[0].1;
                out.extend(grids.trace(floor, |t| Ok(f * (C64::new(0.0, t) * w).exp()))?);
                out.push(C64::new(0.0, 0.0));
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(SpectrumSet {
        points: dedup_exact(rows.into_iter().flatten()),
        metadata: metadata(grids, &[("kind", "product".into()), ("cluster_points", ws.len().to_string())]),
    })
}

/// Essential spectrum of `T_a + C_φ`: the fiber values of `a` over every base
/// point (where `C_φ` contributes 0), together with
/// `(s a(1⁻) + (1−s) a(1⁺)) + e^{iwt}` over the `λ = 1` stratum.
pub fn spectrum_sum(a: &PiecewiseSymbol, eta: &EtaMap, grids: &SpectrumGrids) -> Result<SpectrumSet> {
    grids.validate()?;
    let jumps: Vec<f64> = a.jumps().iter().map(|j| j.angle).collect();
    let lambdas = grids.lambda_values(&jumps);
    let ss = grids.s_values();
    let ws = grids.surrogates(std::slice::from_ref(eta), 0.0)?;
    let outer: Vec<Vec<C64>> = lambdas.par_iter().map(|&l| ss.iter().map(|&s| fiber(a, l, s)).collect()).collect();
    let floor = max_gap(&ss.iter().map(|&s| fiber(a, 0.0, s)).collect::<Vec<_>>());
    let inner: Vec<Vec<C64>> = ss
        .par_iter()
        .map(|&s| {
            let f = fiber(a, 0.0, s);
            let mut out = Vec::new();
            for w in &ws {
                let w = w.values[0].1;
                out.extend(grids.trace(floor, |t| Ok(f + (C64::new(0.0, t) * w).exp()))?);
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(SpectrumSet {
        points: dedup_exact(outer.into_iter().flatten().chain(inner.into_iter().flatten())),
        metadata: metadata(
            grids,
            &[
                ("kind", "sum".into()),
                ("lambda_points", lambdas.len().to_string()),
                ("cluster_points", ws.len().to_string()),
            ],
        ),
    })
}

fn jump_angles(e: &Expr, out: &mut Vec<f64>) {
    match e {
        Expr::Toeplitz(ToeplitzSymbol::Piecewise(a)) => out.extend(a.jumps().iter().map(|j| j.angle)),
        Expr::Sum(a, b) | Expr::Product(a, b) => {
            jump_angles(a, out);
            jump_angles(b, out);
        }
        Expr::Scale(_, a) | Expr::Adjoint(a) => jump_angles(a, out),
        _ => {}
    }
}

/// `{Γ(e)(p)}` over both strata: `λ = 1` with `z ∈ [0, ∞]`, and every base
/// point with `z = ∞`.
pub fn spectrum_general(e: &Expr, grids: &SpectrumGrids) -> Result<SpectrumSet> {
    grids.validate()?;
    let etas = e.etas();
    let mut jumps = Vec::new();
    jump_angles(e, &mut jumps);
    let lambdas = grids.lambda_values(&jumps);
    let ss = grids.s_values();
    let surrogates = grids.surrogates(&etas, 0.0)?;
    let floors: Vec<f64> = surrogates
        .par_iter()
        .map(|q| {
            let at_zero = ss
                .iter()
                .map(|&s| gelfand_evaluate(e, &IdealPoint::new(0.0, s, Extended::Finite(0.0), q.clone())?))
                .collect::<Result<Vec<_>>>()?;
            Ok(max_gap(&at_zero))
        })
        .collect::<Result<_>>()?;
    let pairs: Vec<(&QcSurrogate, f64, f64)> =
        surrogates.iter().zip(&floors).flat_map(|(q, &f)| ss.iter().map(move |&s| (q, f, s))).collect();
    let finite: Vec<Vec<C64>> = pairs
        .par_iter()
        .map(|&(q, floor, s)| {
            let mut out = grids
                .trace(floor, |t| gelfand_evaluate(e, &IdealPoint::new(0.0, s, Extended::Finite(t), q.clone())?))?;
            out.push(gelfand_evaluate(e, &IdealPoint::new(0.0, s, Extended::Infinity, q.clone())?)?);
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let at_infinity = ideal_points_at_infinity(&etas, &lambdas, &ss, grids)?;
    let outer: Vec<C64> = at_infinity.par_iter().map(|p| gelfand_evaluate(e, p)).collect::<Result<_>>()?;
    Ok(SpectrumSet {
        points: dedup_exact(finite.into_iter().flatten().chain(outer)),
        metadata: metadata(grids, &[("kind", "general".into()), ("lambda_points", lambdas.len().to_string())]),
    })
}

fn ideal_points_at_infinity(
    etas: &[EtaMap],
    lambdas: &[f64],
    ss: &[f64],
    grids: &SpectrumGrids,
) -> Result<Vec<IdealPoint>> {
    let per_lambda: Vec<Vec<QcSurrogate>> =
        lambdas.par_iter().map(|&l| grids.surrogates(etas, l)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for (&l, surrogates) in lambdas.iter().zip(per_lambda) {
        for &s in ss {
            for surrogate in &surrogates {
                out.push(IdealPoint::new(l, s, Extended::Infinity, surrogate.clone())?);
            }
        }
    }
    Ok(out)
}

/// The sampled ideal-space grid underlying [`spectrum_general`] before
/// resolution refinement, in lexicographic order: stratum, base point, `s`,
/// surrogate, `z`.
pub fn ideal_points(e: &Expr, grids: &SpectrumGrids) -> Result<Vec<IdealPoint>> {
    grids.validate()?;
    let etas = e.etas();
    let mut jumps = Vec::new();
    jump_angles(e, &mut jumps);
    let ss = grids.s_values();
    let mut out = Vec::new();
    for surrogate in grids.surrogates(&etas, 0.0)? {
        for &s in &ss {
            for z in grids.z_values() {
                out.push((0.0, s, z, surrogate.clone()));
            }
        }
    }
    let mut out: Vec<IdealPoint> =
        out.into_iter().map(|(l, s, z, q)| IdealPoint::new(l, s, z, q)).collect::<Result<_>>()?;
    out.extend(ideal_points_at_infinity(&etas, &grids.lambda_values(&jumps), &ss, grids)?);
    Ok(out)
}

/// Symmetric Hausdorff distance between finite point sets.
pub fn hausdorff_distance(a: &SpectrumSet, b: &SpectrumSet) -> Result<f64> {
    hausdorff_points(&a.points, &b.points)
}

pub fn hausdorff_points(a: &[C64], b: &[C64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidArgument("Hausdorff distance needs nonempty sets".into()));
    }
    let directed = |x: &[C64], y: &[C64]| {
        x.par_iter().map(|p| y.iter().map(|q| (p - q).norm()).fold(f64::INFINITY, f64::min)).reduce(|| 0.0, f64::max)
    };
    Ok(directed(a, b).max(directed(b, a)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::{MultiplierSymbol, SelfMap};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn set(points: &[f64]) -> SpectrumSet {
        SpectrumSet::from_points(points.iter().map(|&x| c(x, 0.0)).collect())
    }

    fn segment(n: usize, lo: f64, hi: f64) -> SpectrumSet {
        SpectrumSet::from_points((0..n).map(|k| c(lo + (hi - lo) * k as f64 / (n - 1) as f64, 0.0)).collect())
    }

    #[test]
    fn hausdorff_examples() {
        assert_eq!(hausdorff_distance(&set(&[0.0, 1.0]), &set(&[0.0, 1.0])).unwrap(), 0.0);
        assert_eq!(hausdorff_distance(&set(&[0.0]), &set(&[1.0])).unwrap(), 1.0);
        assert_eq!(hausdorff_distance(&set(&[0.0, 1.0]), &set(&[0.5])).unwrap(), 0.5);
        assert!(hausdorff_distance(&set(&[]), &set(&[0.5])).is_err());
    }

    #[test]
    fn product_spectrum_of_unit_symbol_is_unit_segment() {
        let one = PiecewiseSymbol::constant(c(1.0, 0.0));
        let eta = EtaMap::constant(c(0.0, 1.0)).unwrap();
        let sp = spectrum_product(&one, &eta, &SpectrumGrids::default()).unwrap();
        assert!(sp.len() > 202);
        let raw = SpectrumGrids { resolution: None, ..SpectrumGrids::default() };
        assert_eq!(spectrum_product(&one, &eta, &raw).unwrap().len(), 202);
        assert!(hausdorff_distance(&sp, &segment(1001, 0.0, 1.0)).unwrap() < 1e-3);
    }

    #[test]
    fn product_spectrum_spiral() {
        let one = PiecewiseSymbol::constant(c(1.0, 0.0));
        let eta = EtaMap::constant(c(1.0, 1.0)).unwrap();
        let grids = SpectrumGrids::default().with_t_values(vec![0.0, std::f64::consts::PI]).unwrap();
        let sp = spectrum_product(&one, &eta, &grids).unwrap();
        assert!(sp.points.contains(&c(1.0, 0.0)));
        let target = c(-(-std::f64::consts::PI).exp(), 0.0);
        assert!(sp.points.iter().any(|p| (p - target).norm() < 1e-15));
    }

    #[test]
    fn zero_symbol_gives_origin() {
        let zero = PiecewiseSymbol::constant(c(0.0, 0.0));
        let eta = EtaMap::constant(c(0.0, 1.0)).unwrap();
        assert_eq!(spectrum_product(&zero, &eta, &SpectrumGrids::default()).unwrap().points, vec![c(0.0, 0.0)]);
    }

    #[test]
    fn sum_spectra() {
        let eta = EtaMap::constant(c(0.0, 1.0)).unwrap();
        let g = SpectrumGrids::default();
        let zero = spectrum_sum(&PiecewiseSymbol::constant(c(0.0, 0.0)), &eta, &g).unwrap();
        assert!(hausdorff_distance(&zero, &segment(1001, 0.0, 1.0)).unwrap() < 1e-3);
        let shifted = spectrum_sum(&PiecewiseSymbol::constant(c(2.0, 1.0)), &eta, &g).unwrap();
        let want = SpectrumSet::from_points(segment(1001, 0.0, 1.0).points.iter().map(|p| p + c(2.0, 1.0)).collect());
        assert!(hausdorff_distance(&shifted, &want).unwrap() < 1e-3);
        let u = PiecewiseSymbol::step(0.0, c(1.0, 0.0)).unwrap();
        let step = spectrum_sum(&u, &eta, &g).unwrap();
        assert!(hausdorff_distance(&step, &segment(2001, 0.0, 2.0)).unwrap() < 1e-2);
    }

    #[test]
    fn general_spectrum_examples() {
        let g = SpectrumGrids::default();
        assert_eq!(spectrum_general(&Expr::Identity, &g).unwrap().points, vec![c(1.0, 0.0)]);
        let th = Expr::multiplier(MultiplierSymbol::exponential(c(0.0, 1.0)).unwrap());
        let sp = spectrum_general(&th, &g).unwrap();
        assert!(hausdorff_distance(&sp, &segment(1001, 0.0, 1.0)).unwrap() < 1e-3);
    }

    #[test]
    fn general_matches_product_specialisation() {
        let g = SpectrumGrids::default();
        let one = PiecewiseSymbol::constant(c(1.0, 0.0));
        let eta = EtaMap::constant(c(0.0, 1.0)).unwrap();
        let e = Expr::toeplitz(one.clone()) * Expr::composition(SelfMap::Eta(eta.clone()));
        let mut general = spectrum_general(&e, &g).unwrap().points;
        let mut product = spectrum_product(&one, &eta, &g).unwrap().points;
        let key = |p: &C64| (p.re, p.im);
        general.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
        product.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
        assert_eq!(general, product);
    }

    #[test]
    fn csv_row_count() {
        let sp = set(&[0.0, 0.5]);
        let csv = sp.to_csv();
        assert_eq!(csv.lines().filter(|l| !l.starts_with('#')).count(), 3);
    }
}
