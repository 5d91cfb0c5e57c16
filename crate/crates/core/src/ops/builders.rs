use faer::Mat;
use rayon::prelude::*;

use crate::ops::OperatorMatrix;
use crate::quadrature::{laguerre_functions, QuadratureScheme};
use crate::symbols::{MultiplierSymbol, SelfMap, ToeplitzSymbol};
use crate::{series, Error, Result, C64};

/// Columns per independent work item in [`composition_matrix`]; fixed so the
/// floating-point operation sequence does not depend on the thread count.
const COMPOSITION_CHUNK: usize = 64;

/// Largest node count the multiplier quadrature refines to, as a multiple of
/// the dimension.
const MAX_NODES_PER_DIM: usize = 8;

/// Entry `(j, k) = â(j − k)`.
pub fn toeplitz_matrix(s: &ToeplitzSymbol, n: usize) -> Result<OperatorMatrix> {
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    let coeffs = s.fourier_coefficients(n - 1)?;
    OperatorMatrix::from_fn(n, |j, k| coeffs[j + n - 1 - k])
}

/// Column `m` holds the first `n` Taylor coefficients of `φ^m`.
pub fn composition_matrix(map: &SelfMap, n: usize) -> Result<OperatorMatrix> {
    composition_matrix_from_taylor(&map.taylor(n)?, n)
}

/// As [`composition_matrix`] for a self-map given by Taylor coefficients.
pub fn composition_matrix_from_taylor(phi: &[C64], n: usize) -> Result<OperatorMatrix> {
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    let phi0 = phi.first().copied().unwrap_or_default();
    if phi0.norm() >= 1.0 - 1e-12 {
        return Err(Error::InvalidSelfMap { modulus: phi0.norm() });
    }
    let mut phi: Vec<C64> = phi.iter().copied().take(n).collect();
    phi.resize(n, C64::new(0.0, 0.0));
    let starts: Vec<usize> = (0..n).step_by(COMPOSITION_CHUNK).collect();
    let chunks: Vec<Vec<Vec<C64>>> = starts
        .par_iter()
        .map(|&start| {
            let end = (start + COMPOSITION_CHUNK).min(n);
            let mut col = series::pow(&phi, start as u32, n);
            let mut cols = Vec::with_capacity(end - start);
            for m in start..end {
                if m > start {
                    col = series::mul(&col, &phi, n);
                }
                cols.push(col.clone());
            }
            cols
        })
        .collect();
    let cols: Vec<Vec<C64>> = chunks.into_iter().flatten().collect();
    OperatorMatrix::from_fn(n, |j, k| cols[k][j])
}

/// Quadrature diagnostics for one multiplier matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureReport {
    /// Largest entry change on the sample rows under one refinement step.
    pub achieved: f64,
    pub nodes: usize,
}

/// `D[m,n] = 2∫₀^∞ ϑ(t) L_m(2t) L_n(2t) e^{−2t} dt`, starting from the rule
/// `q` and refining by `3/2` until sample rows are stable to `q`'s tolerance.
pub fn multiplier_matrix(theta: &MultiplierSymbol, n: usize, q: &QuadratureScheme) -> Result<OperatorMatrix> {
    multiplier_matrix_with_report(theta, n, q).map(|(m, _)| m)
}

pub fn multiplier_matrix_with_report(
    theta: &MultiplierSymbol,
    n: usize,
    q: &QuadratureScheme,
) -> Result<(OperatorMatrix, QuadratureReport)> {
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    let mut rows: Vec<usize> = vec![0, 1.min(n - 1), n / 4, n / 2, n - 1];
    rows.sort_unstable();
    rows.dedup();
    let cap = (MAX_NODES_PER_DIM * n).max(q.len());
    let mut scheme = q.clone();
    let mut current = sample_rows(theta, n, &scheme, &rows);
    let achieved = loop {
        let next_len = scheme.len() + scheme.len().div_ceil(2);
        let finer = QuadratureScheme::gauss_laguerre(next_len)?.with_tolerance(q.tolerance())?;
        let refined = sample_rows(theta, n, &finer, &rows);
        let diff = current.iter().zip(&refined).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        if diff <= q.tolerance() {
            break diff;
        }
        if next_len > cap {
            return Err(Error::QuadratureNotConverged { achieved: diff, tolerance: q.tolerance(), nodes: next_len });
        }
        scheme = finer;
        current = refined;
    };
    let m = full_matrix(theta, n, &scheme);
    Ok((m, QuadratureReport { achieved, nodes: scheme.len() }))
}

fn weighted_symbol(theta: &MultiplierSymbol, q: &QuadratureScheme) -> Vec<C64> {
    q.nodes().iter().zip(q.modified_weights()).map(|(&x, &w)| theta.value(x / 2.0) * w).collect()
}

fn sample_rows(theta: &MultiplierSymbol, n: usize, q: &QuadratureScheme, rows: &[usize]) -> Vec<C64> {
    let c = weighted_symbol(theta, q);
    let partial: Vec<Vec<C64>> = q
        .nodes()
        .par_iter()
        .zip(c.par_iter())
        .map(|(&x, &ck)| {
            let mut psi = vec![0.0; n];
            laguerre_functions(x, n, |m, v| psi[m] = v);
            let mut out = Vec::with_capacity(rows.len() * n);
            for &r in rows {
                let a = ck * psi[r];
                out.extend(psi.iter().map(|&p| a * p));
            }
            out
        })
        .collect();
    // fixed summation order over nodes
    let mut acc = vec![C64::new(0.0, 0.0); rows.len() * n];
    for p in &partial {
        for (a, v) in acc.iter_mut().zip(p) {
            *a += v;
        }
    }
    acc
}

fn full_matrix(theta: &MultiplierSymbol, n: usize, q: &QuadratureScheme) -> OperatorMatrix {
    let psi = q.laguerre_table(n);
    let c = weighted_symbol(theta, q);
    let k = q.len();
    let part = |f: &dyn Fn(C64) -> f64| -> Option<Mat<f64>> {
        if c.iter().all(|&v| f(v) == 0.0) {
            return None;
        }
        let scaled = Mat::from_fn(k, n, |r, j| f(c[r]) * psi[(r, j)]);
        Some(psi.transpose() * &scaled)
    };
    let re = part(&|v: C64| v.re);
    let im = part(&|v: C64| v.im);
    let entry = |m: &Option<Mat<f64>>, i: usize, j: usize| m.as_ref().map_or(0.0, |m| 0.5 * (m[(i, j)] + m[(j, i)]));
    // the exact matrix is complex symmetric; symmetrising removes rounding asymmetry
    OperatorMatrix::from_mat_unchecked(Mat::from_fn(n, n, |i, j| C64::new(entry(&re, i, j), entry(&im, i, j))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::{ParabolicParam, PiecewiseSymbol};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn shift_and_constant() {
        let s = toeplitz_matrix(&PiecewiseSymbol::monomial(1).into(), 4).unwrap();
        for j in 0..4 {
            for k in 0..4 {
                let want = if j == k + 1 { 1.0 } else { 0.0 };
                assert_eq!(s.get(j, k), c(want, 0.0));
            }
        }
        let m = toeplitz_matrix(&PiecewiseSymbol::constant(c(2.0, 1.0)).into(), 3).unwrap();
        assert_eq!(m, OperatorMatrix::identity(3).scale(c(2.0, 1.0)));
    }

    #[test]
    fn step_toeplitz_entries() {
        let u = PiecewiseSymbol::step(0.0, c(1.0, 0.0)).unwrap();
        let m = toeplitz_matrix(&u.into(), 3).unwrap();
        assert_eq!(m.get(1, 1), c(0.5, 0.0));
        let want = |d: f64| c(0.0, 1.0 / (std::f64::consts::TAU * d));
        assert!((m.get(2, 0) - want(2.0)).norm() < 1e-16);
        assert!((m.get(0, 1) - want(-1.0)).norm() < 1e-16);
    }

    #[test]
    fn identity_map_gives_identity() {
        let m = composition_matrix_from_taylor(&[c(0.0, 0.0), c(1.0, 0.0)], 5).unwrap();
        assert_eq!(m, OperatorMatrix::identity(5));
    }

    #[test]
    fn parabolic_columns_for_a_equal_i() {
        let map = SelfMap::Parabolic(ParabolicParam::new(c(0.0, 1.0)).unwrap());
        let m = composition_matrix(&map, 3).unwrap();
        let want = [[1.0, 1.0 / 3.0, 1.0 / 9.0], [0.0, 4.0 / 9.0, 8.0 / 27.0], [0.0, 4.0 / 27.0, 8.0 / 27.0]];
        for j in 0..3 {
            for k in 0..3 {
                assert!((m.get(j, k) - c(want[j][k], 0.0)).norm() < 1e-15, "({j},{k})");
            }
        }
    }

    #[test]
    fn chunked_columns_match_sequential_powers() {
        let map = SelfMap::Parabolic(ParabolicParam::new(c(0.5, 1.0)).unwrap());
        let n = 150;
        let m = composition_matrix(&map, n).unwrap();
        let phi = map.taylor(n).unwrap();
        let mut col = vec![c(0.0, 0.0); n];
        col[0] = c(1.0, 0.0);
        for k in 0..n {
            for j in 0..n {
                assert!((m.get(j, k) - col[j]).norm() < 1e-12, "({j},{k})");
            }
            col = series::mul(&col, &phi, n);
        }
    }

    #[test]
    fn invalid_self_map() {
        assert!(matches!(composition_matrix_from_taylor(&[c(1.0, 0.0)], 3), Err(Error::InvalidSelfMap { .. })));
    }

    #[test]
    fn unit_multiplier_is_identity() {
        let q = QuadratureScheme::for_dimension(64).unwrap();
        let d = multiplier_matrix(&MultiplierSymbol::constant(c(1.0, 0.0)), 64, &q).unwrap();
        assert!(d.sub(&OperatorMatrix::identity(64)).unwrap().max_modulus() < 1e-10);
    }

    #[test]
    fn exponential_multiplier_anchor_entries() {
        let q = QuadratureScheme::for_dimension(16).unwrap();
        let d = multiplier_matrix(&MultiplierSymbol::exponential(c(0.0, 1.0)).unwrap(), 16, &q).unwrap();
        assert!((d.get(0, 0) - c(2.0 / 3.0, 0.0)).norm() < 1e-12);
        assert!((d.get(0, 1) - c(2.0 / 9.0, 0.0)).norm() < 1e-12);
        assert!((d.get(1, 0) - c(2.0 / 9.0, 0.0)).norm() < 1e-12);
        assert!((d.get(1, 1) - c(10.0 / 27.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn non_convergent_quadrature_reports() {
        // e^{40it} oscillates faster than any rule up to 8·n nodes resolves
        let th = MultiplierSymbol::exponential(c(40.0, 1e-3)).unwrap();
        let q = QuadratureScheme::for_dimension(4).unwrap().with_tolerance(1e-14).unwrap();
        assert!(matches!(multiplier_matrix(&th, 4, &q), Err(Error::QuadratureNotConverged { .. })));
    }
}
