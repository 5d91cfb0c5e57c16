//! Gauss–Laguerre quadrature for integrals against `e^{−x}` on `[0, ∞)`.
//!
//! Nodes are eigenvalues of the Laguerre Jacobi matrix (diagonal `2n+1`,
//! off-diagonal `n`), found by implicit QL in `O(K²)`. Weights come from the
//! Christoffel sum and are stored premultiplied by `e^{x}` so they pair with
//! the Laguerre functions `ψ_n(x) = e^{−x/2} L_n(x)`:
//!
//! `∫₀^∞ f(x) ψ_m(x) ψ_n(x) dx ≈ Σ_k w̃_k f(x_k) ψ_m(x_k) ψ_n(x_k)`,
//! `w̃_k = 1 / Σ_{n<K} ψ_n(x_k)²`.
//!
//! The rule is exact when `f` times `e^{x}ψ_mψ_n` is a polynomial of degree
//! below `2K`.

use faer::Mat;
use rayon::prelude::*;

use crate::{Error, Result, C64};

/// Default absolute tolerance for multiplier quadrature.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

const RESCALE: f64 = 1e100;

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureScheme {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    tolerance: f64,
}

impl QuadratureScheme {
    /// `K`-point rule.
    pub fn gauss_laguerre(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("quadrature needs at least one node".into()));
        }
        let mut diag: Vec<f64> = (0..k).map(|n| (2 * n + 1) as f64).collect();
        let mut off: Vec<f64> = (0..k).map(|n| n as f64).collect();
        tridiagonal_eigenvalues(&mut diag, &mut off)?;
        diag.sort_by(f64::total_cmp);
        let nodes = diag;
        let weights = nodes
            .par_iter()
            .map(|&x| {
                let mut sum = 0.0;
                laguerre_functions(x, k, |_, v| sum += v * v);
                1.0 / sum
            })
            .collect::<Vec<_>>();
        if weights.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(Error::Decomposition("non-positive Gauss–Laguerre weight".into()));
        }
        Ok(QuadratureScheme { nodes, weights, tolerance: DEFAULT_TOLERANCE })
    }

    /// Starting rule for a `dim`-dimensional multiplier matrix: `K = 2·dim`.
    pub fn for_dimension(dim: usize) -> Result<Self> {
        Self::gauss_laguerre((2 * dim).max(16))
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Result<Self> {
        if !(tolerance > 0.0) {
            return Err(Error::InvalidArgument(format!("quadrature tolerance must be positive, got {tolerance}")));
        }
        self.tolerance = tolerance;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// `w̃_k = w_k e^{x_k}`.
    pub fn modified_weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// `∫₀^∞ f(t) e^{−2t} dt`.
    pub fn integrate(&self, f: impl Fn(f64) -> C64) -> C64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| f(x / 2.0) * (w * (-x).exp() / 2.0)).sum()
    }

    /// Largest relative error of the rule on `∫ t^k e^{−2t} dt = k!/2^{k+1}`
    /// for `k ≤ max_k`, compared in log space.
    pub fn moment_error(&self, max_k: usize) -> f64 {
        let mut ln_fact = 0.0;
        let mut worst: f64 = 0.0;
        let ln2 = std::f64::consts::LN_2;
        for k in 0..=max_k {
            if k > 0 {
                ln_fact += (k as f64).ln();
            }
            let exact = ln_fact - (k as f64 + 1.0) * ln2;
            let terms: Vec<f64> = self
                .nodes
                .iter()
                .zip(&self.weights)
                .map(|(&x, &w)| w.ln() - x + k as f64 * (x / 2.0).ln() - ln2)
                .collect();
            let top = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let approx = top + terms.iter().map(|t| (t - top).exp()).sum::<f64>().ln();
            worst = worst.max((approx - exact).exp_m1().abs());
        }
        worst
    }

    /// `ψ_n(x_k)` as a `K × dim` matrix.
    pub fn laguerre_table(&self, dim: usize) -> Mat<f64> {
        let rows: Vec<Vec<f64>> = self
            .nodes
            .par_iter()
            .map(|&x| {
                let mut row = vec![0.0; dim];
                laguerre_functions(x, dim, |n, v| row[n] = v);
                row
            })
            .collect();
        Mat::from_fn(self.nodes.len(), dim, |k, n| rows[k][n])
    }
}

/// Calls `emit(n, ψ_n(x))` for `n < count` using the three-term recurrence
/// with logarithmic rescaling, so large `x` neither overflows `L_n` nor
/// underflows `e^{−x/2}` prematurely.
pub fn laguerre_functions(x: f64, count: usize, mut emit: impl FnMut(usize, f64)) {
    let mut log_acc = 0.0;
    let (mut prev, mut cur) = (0.0f64, 1.0f64);
    for n in 0..count {
        if n > 0 {
            let nf = (n - 1) as f64;
            let next = ((2.0 * nf + 1.0 - x) * cur - nf * prev) / (nf + 1.0);
            prev = cur;
            cur = next;
        }
        if cur.abs() > RESCALE {
            cur /= RESCALE;
            prev /= RESCALE;
            log_acc += RESCALE.ln();
        }
        let v = if cur == 0.0 { 0.0 } else { cur.signum() * (cur.abs().ln() + log_acc - x / 2.0).exp() };
        emit(n, v);
    }
}

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `d` and
/// subdiagonal `e[1..]`, overwriting `d`.
fn tridiagonal_eigenvalues(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    if n == 1 {
        return Ok(());
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::Decomposition("tridiagonal QL did not converge".into()));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}
