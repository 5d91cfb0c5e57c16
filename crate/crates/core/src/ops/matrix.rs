use std::fmt::Write as _;

use faer::Mat;

use crate::csv::{fmt_f64, header_comment};
use crate::{Error, Result, C64};

/// Dense `N × N` complex matrix indexed by monomial degree.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    mat: Mat<C64>,
}

impl OperatorMatrix {
    /// Wraps a square matrix with finite entries and dimension at least one.
    pub fn new(mat: Mat<C64>) -> Result<Self> {
        if mat.nrows() != mat.ncols() || mat.nrows() == 0 {
            return Err(Error::InvalidArgument(format!(
                "operator matrix must be square and nonempty, got {}x{}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        for j in 0..mat.ncols() {
            for i in 0..mat.nrows() {
                let v = mat[(i, j)];
                if !v.re.is_finite() || !v.im.is_finite() {
                    return Err(Error::InvalidArgument(format!("non-finite entry at ({i},{j})")));
                }
            }
        }
        Ok(OperatorMatrix { mat })
    }

    pub(crate) fn from_mat_unchecked(mat: Mat<C64>) -> Self {
        debug_assert_eq!(mat.nrows(), mat.ncols());
        OperatorMatrix { mat }
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize, usize) -> C64) -> Result<Self> {
        Self::new(Mat::from_fn(n, n, f))
    }

    pub fn identity(n: usize) -> Self {
        Self::from_mat_unchecked(Mat::identity(n, n))
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_mat_unchecked(Mat::zeros(n, n))
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn get(&self, j: usize, k: usize) -> C64 {
        self.mat[(j, k)]
    }

    pub fn as_mat(&self) -> &Mat<C64> {
        &self.mat
    }

    pub fn into_mat(self) -> Mat<C64> {
        self.mat
    }

    /// Leading `m × m` block.
    pub fn principal_block(&self, m: usize) -> Result<Self> {
        if m == 0 || m > self.dim() {
            return Err(Error::InvalidArgument(format!("block size {m} outside 1..={}", self.dim())));
        }
        Ok(Self::from_mat_unchecked(self.mat.as_ref().submatrix(0, 0, m, m).to_owned()))
    }

    pub fn max_modulus(&self) -> f64 {
        let mut max: f64 = 0.0;
        for j in 0..self.dim() {
            for i in 0..self.dim() {
                max = max.max(self.mat[(i, j)].norm());
            }
        }
        max
    }

    pub fn adjoint(&self) -> Self {
        Self::from_mat_unchecked(self.mat.adjoint().to_owned())
    }

    pub fn transpose(&self) -> Self {
        Self::from_mat_unchecked(self.mat.transpose().to_owned())
    }

    fn check_dims(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::InvalidArgument(format!("dimension mismatch: {} vs {}", self.dim(), other.dim())));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        Ok(Self::from_mat_unchecked(&self.mat + &other.mat))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        Ok(Self::from_mat_unchecked(&self.mat - &other.mat))
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        Ok(Self::from_mat_unchecked(&self.mat * &other.mat))
    }

    pub fn scale(&self, s: C64) -> Self {
        let n = self.dim();
        Self::from_mat_unchecked(Mat::from_fn(n, n, |i, j| self.mat[(i, j)] * s))
    }

    /// `max |M − Mᴴ|` entrywise.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.dim();
        let mut max: f64 = 0.0;
        for j in 0..n {
            for i in 0..=j {
                max = max.max((self.mat[(i, j)] - self.mat[(j, i)].conj()).norm());
            }
        }
        max
    }

    /// Rows `j,k,re,im` after a `#` header echoing `meta`.
    pub fn to_csv(&self, meta: &[(&str, String)]) -> String {
        let n = self.dim();
        let mut meta: Vec<(&str, String)> = meta.to_vec();
        meta.insert(0, ("dim", n.to_string()));
        let mut out = header_comment(&meta);
        out.push_str("j,k,re,im\n");
        for j in 0..n {
            for k in 0..n {
                let v = self.mat[(j, k)];
                let _ = writeln!(out, "{j},{k},{},{}", fmt_f64(v.re), fmt_f64(v.im));
            }
        }
        out
    }
}
