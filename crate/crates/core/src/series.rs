//! Truncated power series over the complex numbers.
//!
//! All operations keep the first `len` Taylor coefficients and drop the rest;
//! coefficient `k` of every result depends only on coefficients `0..=k` of the
//! inputs, so truncation never feeds back into kept terms.

use crate::{Error, Result, C64};

pub fn mul(a: &[C64], b: &[C64], len: usize) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); len];
    for (i, &ai) in a.iter().enumerate().take(len) {
        if ai == C64::new(0.0, 0.0) {
            continue;
        }
        for (j, &bj) in b.iter().enumerate().take(len - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Series of `num / den`; `den[0]` must be nonzero.
pub fn div(num: &[C64], den: &[C64], len: usize) -> Result<Vec<C64>> {
    let d0 = den.first().copied().unwrap_or_default();
    if d0.norm() == 0.0 {
        return Err(Error::InvalidArgument("series division by a series with zero constant term".into()));
    }
    let mut out = vec![C64::new(0.0, 0.0); len];
    for k in 0..len {
        let mut acc = num.get(k).copied().unwrap_or_default();
        for j in 1..=k.min(den.len().saturating_sub(1)) {
            acc -= den[j] * out[k - j];
        }
        out[k] = acc / d0;
    }
    Ok(out)
}

pub fn pow(a: &[C64], exponent: u32, len: usize) -> Vec<C64> {
    let mut result = vec![C64::new(0.0, 0.0); len];
    if len == 0 {
        return result;
    }
    result[0] = C64::new(1.0, 0.0);
    let mut base: Vec<C64> = a.iter().copied().take(len).collect();
    base.resize(len, C64::new(0.0, 0.0));
    let mut e = exponent;
    while e > 0 {
        if e & 1 == 1 {
            result = mul(&result, &base, len);
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base, len);
        }
    }
    result
}

/// `exp(h)` via the recurrence `n E_n = sum_k k h_k E_{n-k}`.
pub fn exp(h: &[C64], len: usize) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); len];
    if len == 0 {
        return out;
    }
    out[0] = h.first().copied().unwrap_or_default().exp();
    for n in 1..len {
        let mut acc = C64::new(0.0, 0.0);
        for k in 1..=n.min(h.len().saturating_sub(1)) {
            acc += h[k] * out[n - k] * k as f64;
        }
        out[n] = acc / n as f64;
    }
    out
}

/// Horner evaluation of a polynomial with ascending coefficients.
pub fn eval(coeffs: &[C64], z: C64) -> C64 {
    coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn geometric_series_from_division() {
        let s = div(&[c(1.0, 0.0)], &[c(1.0, 0.0), c(-1.0, 0.0)], 6).unwrap();
        assert!(s.iter().all(|&v| v == c(1.0, 0.0)));
    }

    #[test]
    fn exp_matches_factorials() {
        let s = exp(&[c(0.0, 0.0), c(1.0, 0.0)], 8);
        let mut fact = 1.0;
        for (n, v) in s.iter().enumerate() {
            if n > 0 {
                fact *= n as f64;
            }
            assert!((v.re - 1.0 / fact).abs() < 1e-15);
        }
    }

    #[test]
    fn pow_agrees_with_repeated_mul() {
        let a = [c(0.5, 0.1), c(-0.3, 0.2), c(0.1, 0.0)];
        let mut rep = vec![c(1.0, 0.0)];
        for _ in 0..5 {
            rep = mul(&rep, &a, 7);
        }
        let p = pow(&a, 5, 7);
        for (x, y) in rep.iter().zip(&p) {
            assert!((x - y).norm() < 1e-14);
        }
    }

    #[test]
    fn zero_constant_denominator_rejected() {
        assert!(div(&[c(1.0, 0.0)], &[c(0.0, 0.0), c(1.0, 0.0)], 3).is_err());
    }
}
