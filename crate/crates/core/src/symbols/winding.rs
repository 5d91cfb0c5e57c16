//! Fredholm index of continuous symbols by argument accumulation.

use crate::symbols::PiecewiseSymbol;
use crate::{Error, Result, C64, TWO_PI};

/// Smallest `|a|` on the sample grid accepted by [`winding_index`].
pub const DEFAULT_MARGIN: f64 = 1e-8;

/// Largest argument increment between consecutive samples; larger steps
/// could hide a full turn.
const MAX_STEP: f64 = std::f64::consts::FRAC_PI_2;

/// `ind T_a = −wind(a, 0)` for a continuous nonvanishing symbol.
pub fn winding_index(s: &PiecewiseSymbol, samples: usize) -> Result<i64> {
    winding_index_with_margin(s, samples, DEFAULT_MARGIN)
}

pub fn winding_index_with_margin(s: &PiecewiseSymbol, samples: usize, margin: f64) -> Result<i64> {
    if !s.is_continuous() {
        return Err(Error::InvalidArgument("winding index needs a symbol without jumps".into()));
    }
    if samples < 3 {
        return Err(Error::InvalidArgument(format!("winding index needs at least 3 samples, got {samples}")));
    }
    let h = TWO_PI / samples as f64;
    let check = |angle: f64, v: C64| -> Result<C64> {
        if v.norm() < margin || !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::NotFredholm { modulus: v.norm(), margin, angle });
        }
        Ok(v)
    };
    let first = check(0.0, s.value(0.0))?;
    let mut prev = first;
    let mut total = 0.0;
    for k in 1..=samples {
        let angle = k as f64 * h;
        let cur = if k == samples { first } else { check(angle, s.value(angle))? };
        let step = (cur / prev).arg();
        if step.abs() > MAX_STEP {
            return Err(Error::UnderResolved { step, angle });
        }
        total += step;
        prev = cur;
    }
    Ok(-(total / TWO_PI).round() as i64)
}
