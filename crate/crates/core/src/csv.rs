//! Fixed-format numeric output shared by every CSV writer.
//!
//! Floats are written in scientific notation with 17 significant digits, `.`
//! as decimal separator and `\n` line endings, so identical inputs always
//! produce identical bytes.

use std::fmt::Write as _;

use crate::C64;

pub fn fmt_f64(x: f64) -> String {
    // -0.0 and 0.0 must print identically
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

pub fn push_complex(line: &mut String, z: C64) {
    let _ = write!(line, "{},{}", fmt_f64(z.re), fmt_f64(z.im));
}

/// Renders `# key=value key=value` from ordered pairs.
pub fn header_comment(pairs: &[(&str, String)]) -> String {
    let mut s = String::from("#");
    for (k, v) in pairs {
        let _ = write!(s, " {k}={v}");
    }
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(fmt_f64(1.0), "1.0000000000000000e0");
        assert_eq!(fmt_f64(-0.0), fmt_f64(0.0));
        let s = fmt_f64(std::f64::consts::PI);
        assert_eq!(s.parse::<f64>().unwrap(), std::f64::consts::PI);
    }
}
