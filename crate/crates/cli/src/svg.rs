use std::fmt::Write as _;
use std::path::Path;

use hardy_spectra::C64;

use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct SvgStyle {
    pub width: f64,
    pub height: f64,
    pub radius: f64,
    pub fill: String,
}

impl Default for SvgStyle {
    fn default() -> Self {
        SvgStyle { width: 640.0, height: 480.0, radius: 2.0, fill: "#1f4e9c".into() }
    }
}

const MARGIN: f64 = 0.05;

/// `[lo, hi]` widened by the margin; a degenerate range gets unit width.
fn padded(lo: f64, hi: f64) -> (f64, f64) {
    let span = if hi > lo { hi - lo } else { 1.0 };
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * span * (1.0 + 2.0 * MARGIN);
    (mid - half, mid + half)
}

/// Scatter plot of `points` in the complex plane, imaginary axis pointing up.
/// Output depends only on the inputs.
pub fn svg_document(points: &[C64], style: &SvgStyle) -> Result<String, CliError> {
    if points.is_empty() {
        return Err(CliError::Usage("cannot render an empty point set".into()));
    }
    let fold = |f: fn(&C64) -> f64| {
        points.iter().map(f).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
    };
    let (x0, x1) = fold(|p| p.re);
    let (y0, y1) = fold(|p| p.im);
    let (x0, x1) = padded(x0, x1);
    let (y0, y1) = padded(y0, y1);
    let (w, h) = (style.width, style.height);
    let px = |x: f64| (x - x0) / (x1 - x0) * w;
    let py = |y: f64| (y1 - y) / (y1 - y0) * h;

    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>"#);
    if y0 < 0.0 && y1 > 0.0 {
        let _ = writeln!(out, r##"<line x1="0" y1="{0:.3}" x2="{w}" y2="{0:.3}" stroke="#bbbbbb"/>"##, py(0.0));
    }
    if x0 < 0.0 && x1 > 0.0 {
        let _ = writeln!(out, r##"<line x1="{0:.3}" y1="0" x2="{0:.3}" y2="{h}" stroke="#bbbbbb"/>"##, px(0.0));
    }
    for p in points {
        let _ = writeln!(
            out,
            r#"<circle cx="{:.3}" cy="{:.3}" r="{}" fill="{}"/>"#,
            px(p.re),
            py(p.im),
            style.radius,
            style.fill
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

pub fn render_svg(points: &[C64], path: &Path, style: &SvgStyle) -> Result<(), CliError> {
    let doc = svg_document(points, style)?;
    std::fs::write(path, doc).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}
