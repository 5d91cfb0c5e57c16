//! Text literals for symbols, self-maps and multipliers.
//!
//! Complex numbers are written `RE`, `RE+IMi`, `RE-IMi`, `IMi` or `i`.
//! Several terms joined by `;` are summed.
//!
//! | kind | literals |
//! |---|---|
//! | boundary | `const:C`, `mono:n`, `step:angle:C`, `poly:c0,c1,...` |
//! | analytic boundary | `prefactor:ETA`, `hmult:C`, `hmult-printed:C`, `series-factor:alpha:n:ETA` |
//! | η | `const:C`, `poly:c0,c1,...`, `eta-exp` |
//! | multiplier | `const:C`, `exp:C`, `term:n:alpha`, `rat:p0,p1,.../q0,q1,...` |

use crate::symbols::{
    AnalyticSymbol, EtaMap, MultiplierSymbol, ParabolicParam, PiecewiseSymbol, ToeplitzSymbol, TrigPolynomial,
};
use crate::{Error, Result, C64};

/// Shortest round-trip form, e.g. `0+1i`, `1.5-2i`.
pub fn format_complex(z: C64) -> String {
    let im = if z.im == 0.0 { 0.0 } else { z.im };
    let re = if z.re == 0.0 { 0.0 } else { z.re };
    if im < 0.0 || (im == 0.0 && im.is_sign_negative()) {
        format!("{re}-{}i", -im)
    } else {
        format!("{re}+{im}i")
    }
}

pub fn parse_complex(input: &str) -> Result<C64> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::parse(input, "empty complex number"));
    }
    let real = |t: &str| -> Result<f64> {
        let v: f64 = t.parse().map_err(|_| Error::parse(input, format!("`{t}` is not a real number")))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::parse(input, "non-finite value"))
        }
    };
    let Some(body) = s.strip_suffix('i') else {
        return Ok(C64::new(real(&s)?, 0.0));
    };
    // split before the last sign that does not belong to an exponent
    let bytes = body.as_bytes();
    let split =
        (1..bytes.len()).rev().find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re_part, im_part) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let im = match im_part {
        "" | "+" => 1.0,
        "-" => -1.0,
        t => real(t)?,
    };
    let re = if re_part.is_empty() { 0.0 } else { real(re_part)? };
    Ok(C64::new(re, im))
}

fn parse_list(input: &str, list: &str) -> Result<Vec<C64>> {
    let out = list.split(',').map(parse_complex).collect::<Result<Vec<_>>>()?;
    if out.is_empty() {
        return Err(Error::parse(input, "empty coefficient list"));
    }
    Ok(out)
}

fn terms(input: &str) -> impl Iterator<Item = &str> {
    input.split(';').map(str::trim).filter(|t| !t.is_empty())
}

fn parse_piecewise_term(term: &str) -> Result<PiecewiseSymbol> {
    let (head, rest) = term.split_once(':').unwrap_or((term, ""));
    match head {
        "const" => Ok(PiecewiseSymbol::constant(parse_complex(rest)?)),
        "mono" => {
            let n: i64 = rest.parse().map_err(|_| Error::parse(term, "monomial degree must be an integer"))?;
            Ok(PiecewiseSymbol::monomial(n))
        }
        "step" => {
            let (angle, height) = rest.split_once(':').unwrap_or((rest, "1"));
            let angle: f64 = angle.parse().map_err(|_| Error::parse(term, "step angle must be a real number"))?;
            PiecewiseSymbol::step(angle, parse_complex(height)?)
        }
        "poly" => Ok(PiecewiseSymbol::trig(TrigPolynomial::analytic(&parse_list(term, rest)?))),
        _ => Err(Error::parse(term, "expected const:, mono:, step: or poly:")),
    }
}

/// Boundary symbol literal; terms joined by `;` are summed and factors
/// joined by `*` within a term are multiplied.
pub fn parse_piecewise(input: &str) -> Result<PiecewiseSymbol> {
    let mut acc: Option<PiecewiseSymbol> = None;
    for t in terms(input) {
        let mut factors = t.split('*').map(|f| parse_piecewise_term(f.trim()));
        let first = factors.next().expect("split yields at least one piece")?;
        let s = factors.try_fold(first, |p, f| p.mul(&f?))?;
        acc = Some(match acc {
            None => s,
            Some(a) => a.add(&s)?,
        });
    }
    acc.ok_or_else(|| Error::parse(input, "empty symbol literal"))
}

pub fn parse_eta(input: &str) -> Result<EtaMap> {
    let input = input.trim();
    let (head, rest) = input.split_once(':').unwrap_or((input, ""));
    match head {
        "const" => EtaMap::constant(parse_complex(rest)?),
        "poly" => EtaMap::polynomial(parse_list(input, rest)?),
        "eta-exp" if rest.is_empty() => Ok(EtaMap::singular_inner()),
        _ => Err(Error::parse(input, "expected const:, poly: or eta-exp")),
    }
}

pub fn parse_parabolic(input: &str) -> Result<ParabolicParam> {
    ParabolicParam::new(parse_complex(input)?)
}

/// Toeplitz literal: a boundary literal or one of the analytic forms.
pub fn parse_toeplitz(input: &str) -> Result<ToeplitzSymbol> {
    let input = input.trim();
    let (head, rest) = input.split_once(':').unwrap_or((input, ""));
    let analytic = match head {
        "prefactor" => AnalyticSymbol::CompositionPrefactor(parse_eta(rest)?),
        "hmult" => AnalyticSymbol::ParabolicMultiplier(parse_parabolic(rest)?),
        "hmult-printed" => AnalyticSymbol::PrintedParabolicMultiplier(parse_parabolic(rest)?),
        "series-factor" => {
            let mut parts = rest.splitn(3, ':');
            let alpha: f64 = parts
                .next()
                .and_then(|a| a.parse().ok())
                .ok_or_else(|| Error::parse(input, "series-factor needs alpha:n:ETA"))?;
            let power: u32 = parts
                .next()
                .and_then(|n| n.parse().ok())
                .ok_or_else(|| Error::parse(input, "series-factor needs alpha:n:ETA"))?;
            let eta = parse_eta(parts.next().unwrap_or(""))?;
            AnalyticSymbol::SeriesFactor { eta, alpha, power }
        }
        _ => return parse_piecewise(input).map(ToeplitzSymbol::Piecewise),
    };
    Ok(ToeplitzSymbol::Analytic(analytic))
}

fn parse_multiplier_term(term: &str) -> Result<MultiplierSymbol> {
    let (head, rest) = term.split_once(':').unwrap_or((term, ""));
    match head {
        "const" => Ok(MultiplierSymbol::constant(parse_complex(rest)?)),
        "exp" => MultiplierSymbol::exponential(parse_complex(rest)?),
        "term" => {
            let (n, alpha) = rest.split_once(':').ok_or_else(|| Error::parse(term, "expected term:n:alpha"))?;
            let n: u32 = n.parse().map_err(|_| Error::parse(term, "term order must be a nonnegative integer"))?;
            let alpha: f64 = alpha.parse().map_err(|_| Error::parse(term, "alpha must be a real number"))?;
            MultiplierSymbol::series_term(n, alpha)
        }
        "rat" => {
            let (p, q) = rest.split_once('/').ok_or_else(|| Error::parse(term, "expected rat:p0,p1/q0,q1"))?;
            MultiplierSymbol::rational(parse_list(term, p)?, parse_list(term, q)?)
        }
        _ => Err(Error::parse(term, "expected const:, exp:, term: or rat:")),
    }
}

pub fn parse_multiplier(input: &str) -> Result<MultiplierSymbol> {
    let mut parts = terms(input).map(parse_multiplier_term).collect::<Result<Vec<_>>>()?;
    match parts.len() {
        0 => Err(Error::parse(input, "empty multiplier literal")),
        1 => Ok(parts.pop().expect("one element")),
        _ => MultiplierSymbol::sum(parts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("0+1i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("1+i").unwrap(), c(1.0, 1.0));
        assert_eq!(parse_complex("2.5").unwrap(), c(2.5, 0.0));
        assert_eq!(parse_complex("-3i").unwrap(), c(0.0, -3.0));
        assert_eq!(parse_complex("1e-3-2e+1i").unwrap(), c(1e-3, -20.0));
        assert!(parse_complex("").is_err());
        assert!(parse_complex("x+1i").is_err());
    }

    #[test]
    fn format_round_trips() {
        for z in [c(0.0, 1.0), c(1.5, -2.0), c(-0.1, 0.0), c(1e-30, 3.25)] {
            assert_eq!(parse_complex(&format_complex(z)).unwrap(), z);
        }
        assert_eq!(format_complex(c(0.0, 1.0)), "0+1i");
    }

    #[test]
    fn boundary_literals() {
        let s = parse_piecewise("step:0:1; mono:1").unwrap();
        assert_eq!(s.jumps().len(), 1);
        assert_eq!(s.fourier_coefficient(0).unwrap(), c(0.5, 0.0));
        assert!(parse_piecewise("wave:3").is_err());
        let sq = parse_piecewise("step:0*step:0").unwrap();
        let (left, right) = sq.one_sided_limits(0.0);
        assert!((left - c(1.0, 0.0)).norm() < 1e-12 && right.norm() < 1e-12);
        assert!((sq.value(std::f64::consts::PI) - c(0.25, 0.0)).norm() < 1e-9);
        assert!(parse_piecewise("").is_err());
    }

    #[test]
    fn eta_and_multiplier_literals() {
        assert_eq!(parse_eta("const:0+1i").unwrap().label(), "const:0+1i");
        assert_eq!(parse_eta("eta-exp").unwrap().label(), "eta-exp");
        assert!(parse_eta("const:1").is_err());
        let th = parse_multiplier("rat:1/1,1").unwrap();
        assert!((th.value(1.0) - c(0.5, 0.0)).norm() < 1e-15);
        let th = parse_multiplier("exp:i;const:1").unwrap();
        assert_eq!(th.value_at_infinity(), c(1.0, 0.0));
    }

    #[test]
    fn analytic_literals() {
        assert!(matches!(parse_toeplitz("hmult:i").unwrap(), ToeplitzSymbol::Analytic(_)));
        assert!(matches!(
            parse_toeplitz("series-factor:2:3:const:i").unwrap(),
            ToeplitzSymbol::Analytic(AnalyticSymbol::SeriesFactor { power: 3, .. })
        ));
        assert!(matches!(parse_toeplitz("mono:1").unwrap(), ToeplitzSymbol::Piecewise(_)));
    }
}
