//! Algebra expressions on the command line.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := '-' unary | primary
//! primary := NUMBER | NUMBER 'i' | 'i' | 'I'
//!          | 'T[' literal ']' | 'D[' literal ']' | 'C[' literal ']'
//!          | 'adj(' expr ')' | '(' expr ')' | '[' expr ',' expr ']'
//! ```
//!
//! `T` takes a Toeplitz literal, `D` a multiplier literal, and `C` either an
//! `η` literal or `parabolic:A`. `[A, B]` is the commutator `AB − BA`.

use hardy_spectra::symbols::literal::{parse_eta, parse_multiplier, parse_parabolic, parse_toeplitz};
use hardy_spectra::{Error, Expr, Result, SelfMap, C64};

/// Parses `input` into an expression tree. A bare scalar `c` is read as `c·I`.
pub fn parse_expression(input: &str) -> Result<Expr> {
    let mut p = Parser { src: input, pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < input.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(v.into_expr())
}

#[derive(Debug, Clone)]
enum Value {
    Scalar(C64),
    Op(Expr),
}

impl Value {
    fn into_expr(self) -> Expr {
        match self {
            Value::Scalar(s) => Expr::Identity.scale(s),
            Value::Op(e) => e,
        }
    }

    fn add(self, rhs: Value) -> Value {
        match (self, rhs) {
            (Value::Scalar(a), Value::Scalar(b)) => Value::Scalar(a + b),
            (a, b) => Value::Op(a.into_expr() + b.into_expr()),
        }
    }

    fn mul(self, rhs: Value) -> Value {
        match (self, rhs) {
            (Value::Scalar(a), Value::Scalar(b)) => Value::Scalar(a * b),
            (Value::Scalar(s), Value::Op(e)) | (Value::Op(e), Value::Scalar(s)) => Value::Op(e.scale(s)),
            (Value::Op(a), Value::Op(b)) => Value::Op(a * b),
        }
    }

    fn neg(self) -> Value {
        self.mul(Value::Scalar(C64::new(-1.0, 0.0)))
    }

    fn adjoint(self) -> Value {
        match self {
            Value::Scalar(s) => Value::Scalar(s.conj()),
            Value::Op(e) => Value::Op(e.adjoint()),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, reason: &str) -> Error {
        Error::Parse { input: self.src.to_string(), reason: format!("{reason} at offset {}", self.pos) }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<Value> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(self.term()?);
            } else if self.eat('-') {
                acc = acc.add(self.term()?.neg());
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            acc = acc.mul(self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Value> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Value> {
        let Some(c) = self.peek() else {
            return Err(self.error("unexpected end of expression"));
        };
        match c {
            '(' => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            '[' => {
                self.pos += 1;
                let a = self.expr()?.into_expr();
                self.expect(',')?;
                let b = self.expr()?.into_expr();
                self.expect(']')?;
                Ok(Value::Op(Expr::commutator(a, b)))
            }
            '0'..='9' | '.' => self.number(),
            _ => {
                let word: String = self.rest().chars().take_while(|c| c.is_ascii_alphabetic()).collect();
                self.pos += word.len();
                match word.as_str() {
                    "I" => Ok(Value::Op(Expr::Identity)),
                    "i" => Ok(Value::Scalar(C64::new(0.0, 1.0))),
                    "adj" => {
                        self.expect('(')?;
                        let v = self.expr()?;
                        self.expect(')')?;
                        Ok(v.adjoint())
                    }
                    "T" | "D" | "C" => {
                        let lit = self.bracketed()?;
                        Ok(Value::Op(leaf(&word, lit)?))
                    }
                    _ => Err(self.error(&format!("unknown token `{word}`"))),
                }
            }
        }
    }

    fn number(&mut self) -> Result<Value> {
        let bytes = self.rest().as_bytes();
        let mut end = 0;
        while end < bytes.len() {
            let b = bytes[end];
            let exp_sign = (b == b'+' || b == b'-') && end > 0 && matches!(bytes[end - 1], b'e' | b'E');
            if b.is_ascii_digit() || b == b'.' || b == b'e' || b == b'E' || exp_sign {
                end += 1;
            } else {
                break;
            }
        }
        let text = &self.rest()[..end];
        let x: f64 = text.parse().map_err(|_| self.error(&format!("bad number `{text}`")))?;
        self.pos += end;
        if self.rest().starts_with('i') && !self.rest()[1..].starts_with(|c: char| c.is_ascii_alphabetic()) {
            self.pos += 1;
            return Ok(Value::Scalar(C64::new(0.0, x)));
        }
        Ok(Value::Scalar(C64::new(x, 0.0)))
    }

    /// Content between `[` and its matching `]`.
    fn bracketed(&mut self) -> Result<&'a str> {
        if !self.rest().starts_with('[') {
            return Err(self.error("expected `[` after leaf name"));
        }
        let start = self.pos + 1;
        let mut depth = 0usize;
        for (k, c) in self.rest().char_indices() {
            match c {
                '[' => depth += 1,
                ']' => {
                    depth -= 1;
                    if depth == 0 {
                        let end = self.pos + k;
                        self.pos = end + 1;
                        return Ok(&self.src[start..end]);
                    }
                }
                _ => {}
            }
        }
        Err(self.error("unclosed `[`"))
    }
}

fn leaf(kind: &str, lit: &str) -> Result<Expr> {
    let lit = lit.trim();
    Ok(match kind {
        "T" => Expr::toeplitz(parse_toeplitz(lit)?),
        "D" => Expr::multiplier(parse_multiplier(lit)?),
        _ => match lit.strip_prefix("parabolic:") {
            Some(a) => Expr::composition(SelfMap::Parabolic(parse_parabolic(a)?)),
            None => Expr::composition(SelfMap::Eta(parse_eta(lit)?)),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use hardy_spectra::symbols::{MultiplierSymbol, ParabolicParam, PiecewiseSymbol};
    use hardy_spectra::EtaMap;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn leaves_and_identity() {
        assert_eq!(parse_expression("I").unwrap(), Expr::Identity);
        assert_eq!(parse_expression("T[mono:1]").unwrap(), Expr::toeplitz(PiecewiseSymbol::monomial(1)));
        assert_eq!(
            parse_expression("D[exp:0+1i]").unwrap(),
            Expr::multiplier(MultiplierSymbol::exponential(c(0.0, 1.0)).unwrap())
        );
        assert_eq!(
            parse_expression("C[const:0+1i]").unwrap(),
            Expr::composition(SelfMap::Eta(EtaMap::constant(c(0.0, 1.0)).unwrap()))
        );
        assert_eq!(
            parse_expression("C[parabolic:1+1i]").unwrap(),
            Expr::composition(SelfMap::Parabolic(ParabolicParam::new(c(1.0, 1.0)).unwrap()))
        );
    }

    #[test]
    fn precedence_and_scalars() {
        let t = || Expr::toeplitz(PiecewiseSymbol::monomial(1));
        let s = || Expr::toeplitz(PiecewiseSymbol::monomial(-1));
        assert_eq!(parse_expression("T[mono:1] + T[mono:-1]*T[mono:1]").unwrap(), t() + s() * t());
        assert_eq!(parse_expression("2*T[mono:1]").unwrap(), t().scale(c(2.0, 0.0)));
        assert_eq!(parse_expression("0.5i*T[mono:1]").unwrap(), t().scale(c(0.0, 0.5)));
        assert_eq!(parse_expression("1e-1*T[mono:1]").unwrap(), t().scale(c(0.1, 0.0)));
        assert_eq!(parse_expression("(1+2i)").unwrap(), Expr::Identity.scale(c(1.0, 2.0)));
        assert_eq!(parse_expression("-T[mono:1]").unwrap(), t().scale(c(-1.0, 0.0)));
        assert_eq!(parse_expression("adj(T[mono:1])").unwrap(), t().adjoint());
        assert_eq!(parse_expression("[T[mono:1], T[mono:-1]]").unwrap(), Expr::commutator(t(), s()));
    }

    #[test]
    fn literals_with_separators_stay_inside_brackets() {
        let e = parse_expression("T[step:0*step:0] - T[step:0:1; mono:1]").unwrap();
        assert!(e.contains_product() || matches!(e, Expr::Sum(..)));
    }

    #[test]
    fn malformed_inputs() {
        for bad in ["", "T[mono:1", "Q[x]", "T[mono:1] +", "(I", "[I I]", "T[wave:1]", "I I"] {
            assert!(parse_expression(bad).is_err(), "{bad}");
        }
    }
}
