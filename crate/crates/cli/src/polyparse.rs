//! Integer polynomials in `x0, ..., x{m-1}`, as written on the command line.

use chowcalc::poly::Polynomial;
use chowcalc::Rational;
use num_bigint::BigInt;

use crate::expr::ParseError;

struct P {
    chars: Vec<char>,
    pos: usize,
    num_vars: usize,
    /// Offset of this polynomial inside the full `--seq` argument.
    base: usize,
}

impl P {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn fail<T>(&self, message: impl Into<String>, expected: &[&str]) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.base + self.pos + 1,
            message: message.into(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn sum(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = if self.peek() == Some('-') {
            self.pos += 1;
            self.product()?.neg()
        } else {
            self.product()?
        };
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = acc.add(&self.product()?).expect("same ring");
                }
                Some('-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.product()?).expect("same ring");
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.power()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = acc.mul(&self.power()?).expect("same ring");
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        match self.digits().map(|d| d.parse::<u32>()) {
            Some(Ok(e)) => Ok(base.pow(e)),
            Some(Err(_)) => self.fail("exponent too large", &[]),
            None => self.fail("expected an exponent", &["integer"]),
        }
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        const EXPECTED: &[&str] = &["integer", "variable x<i>", "'('"];
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let d: BigInt = self.digits().expect("digit").parse().expect("digits");
                Ok(Polynomial::constant(self.num_vars, Rational::from(d)))
            }
            Some('x') => {
                let at = self.pos;
                self.pos += 1;
                let Some(idx) = self.digits() else {
                    return self.fail("expected a variable index after x", &["integer"]);
                };
                match idx.parse::<usize>().ok().filter(|&i| i < self.num_vars) {
                    Some(i) => Ok(Polynomial::variable(self.num_vars, i).expect("in range")),
                    None => {
                        self.pos = at;
                        self.fail(format!("unknown variable x{idx} (have x0..x{})", self.num_vars.saturating_sub(1)), &[])
                    }
                }
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(')') {
                    return self.fail("unclosed parenthesis", &["')'"]);
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) => self.fail(format!("unexpected character {c:?}"), EXPECTED),
            None => self.fail("unexpected end of input", EXPECTED),
        }
    }
}

fn parse_at(text: &str, num_vars: usize, base: usize) -> Result<Polynomial, ParseError> {
    let mut p = P { chars: text.chars().collect(), pos: 0, num_vars, base };
    let poly = p.sum()?;
    if p.peek().is_some() {
        return p.fail("trailing input", &["'+'", "'-'", "'*'", "','"]);
    }
    Ok(poly)
}

pub fn parse_polynomial(text: &str, num_vars: usize) -> Result<Polynomial, ParseError> {
    parse_at(text, num_vars, 0)
}

/// Comma-separated polynomials; positions refer to the whole string.
pub fn parse_sequence(text: &str, num_vars: usize) -> Result<Vec<Polynomial>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in text.split(',') {
        out.push(parse_at(piece, num_vars, offset)?);
        offset += piece.chars().count() + 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints() {
        let p = parse_polynomial("3*x0^2 - x0*x1", 2).unwrap();
        assert_eq!(p.to_string(), "3*x0^2 - x0*x1");
        let p = parse_polynomial("-(x0 + x1)^2 + 2 * x0 * x1", 2).unwrap();
        assert_eq!(p.to_string(), "-x0^2 - x1^2");
        assert!(parse_polynomial("x0 - x0", 1).unwrap().is_zero());
    }

    #[test]
    fn sequences_report_global_positions() {
        let s = parse_sequence("x0, x1^2, x0*x1", 2).unwrap();
        assert_eq!(s.len(), 3);
        let e = parse_sequence("x0,x1,x2", 2).unwrap_err();
        assert_eq!(e.position, 7);
        let e = parse_sequence("x0,,x1", 2).unwrap_err();
        assert_eq!(e.position, 4);
        let e = parse_sequence("x0 x1", 2).unwrap_err();
        assert_eq!(e.position, 4);
        assert!(parse_polynomial("x", 2).is_err());
        assert!(parse_polynomial("x0^", 2).is_err());
        assert!(parse_polynomial("(x0", 2).is_err());
        assert!(parse_polynomial("x0/2", 2).is_err());
    }
}
