//! Recursive-descent parser for scalar text such as `(1 - q*t^2)/(1 - q)`.
//!
//! Grammar:
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? digits)?
//! atom   := digits | 'q' | 't' | '(' expr ')'
//! ```

use num_bigint::BigInt;

use super::ExactScalar;
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

pub fn parse_scalar(text: &str) -> Result<ExactScalar> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("trailing input"));
    }
    Ok(v)
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<ExactScalar> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ExactScalar> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                acc = acc.checked_div(&self.unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<ExactScalar> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<ExactScalar> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let neg = self.eat(b'-');
        let digits = self.digits()?;
        let e: i64 = digits.parse().map_err(|_| self.error("exponent out of range"))?;
        base.pow(if neg { -e } else { e })
    }

    fn digits(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn atom(&mut self) -> Result<ExactScalar> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(v)
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(ExactScalar::q())
            }
            Some(b't') => {
                self.pos += 1;
                Ok(ExactScalar::t())
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits()?;
                let n: BigInt = d.parse().map_err(|_| self.error("bad integer"))?;
                Ok(ExactScalar::from_int(n))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for text in [
            "(1 - q*t^2)/(1 - q)",
            "1/(1 + q)",
            "-3*q^2*t",
            "0",
            "q/2",
            "(t - q*t)/(1 - t)",
        ] {
            let v = parse_scalar(text).unwrap();
            assert_eq!(v.to_string(), text);
            assert_eq!(parse_scalar(&v.to_string()).unwrap(), v);
        }
    }

    #[test]
    fn negative_exponents() {
        let v = parse_scalar("q^-2*(1 + q)").unwrap();
        assert_eq!(v.to_string(), "(1 + q)/q^2");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_scalar("1 +").is_err());
        assert!(parse_scalar("x").is_err());
        assert!(parse_scalar("(1").is_err());
        assert!(matches!(parse_scalar("1/0"), Err(Error::DivisionByZero)));
    }
}
