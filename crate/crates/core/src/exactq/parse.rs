//! Parser for the rendered polynomial grammar.
//!
//! Accepts `+ - * / ^`, parentheses, integers, `q`, implicit multiplication
//! (`2q`, `(q+1)(q-1)`), and exponents `q^3`, `q^(-2)`, `q^(3/2)`, `q^(-1/2)`.
//! Half-integer exponents are only allowed directly on `q`.

use num_bigint::BigInt;

use super::qrat::QRat;
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
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

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn small_int(&mut self) -> Result<i64> {
        let n = self.integer()?;
        i64::try_from(n).or_else(|_| self.err("exponent too large"))
    }

    fn expr(&mut self) -> Result<QRat> {
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

    fn term(&mut self) -> Result<QRat> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.unary()?;
                    let at = self.pos;
                    acc = (&acc / &d).map_err(|e| Error::Parse { pos: at, msg: e.to_string() })?;
                }
                Some(c) if c == b'(' || c == b'q' || c.is_ascii_digit() => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<QRat> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    /// Exponent as a multiple of 1/2, returned in units of `v`.
    fn exponent(&mut self, allow_half: bool) -> Result<i64> {
        if self.eat(b'(') {
            let neg = self.eat(b'-');
            let n = self.small_int()?;
            let mut e = 2 * n;
            if self.eat(b'/') {
                let d = self.small_int()?;
                if d != 2 || !allow_half {
                    return self.err("only q^(k/2) fractional exponents are supported");
                }
                e = n;
            }
            self.expect(b')')?;
            Ok(if neg { -e } else { e })
        } else {
            let neg = self.eat(b'-');
            let n = self.small_int()?;
            Ok(if neg { -2 * n } else { 2 * n })
        }
    }

    fn power(&mut self) -> Result<QRat> {
        match self.peek() {
            Some(b'q') => {
                self.pos += 1;
                if self.eat(b'^') {
                    let e = self.exponent(true)?;
                    Ok(QRat::v_pow(e))
                } else {
                    Ok(QRat::q())
                }
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                self.maybe_int_power(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = QRat::from_int(self.integer()?);
                self.maybe_int_power(n)
            }
            _ => self.err("expected a term"),
        }
    }

    fn maybe_int_power(&mut self, base: QRat) -> Result<QRat> {
        if !self.eat(b'^') {
            return Ok(base);
        }
        let e = self.exponent(false)?;
        let at = self.pos;
        base.pow(e / 2).map_err(|e| Error::Parse { pos: at, msg: e.to_string() })
    }
}

/// Parse an expression in `q` into a canonical rational function.
pub fn parse_qrat(s: &str) -> Result<QRat> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let r = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(r)
}

impl std::str::FromStr for QRat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_qrat(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::VPoly;

    #[test]
    fn parses_rendered_forms() {
        for s in ["q^2 - 2*q + 3*q^(1/2) + 1 - q^(-1/2) + q^(-1)", "1/(q - 1)", "-3/4", "q^(-3/2)", "0"] {
            assert_eq!(parse_qrat(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn implicit_multiplication_and_powers() {
        let a = parse_qrat("(q^2+1)(q^7+q^6+q^5+q+1)").unwrap();
        let b = parse_qrat("q^9+q^8+2q^7+q^6+q^5+q^3+q^2+q+1").unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_qrat("(q-1)^(-1)*(q^2-1)").unwrap(), QRat::from_vpoly(VPoly::from_q_coeffs(&[1, 1])));
    }

    #[test]
    fn errors() {
        assert!(parse_qrat("q +").is_err());
        assert!(parse_qrat("(q+1)^(1/2)").is_err());
        assert!(parse_qrat("1/(q-q)").is_err());
        assert!(parse_qrat("q)").is_err());
    }
}
