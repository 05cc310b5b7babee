use alloc::string::{String, ToString};

use num_bigint::BigInt;
use thiserror::Error;

use super::cyclo::CycloNum;
use super::ArithError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unexpected character '{found}' at offset {offset}")]
    Unexpected { found: char, offset: usize },
    #[error("invalid conductor {0}")]
    BadConductor(String),
    #[error("exponent out of range")]
    BadExponent,
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Parses element syntax such as `1/2 + 3*z(5)^2` or `(1 - z(8))^-1`.
pub fn parse_element(s: &str) -> Result<CycloNum, ParseError> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    p.skip_ws();
    match p.peek() {
        None => Ok(v),
        Some(c) => Err(p.unexpected(c)),
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn unexpected(&self, c: u8) -> ParseError {
        ParseError::Unexpected {
            found: c as char,
            offset: self.pos,
        }
    }

    fn expect(&mut self, want: u8) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(self.unexpected(c)),
            None => Err(ParseError::UnexpectedEnd),
        }
    }

    fn expr(&mut self) -> Result<CycloNum, ParseError> {
        let neg = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let first = self.term()?;
        let mut acc = if neg { -first } else { first };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<CycloNum, ParseError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.power()?;
                    acc = acc.checked_div(&d)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<CycloNum, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let e: i64 = self
            .integer()?
            .try_into()
            .map_err(|_| ParseError::BadExponent)?;
        Ok(base.pow(if neg { -e } else { e })?)
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return match self.src.get(self.pos) {
                Some(&c) => Err(self.unexpected(c)),
                None => Err(ParseError::UnexpectedEnd),
            };
        }
        let digits = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digit run parses"))
    }

    fn atom(&mut self) -> Result<CycloNum, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(b'z') => {
                self.pos += 1;
                self.expect(b'(')?;
                let n = self.integer()?;
                self.expect(b')')?;
                let n: u64 = n
                    .to_string()
                    .parse()
                    .ok()
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| ParseError::BadConductor(n.to_string()))?;
                Ok(CycloNum::zeta(n, 1))
            }
            Some(c) if c.is_ascii_digit() => Ok(CycloNum::from_bigint(self.integer()?)),
            Some(c) => Err(self.unexpected(c)),
            None => Err(ParseError::UnexpectedEnd),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn parses_examples() {
        let x = parse_element("1/2 + 3*z(5)^2").unwrap();
        let want = &CycloNum::from_rational(&rat(1, 2)) + &CycloNum::zeta(5, 2).scale(&rat(3, 1));
        assert_eq!(x, want);
        assert_eq!(
            parse_element("z(3) + z(3)^2").unwrap(),
            CycloNum::from_int(-1)
        );
        assert_eq!(parse_element("-7").unwrap(), CycloNum::from_int(-7));
        assert_eq!(parse_element("z(5)^-1").unwrap(), CycloNum::zeta(5, 4));
        assert_eq!(
            parse_element("(1+z(4))*(1-z(4))").unwrap(),
            CycloNum::from_int(2)
        );
    }

    #[test]
    fn display_round_trips() {
        for s in ["1/2 + 3*z(5)^2", "-z(4)", "0", "-3/4*z(8)^3 + z(8)"] {
            let x = parse_element(s).unwrap();
            assert_eq!(parse_element(&x.to_string()).unwrap(), x);
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_element("1 +").is_err());
        assert!(parse_element("z(0)").is_err());
        assert!(parse_element("2 $ 3").is_err());
        assert_eq!(
            parse_element("1/0"),
            Err(ParseError::Arith(ArithError::DivisionByZero))
        );
    }
}
