//! Reader for the textual polynomial format, e.g. `5*x0^2*x2 - 3*x1^3 + 15/2*x`.
//!
//! Variables are `x0`..`x9`, with `x`, `y`, `z`, `w` standing for `x0`..`x3`.
//! Parentheses group sub-expressions.

use num_bigint::BigInt;
use num_traits::Zero;

use super::MPoly;
use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
}

pub fn parse_poly(text: &str, nvars: usize) -> Result<MPoly<Rational>> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        nvars,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return p.fail("unexpected trailing input");
    }
    Ok(out)
}

impl Parser<'_> {
    fn fail<T>(&self, message: &str) -> Result<T> {
        Err(Error::Parse {
            offset: self.pos,
            message: message.to_string(),
        })
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

    fn expr(&mut self) -> Result<MPoly<Rational>> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc += &self.term()?;
            } else if self.eat(b'-') {
                acc -= &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MPoly<Rational>> {
        let mut acc = self.unary()?;
        while self.eat(b'*') {
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MPoly<Rational>> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<MPoly<Rational>> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| Error::Parse { offset: self.pos, message: "exponent too large".into() })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.fail("expected integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<MPoly<Rational>> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return self.fail("expected ')'");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let save = self.pos;
                let den = if self.eat(b'/') {
                    self.skip_ws();
                    self.integer()?
                } else {
                    self.pos = save;
                    BigInt::from(1)
                };
                if den.is_zero() {
                    return self.fail("zero denominator");
                }
                Ok(MPoly::constant(self.nvars, Rational::new(num, den)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let idx = match name {
                    "x" => 0,
                    "y" => 1,
                    "z" => 2,
                    "w" => 3,
                    _ => match name.strip_prefix('x').and_then(|d| d.parse::<usize>().ok()) {
                        Some(i) if i <= 9 && name.len() == 2 => i,
                        _ => {
                            self.pos = start;
                            return self.fail(&format!("unknown variable '{name}'"));
                        }
                    },
                };
                if idx >= self.nvars {
                    self.pos = start;
                    return self.fail(&format!("variable '{name}' outside a ring of {} variables", self.nvars));
                }
                Ok(MPoly::var(self.nvars, idx))
            }
            _ => {
                if self.pos >= self.src.len() {
                    self.fail("unexpected end of input")
                } else {
                    self.fail("unexpected character")
                }
            }
        }
    }
}

/// Rational literal such as `-15/2`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let p = parse_poly(text, 0)?;
    match p.homogeneous_degree() {
        None if p.is_zero() => Ok(Rational::from_i64(0)),
        Some(0) => Ok(p.coeff(&super::Monomial::ONE)),
        _ => Err(Error::Parse {
            offset: 0,
            message: "expected a rational number".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn aliases_and_grouping() {
        let a = parse_poly("x*y - z^2 + w", 4).unwrap();
        let b = parse_poly("x0*x1 - x2^2 + x3", 4).unwrap();
        assert_eq!(a, b);
        let c = parse_poly("(x + y)^2", 2).unwrap();
        assert_eq!(c, parse_poly("x^2 + 2*x*y + y^2", 2).unwrap());
        assert_eq!(parse_rational("-15/2").unwrap(), q(-15, 2));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_poly("x3", 3).is_err());
        assert!(parse_poly("2*", 2).is_err());
        assert!(parse_poly("1/0", 2).is_err());
        assert!(parse_poly("foo", 2).is_err());
        assert!(parse_poly("x y", 2).is_err());
    }
}
