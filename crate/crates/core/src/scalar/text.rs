//! Parser for the scalar text grammar: integers, `z` (a primitive root of
//! unity of the session order), `q`, `+ - * / ^` and parentheses.

use num_bigint::BigInt;

use super::cyclo::CycRat;
use super::ratfunc::Scalar;
use super::ScalarError;

/// Parses `input`, reading `z` as `ζ_order`.
pub fn parse_scalar(input: &str, order: u32) -> Result<Scalar, ScalarError> {
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
        order,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    order: u32,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> ScalarError {
        ScalarError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
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

    fn expr(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { acc.add(&rhs) } else { acc.sub(&rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == b'*' {
                acc.mul(&rhs)
            } else {
                acc.div(&rhs)?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Scalar, ScalarError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Scalar, ScalarError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.exponent()?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64, ScalarError> {
        let paren = self.peek() == Some(b'(');
        if paren {
            self.pos += 1;
        }
        let mut neg = false;
        while let Some(c @ (b'-' | b'+')) = self.peek() {
            self.pos += 1;
            neg ^= c == b'-';
        }
        let n = self.integer()?;
        let n: i64 = n.try_into().map_err(|_| self.error("exponent too large"))?;
        if paren {
            if self.peek() != Some(b')') {
                return Err(self.error("expected ')'"));
            }
            self.pos += 1;
        }
        Ok(if neg { -n } else { n })
    }

    fn integer(&mut self) -> Result<BigInt, ScalarError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok(s.parse().expect("digits"))
    }

    fn atom(&mut self) -> Result<Scalar, ScalarError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(Scalar::q())
            }
            Some(b'z') => {
                self.pos += 1;
                Ok(Scalar::from_cyc(CycRat::zeta(1, self.order)))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Scalar::from_rational(n.into()))
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
    fn parses_examples() {
        let a = parse_scalar("(q - q^-1)/(1 - q^-2)", 1).unwrap();
        assert_eq!(a, Scalar::q());
        let b = parse_scalar("-q^-1", 1).unwrap();
        assert_eq!(b, Scalar::q_pow(-1).neg());
        let c = parse_scalar("z^2", 4).unwrap();
        assert_eq!(c, Scalar::from_int(-1));
        let d = parse_scalar("3/4*q^(-2)", 1).unwrap();
        assert_eq!(d.to_string(), "3/4*q^-2");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_scalar("q +", 1).is_err());
        assert!(parse_scalar("x", 1).is_err());
        assert!(parse_scalar("(q", 1).is_err());
        assert!(matches!(
            parse_scalar("1/(q - q)", 1),
            Err(ScalarError::DivisionByZero)
        ));
    }

    #[test]
    fn round_trips_canonical_text() {
        for s in [
            "q/(q^2 + 1)",
            "(-1 - z)*q^3 + z*q - 2",
            "(q^2 - 1)/(q^4 + 1/2*q^2 + 1)",
        ] {
            let v = parse_scalar(s, 3).unwrap();
            let t = v.to_text_at(3);
            assert_eq!(parse_scalar(&t, 3).unwrap(), v, "{s} -> {t}");
        }
    }
}
