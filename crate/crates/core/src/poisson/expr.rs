//! Exact parser for polynomial expressions such as `t*(t-1)` or `3/2*x0^2 - x1`.

use super::poly::Poly;
use super::PoissonError;
use crate::scalar::Scalar;

/// Parses a polynomial in the named variables (`vars[i]` becomes `x_i`).
pub fn parse_poly(src: &str, vars: &[&str]) -> Result<Poly, PoissonError> {
    let mut p = Parser { s: src.as_bytes(), pos: 0, vars, src };
    let r = p.sum()?;
    p.ws();
    if p.pos != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(r)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    vars: &'a [&'a str],
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> PoissonError {
        PoissonError::Parse(format!("{what} at byte {} of {:?}", self.pos, self.src))
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn n(&self) -> usize {
        self.vars.len()
    }

    fn sum(&mut self) -> Result<Poly, PoissonError> {
        let mut acc = self.product()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.product()?;
            acc = if c == b'+' { acc.add(&rhs) } else { acc.sub(&rhs) };
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Poly, PoissonError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.unary()?;
                    if d.degree().unwrap_or(0) != 0 || d.is_zero() {
                        return Err(self.err("division by a non-constant or zero"));
                    }
                    let c = d.coeff(&vec![0; self.n()]);
                    acc = acc.scale(&c.recip());
                }
                Some(b'(') => acc = acc.mul(&self.unary()?),
                Some(c) if c.is_ascii_alphabetic() => acc = acc.mul(&self.unary()?),
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly, PoissonError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.ws();
            let start = self.pos;
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let e: u32 = self.src[start..self.pos].parse().map_err(|_| self.err("expected exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, PoissonError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let r = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected )"));
                }
                self.pos += 1;
                Ok(r)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let v: i64 = self.src[start..self.pos].parse().map_err(|_| self.err("integer too large"))?;
                Ok(Poly::constant(self.n(), Scalar::from_int(v)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = &self.src[start..self.pos];
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(Poly::var(self.n(), i)),
                    None => Err(self.err(&format!("unknown variable {name}"))),
                }
            }
            _ => Err(self.err("expected a number, variable or (")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_products_and_rationals() {
        let t = Poly::var(1, 0);
        assert_eq!(parse_poly("t*(t-1)", &["t"]).unwrap(), t.mul(&t.sub(&Poly::one(1))));
        assert_eq!(parse_poly("3/2 t^2 - -1", &["t"]).unwrap(), t.pow(2).scale(&Scalar::new(3, 2)).add(&Poly::one(1)));
        assert!(parse_poly("t +", &["t"]).is_err());
        assert!(parse_poly("s", &["t"]).is_err());
        assert!(parse_poly("1/t", &["t"]).is_err());
        assert_eq!(parse_poly("0", &["t"]).unwrap(), Poly::zero(1));
    }
}
