//! Text formats: polynomials in `t` and `X`, and series prefixes.
//!
//! Grammar (whitespace ignored):
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' integer)?
//! atom   := 't' | 'X' | integer | '(' expr ')'
//! ```
//! A series prefix is an expression in `t` optionally followed by
//! `+ O(t^N)`; without the order term every coefficient up to the highest
//! written power is considered known.

use super::bipoly::BiPoly;
use super::fp;
use super::poly::FpPoly;
use super::series::TruncSeries;
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    p: u32,
}

fn parse_error(src: &[u8], pos: usize, message: impl Into<String>) -> Error {
    let before = &src[..pos.min(src.len())];
    let line = before.iter().filter(|&&c| c == b'\n').count() + 1;
    let column = pos - before.iter().rposition(|&c| c == b'\n').map_or(0, |i| i + 1) + 1;
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, p: u32) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
            p,
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        parse_error(self.src, self.pos, msg)
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

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{}`", c as char)))
        }
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| parse_error(self.src, start, "integer too large"))
    }

    fn expr(&mut self) -> Result<BiPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    // `+ O(...)` belongs to the series grammar.
                    let save = self.pos;
                    self.pos += 1;
                    if self.peek() == Some(b'O') {
                        self.pos = save;
                        return Ok(acc);
                    }
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

    fn term(&mut self) -> Result<BiPoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<BiPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            if e > 1 << 20 {
                return Err(self.err("exponent too large"));
            }
            let mut acc = BiPoly::one(self.p);
            for _ in 0..e {
                acc = &acc * &base;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<BiPoly> {
        match self.peek() {
            Some(b't') => {
                self.pos += 1;
                Ok(BiPoly::monomial(self.p, 1, 1, 0))
            }
            Some(b'X') => {
                self.pos += 1;
                Ok(BiPoly::monomial(self.p, 1, 0, 1))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                let c = fp::reduce((v % self.p as u64) as i64, self.p);
                Ok(BiPoly::from_t_poly(FpPoly::constant(self.p, c)))
            }
            Some(c) => Err(self.err(format!("unexpected character `{}`", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

/// Parses a polynomial in `t` and `X` over F_p.
pub fn parse_bipoly(src: &str, p: u32) -> Result<BiPoly> {
    fp::check_prime(p)?;
    let mut ps = Parser::new(src, p);
    let f = ps.expr()?;
    if !ps.at_end() {
        return Err(ps.err("trailing input"));
    }
    Ok(f)
}

/// Parses a polynomial in `t` only.
pub fn parse_poly(src: &str, p: u32) -> Result<FpPoly> {
    let f = parse_bipoly(src, p)?;
    if f.deg_x().unwrap_or(0) > 0 {
        return Err(parse_error(src.as_bytes(), 0, "unexpected variable X"));
    }
    Ok(f.coeff_x(0))
}

/// Parses a series prefix such as `t+t^4+O(t^13)` or `t + O(t^2)`.
pub fn parse_series(src: &str, p: u32) -> Result<TruncSeries> {
    fp::check_prime(p)?;
    let mut ps = Parser::new(src, p);
    let (poly, order) = if ps.peek() == Some(b'O') {
        (FpPoly::zero(p), Some(ps.order_term()?))
    } else {
        let f = ps.expr()?;
        if f.deg_x().unwrap_or(0) > 0 {
            return Err(parse_error(ps.src, 0, "series prefix may not contain X"));
        }
        let order = if ps.peek() == Some(b'+') {
            ps.pos += 1;
            Some(ps.order_term()?)
        } else {
            None
        };
        (f.coeff_x(0), order)
    };
    if !ps.at_end() {
        return Err(ps.err("trailing input"));
    }
    let n = match order {
        Some(n) => {
            if poly.degree().is_some_and(|d| d >= n) {
                return Err(parse_error(ps.src, 0, "term beyond the order term"));
            }
            n
        }
        None => poly.degree().map_or(1, |d| d + 1),
    };
    Ok(TruncSeries::from_poly(&poly, n))
}

impl Parser<'_> {
    fn order_term(&mut self) -> Result<usize> {
        self.expect(b'O')?;
        self.expect(b'(')?;
        self.expect(b't')?;
        let n = if self.peek() == Some(b'^') {
            self.pos += 1;
            self.integer()? as usize
        } else {
            1
        };
        self.expect(b')')?;
        Ok(n)
    }
}

impl std::str::FromStr for BiPoly {
    type Err = Error;
    /// Parses over F₂, the default field of the text format.
    fn from_str(s: &str) -> Result<Self> {
        parse_bipoly(s, 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_equation() {
        let f = parse_bipoly("(t+1)^3*X^3+(t^3+t)*X^2+(t^3+t+1)*X+t^3+t", 2).unwrap();
        assert_eq!(f.deg_x(), Some(3));
        assert_eq!(
            f.to_string(),
            "(t^3+t^2+t+1)*X^3+(t^3+t)*X^2+(t^3+t+1)*X+t^3+t"
        );
        assert_eq!(parse_bipoly(&f.to_string(), 2).unwrap(), f);
    }

    #[test]
    fn whitespace_and_implicit_field() {
        let f = parse_bipoly(" X ^ 2 + X + t ^ 2 + t ", 2).unwrap();
        assert_eq!(f, BiPoly::from_terms(2, &[(0, 2), (0, 1), (2, 0), (1, 0)]));
        // 3 = 1 over F_2
        assert_eq!(parse_bipoly("3*X", 2).unwrap(), BiPoly::from_terms(2, &[(0, 1)]));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_bipoly("t^2 + Y", 2) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 7)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_bipoly("(t+1", 2).is_err());
    }

    #[test]
    fn series_prefixes() {
        let s = parse_series("t+t^4+O(t^13)", 2).unwrap();
        assert_eq!(s.precision(), 13);
        assert_eq!(s.support(), vec![1, 4]);
        let s = parse_series("t+t^4", 2).unwrap();
        assert_eq!(s.precision(), 5);
        let s = parse_series("t + O(t^2)", 2).unwrap();
        assert_eq!((s.precision(), s.support()), (2, vec![1]));
        assert!(parse_series("t^5+O(t^3)", 2).is_err());
    }
}
