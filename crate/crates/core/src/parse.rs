//! Text syntax for polynomials.
//!
//! Terms are joined by `+`/`-`; products are written with `*` or by juxtaposition;
//! powers use `^`; coefficients are integers or fractions `a/b`. Parentheses group.
//! A run of letters that is not a variable name is split into variable names,
//! so `xy` reads as `x*y` in a ring with variables `x`, `y`.

use num_bigint::BigInt;

use crate::error::{Error, Location};
use crate::field::Field;
use crate::mon::Mon;
use crate::poly::{Poly, Ring};

struct Parser<'a, K> {
    chars: Vec<char>,
    pos: usize,
    ring: &'a Ring,
    line: usize,
    col0: usize,
    _k: std::marker::PhantomData<K>,
}

/// Parses a polynomial. `line` and `col` locate the first character for error messages.
pub fn parse_poly_at<K: Field>(text: &str, ring: &Ring, line: usize, col: usize) -> Result<Poly<K>, Error> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        ring,
        line,
        col0: col,
        _k: std::marker::PhantomData,
    };
    p.skip_ws();
    if p.peek().is_none() {
        return Err(p.err("empty polynomial"));
    }
    let r = p.sum()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(p.err(&format!("unexpected character '{c}'")));
    }
    Ok(r)
}

pub fn parse_poly<K: Field>(text: &str, ring: &Ring) -> Result<Poly<K>, Error> {
    parse_poly_at(text, ring, 1, 1)
}

/// Parses and requires the result to be homogeneous.
pub fn parse_homogeneous_at<K: Field>(
    text: &str,
    ring: &Ring,
    line: usize,
    col: usize,
) -> Result<Poly<K>, Error> {
    let p = parse_poly_at::<K>(text, ring, line, col)?;
    if !p.is_homogeneous() {
        return Err(Error::Parse {
            loc: Location { line, col },
            msg: format!("non-homogeneous polynomial '{}'", text.trim()),
        });
    }
    Ok(p)
}

pub fn parse_homogeneous<K: Field>(text: &str, ring: &Ring) -> Result<Poly<K>, Error> {
    parse_homogeneous_at(text, ring, 1, 1)
}

/// Convenience for trusted literals in fixtures and tests. Panics on malformed input.
pub fn poly<K: Field>(text: &str, ring: &Ring) -> Poly<K> {
    match parse_poly(text, ring) {
        Ok(p) => p,
        Err(e) => panic!("bad polynomial literal {text:?}: {e}"),
    }
}

impl<K: Field> Parser<'_, K> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            loc: Location { line: self.line, col: self.col0 + self.pos },
            msg: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn sum(&mut self) -> Result<Poly<K>, Error> {
        self.skip_ws();
        let mut neg = false;
        match self.peek() {
            Some('-') => {
                neg = true;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        let mut acc = self.product()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    let t = self.product()?;
                    acc = acc.add(&t);
                }
                Some('-') => {
                    self.pos += 1;
                    let t = self.product()?;
                    acc = acc.sub(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Poly<K>, Error> {
        self.skip_ws();
        let mut acc = self.power()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.power()?;
                    acc = acc.mul(&f);
                }
                Some(c) if c.is_ascii_alphanumeric() || c == '(' || c == '_' => {
                    let f = self.power()?;
                    acc = acc.mul(&f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly<K>, Error> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, Error> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits"))
    }

    fn atom(&mut self) -> Result<Poly<K>, Error> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.sum()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let mut den = BigInt::from(1);
                self.skip_ws();
                if self.peek() == Some('/') {
                    self.pos += 1;
                    self.skip_ws();
                    den = self.integer()?;
                }
                match K::from_ratio(&num, &den) {
                    Some(c) => Ok(Poly::constant(c)),
                    None => Err(self.err("coefficient denominator vanishes in the field")),
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let word: String = self.chars[start..self.pos].iter().collect();
                match self.split_word(&word) {
                    Some(idx) => {
                        let mut m = Mon::one();
                        for i in idx {
                            m = m.mul(&Mon::var(i));
                        }
                        Ok(Poly::monomial(m, K::one()))
                    }
                    None => {
                        self.pos = start;
                        Err(self.err(&format!("unknown variable '{word}'")))
                    }
                }
            }
            Some(c) => Err(self.err(&format!("unexpected character '{c}'"))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    /// Splits an identifier into ring variables, longest match first.
    fn split_word(&self, word: &str) -> Option<Vec<usize>> {
        if let Some(i) = self.ring.index_of(word) {
            return Some(vec![i]);
        }
        let mut out = Vec::new();
        let mut rest = word;
        while !rest.is_empty() {
            let mut best: Option<(usize, usize)> = None;
            for (i, name) in self.ring.names.iter().enumerate() {
                if rest.starts_with(name.as_str()) && best.is_none_or(|(_, l)| name.len() > l) {
                    best = Some((i, name.len()));
                }
            }
            let (i, l) = best?;
            out.push(i);
            rest = &rest[l..];
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Q, F101};

    #[test]
    fn parses_cubic() {
        let r = Ring::p3();
        let p: Poly<Q> = parse_poly("y^3 + y*z*w + z^3", &r).unwrap();
        let q: Poly<Q> = parse_poly("y(y^2+zw) + z z^2", &r).unwrap();
        assert_eq!(p, q);
        assert_eq!(p.homogeneous_degree(), Some(3));
    }

    #[test]
    fn juxtaposition_and_fractions() {
        let r = Ring::p3();
        let p: Poly<Q> = parse_poly("xy - 3/2 zw", &r).unwrap();
        assert_eq!(p.to_string(), "x*y - 3/2*z*w");
        let f: Poly<F101> = parse_poly("1/2 x", &r).unwrap();
        assert_eq!(f.lead().unwrap().1, F101::from_i64(51));
    }

    #[test]
    fn rejects_nonhomogeneous_with_location() {
        let r = Ring::p3();
        let e = parse_homogeneous_at::<Q>("x^2 + y", &r, 3, 10).unwrap_err();
        assert!(e.to_string().contains("3:10"));
        let e = parse_poly::<Q>("x + q", &r).unwrap_err();
        assert!(e.to_string().contains("1:5"), "{e}");
    }
}
