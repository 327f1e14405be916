//! Hilbert functions and Hilbert polynomials.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::field::{Field, Q};
use crate::module::Presentation;
use crate::mon::{count_monomials, monomials_of_degree};
use crate::resolution::BettiTable;

/// A polynomial in `m` with rational coefficients, `coeffs[k]` multiplying `m^k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HilbertPolynomial {
    pub coeffs: Vec<Q>,
}

impl HilbertPolynomial {
    pub fn from_ints(c: &[i64]) -> Self {
        let mut p = HilbertPolynomial { coeffs: c.iter().map(|&v| Q::from_i64(v)).collect() };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn eval(&self, m: i64) -> Q {
        let x = Q::from_i64(m);
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&x).add(c);
        }
        acc
    }

    /// `Σ (-1)^i β_ij binom(m - j + n, n)` for a Betti table over `P^n`.
    pub fn from_betti(b: &BettiTable, n: usize) -> Self {
        let mut acc = vec![Q::zero(); n + 1];
        for (&(i, j), &v) in &b.entries {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let p = binomial_poly(n, -j);
            for (k, c) in p.iter().enumerate() {
                acc[k] = acc[k].add(&c.mul(&Q::from_i64(sign * v as i64)));
            }
        }
        let mut p = HilbertPolynomial { coeffs: acc };
        p.trim();
        p
    }

    /// Leading coefficient times `k!` for the top degree `k`: the degree of the support.
    pub fn multiplicity(&self) -> i64 {
        let Some(k) = self.degree() else { return 0 };
        let mut f = Q::from_i64(1);
        for i in 1..=k {
            f = f.mul(&Q::from_i64(i as i64));
        }
        self.coeffs[k].mul(&f).to_i64().unwrap_or(0)
    }

    /// Constant term `χ(F)`.
    pub fn chi(&self) -> Q {
        self.coeffs.first().cloned().unwrap_or_else(Q::zero)
    }
}

/// Coefficients (in `m`) of `binom(m + s + n, n)`.
fn binomial_poly(n: usize, s: i32) -> Vec<Q> {
    let mut p = vec![Q::from_i64(1)];
    for k in 1..=n {
        // multiply by (m + s + k) / k
        let c = Q::from_i64((s + k as i32) as i64);
        let mut q = vec![Q::zero(); p.len() + 1];
        for (i, a) in p.iter().enumerate() {
            q[i + 1] = q[i + 1].add(a);
            q[i] = q[i].add(&a.mul(&c));
        }
        let inv = Q::from_i64(k as i64).inv();
        p = q.into_iter().map(|x| x.mul(&inv)).collect();
    }
    p
}

impl fmt::Display for HilbertPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut s = String::new();
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = if neg { c.neg() } else { c.clone() };
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push(if neg { '-' } else { '+' });
            }
            let var = match k {
                0 => String::new(),
                1 => "m".to_string(),
                _ => format!("m^{k}"),
            };
            if k == 0 {
                s.push_str(&mag.to_string());
            } else if mag.is_one() {
                s.push_str(&var);
            } else {
                s.push_str(&format!("{mag}*{var}"));
            }
        }
        write!(f, "{s}")
    }
}

impl Serialize for HilbertPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for HilbertPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_hilbert_polynomial(&s).map_err(serde::de::Error::custom)
    }
}

/// Parses the display form, e.g. `4*m+1`, `m^3/6`-free forms like `1/6*m^3+m^2+11/6*m+1`.
pub fn parse_hilbert_polynomial(s: &str) -> Result<HilbertPolynomial, String> {
    let ring = crate::poly::Ring::new(&["m"]);
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    // the polynomial parser handles the syntax; reinterpret exponents as powers of m
    let p: crate::poly::Poly<Q> = crate::parse::parse_poly(&compact, &ring).map_err(|e| e.to_string())?;
    let deg = p.terms().iter().map(|(m, _)| m.deg()).max().unwrap_or(0) as usize;
    let mut coeffs = vec![Q::zero(); deg + 1];
    for (m, c) in p.terms() {
        coeffs[m.deg() as usize] = c.clone();
    }
    let mut h = HilbertPolynomial { coeffs };
    h.trim();
    Ok(h)
}

/// `dim_k M_d`, counting standard monomials of the relation Gröbner basis.
pub fn hilbert_function<K: Field>(m: &Presentation<K>, d: i32) -> usize {
    let gb = m.gb();
    let n = m.nvars();
    let mut total = 0;
    for (c, &a) in m.gens().iter().enumerate() {
        let e = d - a;
        if e < 0 {
            continue;
        }
        let leads = gb.leads_in(c as u32);
        if leads.is_empty() {
            total += count_monomials(n, e as i64) as usize;
            continue;
        }
        if leads.iter().any(|l| l.is_one()) {
            continue;
        }
        total += monomials_of_degree(n, e as u32)
            .iter()
            .filter(|mon| !leads.iter().any(|l| l.divides(mon)))
            .count();
    }
    total
}

/// Hilbert polynomial from the minimal Betti table.
pub fn hilbert_polynomial<K: Field>(m: &Presentation<K>) -> HilbertPolynomial {
    let res = crate::resolution::FreeResolution::minimal(m, m.nvars());
    HilbertPolynomial::from_betti(&res.betti(), m.ring.proj_dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::poly;
    use crate::poly::{Poly, Ring};

    #[test]
    fn polynomial_ring_hilbert() {
        let r = Ring::p3();
        let s: Presentation<Q> = Presentation::free(r, vec![0]);
        assert_eq!(hilbert_function(&s, 2), 10);
        let hp = hilbert_polynomial(&s);
        assert_eq!(hp.to_string(), "1/6*m^3+m^2+11/6*m+1");
        assert_eq!(parse_hilbert_polynomial(&hp.to_string()).unwrap(), hp);
    }

    #[test]
    fn square_of_maximal_ideal() {
        let r = Ring::p3();
        let gens: Vec<Poly<Q>> = crate::mon::monomials_of_degree(4, 2)
            .into_iter()
            .map(|m| Poly::monomial(m, Q::from_i64(1)))
            .collect();
        let m = Presentation::quotient(r, &gens).unwrap();
        assert_eq!(hilbert_function(&m, 1), 4);
        assert_eq!(hilbert_function(&m, 2), 0);
    }

    #[test]
    fn elliptic_quartic() {
        let r = Ring::p3();
        let g = [poly::<Q>("x^2+y^2+z^2+w^2", &r), poly("xy+zw", &r)];
        let m = Presentation::quotient(r, &g).unwrap();
        let hp = hilbert_polynomial(&m);
        assert_eq!(hp.to_string(), "4*m");
        for d in 1..8 {
            assert_eq!(hilbert_function(&m, d) as i64, 4 * d as i64);
        }
    }
}
