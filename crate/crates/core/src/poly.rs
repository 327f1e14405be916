//! Sparse multivariate polynomials and polynomial rings.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::field::Field;
use crate::mon::{Mon, MonOrder, MAXV};

/// Variable names of a polynomial ring. Polynomials themselves do not carry a ring;
/// containers such as presentations do.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Ring {
    pub names: Vec<String>,
}

impl Ring {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        assert!(!names.is_empty() && names.len() <= MAXV, "unsupported variable count");
        Ring { names: names.iter().map(|s| s.as_ref().to_string()).collect() }
    }

    /// `k[x,y,z,w]`, the coordinate ring of projective 3-space.
    pub fn p3() -> Self {
        Ring::new(&["x", "y", "z", "w"])
    }

    /// `k[x,y,z]`, the coordinate ring of the plane `w = 0`.
    pub fn p2() -> Self {
        Ring::new(&["x", "y", "z"])
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    /// Dimension `n` of the projective space `P^n` with this coordinate ring.
    pub fn proj_dim(&self) -> usize {
        self.nvars() - 1
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// A polynomial: terms sorted by descending grevlex, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<K> {
    terms: Vec<(Mon, K)>,
}

impl<K: Field> Default for Poly<K> {
    fn default() -> Self {
        Poly::zero()
    }
}

impl<K: Field> Poly<K> {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn constant(c: K) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(Mon::one(), c)] }
        }
    }

    pub fn one() -> Self {
        Poly::constant(K::one())
    }

    pub fn var(i: usize) -> Self {
        Poly { terms: vec![(Mon::var(i), K::one())] }
    }

    pub fn monomial(m: Mon, c: K) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(mut terms: Vec<(Mon, K)>) -> Self {
        terms.sort_by(|a, b| MonOrder::GrevLex.cmp(&b.0, &a.0));
        let mut out: Vec<(Mon, K)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1.add_assign(&c);
                    continue;
                }
            }
            out.push((m, c));
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[(Mon, K)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Mon, K)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value when the polynomial has degree 0 (or is zero).
    pub fn as_constant(&self) -> Option<K> {
        match self.terms.as_slice() {
            [] => Some(K::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_nonzero_constant(&self) -> bool {
        matches!(self.terms.as_slice(), [(m, _)] if m.is_one())
    }

    /// Common degree of all terms, `None` for zero or non-homogeneous polynomials.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.deg();
        if self.terms.iter().all(|(m, _)| m.deg() == d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn lead(&self) -> Option<&(Mon, K)> {
        self.terms.first()
    }

    pub fn add(&self, o: &Self) -> Self {
        self.merge(o, false)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.merge(o, true)
    }

    fn merge(&self, o: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &o.terms;
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Less
            } else if j == b.len() {
                Ordering::Greater
            } else {
                MonOrder::GrevLex.cmp(&a[i].0, &b[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { b[j].1.neg() } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { a[i].1.sub(&b[j].1) } else { a[i].1.add(&b[j].1) };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly { terms: out }
    }

    pub fn neg(&self) -> Self {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect() }
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, k)| (*m, k.mul(c))).collect() }
    }

    pub fn mul_term(&self, m: &Mon, c: &K) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(t, k)| (t.mul(m), k.mul(c))).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let (small, big) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        let mut acc = Poly::zero();
        for (m, c) in &small.terms {
            acc = acc.add(&big.mul_term(m, c));
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Poly::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Value at a point given by coordinates.
    pub fn eval(&self, point: &[K]) -> K {
        let mut acc = K::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, x) in point.iter().enumerate() {
                for _ in 0..m.exp(i) {
                    v = v.mul(x);
                }
            }
            acc.add_assign(&v);
        }
        acc
    }

    /// Substitutes zero for every variable not in `keep` and renumbers `keep` as 0,1,...
    pub fn restrict(&self, keep: &[usize], nvars: usize) -> Self {
        let dropped: Vec<usize> = (0..nvars).filter(|i| !keep.contains(i)).collect();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| dropped.iter().all(|&i| m.exp(i) == 0))
            .map(|(m, c)| (m.drop_vars(keep), c.clone()))
            .collect();
        Poly::from_terms(terms)
    }

    /// Substitutes a polynomial for each variable.
    pub fn substitute(&self, images: &[Poly<K>]) -> Self {
        let mut acc = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for (i, img) in images.iter().enumerate() {
                for _ in 0..m.exp(i) {
                    t = t.mul(img);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(i) > 0)
            .map(|(m, c)| {
                let e = m.exp(i);
                (m.div(&Mon::var(i)).unwrap(), c.mul(&K::from_i64(e as i64)))
            })
            .collect();
        Poly::from_terms(terms)
    }

    /// Number of variables actually used (highest index + 1).
    pub fn support_vars(&self) -> usize {
        let mut n = 0;
        for (m, _) in &self.terms {
            for i in 0..MAXV {
                if m.exp(i) > 0 {
                    n = n.max(i + 1);
                }
            }
        }
        n
    }

    pub fn format(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                s.push_str(&mag);
            } else if mag == "1" {
                s.push_str(&m.format(names));
            } else {
                s.push_str(&mag);
                s.push('*');
                s.push_str(&m.format(names));
            }
        }
        s
    }
}

impl<K: Field> fmt::Display for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = ["x", "y", "z", "w", "v5", "v6", "v7", "v8"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        write!(f, "{}", self.format(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;

    fn v(i: usize) -> Poly<Q> {
        Poly::var(i)
    }

    #[test]
    fn difference_of_squares() {
        let (x, y) = (v(0), v(1));
        let lhs = x.add(&y).mul(&x.sub(&y));
        let rhs = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(lhs, rhs);
        assert!(x.mul(&Poly::zero()).is_zero());
    }

    #[test]
    fn homogeneity() {
        let (x, y, w) = (v(0), v(1), v(3));
        assert_eq!(x.mul(&y).add(&w.mul(&w)).homogeneous_degree(), Some(2));
        assert_eq!(x.add(&y.mul(&y)).homogeneous_degree(), None);
        assert!(Poly::<Q>::zero().is_homogeneous());
    }

    #[test]
    fn evaluation_and_derivative() {
        let (y, z, w) = (v(1), v(2), v(3));
        let q = y.mul(&y).add(&z.mul(&w));
        let p = [Q::from_i64(0), Q::from_i64(0), Q::from_i64(0), Q::from_i64(1)];
        assert!(q.eval(&p).is_zero());
        assert!(w.mul(&w).eval(&p).is_one());
        assert_eq!(q.derivative(1), y.scale(&Q::from_i64(2)));
    }

    #[test]
    fn formatting() {
        let (x, y) = (v(0), v(1));
        let p = x.mul(&x).scale(&Q::from_i64(3)).sub(&y).add(&Poly::constant(Q::new(1, 2)));
        assert_eq!(p.to_string(), "3*x^2 - y + 1/2");
    }
}
