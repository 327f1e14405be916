//! Elements of graded free modules as flat term lists under a module order.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::field::Field;
use crate::matrix::Column;
use crate::mon::{Mon, MonOrder};
use crate::poly::Poly;

/// One term `k * m * e_c`. `key` is the monomial used for comparisons: `m` itself,
/// or `m` times the shift of component `c` under a Schreyer order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Term<K> {
    pub m: Mon,
    pub c: u32,
    pub key: Mon,
    pub k: K,
}

/// Terms sorted by descending module order, no zero coefficients.
pub type Vector<K> = Vec<Term<K>>;

/// A module order on `⊕ S e_c`.
///
/// Terms compare by `key` under `mon` and then by component rank (term over position),
/// or by rank first (position over term). A Schreyer order is a term-over-position order
/// whose keys are shifted by the lead monomials of the previous level.
#[derive(Clone, Debug)]
pub struct ModOrder {
    pub mon: MonOrder,
    pub pot: bool,
    pub twists: Arc<Vec<i32>>,
    pub rank: Arc<Vec<u32>>,
    pub shift: Option<Arc<Vec<Mon>>>,
}

impl ModOrder {
    /// Term over position; among equal monomials the lower component index is larger.
    pub fn top(mon: MonOrder, twists: Vec<i32>) -> Self {
        let n = twists.len() as u32;
        ModOrder {
            mon,
            pot: false,
            rank: Arc::new((0..n).map(|c| n - c).collect()),
            twists: Arc::new(twists),
            shift: None,
        }
    }

    /// Position over term with explicit component ranks (larger rank = larger).
    pub fn pot(mon: MonOrder, twists: Vec<i32>, rank: Vec<u32>) -> Self {
        ModOrder { mon, pot: true, rank: Arc::new(rank), twists: Arc::new(twists), shift: None }
    }

    pub fn ncomps(&self) -> usize {
        self.twists.len()
    }

    pub fn key(&self, m: &Mon, c: u32) -> Mon {
        match &self.shift {
            Some(s) => m.mul(&s[c as usize]),
            None => *m,
        }
    }

    pub fn term<K: Field>(&self, m: Mon, c: u32, k: K) -> Term<K> {
        Term { key: self.key(&m, c), m, c, k }
    }

    #[inline]
    pub fn cmp(&self, a: &Term<impl Field>, b: &Term<impl Field>) -> Ordering {
        self.cmp_parts(&a.key, a.c, &b.key, b.c)
    }

    #[inline]
    pub fn cmp_parts(&self, ka: &Mon, ca: u32, kb: &Mon, cb: u32) -> Ordering {
        if self.pot {
            self.rank[ca as usize]
                .cmp(&self.rank[cb as usize])
                .then_with(|| self.mon.cmp(ka, kb))
        } else {
            self.mon
                .cmp(ka, kb)
                .then_with(|| self.rank[ca as usize].cmp(&self.rank[cb as usize]))
        }
    }

    /// Degree of a term `m e_c`.
    pub fn degree(&self, m: &Mon, c: u32) -> i32 {
        m.deg() as i32 + self.twists[c as usize]
    }

    /// The Schreyer order on the free module whose basis maps to `leads` (the lead
    /// terms of a list of elements under `self`): `m ε_j` compares as `m * lead_j`,
    /// ties broken by index with the larger index winning.
    pub fn schreyer(&self, leads: &[(Mon, u32)], degrees: Vec<i32>) -> ModOrder {
        assert!(!self.pot, "Schreyer orders are built over term-over-position orders");
        let shift: Vec<Mon> = leads.iter().map(|(m, c)| self.key(m, *c)).collect();
        let mut idx: Vec<usize> = (0..leads.len()).collect();
        idx.sort_by_key(|&j| (self.rank[leads[j].1 as usize], j));
        let mut rank = vec![0u32; leads.len()];
        for (pos, &j) in idx.iter().enumerate() {
            rank[j] = pos as u32;
        }
        ModOrder {
            mon: self.mon,
            pot: false,
            twists: Arc::new(degrees),
            rank: Arc::new(rank),
            shift: Some(Arc::new(shift)),
        }
    }

    pub fn sort(&self, v: &mut Vector<impl Field>) {
        v.sort_by(|a, b| self.cmp(b, a));
    }

    /// Sorts and combines duplicate terms.
    pub fn normalize<K: Field>(&self, mut v: Vector<K>) -> Vector<K> {
        self.sort(&mut v);
        let mut out: Vector<K> = Vec::with_capacity(v.len());
        for t in v {
            if let Some(last) = out.last_mut() {
                if last.c == t.c && last.m == t.m {
                    last.k.add_assign(&t.k);
                    continue;
                }
            }
            out.push(t);
        }
        out.retain(|t| !t.k.is_zero());
        out
    }

    pub fn from_column<K: Field>(&self, col: &Column<K>) -> Vector<K> {
        let mut v = Vec::new();
        for (r, p) in col {
            for (m, k) in p.terms() {
                v.push(self.term(*m, *r, k.clone()));
            }
        }
        self.sort(&mut v);
        v
    }

    /// `a - coef * m * b`
    pub fn sub_mul<K: Field>(&self, a: &[Term<K>], coef: &K, m: &Mon, b: &[Term<K>]) -> Vector<K> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() {
                out.extend_from_slice(&a[i..]);
                break;
            }
            let bk = b[j].key.mul(m);
            let ord = if i == a.len() {
                Ordering::Less
            } else {
                self.cmp_parts(&a[i].key, a[i].c, &bk, b[j].c)
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term { m: b[j].m.mul(m), c: b[j].c, key: bk, k: b[j].k.mul(coef).neg() });
                    j += 1;
                }
                Ordering::Equal => {
                    let mut k = a[i].k.clone();
                    k.sub_mul_assign(&b[j].k, coef);
                    if !k.is_zero() {
                        out.push(Term { m: a[i].m, c: a[i].c, key: a[i].key, k });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    pub fn scale<K: Field>(&self, v: &mut Vector<K>, c: &K) {
        for t in v.iter_mut() {
            t.k = t.k.mul(c);
        }
    }
}

/// Converts a vector back to a sparse column of polynomials.
pub fn to_column<K: Field>(v: &[Term<K>]) -> Column<K> {
    let mut by_row: std::collections::BTreeMap<u32, Vec<(Mon, K)>> = Default::default();
    for t in v {
        by_row.entry(t.c).or_default().push((t.m, t.k.clone()));
    }
    by_row
        .into_iter()
        .map(|(r, ts)| (r, Poly::from_terms(ts)))
        .filter(|(_, p)| !p.is_zero())
        .collect()
}

/// Degree of a homogeneous nonzero vector.
pub fn vector_degree<K: Field>(v: &[Term<K>], twists: &[i32]) -> Option<i32> {
    v.first().map(|t| t.m.deg() as i32 + twists[t.c as usize])
}
