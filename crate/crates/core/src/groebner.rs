//! Buchberger's algorithm for homogeneous submodules of graded free modules.
//!
//! Pairs are processed degree by degree, so input generators can be interleaved with
//! S-pairs; this also yields minimal generating sets. Pair pruning follows
//! Gebauer–Möller; the coprime-lead criterion is only used for ideals.

use std::collections::BTreeMap;

use crate::field::Field;
use crate::matrix::{Column, GradedMatrix};
use crate::mon::{Mon, MonOrder};
use crate::vector::{to_column, ModOrder, Term, Vector};

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mon,
}

/// Incremental Gröbner basis computation.
#[derive(Clone, Debug)]
pub struct GbBuilder<K> {
    pub order: ModOrder,
    basis: Vec<Vector<K>>,
    degs: Vec<i32>,
    by_comp: Vec<Vec<usize>>,
    /// pending pairs keyed by degree
    pairs: BTreeMap<i32, Vec<Pair>>,
    ideal: bool,
}

/// A Gröbner basis: monic elements under a fixed module order.
#[derive(Clone, Debug)]
pub struct Gb<K> {
    pub order: ModOrder,
    pub elems: Vec<Vector<K>>,
    by_comp: Vec<Vec<usize>>,
}

impl<K: Field> GbBuilder<K> {
    pub fn new(order: ModOrder) -> Self {
        let n = order.ncomps();
        GbBuilder {
            ideal: n == 1,
            order,
            basis: Vec::new(),
            degs: Vec::new(),
            by_comp: vec![Vec::new(); n],
            pairs: BTreeMap::new(),
        }
    }

    pub fn basis(&self) -> &[Vector<K>] {
        &self.basis
    }

    fn lead(&self, i: usize) -> (&Mon, u32) {
        let t = &self.basis[i][0];
        (&t.m, t.c)
    }

    fn find_divisor(&self, t: &Term<K>) -> Option<usize> {
        self.by_comp[t.c as usize]
            .iter()
            .copied()
            .find(|&i| self.basis[i][0].m.divides(&t.m))
    }

    /// Full reduction against the current basis.
    pub fn reduce(&self, v: Vector<K>) -> Vector<K> {
        reduce_with(&self.order, &self.basis, |t| self.find_divisor(t), v, None)
    }

    /// Processes all pending pairs of degree at most `d`.
    pub fn process_through(&mut self, d: i32) {
        while let Some((&deg, _)) = self.pairs.iter().next() {
            if deg > d {
                break;
            }
            let batch = self.pairs.remove(&deg).unwrap();
            for p in batch {
                let s = self.spoly(&p);
                let r = self.reduce(s);
                if !r.is_empty() {
                    self.insert(r);
                }
            }
        }
    }

    pub fn finish(&mut self) {
        self.process_through(i32::MAX);
    }

    fn spoly(&self, p: &Pair) -> Vector<K> {
        let (mi, _) = self.lead(p.i);
        let (mj, _) = self.lead(p.j);
        let ui = p.lcm.div(mi).unwrap();
        let uj = p.lcm.div(mj).unwrap();
        let a: Vector<K> = self.basis[p.i]
            .iter()
            .map(|t| Term { m: t.m.mul(&ui), c: t.c, key: t.key.mul(&ui), k: t.k.clone() })
            .collect();
        self.order.sub_mul(&a, &K::one(), &uj, &self.basis[p.j])
    }

    /// Adds generators, all of which must be homogeneous. Returns, per input, whether it
    /// was needed (not in the submodule generated by earlier-degree data and the inputs
    /// kept before it). Inputs are visited by degree, ties in the given order.
    pub fn add_generators(&mut self, gens: Vec<Vector<K>>) -> Vec<bool> {
        let mut idx: Vec<(i32, usize)> = gens
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_empty())
            .map(|(i, v)| (self.order.degree(&v[0].m, v[0].c), i))
            .collect();
        idx.sort();
        let mut kept = vec![false; gens.len()];
        let mut gens: Vec<Option<Vector<K>>> = gens.into_iter().map(Some).collect();
        for (d, i) in idx {
            self.process_through(d);
            let r = self.reduce(gens[i].take().unwrap());
            if !r.is_empty() {
                kept[i] = true;
                self.insert(r);
            }
        }
        kept
    }

    fn insert(&mut self, mut h: Vector<K>) {
        let lc = h[0].k.inv();
        if !lc.is_one() {
            self.order.scale(&mut h, &lc);
        }
        let t = self.basis.len();
        let hm = h[0].m;
        let hc = h[0].c;
        let deg = self.order.degree(&hm, hc);

        // Gebauer–Möller: prune old pairs whose lcm is a proper multiple via h
        for pairs in self.pairs.values_mut() {
            pairs.retain(|p| {
                if !hm.divides(&p.lcm) || self.basis[p.i][0].c != hc {
                    return true;
                }
                let li = self.basis[p.i][0].m.lcm(&hm);
                let lj = self.basis[p.j][0].m.lcm(&hm);
                li == p.lcm || lj == p.lcm
            });
        }
        self.pairs.retain(|_, v| !v.is_empty());

        // new pairs (g, h)
        let mut cands: Vec<(usize, Mon, bool)> = self.by_comp[hc as usize]
            .iter()
            .map(|&g| {
                let gm = self.basis[g][0].m;
                (g, gm.lcm(&hm), self.ideal && gm.coprime(&hm))
            })
            .collect();
        // drop pairs whose lcm is divisible by another candidate's lcm (keep first of equals)
        let mut keep = vec![true; cands.len()];
        for a in 0..cands.len() {
            if cands[a].2 {
                continue;
            }
            for b in 0..cands.len() {
                if a == b || !keep[b] {
                    continue;
                }
                let (la, lb) = (cands[a].1, cands[b].1);
                if lb.divides(&la) && (lb != la || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        let mut new_pairs = Vec::new();
        for (k, (g, l, coprime)) in cands.drain(..).enumerate() {
            if keep[k] && !coprime {
                new_pairs.push(Pair { i: g, j: t, lcm: l });
            }
        }
        for p in new_pairs {
            let d = p.lcm.deg() as i32 + self.order.twists[hc as usize];
            debug_assert!(d > deg || self.ideal);
            self.pairs.entry(d).or_default().push(p);
        }
        self.by_comp[hc as usize].push(t);
        self.degs.push(deg);
        self.basis.push(h);
    }

    /// The reduced Gröbner basis, sorted by descending lead term.
    pub fn into_gb(mut self) -> Gb<K> {
        self.finish();
        let n = self.basis.len();
        let mut alive = vec![true; n];
        for i in 0..n {
            for j in 0..n {
                if i != j && alive[j] && self.basis[j][0].c == self.basis[i][0].c {
                    let (mi, mj) = (self.basis[i][0].m, self.basis[j][0].m);
                    if mj.divides(&mi) && (mj != mi || j < i) {
                        alive[i] = false;
                        break;
                    }
                }
            }
        }
        let mut elems: Vec<Vector<K>> = self
            .basis
            .into_iter()
            .zip(alive)
            .filter(|(_, a)| *a)
            .map(|(v, _)| v)
            .collect();
        elems.sort_by(|a, b| self.order.cmp(&b[0], &a[0]));
        let mut gb = Gb::from_elems(self.order, elems);
        gb.tail_reduce();
        gb
    }
}

fn reduce_with<K: Field>(
    order: &ModOrder,
    basis: &[Vector<K>],
    find: impl Fn(&Term<K>) -> Option<usize>,
    v: Vector<K>,
    mut quot: Option<&mut Vec<(usize, Mon, K)>>,
) -> Vector<K> {
    let mut rem: Vector<K> = Vec::new();
    let mut p = v;
    let mut i = 0;
    while i < p.len() {
        match find(&p[i]) {
            Some(g) => {
                let lead = &basis[g][0];
                let u = p[i].m.div(&lead.m).unwrap();
                let coef = p[i].k.div(&lead.k);
                if let Some(q) = quot.as_deref_mut() {
                    q.push((g, u, coef.clone()));
                }
                p = order.sub_mul(&p[i..], &coef, &u, &basis[g]);
                i = 0;
            }
            None => {
                rem.push(p[i].clone());
                i += 1;
            }
        }
    }
    rem
}

impl<K: Field> Gb<K> {
    pub fn from_elems(order: ModOrder, elems: Vec<Vector<K>>) -> Self {
        let mut by_comp = vec![Vec::new(); order.ncomps()];
        for (i, e) in elems.iter().enumerate() {
            by_comp[e[0].c as usize].push(i);
        }
        Gb { order, elems, by_comp }
    }

    /// Computes the reduced basis of the submodule generated by `gens`.
    pub fn compute(order: ModOrder, gens: Vec<Vector<K>>) -> Self {
        let mut b = GbBuilder::new(order);
        b.add_generators(gens);
        b.into_gb()
    }

    /// Reduced basis of the column span of a matrix (columns live in its target).
    pub fn of_columns(mat: &GradedMatrix<K>, mon: MonOrder) -> Self {
        let order = ModOrder::top(mon, mat.target.clone());
        let gens = mat.cols().iter().map(|c| order.from_column(c)).collect();
        Gb::compute(order, gens)
    }

    fn find_divisor(&self, t: &Term<K>) -> Option<usize> {
        self.by_comp[t.c as usize]
            .iter()
            .copied()
            .find(|&i| self.elems[i][0].m.divides(&t.m))
    }

    pub fn reduce(&self, v: Vector<K>) -> Vector<K> {
        reduce_with(&self.order, &self.elems, |t| self.find_divisor(t), v, None)
    }

    /// Reduction that also records the quotients `(element, monomial, coefficient)`.
    pub fn reduce_quotients(&self, v: Vector<K>) -> (Vector<K>, Vec<(usize, Mon, K)>) {
        let mut q = Vec::new();
        let r = reduce_with(&self.order, &self.elems, |t| self.find_divisor(t), v, Some(&mut q));
        (r, q)
    }

    pub fn reduce_column(&self, c: &Column<K>) -> Column<K> {
        to_column(&self.reduce(self.order.from_column(c)))
    }

    pub fn contains_column(&self, c: &Column<K>) -> bool {
        self.reduce(self.order.from_column(c)).is_empty()
    }

    /// True when the monomial `m e_c` is a lead term multiple.
    pub fn is_lead_multiple(&self, m: &Mon, c: u32) -> bool {
        self.by_comp[c as usize].iter().any(|&i| self.elems[i][0].m.divides(m))
    }

    pub fn leads(&self) -> Vec<(Mon, u32)> {
        self.elems.iter().map(|e| (e[0].m, e[0].c)).collect()
    }

    /// Lead monomials lying in component `c`.
    pub fn leads_in(&self, c: u32) -> Vec<Mon> {
        self.by_comp[c as usize].iter().map(|&i| self.elems[i][0].m).collect()
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn degrees(&self) -> Vec<i32> {
        self.elems.iter().map(|e| self.order.degree(&e[0].m, e[0].c)).collect()
    }

    fn tail_reduce(&mut self) {
        for i in 0..self.elems.len() {
            // an element's own lead cannot divide its tail terms
            let mut v = self.elems[i].clone();
            let lead = v.remove(0);
            let tail = self.reduce(v);
            let mut out = vec![lead];
            out.extend(tail);
            self.elems[i] = out;
        }
    }

    /// Columns of the basis elements, as a matrix into the ambient free module.
    pub fn to_matrix(&self) -> GradedMatrix<K> {
        GradedMatrix::from_columns(
            self.order.twists.to_vec(),
            self.degrees(),
            self.elems.iter().map(|e| to_column(e)).collect(),
        )
    }

    /// Buchberger criterion: every S-vector reduces to zero.
    pub fn satisfies_buchberger(&self) -> bool {
        for j in 0..self.elems.len() {
            for i in 0..j {
                let (a, b) = (&self.elems[i][0], &self.elems[j][0]);
                if a.c != b.c {
                    continue;
                }
                let l = a.m.lcm(&b.m);
                let ua = l.div(&a.m).unwrap();
                let ub = l.div(&b.m).unwrap();
                let sa: Vector<K> = self.elems[i]
                    .iter()
                    .map(|t| Term { m: t.m.mul(&ua), c: t.c, key: t.key.mul(&ua), k: t.k.div(&a.k) })
                    .collect();
                let s = self.order.sub_mul(&sa, &b.k.inv(), &ub, &self.elems[j]);
                if !self.reduce(s).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

/// Indices of a minimal generating subset of homogeneous columns (greedy by degree).
pub fn minimal_generator_indices<K: Field>(mat: &GradedMatrix<K>, mon: MonOrder) -> Vec<usize> {
    let order = ModOrder::top(mon, mat.target.clone());
    let gens: Vec<Vector<K>> = mat.cols().iter().map(|c| order.from_column(c)).collect();
    let mut b = GbBuilder::new(order);
    let kept = b.add_generators(gens);
    kept.iter().enumerate().filter(|(_, k)| **k).map(|(i, _)| i).collect()
}

/// Columns generating the kernel of `mat` (a Gröbner basis of the syzygy module
/// under a position-over-term order), as a matrix into the source of `mat`.
pub fn kernel<K: Field>(mat: &GradedMatrix<K>, mon: MonOrder) -> GradedMatrix<K> {
    let r = mat.nrows();
    let s = mat.ncols();
    let mut twists = mat.target.clone();
    twists.extend_from_slice(&mat.source);
    // target block ranks above the source block
    let rank: Vec<u32> = (0..r + s).map(|c| (r + s - c) as u32).collect();
    let order = ModOrder::pot(mon, twists, rank);
    let gens: Vec<Vector<K>> = (0..s)
        .map(|j| {
            let mut col: Column<K> = mat.col(j).clone();
            col.push(((r + j) as u32, crate::poly::Poly::one()));
            order.from_column(&col)
        })
        .collect();
    let gb = Gb::compute(order, gens);
    let mut cols = Vec::new();
    let mut degs = Vec::new();
    for e in &gb.elems {
        if (e[0].c as usize) >= r {
            degs.push(gb.order.degree(&e[0].m, e[0].c));
            cols.push(
                to_column(e)
                    .into_iter()
                    .map(|(i, p)| (i - r as u32, p))
                    .collect(),
            );
        }
    }
    GradedMatrix::from_columns(mat.source.clone(), degs, cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;
    use crate::parse::poly;
    use crate::poly::{Poly, Ring};

    fn ideal(gens: &[&str]) -> GradedMatrix<Q> {
        let r = Ring::p3();
        GradedMatrix::from_rows_infer(vec![0], vec![gens.iter().map(|g| poly::<Q>(g, &r)).collect()]).unwrap()
    }

    #[test]
    fn variables_are_a_basis() {
        let gb = Gb::of_columns(&ideal(&["x", "y"]), MonOrder::GrevLex);
        assert_eq!(gb.len(), 2);
        assert!(gb.satisfies_buchberger());
    }

    #[test]
    fn normal_form_examples() {
        let r = Ring::p3();
        let gb = Gb::of_columns(&ideal(&["xy", "xz"]), MonOrder::GrevLex);
        let f = poly::<Q>("y^3+y*z*w+z^3", &r);
        let col = vec![(0u32, f.clone())];
        assert_eq!(gb.reduce_column(&col), col);
        let gx = Gb::of_columns(&ideal(&["x"]), MonOrder::GrevLex);
        assert!(gx.reduce_column(&vec![(0, poly::<Q>("x^2", &r))]).is_empty());
    }

    #[test]
    fn koszul_kernel() {
        let k = kernel(&ideal(&["x", "y", "z", "w"]), MonOrder::GrevLex);
        let mins = minimal_generator_indices(&k, MonOrder::GrevLex);
        assert_eq!(mins.len(), 6);
        assert!(ideal(&["x", "y", "z", "w"]).mul(&k).is_zero());
    }

    #[test]
    fn single_generator_has_no_syzygies() {
        let k = kernel(&ideal(&["x^2+y*w"]), MonOrder::GrevLex);
        assert_eq!(k.ncols(), 0);
    }

    #[test]
    fn lex_and_grevlex_agree_on_membership() {
        let m = ideal(&["x^2+y^2+z^2+w^2", "xy+zw"]);
        for o in [MonOrder::GrevLex, MonOrder::Lex] {
            let gb = Gb::of_columns(&m, o);
            assert!(gb.satisfies_buchberger());
            let r = Ring::p3();
            let f: Poly<Q> = poly("x^3*y + x*y*w^2 + z*w*x^2 + z*w^3", &r);
            assert!(gb.contains_column(&vec![(0, f)]));
        }
    }
}
