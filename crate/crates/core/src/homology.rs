//! Graded pieces of modules and the dimensions of Ext and Tor.
//!
//! `Ext^i_S(M, N)_d` is the homology of `Hom(F_•, N)_d` and `Tor_i(M, N)_d` that of
//! `(F_• ⊗ N)_d`, for a minimal resolution `F_•` of `M`. Both reduce to ranks of
//! maps between sums of graded pieces of `N`, computed on standard-monomial bases.

use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::Gb;
use crate::linalg::{Echelon, SparseVec};
use crate::matrix::GradedMatrix;
use crate::module::Presentation;
use crate::mon::{monomials_of_degree, Mon};
use crate::poly::Poly;
use crate::resolution::FreeResolution;

/// A closed degree range `[lo, hi]`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Window {
    pub lo: i32,
    pub hi: i32,
}

impl Window {
    pub fn new(lo: i32, hi: i32) -> Self {
        Window { lo, hi }
    }
    pub fn degrees(&self) -> impl Iterator<Item = i32> {
        self.lo..=self.hi
    }
    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1).max(0) as usize
    }
    pub fn is_empty(&self) -> bool {
        self.hi < self.lo
    }
}

impl Default for Window {
    fn default() -> Self {
        Window::new(-10, 10)
    }
}

/// Dimensions over a window, with the window recorded.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct WindowedDims {
    pub window: Window,
    pub dims: Vec<usize>,
}

impl WindowedDims {
    pub fn at(&self, d: i32) -> Option<usize> {
        if d < self.window.lo || d > self.window.hi {
            None
        } else {
            Some(self.dims[(d - self.window.lo) as usize])
        }
    }
}

struct Piece<K> {
    basis: Vec<(Mon, u32)>,
    index: HashMap<(Mon, u32), usize>,
    nf: HashMap<(Mon, u32), SparseVec<K>>,
}

/// Lazily computed graded pieces of a presented module with normal-form tables.
pub struct Pieces<K> {
    gens: Vec<i32>,
    nvars: usize,
    gb: Arc<Gb<K>>,
    cache: RefCell<HashMap<i32, Piece<K>>>,
}

impl<K: Field> Pieces<K> {
    pub fn new(m: &Presentation<K>) -> Self {
        Pieces {
            gens: m.gens().to_vec(),
            nvars: m.nvars(),
            gb: m.gb(),
            cache: RefCell::new(HashMap::new()),
        }
    }

    fn ensure(&self, d: i32) {
        if self.cache.borrow().contains_key(&d) {
            return;
        }
        let mut basis = Vec::new();
        for (c, &a) in self.gens.iter().enumerate() {
            let e = d - a;
            if e < 0 {
                continue;
            }
            for m in monomials_of_degree(self.nvars, e as u32) {
                if !self.gb.is_lead_multiple(&m, c as u32) {
                    basis.push((m, c as u32));
                }
            }
        }
        let index = basis.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        self.cache.borrow_mut().insert(d, Piece { basis, index, nf: HashMap::new() });
    }

    pub fn dim(&self, d: i32) -> usize {
        self.ensure(d);
        self.cache.borrow()[&d].basis.len()
    }

    pub fn basis(&self, d: i32) -> Vec<(Mon, u32)> {
        self.ensure(d);
        self.cache.borrow()[&d].basis.clone()
    }

    /// Coordinates of the monomial vector `m e_c` (of degree `d`) in the basis of `N_d`.
    pub fn normal_form(&self, m: Mon, c: u32) -> SparseVec<K> {
        let d = m.deg() as i32 + self.gens[c as usize];
        self.ensure(d);
        {
            let cache = self.cache.borrow();
            let piece = &cache[&d];
            if let Some(&i) = piece.index.get(&(m, c)) {
                return vec![(i, K::one())];
            }
            if let Some(v) = piece.nf.get(&(m, c)) {
                return v.clone();
            }
        }
        let order = &self.gb.order;
        let r = self.gb.reduce(vec![order.term(m, c, K::one())]);
        let mut cache = self.cache.borrow_mut();
        let piece = cache.get_mut(&d).unwrap();
        let mut v: SparseVec<K> = r.into_iter().map(|t| (piece.index[&(t.m, t.c)], t.k)).collect();
        v.sort_by_key(|(i, _)| *i);
        piece.nf.insert((m, c), v.clone());
        v
    }

    /// Coordinates of `f * (m e_c)`.
    pub fn multiply(&self, f: &Poly<K>, m: Mon, c: u32) -> SparseVec<K> {
        let mut acc: HashMap<usize, K> = HashMap::new();
        for (t, k) in f.terms() {
            for (i, v) in self.normal_form(t.mul(&m), c) {
                let e = acc.entry(i).or_insert_with(K::zero);
                e.add_assign(&v.mul(k));
            }
        }
        let mut out: SparseVec<K> = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        out.sort_by_key(|(i, _)| *i);
        out
    }
}

/// Rank of `(mat ⊗ N)_d : ⊕_k N_{d - source_k} → ⊕_j N_{d - target_j}`.
pub fn tensor_map_rank<K: Field>(mat: &GradedMatrix<K>, d: i32, n: &Pieces<K>) -> usize {
    if mat.nrows() == 0 || mat.ncols() == 0 {
        return 0;
    }
    let mut offsets = Vec::with_capacity(mat.nrows());
    let mut off = 0;
    for &a in &mat.target {
        offsets.push(off);
        off += n.dim(d - a);
    }
    let mut ech = Echelon::new();
    for (k, col) in mat.cols().iter().enumerate() {
        if col.is_empty() {
            continue;
        }
        for (m, c) in n.basis(d - mat.source[k]) {
            let mut row: SparseVec<K> = Vec::new();
            for (j, p) in col {
                for (i, v) in n.multiply(p, m, c) {
                    row.push((offsets[*j as usize] + i, v));
                }
            }
            row.sort_by_key(|(i, _)| *i);
            ech.insert(row);
        }
    }
    ech.rank()
}

/// Images of the basis of `⊕_k N_{d - source_k}` under `(mat ⊗ N)_d`, in coordinates of
/// `⊕_j N_{d - target_j}`. Returns the images and the target dimension.
pub fn tensor_map_images<K: Field>(mat: &GradedMatrix<K>, d: i32, n: &Pieces<K>) -> (Vec<SparseVec<K>>, usize) {
    let mut offsets = Vec::with_capacity(mat.nrows());
    let mut off = 0;
    for &a in &mat.target {
        offsets.push(off);
        off += n.dim(d - a);
    }
    let mut out = Vec::new();
    for (k, col) in mat.cols().iter().enumerate() {
        for (m, c) in n.basis(d - mat.source[k]) {
            let mut row: SparseVec<K> = Vec::new();
            for (j, p) in col {
                for (i, v) in n.multiply(p, m, c) {
                    row.push((offsets[*j as usize] + i, v));
                }
            }
            row.sort_by_key(|(i, _)| *i);
            out.push(row);
        }
    }
    (out, off)
}

/// Rank in degree `d` of a map between free modules.
pub fn free_map_rank<K: Field>(mat: &GradedMatrix<K>, d: i32, nvars: usize) -> usize {
    let s = Presentation::<K>::free(crate::poly::Ring::new(&vec!["t"; nvars]), vec![0]);
    let pieces = Pieces::new(&s);
    tensor_map_rank(mat, d, &pieces)
}

/// The dual map `Hom(F_src, S) ← Hom(F_tgt, S)` as a matrix `F_tgt^* → F_src^*`.
pub fn dual_matrix<K: Field>(m: &GradedMatrix<K>) -> GradedMatrix<K> {
    let t = m.transpose();
    let cols = t.cols().to_vec();
    GradedMatrix::from_columns(
        m.source.iter().map(|a| -a).collect(),
        m.target.iter().map(|a| -a).collect(),
        cols,
    )
}

fn sum_dims<K: Field>(twists: &[i32], d: i32, n: &Pieces<K>, sign: i32) -> usize {
    twists.iter().map(|&a| n.dim(d + sign * a)).sum()
}

/// `dim Ext^i_S(M, N)_d` for all `i` and the given degrees, from a resolution of `M`.
/// Result is indexed `[i][degree position]`, `i` up to the resolution length.
pub fn ext_table<K: Field>(res: &FreeResolution<K>, n: &Pieces<K>, degrees: &[i32]) -> Vec<Vec<usize>> {
    let len = res.modules.len();
    let duals: Vec<GradedMatrix<K>> = res.maps.iter().map(dual_matrix).collect();
    let mut out = vec![vec![0; degrees.len()]; len];
    for (pos, &d) in degrees.iter().enumerate() {
        // rank of δ^i : Hom(F_{i-1}, N) → Hom(F_i, N), i = 1..len-1
        let ranks: Vec<usize> = duals.iter().map(|m| tensor_map_rank(m, d, n)).collect();
        for i in 0..len {
            let dim = sum_dims(&res.modules[i], d, n, 1);
            let r_out = if i < ranks.len() { ranks[i] } else { 0 };
            let r_in = if i > 0 { ranks[i - 1] } else { 0 };
            out[i][pos] = dim - r_out - r_in;
        }
    }
    out
}

/// `dim Ext^i_S(M, N)_d` for a single `i` and degree; needs `res` through `F_{i+1}`.
pub fn ext_dim_at<K: Field>(res: &FreeResolution<K>, n: &Pieces<K>, i: usize, d: i32) -> usize {
    let Some(fi) = res.modules.get(i) else { return 0 };
    let dim = sum_dims(fi, d, n, 1);
    let r_out = res.maps.get(i).map_or(0, |m| tensor_map_rank(&dual_matrix(m), d, n));
    let r_in = if i > 0 { res.maps.get(i - 1).map_or(0, |m| tensor_map_rank(&dual_matrix(m), d, n)) } else { 0 };
    dim - r_out - r_in
}

/// `dim Tor_i(M, N)_d` for all `i` and the given degrees.
pub fn tor_table<K: Field>(res: &FreeResolution<K>, n: &Pieces<K>, degrees: &[i32]) -> Vec<Vec<usize>> {
    let len = res.modules.len();
    let mut out = vec![vec![0; degrees.len()]; len];
    for (pos, &d) in degrees.iter().enumerate() {
        let ranks: Vec<usize> = res.maps.iter().map(|m| tensor_map_rank(m, d, n)).collect();
        for i in 0..len {
            let dim = sum_dims(&res.modules[i], d, n, -1);
            let r_out = if i > 0 { ranks[i - 1] } else { 0 };
            let r_in = if i < ranks.len() { ranks[i] } else { 0 };
            out[i][pos] = dim - r_out - r_in;
        }
    }
    out
}

fn check_index(i: usize, nvars: usize) -> Result<()> {
    if i > nvars {
        return Err(Error::Invalid(format!("homological index {i} exceeds {nvars}")));
    }
    Ok(())
}

/// `dim Ext^i_S(M, N)_d` over a window.
pub fn ext_module<K: Field>(m: &Presentation<K>, n: &Presentation<K>, i: usize, w: Window) -> Result<WindowedDims> {
    check_index(i, m.nvars())?;
    if m.ring != n.ring {
        return Err(Error::RingMismatch("ext".into()));
    }
    let res = FreeResolution::minimal(m, m.nvars());
    if i >= res.modules.len() {
        return Ok(WindowedDims { window: w, dims: vec![0; w.len()] });
    }
    let pieces = Pieces::new(n);
    let degs: Vec<i32> = w.degrees().collect();
    let t = ext_table(&res, &pieces, &degs);
    Ok(WindowedDims { window: w, dims: t[i].clone() })
}

/// `dim Tor_i(M, N)_d` over a window.
pub fn tor_module<K: Field>(m: &Presentation<K>, n: &Presentation<K>, i: usize, w: Window) -> Result<WindowedDims> {
    check_index(i, m.nvars())?;
    if m.ring != n.ring {
        return Err(Error::RingMismatch("tor".into()));
    }
    let res = FreeResolution::minimal(m, m.nvars());
    if i >= res.modules.len() {
        return Ok(WindowedDims { window: w, dims: vec![0; w.len()] });
    }
    let pieces = Pieces::new(n);
    let degs: Vec<i32> = w.degrees().collect();
    let t = tor_table(&res, &pieces, &degs);
    Ok(WindowedDims { window: w, dims: t[i].clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;
    use crate::hilbert::hilbert_function;
    use crate::parse::poly;
    use crate::poly::Ring;

    fn quotient(gens: &[&str]) -> Presentation<Q> {
        let r = Ring::p3();
        let g: Vec<Poly<Q>> = gens.iter().map(|s| poly(s, &r)).collect();
        Presentation::quotient(r, &g).unwrap()
    }

    #[test]
    fn ext_zero_of_free_is_the_module() {
        let s = Presentation::<Q>::free(Ring::p3(), vec![0]);
        let n = quotient(&["xy", "xz"]);
        let w = Window::new(-1, 4);
        let e = ext_module(&s, &n, 0, w).unwrap();
        for d in w.degrees() {
            assert_eq!(e.at(d).unwrap(), hilbert_function(&n, d));
        }
        assert!(ext_module(&s, &n, 5, w).is_err());
    }

    #[test]
    fn complete_intersection_is_self_dual() {
        let m = quotient(&["x^2+y^2+z^2+w^2", "xy+zw"]);
        let omega = Presentation::<Q>::free(Ring::p3(), vec![4]);
        let w = Window::new(-6, 4);
        let e = ext_module(&m, &omega, 2, w).unwrap();
        for d in w.degrees() {
            assert_eq!(e.at(d).unwrap(), hilbert_function(&m, d), "degree {d}");
        }
    }

    #[test]
    fn tor_zero_is_tensor() {
        let a = quotient(&["xy", "z^2"]);
        let b = quotient(&["x", "w^3"]);
        let ab = quotient(&["xy", "z^2", "x", "w^3"]);
        let w = Window::new(0, 8);
        let t = tor_module(&a, &b, 0, w).unwrap();
        for d in w.degrees() {
            assert_eq!(t.at(d).unwrap(), hilbert_function(&ab, d));
        }
    }
}
