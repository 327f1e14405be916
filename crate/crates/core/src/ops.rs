//! Module operations built on syzygies: kernels, homology, colon, saturation,
//! annihilators, intersections, tensor products, truncation and restriction.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{kernel, minimal_generator_indices, Gb};
use crate::homology::{dual_matrix, Pieces};
use crate::matrix::{kron_identity_left, kron_identity_right, Column, GradedMatrix};
use crate::module::Presentation;
use crate::mon::MonOrder;
use crate::poly::{Poly, Ring};
use crate::resolution::FreeResolution;

const ORD: MonOrder = MonOrder::GrevLex;

/// Minimal generating columns of the kernel of `a`.
pub fn kernel_min<K: Field>(a: &GradedMatrix<K>) -> GradedMatrix<K> {
    let k = kernel(a, ORD);
    let keep = minimal_generator_indices(&k, ORD);
    k.select_columns(&keep)
}

/// `ker a / im b` for composable `b: E → H`, `a: H → G` with `a b = 0`.
pub fn homology_module<K: Field>(ring: &Ring, a: &GradedMatrix<K>, b: &GradedMatrix<K>) -> Presentation<K> {
    debug_assert!(a.mul(b).is_zero());
    let z = kernel_min(a);
    let zb = z.hstack(b);
    let k = kernel(&zb, ORD);
    let rows: Vec<usize> = (0..z.ncols()).collect();
    let rels = k.select_rows(&rows);
    let nonzero: Vec<usize> = (0..rels.ncols()).filter(|&j| !rels.col(j).is_empty()).collect();
    Presentation::from_trusted(ring.clone(), rels.select_columns(&nonzero)).prune()
}

/// Generators of an ideal presented as `S/I` (one generator in degree 0). The zero
/// module, as left by pruning `S/S`, gives the unit ideal.
pub fn ideal_generators<K: Field>(m: &Presentation<K>) -> Result<Vec<Poly<K>>> {
    if m.gens().is_empty() {
        return Ok(vec![Poly::one()]);
    }
    if m.gens() != [0] {
        return Err(Error::Invalid("expected a cyclic module S/I".into()));
    }
    Ok(m.rels.cols().iter().filter_map(|c| c.first().map(|(_, p)| p.clone())).collect())
}

/// One-row matrix of ideal generators.
pub fn ideal_matrix<K: Field>(gens: &[Poly<K>]) -> GradedMatrix<K> {
    let mut source = Vec::new();
    let mut cols = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        source.push(g.homogeneous_degree().expect("homogeneous generator") as i32);
        cols.push(vec![(0u32, g.clone())]);
    }
    GradedMatrix::from_columns(vec![0], source, cols)
}

fn column_span_min<K: Field>(m: GradedMatrix<K>) -> GradedMatrix<K> {
    let nonzero: Vec<usize> = (0..m.ncols()).filter(|&j| !m.col(j).is_empty()).collect();
    let m = m.select_columns(&nonzero);
    let keep = minimal_generator_indices(&m, ORD);
    m.select_columns(&keep)
}

/// `(U : f) = { v : f v ∈ U }` for a submodule `U` of `F` given by columns.
pub fn colon_element<K: Field>(u: &GradedMatrix<K>, f: &Poly<K>) -> GradedMatrix<K> {
    let df = f.homogeneous_degree().expect("homogeneous") as i32;
    let n = u.nrows();
    let fi = GradedMatrix::from_columns(
        u.target.clone(),
        u.target.iter().map(|a| a + df).collect(),
        (0..n).map(|i| vec![(i as u32, f.clone())]).collect(),
    );
    let k = kernel(&fi.hstack(u), ORD);
    let rows: Vec<usize> = (0..n).collect();
    let proj = k.select_rows(&rows);
    // shift degrees back: a kernel column of degree D gives v of degree D - deg f
    let src: Vec<i32> = proj.source.iter().map(|d| d - df).collect();
    let cols = proj.into_cols();
    column_span_min(GradedMatrix::from_columns(u.target.clone(), src, cols))
}

/// `U ∩ V` for submodules of the same free module.
pub fn intersect<K: Field>(u: &GradedMatrix<K>, v: &GradedMatrix<K>) -> GradedMatrix<K> {
    assert_eq!(u.target, v.target);
    if u.ncols() == 0 || v.ncols() == 0 {
        return GradedMatrix::zero(u.target.clone(), vec![]);
    }
    let k = kernel(&u.hstack(&v.map_entries(|p| p.neg())), ORD);
    let rows: Vec<usize> = (0..u.ncols()).collect();
    let a = k.select_rows(&rows);
    column_span_min(u.mul(&a))
}

/// `(U : J) = ∩_g (U : g)` over generators `g` of the ideal `J`.
pub fn colon<K: Field>(u: &GradedMatrix<K>, j: &[Poly<K>]) -> GradedMatrix<K> {
    let mut acc: Option<GradedMatrix<K>> = None;
    for g in j.iter().filter(|g| !g.is_zero()) {
        let c = colon_element(u, g);
        acc = Some(match acc {
            None => c,
            Some(a) => intersect(&a, &c),
        });
    }
    acc.unwrap_or_else(|| {
        // colon by the zero ideal is everything
        GradedMatrix::identity(u.target.clone())
    })
}

fn same_span<K: Field>(a: &GradedMatrix<K>, b: &GradedMatrix<K>) -> bool {
    let ga = Gb::of_columns(a, ORD);
    let gb = Gb::of_columns(b, ORD);
    ga.elems == gb.elems
}

/// Saturation `(U : J^∞)` by iterated colon until the Gröbner basis stabilizes.
pub fn saturate_submodule<K: Field>(u: &GradedMatrix<K>, j: &[Poly<K>]) -> Result<GradedMatrix<K>> {
    if j.iter().all(|g| g.is_zero()) {
        return Err(Error::Invalid("saturation by the zero ideal".into()));
    }
    let mut cur = column_span_min(u.clone());
    for _ in 0..64 {
        let next = colon(&cur, j);
        if same_span(&cur, &next) {
            return Ok(cur);
        }
        cur = next;
    }
    Err(Error::NoStabilization("saturation did not stabilize".into()))
}

/// Saturation of a module presentation: the relation module saturated in the free module.
pub fn saturate<K: Field>(m: &Presentation<K>, j: &[Poly<K>]) -> Result<Presentation<K>> {
    let u = saturate_submodule(&m.rels, j)?;
    Ok(Presentation::from_trusted(m.ring.clone(), u).prune())
}

/// Saturation with respect to the irrelevant ideal.
pub fn saturate_irrelevant<K: Field>(m: &Presentation<K>) -> Result<Presentation<K>> {
    let vars: Vec<Poly<K>> = (0..m.nvars()).map(Poly::var).collect();
    saturate(m, &vars)
}

/// Ideal colon `(I : J)`.
pub fn ideal_colon<K: Field>(i: &[Poly<K>], j: &[Poly<K>]) -> Vec<Poly<K>> {
    let u = ideal_matrix(i);
    if u.ncols() == 0 {
        return vec![];
    }
    colon(&u, j).cols().iter().filter_map(|c| c.first().map(|(_, p)| p.clone())).collect()
}

/// Ideal intersection.
pub fn ideal_intersect<K: Field>(i: &[Poly<K>], j: &[Poly<K>]) -> Vec<Poly<K>> {
    let m = intersect(&ideal_matrix(i), &ideal_matrix(j));
    m.cols().iter().filter_map(|c| c.first().map(|(_, p)| p.clone())).collect()
}

/// Reduced Gröbner basis of an ideal, as polynomials.
pub fn ideal_gb<K: Field>(gens: &[Poly<K>], order: MonOrder) -> Vec<Poly<K>> {
    let m = ideal_matrix(gens);
    if m.ncols() == 0 {
        return vec![];
    }
    let gb = Gb::of_columns(&m, order);
    gb.to_matrix().cols().iter().map(|c| c[0].1.clone()).collect()
}

/// True when two ideals are equal.
pub fn ideals_equal<K: Field>(a: &[Poly<K>], b: &[Poly<K>]) -> bool {
    ideal_gb(a, ORD) == ideal_gb(b, ORD)
}

/// `Ann(M) = ∩_c (U : e_c)`.
pub fn annihilator<K: Field>(m: &Presentation<K>) -> Vec<Poly<K>> {
    let mut acc: Option<GradedMatrix<K>> = None;
    for (c, &a) in m.gens().iter().enumerate() {
        let e = GradedMatrix::from_columns(m.gens().to_vec(), vec![a], vec![vec![(c as u32, Poly::one())]]);
        let k = kernel(&e.hstack(&m.rels), ORD);
        let first = k.select_rows(&[0]);
        // the coefficient f of e_c has degree D - a
        let src: Vec<i32> = first.source.iter().map(|d| d - a).collect();
        let ideal = column_span_min(GradedMatrix::from_columns(vec![0], src, first.into_cols()));
        acc = Some(match acc {
            None => ideal,
            Some(prev) => intersect(&prev, &ideal),
        });
    }
    match acc {
        None => vec![Poly::one()],
        Some(m) => {
            let gb = Gb::of_columns(&m, ORD);
            gb.to_matrix().cols().iter().map(|c| c[0].1.clone()).collect()
        }
    }
}

/// True when the annihilator contains a nonzero linear form.
pub fn annihilator_has_linear_form<K: Field>(m: &Presentation<K>) -> bool {
    let ann = annihilator(m);
    let q = Presentation::quotient(m.ring.clone(), &ann).expect("homogeneous annihilator");
    crate::hilbert::hilbert_function(&q, 1) < m.nvars()
}

/// `M ⊗ N`.
pub fn tensor<K: Field>(m: &Presentation<K>, n: &Presentation<K>) -> Result<Presentation<K>> {
    if m.ring != n.ring {
        return Err(Error::RingMismatch("tensor".into()));
    }
    let a = kron_identity_right(&m.rels, n.gens());
    let b = kron_identity_left(m.gens(), &n.rels);
    Ok(Presentation::from_trusted(m.ring.clone(), a.hstack(&b)).prune())
}

/// `M ⊗ S/(l)`.
pub fn restrict_to_hyperplane<K: Field>(m: &Presentation<K>, l: &Poly<K>) -> Result<Presentation<K>> {
    let h = Presentation::quotient(m.ring.clone(), std::slice::from_ref(l))?;
    tensor(m, &h)
}

/// `M ⊗ S/(x_i : i ∉ keep)` as a module over the polynomial ring in the kept variables.
pub fn restrict_to_coordinates<K: Field>(m: &Presentation<K>, keep: &[usize]) -> Presentation<K> {
    let names: Vec<String> = keep.iter().map(|&i| m.ring.names[i].clone()).collect();
    let ring = Ring::new(&names);
    let n = m.nvars();
    let rels = m.rels.map_entries(|p| p.restrict(keep, n));
    Presentation::from_trusted(ring, rels).prune()
}

/// `Tor_i^S(M, S/(x_j : j ∉ keep))` as a module over the kept variables.
pub fn tor_on_coordinates<K: Field>(m: &Presentation<K>, keep: &[usize], i: usize) -> Presentation<K> {
    let names: Vec<String> = keep.iter().map(|&j| m.ring.names[j].clone()).collect();
    let ring = Ring::new(&names);
    let n = m.nvars();
    let res = FreeResolution::minimal(m, i + 1);
    let restrict = |a: &GradedMatrix<K>| a.map_entries(|p| p.restrict(keep, n));
    let fi = res.modules.get(i).cloned().unwrap_or_default();
    let a = if i == 0 {
        GradedMatrix::zero(vec![], fi.clone())
    } else {
        res.maps.get(i - 1).map(restrict).unwrap_or_else(|| GradedMatrix::zero(vec![], fi.clone()))
    };
    let b = res.maps.get(i).map(restrict).unwrap_or_else(|| GradedMatrix::zero(fi.clone(), vec![]));
    homology_module(&ring, &a, &b)
}

/// Regards a module over fewer variables as one over a larger ring; `map[i]` is the slot
/// of variable `i` in the larger ring. The new variables act freely (a cone over `M`),
/// so callers usually add their own relations.
pub fn embed_ring<K: Field>(m: &Presentation<K>, ring: &Ring, map: &[usize]) -> Presentation<K> {
    let rels = m.rels.map_entries(|p| {
        Poly::from_terms(p.terms().iter().map(|(mon, c)| (mon.embed(map), c.clone())).collect())
    });
    Presentation::from_trusted(ring.clone(), rels)
}

/// Presentation of the truncation `M_{≥e}`.
pub fn truncate<K: Field>(m: &Presentation<K>, e: i32) -> Presentation<K> {
    if m.gens().iter().all(|&a| a >= e) {
        return m.clone();
    }
    let pieces = Pieces::new(m);
    let mut gens: Vec<i32> = Vec::new();
    let mut cols: Vec<Column<K>> = Vec::new();
    // generators already in degree ≥ e are kept as they are
    for (c, &a) in m.gens().iter().enumerate() {
        if a >= e {
            gens.push(a);
            cols.push(vec![(c as u32, Poly::one())]);
        }
    }
    for (mon, c) in pieces.basis(e) {
        if m.gens()[c as usize] < e {
            gens.push(e);
            cols.push(vec![(c, Poly::monomial(mon, K::one()))]);
        }
    }
    let b = GradedMatrix::from_columns(m.gens().to_vec(), gens.clone(), cols);
    let k = kernel(&b.hstack(&m.rels), ORD);
    let rows: Vec<usize> = (0..b.ncols()).collect();
    let rels = k.select_rows(&rows);
    let nonzero: Vec<usize> = (0..rels.ncols()).filter(|&j| !rels.col(j).is_empty()).collect();
    let rels = rels.select_columns(&nonzero);
    Presentation::from_trusted(m.ring.clone(), rels).prune()
}

/// Module structure of `Ext^j_S(M, S(-n-1))` from a minimal resolution of `M`.
pub fn ext_omega_module<K: Field>(res: &FreeResolution<K>, j: usize) -> Presentation<K> {
    let shift = res.ring.nvars() as i32;
    let dual = |i: usize| -> GradedMatrix<K> {
        let d = dual_matrix(&res.maps[i]);
        d.twist(-shift)
    };
    let hom = |i: usize| -> Vec<i32> {
        res.modules.get(i).map(|m| m.iter().map(|a| shift - a).collect()).unwrap_or_default()
    };
    let a = if j < res.maps.len() { dual(j) } else { GradedMatrix::zero(vec![], hom(j)) };
    let b = if j >= 1 && j - 1 < res.maps.len() { dual(j - 1) } else { GradedMatrix::zero(hom(j), vec![]) };
    homology_module(&res.ring, &a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;
    use crate::hilbert::hilbert_function;
    use crate::parse::poly;

    fn p(s: &str) -> Poly<Q> {
        poly(s, &Ring::p3())
    }

    #[test]
    fn ideal_colons() {
        assert!(ideals_equal(&ideal_colon(&[p("x^2")], &[p("x")]), &[p("x")]));
        assert!(ideals_equal(&ideal_colon(&[p("xy"), p("xz")], &[p("y"), p("z")]), &[p("x")]));
        let i = [p("xy"), p("z^3")];
        assert!(ideals_equal(&ideal_colon(&i, &[p("1")]), &i));
    }

    #[test]
    fn saturation_removes_embedded_point() {
        let r = Ring::p3();
        let m = Presentation::quotient(r.clone(), &[p("x^2"), p("xy"), p("xz"), p("xw")]).unwrap();
        let s = saturate_irrelevant(&m).unwrap();
        let g = ideal_generators(&s).unwrap();
        assert!(ideals_equal(&g, &[p("x")]));
    }

    #[test]
    fn annihilator_of_cyclic_module() {
        let r = Ring::p3();
        let i = [p("xy"), p("z^2")];
        let m = Presentation::quotient(r, &i).unwrap();
        assert!(ideals_equal(&annihilator(&m), &i));
    }

    #[test]
    fn tensor_of_quotients() {
        let r = Ring::p3();
        let a = Presentation::quotient(r.clone(), &[p("xy"), p("z^2")]).unwrap();
        let b = Presentation::quotient(r.clone(), &[p("x+w"), p("y^3")]).unwrap();
        let ab = Presentation::quotient(r, &[p("xy"), p("z^2"), p("x+w"), p("y^3")]).unwrap();
        let t = tensor(&a, &b).unwrap();
        for d in 0..10 {
            assert_eq!(hilbert_function(&t, d), hilbert_function(&ab, d));
        }
    }

    #[test]
    fn truncation_matches_hilbert_function() {
        let r = Ring::p3();
        let m = Presentation::quotient(r, &[p("x^2+y^2+z^2+w^2"), p("xy+zw")]).unwrap();
        let t = truncate(&m, 3);
        for d in 0..9 {
            let want = if d >= 3 { hilbert_function(&m, d) } else { 0 };
            assert_eq!(hilbert_function(&t, d), want, "degree {d}");
        }
    }
}
