//! Sheaf cohomology on projective space through graded local duality, global
//! sheaf Ext through truncation, the dual sheaf and the Beilinson table.
//!
//! With `N = n + 1` variables and `E^j(d) = dim Ext^j_S(M, S(-N))_{-d}`:
//! `h^q(F(d)) = E^{n-q}(d)` for `q ≥ 1`, and
//! `h^0(F(d)) = dim M_d - E^{N}(d) + E^{n}(d)` from the four-term sequence
//! `0 → H^0_m(M) → M → Γ_*(F) → H^1_m(M) → 0`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::hilbert::{hilbert_function, hilbert_polynomial, HilbertPolynomial};
use crate::homology::{ext_dim_at, ext_table, Pieces, Window};
use crate::matrix::GradedMatrix;
use crate::module::Presentation;
use crate::ops::{ext_omega_module, tensor, truncate};
use crate::poly::{Poly, Ring};
use crate::resolution::FreeResolution;

/// `h^q(F(d))` for `q = 0..=n` over a window of twists.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CohomologyTable {
    pub window: Window,
    /// `h[q][d - window.lo]`
    pub h: Vec<Vec<usize>>,
}

impl CohomologyTable {
    pub fn get(&self, q: usize, d: i32) -> Option<usize> {
        if d < self.window.lo || d > self.window.hi {
            return None;
        }
        self.h.get(q).map(|row| row[(d - self.window.lo) as usize])
    }

    /// `Σ_q (-1)^q h^q(F(d))`.
    pub fn euler(&self, d: i32) -> Option<i64> {
        let mut s = 0i64;
        for q in 0..self.h.len() {
            let v = self.get(q, d)? as i64;
            s += if q % 2 == 0 { v } else { -v };
        }
        Some(s)
    }
}

impl fmt::Display for CohomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:>6}", "d")?;
        for d in self.window.degrees() {
            write!(f, " {d:>4}")?;
        }
        writeln!(f)?;
        for (q, row) in self.h.iter().enumerate().rev() {
            write!(f, "{:>6}", format!("h^{q}"))?;
            for v in row {
                write!(f, " {v:>4}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn omega<K: Field>(ring: &Ring) -> Pieces<K> {
    let n = ring.nvars() as i32;
    Pieces::new(&Presentation::free(ring.clone(), vec![n]))
}

/// Cohomology table of the sheaf associated to `m` on the window.
pub fn cohomology_table<K: Field>(m: &Presentation<K>, window: Window) -> CohomologyTable {
    let nv = m.nvars();
    let n = nv - 1;
    let res = FreeResolution::minimal(m, nv);
    let pieces = omega::<K>(&m.ring);
    let degrees: Vec<i32> = window.degrees().map(|d| -d).collect();
    let ext = ext_table(&res, &pieces, &degrees);
    let e = |j: usize, pos: usize| ext.get(j).map_or(0, |r| r[pos]);
    let mut h = vec![vec![0usize; window.len()]; n + 1];
    for (pos, d) in window.degrees().enumerate() {
        let hf = hilbert_function(m, d);
        h[0][pos] = hf + e(n, pos) - e(nv, pos);
        for (q, row) in h.iter_mut().enumerate().skip(1) {
            row[pos] = e(n - q, pos);
        }
    }
    CohomologyTable { window, h }
}

/// `h^q(F(d))`.
pub fn sheaf_cohomology<K: Field>(m: &Presentation<K>, q: usize, d: i32) -> Result<usize> {
    let n = m.ring.proj_dim();
    if q > n {
        return Err(Error::Invalid(format!("cohomological degree {q} outside 0..{n}")));
    }
    let t = cohomology_table(m, Window::new(d, d));
    Ok(t.h[q][0])
}

/// `h^0(F(d))` alone; cheaper than a full table row when only sections matter.
pub fn h0<K: Field>(m: &Presentation<K>, d: i32) -> usize {
    let nv = m.nvars();
    let res = FreeResolution::minimal(m, nv);
    let pieces = omega::<K>(&m.ring);
    hilbert_function(m, d) + ext_dim_at(&res, &pieces, nv - 1, -d) - ext_dim_at(&res, &pieces, nv, -d)
}

/// A global Ext dimension together with the truncation degrees tried.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SheafExt {
    pub dim: usize,
    /// first truncation degree of the stable run
    pub e: i32,
    pub history: Vec<(i32, usize)>,
}

/// `dim Ext^i_S(M_{≥e}, N)_0`.
pub fn truncated_ext<K: Field>(m: &Presentation<K>, n: &Presentation<K>, i: usize, e: i32) -> usize {
    let t = truncate(m, e);
    let res = FreeResolution::minimal(&t, i + 1);
    let pieces = Pieces::new(n);
    ext_dim_at(&res, &pieces, i, 0)
}

/// Number of consecutive equal values required before a sheaf Ext is accepted.
pub const STABLE_RUN: usize = 3;

/// `dim Ext^i(F, G)` for the sheaves of `m` and `n`: the value of
/// `Ext^i_S(M_{≥e}, N)_0` once it is constant for `STABLE_RUN` consecutive `e`,
/// starting from the regularity of `M`.
pub fn sheaf_ext<K: Field>(m: &Presentation<K>, n: &Presentation<K>, i: usize) -> Result<SheafExt> {
    let pd = m.ring.proj_dim();
    if i > pd {
        return Err(Error::Invalid(format!("Ext index {i} outside 0..{pd}")));
    }
    if m.ring != n.ring {
        return Err(Error::RingMismatch("sheaf ext".into()));
    }
    if m.is_zero_module() || n.is_zero_module() {
        return Ok(SheafExt { dim: 0, e: 0, history: vec![] });
    }
    let reg_m = FreeResolution::minimal(m, m.nvars()).betti().regularity();
    let reg_n = FreeResolution::minimal(n, n.nvars()).betti().regularity();
    let lo = m.gens().iter().copied().min().unwrap_or(0);
    let start = reg_m.max(lo);
    let ceiling = start + reg_n.max(0) + 8;
    let mut history = Vec::new();
    for e in start..=ceiling {
        history.push((e, truncated_ext(m, n, i, e)));
        let k = history.len();
        if k >= STABLE_RUN && history[k - STABLE_RUN..].iter().all(|(_, v)| *v == history[k - 1].1) {
            return Ok(SheafExt { dim: history[k - 1].1, e: history[k - STABLE_RUN].0, history });
        }
    }
    Err(Error::NoStabilization(format!(
        "Ext^{i} did not stabilize for e in {start}..={ceiling}: {history:?}"
    )))
}

pub fn sheaf_ext_dim<K: Field>(m: &Presentation<K>, n: &Presentation<K>, i: usize) -> Result<usize> {
    Ok(sheaf_ext(m, n, i)?.dim)
}

/// Presentation of `Ext^{n-1}_S(M, S(-n-1))`, whose sheaf is the dual `F^D` of a
/// one-dimensional sheaf.
pub fn dual_sheaf<K: Field>(m: &Presentation<K>) -> Result<Presentation<K>> {
    let hp = hilbert_polynomial(m);
    if hp.degree() != Some(1) {
        return Err(Error::Invalid(format!("dual sheaf needs one-dimensional support, HP = {hp}")));
    }
    let n = m.ring.proj_dim();
    let res = FreeResolution::minimal(m, m.nvars());
    Ok(ext_omega_module(&res, n - 1))
}

/// Both sides of `Ext^i(A, B) ≅ Ext^{n-i}(B, A(-n-1))^*`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SerrePair {
    pub lhs: usize,
    pub rhs: usize,
}

impl SerrePair {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn serre_duality_check<K: Field>(a: &Presentation<K>, b: &Presentation<K>, i: usize) -> Result<SerrePair> {
    let n = a.ring.proj_dim();
    if i > n {
        return Err(Error::Invalid(format!("Ext index {i} outside 0..{n}")));
    }
    let lhs = sheaf_ext_dim(a, b, i)?;
    let rhs = sheaf_ext_dim(b, &a.twist(-(n as i32 + 1)), n - i)?;
    Ok(SerrePair { lhs, rhs })
}

/// Koszul differential `∧^k → ∧^{k-1}` on the variables, `∧^k` in degree `k`.
pub fn koszul_matrix<K: Field>(nvars: usize, k: usize) -> GradedMatrix<K> {
    let subsets = |r: usize| -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == r {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, r, cur, out);
                cur.pop();
            }
        }
        rec(0, nvars, r, &mut cur, &mut out);
        out
    };
    let src = subsets(k);
    let tgt = subsets(k - 1);
    let cols = src
        .iter()
        .map(|s| {
            let mut col: Vec<(u32, Poly<K>)> = Vec::new();
            for (t, &v) in s.iter().enumerate() {
                let mut rest = s.clone();
                rest.remove(t);
                let row = tgt.iter().position(|x| *x == rest).unwrap() as u32;
                let p = if t % 2 == 0 { Poly::var(v) } else { Poly::var(v).neg() };
                col.push((row, p));
            }
            col.sort_by_key(|(r, _)| *r);
            col
        })
        .collect();
    GradedMatrix::from_columns(vec![k as i32 - 1; tgt.len()], vec![k as i32; src.len()], cols)
}

/// `Ω^p(p)`, `1 ≤ p ≤ n`, as the image of `∧^{p+1} → ∧^p`: generators `∧^{p+1}`
/// in degree 1, relations from `∧^{p+2}` in degree 2.
pub fn omega_twisted<K: Field>(ring: &Ring, p: usize) -> Result<Presentation<K>> {
    let nv = ring.nvars();
    if p == 0 || p >= nv {
        return Err(Error::Invalid(format!("Omega^{p} needs 1 <= p <= {}", nv - 1)));
    }
    // Koszul degrees put ∧^{p+1} in degree p+1; shift so generators sit in degree 1
    let rels = if p + 2 <= nv {
        koszul_matrix::<K>(nv, p + 2).twist(p as i32)
    } else {
        GradedMatrix::zero(vec![1], vec![])
    };
    Presentation::new(ring.clone(), rels)
}

/// Beilinson-type classification of sheaves with Hilbert polynomial `4m+1`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum BeilinsonType {
    I,
    II,
    III,
    Unclassified,
}

impl fmt::Display for BeilinsonType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BeilinsonType::I => "i",
            BeilinsonType::II => "ii",
            BeilinsonType::III => "iii",
            BeilinsonType::Unclassified => "unclassified",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BeilinsonSignature {
    pub h0_omega2: usize,
    pub h0_omega1: usize,
    pub h0: usize,
    pub h0_minus1: usize,
    pub h1: usize,
    pub kind: BeilinsonType,
}

impl BeilinsonSignature {
    pub fn triple(&self) -> (usize, usize, usize) {
        (self.h0_omega2, self.h0_omega1, self.h0)
    }
}

pub fn classify(triple: (usize, usize, usize)) -> BeilinsonType {
    match triple {
        (0, 0, 1) => BeilinsonType::I,
        (0, 1, 1) => BeilinsonType::II,
        (1, 3, 2) => BeilinsonType::III,
        _ => BeilinsonType::Unclassified,
    }
}

/// Beilinson data of a sheaf on `P^3` with Hilbert polynomial `4m+1`.
pub fn beilinson_table<K: Field>(m: &Presentation<K>) -> Result<BeilinsonSignature> {
    if m.nvars() != 4 {
        return Err(Error::Invalid("Beilinson table is defined on P^3".into()));
    }
    let hp = hilbert_polynomial(m);
    if hp != HilbertPolynomial::from_ints(&[1, 4]) {
        return Err(Error::Invalid(format!("expected Hilbert polynomial 4*m+1, got {hp}")));
    }
    let o1 = omega_twisted::<K>(&m.ring, 1)?;
    let o2 = omega_twisted::<K>(&m.ring, 2)?;
    let h0_omega1 = h0(&tensor(m, &o1)?, 0);
    let h0_omega2 = h0(&tensor(m, &o2)?, 0);
    let t = cohomology_table(m, Window::new(-1, 0));
    let h0v = t.get(0, 0).unwrap();
    let triple = (h0_omega2, h0_omega1, h0v);
    Ok(BeilinsonSignature {
        h0_omega2,
        h0_omega1,
        h0: h0v,
        h0_minus1: t.get(0, -1).unwrap(),
        h1: t.get(1, 0).unwrap(),
        kind: classify(triple),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;
    use crate::parse::poly;

    fn p(s: &str) -> Poly<Q> {
        poly(s, &Ring::p3())
    }

    #[test]
    fn projective_space() {
        let s: Presentation<Q> = Presentation::free(Ring::p3(), vec![0]);
        assert_eq!(sheaf_cohomology(&s, 0, 2).unwrap(), 10);
        assert_eq!(sheaf_cohomology(&s, 3, -4).unwrap(), 1);
        assert_eq!(sheaf_cohomology(&s, 3, -5).unwrap(), 4);
        assert_eq!(sheaf_cohomology(&s, 1, 0).unwrap(), 0);
        assert!(sheaf_cohomology(&s, 4, 0).is_err());
    }

    #[test]
    fn elliptic_quartic_cohomology() {
        let c = Presentation::quotient(Ring::p3(), &[p("x^2+y^2+z^2+w^2"), p("xy+zw")]).unwrap();
        let t = cohomology_table(&c, Window::new(-3, 3));
        assert_eq!(t.get(0, 0), Some(1));
        assert_eq!(t.get(1, 0), Some(1));
        for d in -3..=3 {
            assert_eq!(t.euler(d), Some(4 * d as i64));
            assert_eq!(t.get(2, d), Some(0));
        }
    }

    #[test]
    fn h0_ignores_module_torsion() {
        // saturates to (x, y^2); the extra degree-1 element x is irrelevant torsion
        let r = Ring::p3();
        let m = Presentation::quotient(r, &[p("x^2"), p("xy"), p("y^2"), p("xz"), p("xw")]).unwrap();
        assert_eq!(hilbert_function(&m, 1), 4);
        assert_eq!(h0(&m, 0), 1);
        assert_eq!(h0(&m, 1), 3);
    }

    #[test]
    fn omega_modules() {
        let r = Ring::p3();
        let o1 = omega_twisted::<Q>(&r, 1).unwrap();
        let o2 = omega_twisted::<Q>(&r, 2).unwrap();
        assert_eq!(o1.gens(), &[1; 6]);
        assert_eq!(o2.gens(), &[1; 4]);
        // h^0(Ω^1(1)) = 0, h^0(Ω^1(2)) = 6, h^0(Ω^2(3)) = 4
        assert_eq!(h0(&o1, 0), 0);
        assert_eq!(h0(&o1, 1), 6);
        assert_eq!(h0(&o2, 1), 4);
        let t = cohomology_table(&o1, Window::new(-1, 1));
        assert_eq!(t.get(1, -1), Some(1));
    }

    #[test]
    fn line_ext_and_serre() {
        let r = Ring::p3();
        let l = Presentation::quotient(r.clone(), &[p("x"), p("y")]).unwrap();
        let e = sheaf_ext(&l, &l, 0).unwrap();
        assert_eq!(e.dim, 1);
        // Ext^1(O_L, O_L) = H^0(N_L) = 4
        assert_eq!(sheaf_ext_dim(&l, &l, 1).unwrap(), 4);
        assert!(serre_duality_check(&l, &l, 1).unwrap().holds());
    }

    #[test]
    fn dual_of_complete_intersection() {
        let c = Presentation::quotient(Ring::p3(), &[p("x^2+y^2+z^2+w^2"), p("xy+zw")]).unwrap();
        let d = dual_sheaf(&c).unwrap();
        for k in 0..6 {
            assert_eq!(hilbert_function(&d, k), hilbert_function(&c, k));
        }
    }
}
