//! Finitely presented graded modules.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{minimal_generator_indices, Gb};
use crate::matrix::GradedMatrix;
use crate::mon::MonOrder;
use crate::poly::{Poly, Ring};

/// The cokernel of `rels: ⊕ S(-b_j) → ⊕ S(-a_i)`, with `gens = [a_i]`.
#[derive(Clone, Debug)]
pub struct Presentation<K> {
    pub ring: Ring,
    pub rels: GradedMatrix<K>,
    gb: OnceLock<Arc<Gb<K>>>,
}

impl<K: Field> PartialEq for Presentation<K> {
    fn eq(&self, o: &Self) -> bool {
        self.ring == o.ring && self.rels == o.rels
    }
}

impl<K: Field> Presentation<K> {
    pub fn new(ring: Ring, rels: GradedMatrix<K>) -> Result<Self> {
        rels.check_degrees()?;
        Ok(Presentation { ring, rels, gb: OnceLock::new() })
    }

    /// Skips the degree check; for matrices produced by the engine itself.
    pub(crate) fn from_trusted(ring: Ring, rels: GradedMatrix<K>) -> Self {
        debug_assert!(rels.check_degrees().is_ok(), "{:?}", rels.check_degrees());
        Presentation { ring, rels, gb: OnceLock::new() }
    }

    /// The free module `⊕ S(-a_i)`.
    pub fn free(ring: Ring, gens: Vec<i32>) -> Self {
        Presentation::from_trusted(ring, GradedMatrix::zero(gens, vec![]))
    }

    /// `S/I` for an ideal given by homogeneous generators.
    pub fn quotient(ring: Ring, gens: &[Poly<K>]) -> Result<Self> {
        let mut source = Vec::new();
        let mut cols = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let d = g
                .homogeneous_degree()
                .ok_or_else(|| Error::Degree(format!("ideal generator {i} is not homogeneous")))?;
            source.push(d as i32);
            cols.push(vec![(0u32, g.clone())]);
        }
        Presentation::new(ring, GradedMatrix::from_columns(vec![0], source, cols))
    }

    pub fn gens(&self) -> &[i32] {
        &self.rels.target
    }

    pub fn ngens(&self) -> usize {
        self.rels.nrows()
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    /// Cached Gröbner basis of the relation submodule (grevlex, term over position).
    pub fn gb(&self) -> Arc<Gb<K>> {
        self.gb
            .get_or_init(|| Arc::new(Gb::of_columns(&self.rels, MonOrder::GrevLex)))
            .clone()
    }

    /// `M(k)`: generator degrees shift down by `k`.
    pub fn twist(&self, k: i32) -> Self {
        Presentation::from_trusted(self.ring.clone(), self.rels.twist(k))
    }

    pub fn direct_sum(&self, o: &Self) -> Result<Self> {
        if self.ring != o.ring {
            return Err(Error::RingMismatch("direct sum".into()));
        }
        Ok(Presentation::from_trusted(self.ring.clone(), self.rels.direct_sum(&o.rels)))
    }

    pub fn is_zero_module(&self) -> bool {
        let gb = self.gb();
        (0..self.ngens()).all(|c| gb.leads_in(c as u32).iter().any(|m| m.is_one()))
    }

    /// Minimal presentation: cancels unit entries, then drops redundant relations.
    pub fn prune(&self) -> Self {
        let mut rels = self.rels.clone();
        loop {
            let mut unit = None;
            'find: for (j, col) in rels.cols().iter().enumerate() {
                for (i, p) in col {
                    if p.is_nonzero_constant() {
                        unit = Some((*i as usize, j));
                        break 'find;
                    }
                }
            }
            let Some((r, c)) = unit else { break };
            rels = cancel_unit(&rels, r, c);
        }
        let nonzero: Vec<usize> = (0..rels.ncols()).filter(|&j| !rels.col(j).is_empty()).collect();
        let rels = rels.select_columns(&nonzero);
        let keep = minimal_generator_indices(&rels, MonOrder::GrevLex);
        Presentation::from_trusted(self.ring.clone(), rels.select_columns(&keep))
    }
}

/// Removes generator `r` using the unit in column `c`:
/// `R' = R - R[:,c] R[r,:] / u`, without row `r` and column `c`.
pub(crate) fn cancel_unit<K: Field>(rels: &GradedMatrix<K>, r: usize, c: usize) -> GradedMatrix<K> {
    let u = rels.get(r, c).as_constant().unwrap();
    let uinv = u.inv();
    let colc = rels.col(c).clone();
    let mut cols = Vec::with_capacity(rels.ncols() - 1);
    let mut source = Vec::with_capacity(rels.ncols() - 1);
    for j in 0..rels.ncols() {
        if j == c {
            continue;
        }
        let rj = rels.get(r, j);
        let mut col = rels.col(j).clone();
        if !rj.is_zero() {
            let f = rj.scale(&uinv);
            let mut dense: std::collections::BTreeMap<u32, Poly<K>> = col.into_iter().collect();
            for (i, p) in &colc {
                let e = dense.entry(*i).or_default();
                *e = e.sub(&p.mul(&f));
            }
            col = dense.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        }
        let col = col
            .into_iter()
            .filter(|(i, _)| *i as usize != r)
            .map(|(i, p)| (if (i as usize) > r { i - 1 } else { i }, p))
            .collect();
        cols.push(col);
        source.push(rels.source[j]);
    }
    let mut target = rels.target.clone();
    target.remove(r);
    GradedMatrix::from_columns(target, source, cols)
}
