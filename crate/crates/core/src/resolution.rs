//! Free resolutions via Schreyer frames, minimization by unit cancellation, Betti tables.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::field::Field;
use crate::groebner::{Gb, GbBuilder};
use crate::matrix::{Column, GradedMatrix};
use crate::module::Presentation;
use crate::mon::{Mon, MonOrder};
use crate::poly::{Poly, Ring};
use crate::vector::{to_column, ModOrder, Term, Vector};

/// `F_0 ← F_1 ← … ← F_L`, with `maps[i]: F_{i+1} → F_i`.
#[derive(Clone, Debug)]
pub struct FreeResolution<K> {
    pub ring: Ring,
    pub modules: Vec<Vec<i32>>,
    pub maps: Vec<GradedMatrix<K>>,
    pub minimal: bool,
}

/// Graded Betti numbers `β_{i,j}`: `j` is the generator degree in `F_i`.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, i32), usize>,
}

impl BettiTable {
    pub fn from_modules(modules: &[Vec<i32>]) -> Self {
        let mut entries = BTreeMap::new();
        for (i, m) in modules.iter().enumerate() {
            for &d in m {
                *entries.entry((i, d)).or_insert(0) += 1;
            }
        }
        BettiTable { entries }
    }

    pub fn get(&self, i: usize, j: i32) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn length(&self) -> usize {
        self.entries.keys().map(|(i, _)| *i).max().unwrap_or(0)
    }

    /// Total rank of `F_i`.
    pub fn rank(&self, i: usize) -> usize {
        self.entries.iter().filter(|((k, _), _)| *k == i).map(|(_, v)| v).sum()
    }

    /// Castelnuovo–Mumford regularity: `max (j - i)` over nonzero entries.
    pub fn regularity(&self) -> i32 {
        self.entries.keys().map(|(i, j)| j - *i as i32).max().unwrap_or(0)
    }

    /// Sheaf-style description of each `F_i`, e.g. `O(-3)+2O(-2)`.
    pub fn shape(&self) -> Vec<String> {
        (0..=self.length())
            .map(|i| {
                let mut parts: Vec<(i32, usize)> = self
                    .entries
                    .iter()
                    .filter(|((k, _), _)| *k == i)
                    .map(|((_, j), v)| (*j, *v))
                    .collect();
                parts.sort_by_key(|(j, _)| std::cmp::Reverse(*j));
                if parts.is_empty() {
                    return "0".to_string();
                }
                parts
                    .iter()
                    .map(|(j, v)| {
                        let o = if *j == 0 { "O".to_string() } else { format!("O({})", -j) };
                        if *v == 1 {
                            o
                        } else {
                            format!("{v}{o}")
                        }
                    })
                    .collect::<Vec<_>>()
                    .join("+")
            })
            .collect()
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return writeln!(f, "(zero)");
        }
        let len = self.length();
        let rows: Vec<i32> = {
            let mut r: Vec<i32> = self.entries.keys().map(|(i, j)| j - *i as i32).collect();
            r.sort();
            r.dedup();
            r
        };
        let (lo, hi) = (rows[0], *rows.last().unwrap());
        write!(f, "{:>6}", "")?;
        for i in 0..=len {
            write!(f, "{i:>5}")?;
        }
        writeln!(f)?;
        write!(f, "{:>6}", "total:")?;
        for i in 0..=len {
            write!(f, "{:>5}", self.rank(i))?;
        }
        writeln!(f)?;
        for r in lo..=hi {
            write!(f, "{:>5}:", r)?;
            for i in 0..=len {
                let v = self.get(i, r + i as i32);
                if v == 0 {
                    write!(f, "{:>5}", ".")?;
                } else {
                    write!(f, "{v:>5}")?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Sort key making Schreyer frames terminate: group by lead component, then ascending lex.
fn frame_sort<K: Field>(v: &mut [Vector<K>]) {
    v.sort_by(|a, b| {
        let (ta, tb) = (&a[0], &b[0]);
        ta.c.cmp(&tb.c).then_with(|| MonOrder::Lex.cmp(&ta.m, &tb.m))
    });
}

/// Syzygies of a Gröbner basis `g` (under `order`) in the Schreyer order `next`.
fn schreyer_syzygies<K: Field>(g: &[Vector<K>], order: &ModOrder, next: &ModOrder) -> Vec<Vector<K>> {
    let gb = Gb::from_elems(order.clone(), g.to_vec());
    let mut out = Vec::new();
    for j in 0..g.len() {
        let (mj, cj, kj) = (g[j][0].m, g[j][0].c, &g[j][0].k);
        let quots: Vec<(usize, Mon)> = (0..j)
            .filter(|&i| g[i][0].c == cj)
            .map(|i| (i, g[i][0].m.lcm(&mj).div(&mj).unwrap()))
            .collect();
        for (a, &(i, qa)) in quots.iter().enumerate() {
            let redundant = quots.iter().enumerate().any(|(b, &(_, qb))| {
                b != a && qb.divides(&qa) && (qb != qa || b < a)
            });
            if redundant {
                continue;
            }
            let mi = g[i][0].m;
            let ki = &g[i][0].k;
            let l = mi.lcm(&mj);
            let ui = l.div(&mi).unwrap();
            // S = (qa/kj) g_j - (ui/ki) g_i
            let sj: Vector<K> = g[j]
                .iter()
                .map(|t| Term { m: t.m.mul(&qa), c: t.c, key: t.key.mul(&qa), k: t.k.div(kj) })
                .collect();
            let s = order.sub_mul(&sj, &ki.inv(), &ui, &g[i]);
            let (rem, quot) = gb.reduce_quotients(s);
            assert!(rem.is_empty(), "Schreyer frame input is not a Gröbner basis");
            let mut terms = vec![
                next.term(qa, j as u32, kj.inv()),
                next.term(ui, i as u32, ki.inv().neg()),
            ];
            for (k, u, c) in quot {
                terms.push(next.term(u, k as u32, c.neg()));
            }
            let v = next.normalize(terms);
            debug_assert_eq!(v[0].c as usize, j);
            out.push(v);
        }
    }
    out
}

impl<K: Field> FreeResolution<K> {
    /// Schreyer resolution of a presentation (not minimal).
    pub fn schreyer(pres: &Presentation<K>, max_length: usize) -> Self {
        let f0 = pres.gens().to_vec();
        let order0 = ModOrder::top(MonOrder::GrevLex, f0.clone());
        let gens: Vec<Vector<K>> = pres.rels.cols().iter().map(|c| order0.from_column(c)).collect();
        let mut b = GbBuilder::new(order0.clone());
        b.add_generators(gens);
        let gb = b.into_gb();
        let mut level: Vec<Vector<K>> = gb.elems;
        let mut order = order0;
        let mut modules = vec![f0];
        let mut maps: Vec<GradedMatrix<K>> = Vec::new();
        while !level.is_empty() && maps.len() < max_length {
            frame_sort(&mut level);
            let degs: Vec<i32> = level.iter().map(|v| order.degree(&v[0].m, v[0].c)).collect();
            let cols: Vec<Column<K>> = level.iter().map(|v| to_column(v)).collect();
            maps.push(GradedMatrix::from_columns(modules.last().unwrap().clone(), degs.clone(), cols));
            modules.push(degs.clone());
            let leads: Vec<(Mon, u32)> = level.iter().map(|v| (v[0].m, v[0].c)).collect();
            let next = order.schreyer(&leads, degs);
            let syz = schreyer_syzygies(&level, &order, &next);
            level = syz;
            order = next;
        }
        FreeResolution { ring: pres.ring.clone(), modules, maps, minimal: false }
    }

    /// Minimal free resolution of length at most `max_length`.
    pub fn minimal(pres: &Presentation<K>, max_length: usize) -> Self {
        let mut r = FreeResolution::schreyer(pres, max_length.max(1) + 1);
        r.minimize();
        r.maps.truncate(max_length);
        r.modules.truncate(max_length + 1);
        r
    }

    /// Cancels unit entries until no differential has a nonzero constant entry.
    pub fn minimize(&mut self) {
        let n = self.maps.len();
        let mut maps: Vec<Vec<Column<K>>> =
            self.maps.iter().map(|m| m.cols().to_vec()).collect();
        let mut alive: Vec<Vec<bool>> = self.modules.iter().map(|m| vec![true; m.len()]).collect();
        for i in 0..n {
            loop {
                // live unit in maps[i]: row in F_i, column in F_{i+1}
                let mut unit = None;
                'scan: for (c, col) in maps[i].iter().enumerate() {
                    if !alive[i + 1][c] {
                        continue;
                    }
                    for (r, p) in col {
                        if alive[i][*r as usize] && p.is_nonzero_constant() {
                            unit = Some((*r as usize, c));
                            break 'scan;
                        }
                    }
                }
                let Some((r, c)) = unit else { break };
                let u = maps[i][c]
                    .iter()
                    .find(|(rr, _)| *rr as usize == r)
                    .unwrap()
                    .1
                    .as_constant()
                    .unwrap();
                let uinv = u.inv();
                let colc: Column<K> = maps[i][c]
                    .iter()
                    .filter(|(rr, _)| alive[i][*rr as usize])
                    .cloned()
                    .collect();
                for b in 0..maps[i].len() {
                    if b == c || !alive[i + 1][b] {
                        continue;
                    }
                    let Some(rb) = maps[i][b].iter().find(|(rr, _)| *rr as usize == r).map(|x| x.1.clone())
                    else {
                        continue;
                    };
                    let f = rb.scale(&uinv);
                    maps[i][b] = col_sub_mul(&maps[i][b], &f, &colc);
                }
                alive[i][r] = false;
                alive[i + 1][c] = false;
            }
        }
        // compact
        let keep: Vec<Vec<usize>> = alive
            .iter()
            .map(|a| a.iter().enumerate().filter(|(_, x)| **x).map(|(i, _)| i).collect())
            .collect();
        let mut new_maps = Vec::new();
        for i in 0..n {
            let mut pos = vec![u32::MAX; self.modules[i].len()];
            for (k, &r) in keep[i].iter().enumerate() {
                pos[r] = k as u32;
            }
            let cols: Vec<Column<K>> = keep[i + 1]
                .iter()
                .map(|&c| {
                    maps[i][c]
                        .iter()
                        .filter(|(r, _)| pos[*r as usize] != u32::MAX)
                        .map(|(r, p)| (pos[*r as usize], p.clone()))
                        .collect()
                })
                .collect();
            new_maps.push(GradedMatrix::from_columns(
                keep[i].iter().map(|&r| self.modules[i][r]).collect(),
                keep[i + 1].iter().map(|&c| self.modules[i + 1][c]).collect(),
                cols,
            ));
        }
        self.modules = keep
            .iter()
            .enumerate()
            .map(|(i, k)| k.iter().map(|&r| self.modules[i][r]).collect())
            .collect();
        self.maps = new_maps;
        while self.modules.len() > 1 && self.modules.last().unwrap().is_empty() {
            self.modules.pop();
            self.maps.pop();
        }
        self.minimal = true;
    }

    pub fn betti(&self) -> BettiTable {
        BettiTable::from_modules(&self.modules)
    }

    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// `d_i ∘ d_{i+1} = 0` for all `i`.
    pub fn is_complex(&self) -> bool {
        self.maps.windows(2).all(|w| w[0].mul(&w[1]).is_zero())
    }

    /// No differential has a nonzero constant entry.
    pub fn is_minimal(&self) -> bool {
        self.maps
            .iter()
            .all(|m| m.cols().iter().all(|c| c.iter().all(|(_, p)| !p.is_nonzero_constant())))
    }
}

fn col_sub_mul<K: Field>(a: &Column<K>, f: &Poly<K>, b: &Column<K>) -> Column<K> {
    let mut out: BTreeMap<u32, Poly<K>> = a.iter().cloned().collect();
    for (i, p) in b {
        let e = out.entry(*i).or_default();
        *e = e.sub(&p.mul(f));
    }
    out.into_iter().filter(|(_, p)| !p.is_zero()).collect()
}

/// Result of checking a chain of matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexReport {
    pub compositions_zero: bool,
    /// homology dimensions per interior position (`1..len`) and degree window
    pub homology: Vec<(usize, Vec<(i32, usize)>)>,
}

/// Checks that consecutive products vanish and reports homology dimensions of the chain
/// `F_0 ← F_1 ← …` at interior positions over the degree window.
pub fn verify_complex<K: Field>(
    maps: &[GradedMatrix<K>],
    nvars: usize,
    window: (i32, i32),
) -> ComplexReport {
    let zero = maps.windows(2).all(|w| w[0].mul(&w[1]).is_zero());
    let mut homology = Vec::new();
    for pos in 1..maps.len() {
        let mut dims = Vec::new();
        for d in window.0..=window.1 {
            let outgoing = &maps[pos - 1];
            let incoming = &maps[pos];
            let dim: usize = outgoing
                .source
                .iter()
                .map(|&a| crate::mon::count_monomials(nvars, (d - a) as i64) as usize)
                .sum();
            let r_out = crate::homology::free_map_rank(outgoing, d, nvars);
            let r_in = crate::homology::free_map_rank(incoming, d, nvars);
            dims.push((d, dim - r_out - r_in));
        }
        homology.push((pos, dims));
    }
    ComplexReport { compositions_zero: zero, homology }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;
    use crate::parse::poly;

    fn quotient(gens: &[&str]) -> Presentation<Q> {
        let r = Ring::p3();
        let g: Vec<Poly<Q>> = gens.iter().map(|s| poly(s, &r)).collect();
        Presentation::quotient(r, &g).unwrap()
    }

    #[test]
    fn koszul_betti_numbers() {
        let res = FreeResolution::minimal(&quotient(&["x", "y", "z", "w"]), 4);
        let b = res.betti();
        let ranks: Vec<usize> = (0..=4).map(|i| b.rank(i)).collect();
        assert_eq!(ranks, vec![1, 4, 6, 4, 1]);
        assert_eq!(b.regularity(), 0);
        assert!(res.is_complex());
        assert!(res.is_minimal());
    }

    #[test]
    fn complete_intersection_of_quadrics() {
        let res = FreeResolution::minimal(&quotient(&["x^2+y^2+z^2+w^2", "xy+zw"]), 4);
        let b = res.betti();
        assert_eq!(b.get(1, 2), 2);
        assert_eq!(b.get(2, 4), 1);
        assert_eq!(b.regularity(), 2);
    }

    #[test]
    fn padded_identity_is_cancelled() {
        let r = Ring::p3();
        let p = |s: &str| poly::<Q>(s, &r);
        let rels = GradedMatrix::from_rows(vec![0, 2], vec![2, 2], vec![
            vec![p("x^2"), p("0")],
            vec![p("0"), p("1")],
        ]);
        let m = Presentation::new(r, rels).unwrap();
        let res = FreeResolution::minimal(&m, 4);
        assert_eq!(res.betti().shape(), vec!["O", "O(-2)"]);
    }
}
