//! Graded free modules and homogeneous matrices between them.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

/// A sparse column: `(row, entry)` pairs sorted by row, entries nonzero.
pub type Column<K> = Vec<(u32, Poly<K>)>;

/// Homogeneous map `⊕ S(-source[j]) → ⊕ S(-target[i])`.
///
/// Twists are generator degrees: the `j`-th basis element of the source sits in degree
/// `source[j]`, so a nonzero entry `(i, j)` is homogeneous of degree `source[j] - target[i]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedMatrix<K> {
    pub target: Vec<i32>,
    pub source: Vec<i32>,
    cols: Vec<Column<K>>,
}

impl<K: Field> GradedMatrix<K> {
    pub fn zero(target: Vec<i32>, source: Vec<i32>) -> Self {
        let n = source.len();
        GradedMatrix { target, source, cols: vec![Vec::new(); n] }
    }

    /// Builds from sparse columns; zero entries are dropped and rows sorted.
    pub fn from_columns(target: Vec<i32>, source: Vec<i32>, cols: Vec<Column<K>>) -> Self {
        assert_eq!(source.len(), cols.len());
        let cols = cols
            .into_iter()
            .map(|mut c| {
                c.retain(|(_, p)| !p.is_zero());
                c.sort_by_key(|(r, _)| *r);
                c
            })
            .collect();
        GradedMatrix { target, source, cols }
    }

    /// Builds from dense rows.
    pub fn from_rows(target: Vec<i32>, source: Vec<i32>, rows: Vec<Vec<Poly<K>>>) -> Self {
        assert_eq!(target.len(), rows.len());
        let mut cols: Vec<Column<K>> = vec![Vec::new(); source.len()];
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), source.len(), "ragged matrix");
            for (j, p) in row.into_iter().enumerate() {
                if !p.is_zero() {
                    cols[j].push((i as u32, p));
                }
            }
        }
        GradedMatrix { target, source, cols }
    }

    /// Infers source twists from the entries. Fails on zero columns or inconsistent degrees.
    pub fn from_rows_infer(target: Vec<i32>, rows: Vec<Vec<Poly<K>>>) -> Result<Self> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut source = Vec::with_capacity(ncols);
        for j in 0..ncols {
            let mut deg = None;
            for (i, row) in rows.iter().enumerate() {
                let p = &row[j];
                if p.is_zero() {
                    continue;
                }
                let d = p
                    .homogeneous_degree()
                    .ok_or_else(|| Error::Degree(format!("entry ({i},{j}) is not homogeneous")))?
                    as i32
                    + target[i];
                match deg {
                    None => deg = Some(d),
                    Some(e) if e != d => {
                        return Err(Error::Degree(format!("column {j} mixes degrees {e} and {d}")))
                    }
                    _ => {}
                }
            }
            source.push(deg.ok_or_else(|| Error::Degree(format!("column {j} is zero; give twists explicitly")))?);
        }
        let m = GradedMatrix::from_rows(target, source, rows);
        Ok(m)
    }

    pub fn nrows(&self) -> usize {
        self.target.len()
    }

    pub fn ncols(&self) -> usize {
        self.source.len()
    }

    pub fn col(&self, j: usize) -> &Column<K> {
        &self.cols[j]
    }

    pub fn cols(&self) -> &[Column<K>] {
        &self.cols
    }

    pub fn into_cols(self) -> Vec<Column<K>> {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Poly<K> {
        match self.cols[j].binary_search_by_key(&(i as u32), |(r, _)| *r) {
            Ok(k) => self.cols[j][k].1.clone(),
            Err(_) => Poly::zero(),
        }
    }

    pub fn rows_dense(&self) -> Vec<Vec<Poly<K>>> {
        let mut rows = vec![vec![Poly::zero(); self.ncols()]; self.nrows()];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, p) in c {
                rows[*i as usize][j] = p.clone();
            }
        }
        rows
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    /// Checks that every entry is homogeneous of the degree dictated by the twists.
    pub fn check_degrees(&self) -> Result<()> {
        for (j, c) in self.cols.iter().enumerate() {
            for (i, p) in c {
                let want = self.source[j] - self.target[*i as usize];
                match p.homogeneous_degree() {
                    Some(d) if d as i32 == want => {}
                    _ => {
                        return Err(Error::Degree(format!(
                            "entry ({i},{j}) = {p} should be homogeneous of degree {want}"
                        )))
                    }
                }
            }
        }
        Ok(())
    }

    pub fn transpose(&self) -> Self {
        let mut cols: Vec<Column<K>> = vec![Vec::new(); self.nrows()];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, p) in c {
                cols[*i as usize].push((j as u32, p.clone()));
            }
        }
        GradedMatrix {
            target: self.source.clone(),
            source: self.target.clone(),
            cols,
        }
    }

    /// Matrix product `self * o` (apply `o` first).
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.ncols(), o.nrows(), "dimension mismatch in product");
        let cols = o
            .cols
            .iter()
            .map(|oc| {
                let mut acc: Vec<Poly<K>> = vec![Poly::zero(); self.nrows()];
                for (k, q) in oc {
                    for (i, p) in &self.cols[*k as usize] {
                        let t = p.mul(q);
                        acc[*i as usize] = acc[*i as usize].add(&t);
                    }
                }
                acc.into_iter()
                    .enumerate()
                    .filter(|(_, p)| !p.is_zero())
                    .map(|(i, p)| (i as u32, p))
                    .collect()
            })
            .collect();
        GradedMatrix { target: self.target.clone(), source: o.source.clone(), cols }
    }

    /// Columns of `self` followed by columns of `o` (same target).
    pub fn hstack(&self, o: &Self) -> Self {
        assert_eq!(self.target, o.target);
        let mut source = self.source.clone();
        source.extend_from_slice(&o.source);
        let mut cols = self.cols.clone();
        cols.extend(o.cols.iter().cloned());
        GradedMatrix { target: self.target.clone(), source, cols }
    }

    /// Rows of `self` above rows of `o` (same source).
    pub fn vstack(&self, o: &Self) -> Self {
        assert_eq!(self.source, o.source);
        let mut target = self.target.clone();
        target.extend_from_slice(&o.target);
        let off = self.nrows() as u32;
        let cols = self
            .cols
            .iter()
            .zip(&o.cols)
            .map(|(a, b)| {
                let mut c = a.clone();
                c.extend(b.iter().map(|(i, p)| (i + off, p.clone())));
                c
            })
            .collect();
        GradedMatrix { target, source: self.source.clone(), cols }
    }

    pub fn direct_sum(&self, o: &Self) -> Self {
        let mut target = self.target.clone();
        target.extend_from_slice(&o.target);
        let mut source = self.source.clone();
        source.extend_from_slice(&o.source);
        let off = self.nrows() as u32;
        let mut cols = self.cols.clone();
        cols.extend(o.cols.iter().map(|c| c.iter().map(|(i, p)| (i + off, p.clone())).collect()));
        GradedMatrix { target, source, cols }
    }

    /// Identity on `⊕ S(-twists)`.
    pub fn identity(twists: Vec<i32>) -> Self {
        let cols = (0..twists.len()).map(|i| vec![(i as u32, Poly::one())]).collect();
        GradedMatrix { target: twists.clone(), source: twists, cols }
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        GradedMatrix {
            target: self.target.clone(),
            source: idx.iter().map(|&j| self.source[j]).collect(),
            cols: idx.iter().map(|&j| self.cols[j].clone()).collect(),
        }
    }

    /// Keeps the listed rows, renumbered in order.
    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut pos = vec![u32::MAX; self.nrows()];
        for (new, &old) in idx.iter().enumerate() {
            pos[old] = new as u32;
        }
        let cols = self
            .cols
            .iter()
            .map(|c| {
                let mut v: Column<K> = c
                    .iter()
                    .filter(|(i, _)| pos[*i as usize] != u32::MAX)
                    .map(|(i, p)| (pos[*i as usize], p.clone()))
                    .collect();
                v.sort_by_key(|(r, _)| *r);
                v
            })
            .collect();
        GradedMatrix { target: idx.iter().map(|&i| self.target[i]).collect(), source: self.source.clone(), cols }
    }

    pub fn map_entries(&self, f: impl Fn(&Poly<K>) -> Poly<K>) -> Self {
        let cols = self
            .cols
            .iter()
            .map(|c| c.iter().map(|(i, p)| (*i, f(p))).filter(|(_, p)| !p.is_zero()).collect())
            .collect();
        GradedMatrix { target: self.target.clone(), source: self.source.clone(), cols }
    }

    /// Shifts all twists by `k` (the matrix of the twisted map `M(k)`).
    pub fn twist(&self, k: i32) -> Self {
        GradedMatrix {
            target: self.target.iter().map(|t| t - k).collect(),
            source: self.source.iter().map(|t| t - k).collect(),
            cols: self.cols.clone(),
        }
    }

    /// Entries evaluated at a point, as a dense scalar matrix (row-major).
    pub fn eval(&self, point: &[K]) -> Vec<Vec<K>> {
        let mut out = vec![vec![K::zero(); self.ncols()]; self.nrows()];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, p) in c {
                out[*i as usize][j] = p.eval(point);
            }
        }
        out
    }

    pub fn format(&self, names: &[String]) -> String {
        let rows: Vec<String> = self
            .rows_dense()
            .iter()
            .map(|r| r.iter().map(|p| p.format(names)).collect::<Vec<_>>().join(", "))
            .collect();
        format!("[{}]", rows.join("; "))
    }
}

/// Tensor (Kronecker) of the identity on `⊕ S(-a)` with a matrix, and vice versa,
/// using the row-major index `(i, k) ↦ i * n + k` for the pair of bases.
pub fn kron_identity_left<K: Field>(a: &[i32], m: &GradedMatrix<K>) -> GradedMatrix<K> {
    let n = m.nrows() as u32;
    let mut target = Vec::new();
    let mut source = Vec::new();
    let mut cols = Vec::new();
    for (i, ai) in a.iter().enumerate() {
        for t in &m.target {
            target.push(ai + t);
        }
        for (j, s) in m.source.iter().enumerate() {
            source.push(ai + s);
            cols.push(m.col(j).iter().map(|(r, p)| (i as u32 * n + r, p.clone())).collect());
        }
    }
    GradedMatrix { target, source, cols }
}

pub fn kron_identity_right<K: Field>(m: &GradedMatrix<K>, b: &[i32]) -> GradedMatrix<K> {
    let n = b.len() as u32;
    let mut target = Vec::new();
    for t in &m.target {
        for bk in b {
            target.push(t + bk);
        }
    }
    let mut source = Vec::new();
    let mut cols = Vec::new();
    for (j, s) in m.source.iter().enumerate() {
        for (k, bk) in b.iter().enumerate() {
            source.push(s + bk);
            cols.push(m.col(j).iter().map(|(r, p)| (r * n + k as u32, p.clone())).collect());
        }
    }
    GradedMatrix { target, source, cols }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;
    use crate::parse::poly;
    use crate::poly::Ring;

    #[test]
    fn degree_inference_and_check() {
        let r = Ring::p3();
        let p = |s: &str| poly::<Q>(s, &r);
        let m = GradedMatrix::from_rows_infer(vec![1, 0], vec![
            vec![p("x"), p("y"), p("z"), p("0"), p("0")],
            vec![p("0"), p("0"), p("y^2"), p("xy"), p("x^2")],
        ])
        .unwrap();
        assert_eq!(m.source, vec![2, 2, 2, 2, 2]);
        m.check_degrees().unwrap();
        assert_eq!(m.transpose().transpose(), m);
    }

    #[test]
    fn product_vanishes_on_koszul() {
        let r = Ring::p3();
        let p = |s: &str| poly::<Q>(s, &r);
        let d1 = GradedMatrix::from_rows(vec![0], vec![1, 1], vec![vec![p("x"), p("y")]]);
        let d2 = GradedMatrix::from_rows(vec![1, 1], vec![2], vec![vec![p("-y")], vec![p("x")]]);
        assert!(d1.mul(&d2).is_zero());
    }
}
