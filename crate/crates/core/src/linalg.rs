//! Exact linear algebra over a field: sparse row echelon forms, ranks and null spaces.

use std::collections::HashMap;

use crate::field::Field;

/// A sparse vector: `(index, value)` sorted by index, values nonzero.
pub type SparseVec<K> = Vec<(usize, K)>;

/// `a - c * b`
pub fn axpy<K: Field>(a: &[(usize, K)], c: &K, b: &[(usize, K)]) -> SparseVec<K> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, b[j].1.mul(c).neg()));
            j += 1;
        } else {
            let mut v = a[i].1.clone();
            v.sub_mul_assign(c, &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental echelon form. Rows are reduced against stored pivots on insertion.
#[derive(Clone, Debug, Default)]
pub struct Echelon<K> {
    pivots: HashMap<usize, SparseVec<K>>,
}

impl<K: Field> Echelon<K> {
    pub fn new() -> Self {
        Echelon { pivots: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` so that its leading index is not a pivot column.
    pub fn reduce(&self, mut v: SparseVec<K>) -> SparseVec<K> {
        let mut start = 0;
        while start < v.len() {
            let col = v[start].0;
            match self.pivots.get(&col) {
                Some(p) => {
                    let c = v[start].1.clone();
                    let tail = axpy(&v[start..], &c, p);
                    v.truncate(start);
                    v.extend(tail);
                }
                None => start += 1,
            }
        }
        v
    }

    /// Reduces only until the leading entry is not a pivot; returns `None` if it vanishes.
    fn reduce_lead(&self, mut v: SparseVec<K>) -> Option<SparseVec<K>> {
        loop {
            let (col, c) = match v.first() {
                None => return None,
                Some((col, c)) => (*col, c.clone()),
            };
            match self.pivots.get(&col) {
                Some(p) => v = axpy(&v, &c, p),
                None => return Some(v),
            }
        }
    }

    /// Inserts a row; returns true when it increased the rank.
    pub fn insert(&mut self, v: SparseVec<K>) -> bool {
        match self.reduce_lead(v) {
            None => false,
            Some(mut v) => {
                let inv = v[0].1.inv();
                for e in v.iter_mut() {
                    e.1 = e.1.mul(&inv);
                }
                self.pivots.insert(v[0].0, v);
                true
            }
        }
    }

    pub fn contains(&self, v: SparseVec<K>) -> bool {
        self.reduce_lead(v).is_none()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut c: Vec<usize> = self.pivots.keys().copied().collect();
        c.sort_unstable();
        c
    }
}

/// Rank of a matrix given by sparse rows.
pub fn rank<K: Field>(rows: impl IntoIterator<Item = SparseVec<K>>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Rank of a dense matrix.
pub fn rank_dense<K: Field>(m: &[Vec<K>]) -> usize {
    rank(m.iter().map(|row| dense_to_sparse(row)))
}

pub fn dense_to_sparse<K: Field>(row: &[K]) -> SparseVec<K> {
    row.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect()
}

/// Basis of the right null space `{x : A x = 0}` of a dense `rows × ncols` matrix.
pub fn nullspace<K: Field>(a: &[Vec<K>], ncols: usize) -> Vec<Vec<K>> {
    let mut m: Vec<Vec<K>> = a.to_vec();
    let mut pivcols = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv();
        for v in m[r].iter_mut() {
            *v = v.mul(&inv);
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (k, t) in pivot.iter().enumerate() {
                    if !t.is_zero() {
                        row[k].sub_mul_assign(&f, t);
                    }
                }
            }
        }
        pivcols.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivcols.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![K::zero(); ncols];
            x[f] = K::one();
            for (i, &pc) in pivcols.iter().enumerate() {
                x[pc] = m[i][f].neg();
            }
            x
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;

    fn q(v: i64) -> Q {
        Q::from_i64(v)
    }

    #[test]
    fn rank_and_nullspace() {
        let a = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(0), q(1), q(1)]];
        assert_eq!(rank_dense(&a), 2);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 1);
        for row in &a {
            let s = row.iter().zip(&ns[0]).fold(q(0), |acc, (x, y)| acc.add(&x.mul(y)));
            assert!(s.is_zero());
        }
    }

    #[test]
    fn echelon_membership() {
        let mut e = Echelon::<Q>::new();
        assert!(e.insert(vec![(0, q(1)), (2, q(1))]));
        assert!(e.insert(vec![(1, q(1)), (2, q(-1))]));
        assert!(e.contains(vec![(0, q(1)), (1, q(1))]));
        assert!(!e.insert(vec![(0, q(2)), (1, q(2))]));
        assert_eq!(e.rank(), 2);
    }
}
