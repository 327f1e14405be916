//! Monomials and monomial orders.

use std::cmp::Ordering;

/// Maximum number of ring variables.
pub const MAXV: usize = 8;

/// A monomial with at most [`MAXV`] variables and a cached total degree.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mon {
    deg: u16,
    e: [u8; MAXV],
}

impl Mon {
    pub fn one() -> Self {
        Mon::default()
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAXV, "too many variables");
        let mut e = [0u8; MAXV];
        let mut deg = 0u16;
        for (slot, &x) in e.iter_mut().zip(exps) {
            assert!(x < 256, "exponent overflow");
            *slot = x as u8;
            deg += x as u16;
        }
        Mon { deg, e }
    }

    pub fn var(i: usize) -> Self {
        let mut m = Mon::one();
        m.e[i] = 1;
        m.deg = 1;
        m
    }

    pub fn deg(&self) -> u32 {
        self.deg as u32
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.e[i] as u32
    }

    pub fn exps(&self, n: usize) -> Vec<u32> {
        self.e[..n].iter().map(|&x| x as u32).collect()
    }

    pub fn mul(&self, o: &Mon) -> Mon {
        let mut e = self.e;
        for (a, b) in e.iter_mut().zip(o.e.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        Mon { deg: self.deg + o.deg, e }
    }

    /// `self / o` when `o` divides `self`.
    pub fn div(&self, o: &Mon) -> Option<Mon> {
        let mut e = self.e;
        for (a, b) in e.iter_mut().zip(o.e.iter()) {
            if *a < *b {
                return None;
            }
            *a -= *b;
        }
        Some(Mon { deg: self.deg - o.deg, e })
    }

    pub fn divides(&self, o: &Mon) -> bool {
        self.deg <= o.deg && self.e.iter().zip(o.e.iter()).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, o: &Mon) -> Mon {
        let mut e = [0u8; MAXV];
        let mut deg = 0u16;
        for (i, slot) in e.iter_mut().enumerate() {
            *slot = self.e[i].max(o.e[i]);
            deg += *slot as u16;
        }
        Mon { deg, e }
    }

    pub fn gcd(&self, o: &Mon) -> Mon {
        let mut e = [0u8; MAXV];
        let mut deg = 0u16;
        for (i, slot) in e.iter_mut().enumerate() {
            *slot = self.e[i].min(o.e[i]);
            deg += *slot as u16;
        }
        Mon { deg, e }
    }

    pub fn coprime(&self, o: &Mon) -> bool {
        self.e.iter().zip(o.e.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Drops the listed variables (which must have exponent zero) and shifts the rest left.
    pub fn drop_vars(&self, keep: &[usize]) -> Mon {
        let exps: Vec<u32> = keep.iter().map(|&i| self.e[i] as u32).collect();
        Mon::from_exps(&exps)
    }

    /// Inserts this monomial into a larger ring: variable `i` goes to slot `map[i]`.
    pub fn embed(&self, map: &[usize]) -> Mon {
        let mut e = [0u8; MAXV];
        for (i, &j) in map.iter().enumerate() {
            e[j] = self.e[i];
        }
        Mon { deg: self.deg, e }
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn format(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, name) in names.iter().enumerate() {
            match self.e[i] {
                0 => {}
                1 => parts.push(name.clone()),
                k => parts.push(format!("{name}^{k}")),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// All monomials of degree `d` in `n` variables, in descending grevlex order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Mon> {
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Mon::one());
        }
        return out;
    }
    let mut exps = vec![0u32; n];
    fn rec(i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Mon>) {
        let n = exps.len();
        if i == n - 1 {
            exps[i] = left;
            out.push(Mon::from_exps(exps));
            return;
        }
        for k in (0..=left).rev() {
            exps[i] = k;
            rec(i + 1, left - k, exps, out);
        }
        exps[i] = 0;
    }
    rec(0, d, &mut exps, &mut out);
    out.sort_by(|a, b| MonOrder::GrevLex.cmp(b, a));
    out
}

/// Number of monomials of degree `d` in `n` variables.
pub fn count_monomials(n: usize, d: i64) -> u64 {
    if d < 0 {
        return 0;
    }
    if n == 0 {
        return u64::from(d == 0);
    }
    binomial(d as u64 + n as u64 - 1, n as u64 - 1)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// A monomial order on the polynomial ring.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum MonOrder {
    GrevLex,
    Lex,
    /// Block order eliminating the first `k` variables, grevlex inside each block.
    Elim(u8),
}

impl MonOrder {
    pub fn cmp(&self, a: &Mon, b: &Mon) -> Ordering {
        match self {
            MonOrder::GrevLex => grevlex(a, b),
            MonOrder::Lex => a.e.cmp(&b.e),
            MonOrder::Elim(k) => {
                let k = *k as usize;
                let da: u32 = a.e[..k].iter().map(|&x| x as u32).sum();
                let db: u32 = b.e[..k].iter().map(|&x| x as u32).sum();
                da.cmp(&db).then_with(|| grevlex(a, b))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonOrder::GrevLex => "grevlex".into(),
            MonOrder::Lex => "lex".into(),
            MonOrder::Elim(k) => format!("elim({k})"),
        }
    }
}

fn grevlex(a: &Mon, b: &Mon) -> Ordering {
    match a.deg.cmp(&b.deg) {
        Ordering::Equal => {
            for i in (0..MAXV).rev() {
                match a.e[i].cmp(&b.e[i]) {
                    Ordering::Equal => continue,
                    o => return o.reverse(),
                }
            }
            Ordering::Equal
        }
        o => o,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Mon {
        Mon::from_exps(e)
    }

    #[test]
    fn grevlex_examples() {
        assert_eq!(MonOrder::GrevLex.cmp(&m(&[2, 0, 0, 0]), &m(&[1, 1, 0, 0])), Ordering::Greater);
        assert_eq!(MonOrder::GrevLex.cmp(&m(&[1, 0, 0, 1]), &m(&[0, 1, 1, 0])), Ordering::Less);
        let x = m(&[1, 2, 0, 3]);
        assert_eq!(MonOrder::GrevLex.cmp(&x, &x), Ordering::Equal);
    }

    #[test]
    fn lex_examples() {
        assert_eq!(MonOrder::Lex.cmp(&m(&[1, 0, 0, 3]), &m(&[0, 4, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn elimination_prefers_block_degree() {
        let o = MonOrder::Elim(1);
        assert_eq!(o.cmp(&m(&[1, 0, 0, 0]), &m(&[0, 3, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(4, 2).len(), 10);
        assert_eq!(count_monomials(4, 2), 10);
        assert_eq!(count_monomials(3, -1), 0);
        let ms = monomials_of_degree(3, 3);
        for w in ms.windows(2) {
            assert_eq!(MonOrder::GrevLex.cmp(&w[0], &w[1]), Ordering::Greater);
        }
    }

    #[test]
    fn division_and_lcm() {
        let a = m(&[2, 1, 0, 0]);
        let b = m(&[1, 1, 1, 0]);
        assert_eq!(a.lcm(&b), m(&[2, 1, 1, 0]));
        assert_eq!(a.gcd(&b), m(&[1, 1, 0, 0]));
        assert!(a.div(&b).is_none());
        assert_eq!(a.lcm(&b).div(&a), Some(m(&[0, 0, 1, 0])));
        assert!(!a.coprime(&b));
        assert!(m(&[1, 0, 0, 0]).coprime(&m(&[0, 3, 0, 0])));
    }
}
