//! Numerical walls for pairs `(s, F)` with `χ(F(m)) = dm + χ`.
//!
//! A split into a piece without the section `(d', χ')` and a piece carrying it
//! `(d - d', χ - χ')` gives a wall where both slopes agree with `(χ + α)/d`:
//! `α = (d χ' - d' χ) / d'`.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct PairClass {
    pub d: i64,
    pub chi: i64,
    pub has_section: bool,
}

impl fmt::Display for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.has_section { "section" } else { "no-section" };
        write!(f, "({},{},{s})", self.d, self.chi)
    }
}

/// Achievable `χ(O_C)` of connected Cohen–Macaulay curves by degree.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CurveChiTable {
    pub chis: BTreeMap<i64, Vec<i64>>,
}

impl Default for CurveChiTable {
    fn default() -> Self {
        let chis = BTreeMap::from([(1, vec![1]), (2, vec![1]), (3, vec![0, 1]), (4, vec![-2, 0, 1])]);
        CurveChiTable { chis }
    }
}

impl CurveChiTable {
    pub fn max_degree(&self) -> i64 {
        self.chis.keys().next_back().copied().unwrap_or(0)
    }

    /// Adds `χ` values for degree `e`.
    pub fn extend(&mut self, e: i64, chis: &[i64]) {
        let v = self.chis.entry(e).or_default();
        v.extend_from_slice(chis);
        v.sort_unstable();
        v.dedup();
    }
}

/// True when the image of the section can be the structure sheaf of a curve of some
/// degree `e ≤ d'` with `χ''/e ≤ χ'/d'`.
pub fn section_admissible(piece: &PairClass, table: &CurveChiTable) -> Result<bool> {
    if !piece.has_section {
        return Err(Error::Invalid(format!("{piece} carries no section")));
    }
    if piece.d > table.max_degree() {
        return Err(Error::Invalid(format!(
            "curve χ table has no entry for degree {} (largest is {})",
            piece.d,
            table.max_degree()
        )));
    }
    Ok(table
        .chis
        .range(1..=piece.d)
        .any(|(&e, chis)| chis.iter().any(|&c| c * piece.d <= piece.chi * e)))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Wall {
    #[serde(with = "ratio_str")]
    pub alpha: Rational64,
    /// the piece without the section
    pub sub: PairClass,
    /// the piece carrying the section
    pub quotient: PairClass,
    pub admissible: bool,
    pub reason: String,
}

impl fmt::Display for Wall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alpha={}: {}+{}", self.alpha, self.sub, self.quotient)
    }
}

mod ratio_str {
    use num_rational::Rational64;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational64, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Default `χ` range `[χ - 2d, χ + 2d]`.
pub fn default_chi_range(d: i64, chi: i64) -> (i64, i64) {
    (chi - 2 * d, chi + 2 * d)
}

/// Slope of a piece at `α`.
pub fn slope(p: &PairClass, alpha: Rational64) -> Rational64 {
    let s = if p.has_section { alpha } else { Rational64::from_integer(0) };
    (Rational64::from_integer(p.chi) + s) / Rational64::from_integer(p.d)
}

/// All candidate walls (admissible or not), sorted by `(α, d', χ')`.
pub fn wall_candidates(d: i64, chi: i64, range: (i64, i64), table: &CurveChiTable) -> Result<Vec<Wall>> {
    if d < 1 {
        return Err(Error::Invalid("degree must be positive".into()));
    }
    if range.0 > range.1 {
        return Err(Error::Invalid("empty χ range".into()));
    }
    let mut out: BTreeMap<(Rational64, i64, i64), Wall> = BTreeMap::new();
    for d1 in 1..d {
        for chi1 in range.0..=range.1 {
            // the piece (d1, chi1) taken without the section; its mirror (section on the
            // complementary piece) yields the same α and the same record
            let sub = PairClass { d: d1, chi: chi1, has_section: false };
            let quotient = PairClass { d: d - d1, chi: chi - chi1, has_section: true };
            let alpha = Rational64::new(d * chi1 - d1 * chi, d1);
            if alpha <= Rational64::from_integer(0) {
                continue;
            }
            let admissible = section_admissible(&quotient, table)?;
            let reason = if admissible {
                format!("section image can be a curve of slope at most {}/{}", quotient.chi, quotient.d)
            } else {
                format!("no curve of degree <= {} has slope at most {}/{}", quotient.d, quotient.chi, quotient.d)
            };
            out.entry((alpha, d1, chi1)).or_insert(Wall { alpha, sub, quotient, admissible, reason });
        }
    }
    Ok(out.into_values().collect())
}

/// Admissible walls with the default curve table.
pub fn walls(d: i64, chi: i64, range: Option<(i64, i64)>) -> Result<Vec<Wall>> {
    let range = range.unwrap_or_else(|| default_chi_range(d, chi));
    Ok(wall_candidates(d, chi, range, &CurveChiTable::default())?.into_iter().filter(|w| w.admissible).collect())
}

/// One extension order at a wall: `0 → sub → (1, F) → quotient → 0`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ExtensionOrder {
    pub sub: PairClass,
    pub quotient: PairClass,
    /// `"above"` when stable for `α` just above the wall, `"below"` otherwise
    pub stable: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Crossing {
    pub wall: Wall,
    pub orders: Vec<ExtensionOrder>,
}

/// For each admissible wall, the extension stable above it (section-free piece as
/// the sub) and the flipped one stable below it.
pub fn crossing_report(d: i64, chi: i64) -> Result<Vec<Crossing>> {
    Ok(walls(d, chi, None)?
        .into_iter()
        .map(|w| {
            let orders = vec![
                ExtensionOrder { sub: w.sub, quotient: w.quotient, stable: "above".into() },
                ExtensionOrder { sub: w.quotient, quotient: w.sub, stable: "below".into() },
            ];
            Crossing { wall: w, orders }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quartic_wall() {
        let w = walls(4, 1, None).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].alpha, Rational64::from_integer(3));
        assert_eq!(w[0].to_string(), "alpha=3: (1,1,no-section)+(3,0,section)");
        assert_eq!(walls(4, 1, Some((-5, 5))).unwrap(), w);
    }

    #[test]
    fn no_walls_in_low_degree() {
        for d in 1..=3 {
            assert!(walls(d, 1, None).unwrap().is_empty(), "d={d}");
        }
    }

    #[test]
    fn admissibility_examples() {
        let t = CurveChiTable::default();
        assert!(section_admissible(&PairClass { d: 3, chi: 0, has_section: true }, &t).unwrap());
        assert!(!section_admissible(&PairClass { d: 1, chi: 0, has_section: true }, &t).unwrap());
        assert!(section_admissible(&PairClass { d: 2, chi: 1, has_section: true }, &t).unwrap());
        assert!(section_admissible(&PairClass { d: 5, chi: 1, has_section: true }, &t).is_err());
    }

    #[test]
    fn slopes_agree_at_walls() {
        for w in wall_candidates(4, 1, (-7, 9), &CurveChiTable::default()).unwrap() {
            let total = PairClass { d: 4, chi: 1, has_section: true };
            assert_eq!(slope(&w.sub, w.alpha), slope(&total, w.alpha));
            assert_eq!(slope(&w.quotient, w.alpha), slope(&total, w.alpha));
        }
    }

    #[test]
    fn crossing_orders() {
        let c = crossing_report(4, 1).unwrap();
        assert_eq!(c.len(), 1);
        let o = &c[0].orders;
        assert_eq!(o[0].sub.d + o[0].quotient.d, 4);
        assert_eq!(o[0].sub.chi + o[0].quotient.chi, 1);
        assert!(crossing_report(2, 1).unwrap().is_empty());
    }
}
