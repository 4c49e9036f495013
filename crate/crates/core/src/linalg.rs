//! Sparse exact linear algebra over `Q(q)`.
//!
//! Rows are kept in echelon form keyed by their leading (smallest) column,
//! and every stored entry is fully gcd-reduced to contain coefficient growth.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ring::{LaurentPoly, RatFunc};

pub type Row = BTreeMap<usize, RatFunc>;

/// Converts a Laurent-coefficient row.
pub fn row_from_laurent(entries: impl IntoIterator<Item = (usize, LaurentPoly)>) -> Row {
    let mut row = Row::new();
    for (c, v) in entries {
        if v.is_zero() {
            continue;
        }
        let e = row.remove(&c).unwrap_or_else(RatFunc::zero);
        let s = &e + &RatFunc::from(v);
        if !s.is_zero() {
            row.insert(c, s);
        }
    }
    row
}

fn axpy(target: &mut Row, scale: &RatFunc, src: &Row, skip: usize) {
    for (c, v) in src {
        if *c == skip {
            continue;
        }
        let delta = scale * v;
        match target.remove(c) {
            Some(old) => {
                let s = (&old + &delta).reduce();
                if !s.is_zero() {
                    target.insert(*c, s);
                }
            }
            None => {
                target.insert(*c, delta.reduce());
            }
        }
    }
}

/// Incremental row echelon form. Each pivot row is normalized so its
/// leading entry is 1.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, Row>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Reduces `row` against the stored pivots until its leading column is
    /// not a pivot column (or it vanishes).
    pub fn reduce(&self, mut row: Row) -> Row {
        let mut floor = 0usize;
        loop {
            let next = row.range(floor..).find(|(c, _)| self.pivots.contains_key(c)).map(|(c, v)| (*c, v.clone()));
            let Some((c, v)) = next else { return row };
            row.remove(&c);
            axpy(&mut row, &-v, &self.pivots[&c], c);
            floor = c + 1;
        }
    }

    /// Adds `row` to the span. Returns the new pivot column if the row was
    /// independent of the stored rows.
    pub fn insert(&mut self, row: Row) -> Option<usize> {
        let row = self.reduce(row);
        let (&lead, lv) = row.iter().next()?;
        let inv = lv.inv().expect("nonzero leading entry");
        let mut normalized = Row::new();
        for (c, v) in &row {
            normalized.insert(*c, if *c == lead { RatFunc::one() } else { (v * &inv).reduce() });
        }
        self.pivots.insert(lead, normalized);
        Some(lead)
    }

    /// True when `row` lies in the span.
    pub fn contains(&self, row: Row) -> bool {
        self.reduce(row).is_empty()
    }

    /// Fully reduced pivot rows: each pivot column appears in exactly one row.
    pub fn reduced_rows(&self) -> BTreeMap<usize, Row> {
        let mut out: BTreeMap<usize, Row> = BTreeMap::new();
        for (&lead, row) in self.pivots.iter().rev() {
            let mut r = row.clone();
            let later: Vec<usize> = r.keys().copied().filter(|c| *c != lead && out.contains_key(c)).collect();
            for c in later {
                if let Some(v) = r.remove(&c) {
                    axpy(&mut r, &-v, &out[&c], c);
                }
            }
            out.insert(lead, r);
        }
        out
    }
}

/// Outcome of [`solve_unique`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<RatFunc>),
    Inconsistent,
    Underdetermined { free: usize },
}

/// Solves `A x = b` for `unknowns` variables; each equation is a sparse row
/// with its right-hand side.
pub fn solve_unique(unknowns: usize, equations: impl IntoIterator<Item = (Row, RatFunc)>) -> Solution {
    let rhs_col = unknowns;
    let mut ech = Echelon::new();
    for (mut row, rhs) in equations {
        if !rhs.is_zero() {
            row.insert(rhs_col, rhs);
        }
        if row.is_empty() {
            continue;
        }
        if let Some(lead) = ech.insert(row) {
            if lead == rhs_col {
                return Solution::Inconsistent;
            }
        }
    }
    if ech.rank() < unknowns {
        return Solution::Underdetermined { free: unknowns - ech.rank() };
    }
    let rows = ech.reduced_rows();
    let x = (0..unknowns)
        .map(|c| rows[&c].get(&rhs_col).map(|v| v.reduce()).unwrap_or_else(RatFunc::zero))
        .collect();
    Solution::Unique(x)
}

/// Converts a solution vector to Laurent polynomials.
pub fn to_laurent(x: &[RatFunc]) -> Result<Vec<LaurentPoly>> {
    x.iter()
        .map(|v| v.to_laurent().ok_or_else(|| Error::NonLaurentCoefficient(v.to_string())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> RatFunc {
        RatFunc::from(s.parse::<LaurentPoly>().unwrap())
    }

    #[test]
    fn solves_small_system() {
        // x + q y = 1 + q^2, x - y = 1 - q
        let eqs = vec![
            (Row::from([(0, r("1")), (1, r("q"))]), r("1 + q^2")),
            (Row::from([(0, r("1")), (1, r("-1"))]), r("1 - q")),
        ];
        assert_eq!(solve_unique(2, eqs), Solution::Unique(vec![r("1"), r("q")]));
    }

    #[test]
    fn detects_degenerate_systems() {
        let eqs = vec![(Row::from([(0, r("1")), (1, r("1"))]), r("1"))];
        assert_eq!(solve_unique(2, eqs.clone()), Solution::Underdetermined { free: 1 });
        let mut bad = eqs;
        bad.push((Row::from([(0, r("q")), (1, r("q"))]), r("1")));
        assert_eq!(solve_unique(2, bad), Solution::Inconsistent);
    }

    #[test]
    fn membership() {
        let mut e = Echelon::new();
        e.insert(Row::from([(0, r("1")), (2, r("q"))]));
        e.insert(Row::from([(1, r("1 + q")), (2, r("1"))]));
        assert!(e.contains(Row::from([(0, r("q^-1")), (1, r("1 + q")), (2, r("2"))])));
        assert!(!e.contains(Row::from([(2, r("1"))])));
    }
}
