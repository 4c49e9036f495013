//! The type-B Hecke generator `H_0` on the natural representation.
//!
//! Candidates respect the involution `a ↦ n+2-a` on letters and already
//! satisfy the quadratic relation; the ones commuting with the coideal are
//! kept and then normalized.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{qinv_minus_q, LaurentPoly};
use crate::sparse::SparseVec;

use super::ops::Operator;
use super::space::{Factor, TensorSpace, Variant};

/// Choice made on one orbit of the letter involution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitChoice {
    /// Pair `(lo, hi)`: for BW13 `v_hi ↦ v_lo` is the ascent; for Bao17 the
    /// swap has sign `+1`.
    Standard,
    /// The opposite orientation, or sign `-1`.
    Twisted,
}

/// The solved matrix of `H_0` on `V`.
#[derive(Clone, Debug, Serialize)]
pub struct H0Solution {
    pub n: usize,
    pub variant: Variant,
    /// `columns[a-1]` is `v_a·H_0` as `(letter, coefficient)` pairs.
    pub columns: Vec<Vec<(u8, LaurentPoly)>>,
    /// Number of candidates commuting with the coideal before normalization.
    pub commuting: usize,
    pub candidates: usize,
}

impl H0Solution {
    pub fn image(&self, a: u8) -> Vec<(u8, LaurentPoly)> {
        self.columns[a as usize - 1].clone()
    }
}

fn candidate(n: usize, variant: Variant, pairs: &[(u8, u8)], choice: &[OrbitChoice], fixed: Option<(u8, OrbitChoice)>) -> Vec<Vec<(u8, LaurentPoly)>> {
    let mut cols = vec![Vec::new(); n + 1];
    let one = LaurentPoly::one();
    for (&(lo, hi), &c) in pairs.iter().zip(choice) {
        match variant {
            Variant::Bw13 => {
                let (up, down) = if c == OrbitChoice::Standard { (hi, lo) } else { (lo, hi) };
                cols[up as usize - 1] = vec![(down, one.clone())];
                cols[down as usize - 1] = vec![(up, one.clone()), (down, qinv_minus_q())];
            }
            Variant::Bao17 => {
                let s = if c == OrbitChoice::Standard { one.clone() } else { -one.clone() };
                cols[hi as usize - 1] = vec![(lo, s.clone())];
                cols[lo as usize - 1] = vec![(hi, s)];
            }
        }
    }
    if let Some((a, c)) = fixed {
        let e = match (variant, c) {
            (Variant::Bw13, OrbitChoice::Standard) => LaurentPoly::q_pow(-1),
            (Variant::Bw13, OrbitChoice::Twisted) => -LaurentPoly::q(),
            (Variant::Bao17, OrbitChoice::Standard) => one.clone(),
            (Variant::Bao17, OrbitChoice::Twisted) => -one.clone(),
        };
        cols[a as usize - 1] = vec![(a, e)];
    }
    cols
}

fn as_operator(space: &TensorSpace, cols: &[Vec<(u8, LaurentPoly)>]) -> Operator {
    Operator::from_columns(
        space
            .words()
            .iter()
            .map(|w| SparseVec::from_terms(cols[w[0] as usize - 1].iter().map(|(a, c)| (space.index_of(&[*a]).unwrap(), c.clone()))))
            .collect(),
    )
}

fn solve_uncached(n: usize, variant: Variant) -> Result<H0Solution> {
    let letters = (n + 1) as u8;
    let theta = |a: u8| letters + 1 - a;
    let pairs: Vec<(u8, u8)> = (1..=letters).filter(|&a| a < theta(a)).map(|a| (a, theta(a))).collect();
    let fixed_letter = (1..=letters).find(|&a| a == theta(a));
    let space = TensorSpace::new(n, &[Factor::V])?;
    let mut constraints = Vec::new();
    for i in 1..=n {
        constraints.push(space.iota_action(variant, i)?);
        constraints.push(space.theta_cartan(i)?);
    }

    let slots = pairs.len() + fixed_letter.is_some() as usize;
    let total = 1usize << slots;
    let mut commuting: Vec<(Vec<OrbitChoice>, Option<OrbitChoice>)> = Vec::new();
    for mask in 0..total {
        let pick = |k: usize| if mask >> k & 1 == 0 { OrbitChoice::Standard } else { OrbitChoice::Twisted };
        let choice: Vec<OrbitChoice> = (0..pairs.len()).map(pick).collect();
        let fixed = fixed_letter.map(|_| pick(pairs.len()));
        let cols = candidate(n, variant, &pairs, &choice, fixed_letter.zip(fixed));
        let h = as_operator(&space, &cols);
        if constraints.iter().all(|b| b.compose(&h) == h.compose(b)) {
            commuting.push((choice, fixed));
        }
    }
    if commuting.is_empty() {
        return Err(Error::NoSolution(format!("H_0 for n={n}, {variant}")));
    }
    let count = commuting.len();
    let filters: [&dyn Fn(&(Vec<OrbitChoice>, Option<OrbitChoice>)) -> bool; 2] = [
        &|c| c.0.iter().all(|&x| x == OrbitChoice::Standard),
        &|c| c.1 != Some(OrbitChoice::Twisted),
    ];
    let mut survivors = commuting;
    for f in filters {
        let kept: Vec<_> = survivors.iter().filter(|c| f(c)).cloned().collect();
        if !kept.is_empty() {
            survivors = kept;
        }
    }
    if survivors.len() > 1 {
        return Err(Error::NonUniqueSolution { what: format!("H_0 for n={n}, {variant}"), count: survivors.len() });
    }
    let (choice, fixed) = survivors.pop().expect("nonempty");
    Ok(H0Solution {
        n,
        variant,
        columns: candidate(n, variant, &pairs, &choice, fixed_letter.zip(fixed)),
        commuting: count,
        candidates: total,
    })
}

/// Solves for `H_0` once per `(n, variant)`.
pub fn solve_h0(n: usize, variant: Variant) -> Result<Arc<H0Solution>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, Variant), Arc<H0Solution>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(s) = cache.lock().unwrap().get(&(n, variant)) {
        return Ok(s.clone());
    }
    let s = Arc::new(solve_uncached(n, variant)?);
    cache.lock().unwrap().insert((n, variant), s.clone());
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_bw13() {
        let s = solve_h0(1, Variant::Bw13).unwrap();
        assert_eq!(s.image(2), vec![(1, LaurentPoly::one())]);
        assert_eq!(s.image(1), vec![(2, LaurentPoly::one()), (1, qinv_minus_q())]);
        assert_eq!(s.commuting, 1);
    }

    #[test]
    fn middle_letter_is_trivial_type() {
        let s = solve_h0(2, Variant::Bw13).unwrap();
        assert_eq!(s.image(2), vec![(2, LaurentPoly::q_pow(-1))]);
    }

    #[test]
    fn solvable_in_small_ranks() {
        for n in 1..=4 {
            for v in [Variant::Bw13, Variant::Bao17] {
                solve_h0(n, v).unwrap();
            }
        }
    }
}
