//! Sparse vectors over `Z[q, q^-1]` keyed by basis indices.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use crate::barsolve::Column;
use crate::ring::LaurentPoly;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    terms: BTreeMap<usize, LaurentPoly>,
}

impl SparseVec {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(i: usize) -> Self {
        Self::monomial(i, LaurentPoly::one())
    }

    pub fn monomial(i: usize, c: LaurentPoly) -> Self {
        let mut v = Self::zero();
        v.add_term(i, c);
        v
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, LaurentPoly)>) -> Self {
        let mut v = Self::zero();
        for (i, c) in terms {
            v.add_term(i, c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (usize, &LaurentPoly)> + '_ {
        self.terms.iter().map(|(i, c)| (*i, c))
    }

    pub fn keys(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.keys().copied()
    }

    pub fn get(&self, i: usize) -> LaurentPoly {
        self.terms.get(&i).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, i: usize, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(i).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&i);
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &SparseVec, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        for (i, x) in other.iter() {
            self.add_term(i, x * c);
        }
    }

    pub fn scaled(&self, c: &LaurentPoly) -> SparseVec {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(i, x)| (*i, x * c)).collect() }
    }

    /// Applies `bar` to the coefficients only.
    pub fn bar_coefficients(&self) -> SparseVec {
        Self { terms: self.terms.iter().map(|(i, x)| (*i, x.bar())).collect() }
    }

    /// Relabels the keys; colliding keys are summed.
    pub fn map_keys(&self, f: impl Fn(usize) -> usize) -> SparseVec {
        Self::from_terms(self.terms.iter().map(|(i, x)| (f(*i), x.clone())))
    }

    pub fn to_column(&self) -> Column {
        self.terms.iter().map(|(i, x)| (*i, x.clone())).collect()
    }

    pub fn from_column(col: &[(usize, LaurentPoly)]) -> Self {
        Self::from_terms(col.iter().cloned())
    }

    /// Linear extension of `f` from basis vectors.
    pub fn linear_map(&self, f: impl Fn(usize) -> SparseVec) -> SparseVec {
        let mut out = Self::zero();
        for (i, c) in self.iter() {
            out.add_scaled(&f(i), c);
        }
        out
    }

    /// True when every coefficient lies in `N[q]`.
    pub fn is_nonneg(&self) -> bool {
        self.terms.values().all(|c| c.is_nonneg())
    }
}

impl Add<&SparseVec> for &SparseVec {
    type Output = SparseVec;
    fn add(self, rhs: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        out.add_scaled(rhs, &LaurentPoly::one());
        out
    }
}

impl Sub<&SparseVec> for &SparseVec {
    type Output = SparseVec;
    fn sub(self, rhs: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        out.add_scaled(rhs, &-LaurentPoly::one());
        out
    }
}

impl Neg for &SparseVec {
    type Output = SparseVec;
    fn neg(self) -> SparseVec {
        self.scaled(&-LaurentPoly::one())
    }
}

impl FromIterator<(usize, LaurentPoly)> for SparseVec {
    fn from_iter<T: IntoIterator<Item = (usize, LaurentPoly)>>(iter: T) -> Self {
        Self::from_terms(iter)
    }
}
