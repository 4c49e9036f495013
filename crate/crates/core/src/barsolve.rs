//! Bar-invariant unitriangular bases from a unitriangular bar involution.
//!
//! A [`BarSystem`] is a free module with basis indexed by `0..n`, a partial
//! order on the indices and the matrix `R` of the bar map in that basis
//! (column `b` holds the expansion of `bar(e_b)`). [`BarSystem::canonicalize`]
//! returns the unique matrix `C` with `c_{b,b} = 1`, `c_{b',b} ∈ qZ[q]` for
//! `b' < b` and `C = R · bar(C)`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ring::LaurentPoly;

/// Sparse column: `(row, coefficient)` pairs sorted by row, no zeros.
pub type Column = Vec<(usize, LaurentPoly)>;

fn push_scaled(acc: &mut [LaurentPoly], col: &[(usize, LaurentPoly)], skip: usize, scale: &LaurentPoly) {
    for (row, r) in col {
        if *row != skip {
            acc[*row] += r * scale;
        }
    }
}

fn collect_column(acc: Vec<LaurentPoly>) -> Column {
    acc.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
}

/// Bar matrix together with a linear extension of the index order and,
/// optionally, the explicit strict lower sets of that order.
#[derive(Clone, Debug)]
pub struct BarSystem {
    cols: Vec<Column>,
    order: Vec<usize>,
    rank: Vec<usize>,
    below: Option<Vec<Vec<usize>>>,
}

impl BarSystem {
    /// `cols[b]` is `bar(e_b)`; `order` lists every index from low to high.
    pub fn new(cols: Vec<Column>, order: Vec<usize>) -> Result<Self> {
        let n = cols.len();
        if order.len() != n {
            return Err(Error::Invariant(format!("order has {} entries for {n} indices", order.len())));
        }
        let mut rank = vec![usize::MAX; n];
        for (pos, &b) in order.iter().enumerate() {
            if b >= n || rank[b] != usize::MAX {
                return Err(Error::Invariant("order is not a permutation of the indices".into()));
            }
            rank[b] = pos;
        }
        let mut cols = cols;
        for (b, col) in cols.iter_mut().enumerate() {
            col.retain(|(_, c)| !c.is_zero());
            col.sort_by_key(|(r, _)| *r);
            let mut diag = false;
            for (row, c) in col.iter() {
                if *row == b {
                    diag = c.is_one();
                    if !diag {
                        return Err(Error::NotTriangular { row: b, col: b });
                    }
                } else if *row >= n || rank[*row] > rank[b] {
                    return Err(Error::NotTriangular { row: *row, col: b });
                }
            }
            if !diag {
                return Err(Error::NotTriangular { row: b, col: b });
            }
        }
        Ok(Self { cols, order, rank, below: None })
    }

    /// Restricts the search to an explicit partial order; `below[b]` lists
    /// the indices strictly below `b`. The bar matrix must respect it.
    pub fn with_below(mut self, below: Vec<Vec<usize>>) -> Result<Self> {
        if below.len() != self.cols.len() {
            return Err(Error::Invariant("lower sets have the wrong length".into()));
        }
        let mut below = below;
        for (b, set) in below.iter_mut().enumerate() {
            set.sort_by_key(|&x| std::cmp::Reverse(self.rank[x]));
            set.dedup();
            if set.iter().any(|&x| self.rank[x] >= self.rank[b]) {
                return Err(Error::Invariant(format!("lower set of {b} is not compatible with the order")));
            }
            for (row, _) in &self.cols[b] {
                if *row != b && set.binary_search_by_key(&std::cmp::Reverse(self.rank[*row]), |&x| std::cmp::Reverse(self.rank[x])).is_err() {
                    return Err(Error::NotTriangular { row: *row, col: b });
                }
            }
        }
        self.below = Some(below);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.cols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cols.is_empty()
    }

    pub fn column(&self, b: usize) -> &Column {
        &self.cols[b]
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Position of `b` in the linear extension.
    pub fn rank(&self, b: usize) -> usize {
        self.rank[b]
    }

    /// Applies the bar map to a coordinate vector: `R · bar(v)`.
    pub fn bar_vector(&self, v: &[(usize, LaurentPoly)]) -> Column {
        let mut acc = vec![LaurentPoly::zero(); self.len()];
        for (b, c) in v {
            push_scaled(&mut acc, &self.cols[*b], usize::MAX, &c.bar());
        }
        collect_column(acc)
    }

    /// Checks `R · bar(R) = Id`.
    pub fn check_involution(&self) -> Result<()> {
        (0..self.len()).into_par_iter().try_for_each(|b| {
            let img = self.bar_vector(&self.cols[b]);
            if img.len() != 1 || img[0].0 != b || !img[0].1.is_one() {
                let row = img.iter().find(|(r, c)| *r != b || !c.is_one()).map(|(r, _)| *r).unwrap_or(b);
                return Err(Error::NotInvolution { row, col: b });
            }
            Ok(())
        })
    }

    /// Checks the involution property, then solves every column.
    pub fn canonicalize(&self) -> Result<TransitionMatrix> {
        self.check_involution()?;
        self.canonicalize_unchecked()
    }

    /// Solves every column without the involution check.
    pub fn canonicalize_unchecked(&self) -> Result<TransitionMatrix> {
        let cols = (0..self.len())
            .into_par_iter()
            .map(|b| self.solve_column(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(TransitionMatrix { cols, rank: self.rank.clone() })
    }

    /// The canonical element for a single index.
    pub fn solve_column(&self, b: usize) -> Result<Column> {
        let n = self.len();
        let mut acc = vec![LaurentPoly::zero(); n];
        push_scaled(&mut acc, &self.cols[b], b, &LaurentPoly::one());
        let mut out: Column = vec![(b, LaurentPoly::one())];
        let candidates: Vec<usize> = match &self.below {
            Some(below) => below[b].clone(),
            None => self.order[..self.rank[b]].iter().rev().copied().collect(),
        };
        for bp in candidates {
            let d = std::mem::take(&mut acc[bp]);
            if d.is_zero() {
                continue;
            }
            let c = d.solve_skew().map_err(|e| Error::Obstruction { row: bp, col: b, reason: e.to_string() })?;
            push_scaled(&mut acc, &self.cols[bp], bp, &c.bar());
            out.push((bp, c));
        }
        if let Some((row, _)) = acc.iter().enumerate().find(|(_, c)| !c.is_zero()) {
            return Err(Error::Obstruction { row, col: b, reason: "residual outside the lower set".into() });
        }
        out.sort_by_key(|(r, _)| *r);
        Ok(out)
    }
}

/// A unitriangular family of vectors: column `b` has coefficient 1 at `b`
/// and otherwise only entries of lower rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionMatrix {
    cols: Vec<Column>,
    rank: Vec<usize>,
}

impl TransitionMatrix {
    /// Builds a square unitriangular matrix from columns and a rank function.
    pub fn from_columns(cols: Vec<Column>, rank: Vec<usize>) -> Result<Self> {
        for (b, col) in cols.iter().enumerate() {
            for (row, c) in col {
                if (*row == b && !c.is_one()) || (*row != b && rank[*row] >= rank[b]) {
                    return Err(Error::NotTriangular { row: *row, col: b });
                }
            }
        }
        Ok(Self { cols, rank })
    }

    pub fn identity(n: usize) -> Self {
        Self { cols: (0..n).map(|b| vec![(b, LaurentPoly::one())]).collect(), rank: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.cols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cols.is_empty()
    }

    pub fn column(&self, b: usize) -> &Column {
        &self.cols[b]
    }

    pub fn columns(&self) -> &[Column] {
        &self.cols
    }

    pub fn rank(&self, b: usize) -> usize {
        self.rank[b]
    }

    pub fn entry(&self, row: usize, col: usize) -> LaurentPoly {
        self.cols[col]
            .binary_search_by_key(&row, |(r, _)| *r)
            .map(|i| self.cols[col][i].1.clone())
            .unwrap_or_default()
    }

    /// `M · v` for a coordinate vector `v` in the column basis.
    pub fn apply(&self, v: &[(usize, LaurentPoly)]) -> Column {
        let mut acc = vec![LaurentPoly::zero(); self.len()];
        for (b, c) in v {
            push_scaled(&mut acc, &self.cols[*b], usize::MAX, c);
        }
        collect_column(acc)
    }

    /// Coordinates of `v` in the columns of this matrix.
    pub fn expand_in(&self, v: &[(usize, LaurentPoly)]) -> Result<Column> {
        let family = BasisFamily::new(self.cols.clone(), self.rank.clone())?;
        family.expand(v)
    }

    /// Inverse matrix, again unitriangular for the same rank function.
    pub fn inverse(&self) -> Result<Self> {
        let family = BasisFamily::new(self.cols.clone(), self.rank.clone())?;
        let cols = (0..self.len())
            .into_par_iter()
            .map(|b| family.expand(&[(b, LaurentPoly::one())]))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { cols, rank: self.rank.clone() })
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &Self) -> Self {
        let cols = other.cols.par_iter().map(|c| self.apply(c)).collect();
        Self { cols, rank: self.rank.clone() }
    }
}

/// A family of vectors in an ambient space with ranked coordinates, each
/// with a distinct leading (highest rank) coordinate. Expansions are exact
/// over Laurent polynomials.
#[derive(Clone, Debug)]
pub struct BasisFamily {
    vectors: Vec<Column>,
    rank: Vec<usize>,
    lead: std::collections::HashMap<usize, usize>,
}

impl BasisFamily {
    /// `rank` ranks the ambient coordinates.
    pub fn new(vectors: Vec<Column>, rank: Vec<usize>) -> Result<Self> {
        let mut lead = std::collections::HashMap::new();
        for (i, v) in vectors.iter().enumerate() {
            let top = v
                .iter()
                .max_by_key(|(r, _)| rank[*r])
                .ok_or_else(|| Error::Invariant(format!("basis vector {i} is zero")))?;
            if lead.insert(top.0, i).is_some() {
                return Err(Error::Invariant(format!("two basis vectors lead at coordinate {}", top.0)));
            }
        }
        Ok(Self { vectors, rank, lead })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vector(&self, i: usize) -> &Column {
        &self.vectors[i]
    }

    /// Coefficients `x` with `Σ x_i vector_i = v`, sorted by family index.
    pub fn expand(&self, v: &[(usize, LaurentPoly)]) -> Result<Column> {
        let mut rem: std::collections::BTreeMap<(usize, usize), LaurentPoly> =
            v.iter().filter(|(_, c)| !c.is_zero()).map(|(r, c)| ((self.rank[*r], *r), c.clone())).collect();
        let mut out = Vec::new();
        while let Some(((_, top), c)) = rem.pop_last() {
            let i = *self.lead.get(&top).ok_or(Error::NotInSpan)?;
            let lc = self.vectors[i].iter().find(|(r, _)| *r == top).unwrap().1.clone();
            let x = if lc.is_one() {
                c
            } else {
                c.exact_div(&lc).ok_or_else(|| Error::NonLaurentCoefficient(format!("({c}) / ({lc})")))?
            };
            for (r, e) in &self.vectors[i] {
                if *r == top {
                    continue;
                }
                let key = (self.rank[*r], *r);
                let entry = rem.entry(key).or_default();
                *entry -= e * &x;
                if entry.is_zero() {
                    rem.remove(&key);
                }
            }
            out.push((i, x));
        }
        out.sort_by_key(|(i, _)| *i);
        Ok(out)
    }

    /// `Σ x_i vector_i`.
    pub fn synthesize(&self, x: &[(usize, LaurentPoly)]) -> Column {
        let mut acc = std::collections::BTreeMap::<usize, LaurentPoly>::new();
        for (i, c) in x {
            for (r, e) in &self.vectors[*i] {
                *acc.entry(*r).or_default() += e * c;
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    /// Bar matrix of the rank-one Hecke algebra in the basis `H_e, H_s`.
    fn rank_one() -> BarSystem {
        BarSystem::new(vec![vec![(0, p("1"))], vec![(0, p("q - q^-1")), (1, p("1"))]], vec![0, 1]).unwrap()
    }

    #[test]
    fn identity_bar() {
        let sys = BarSystem::new((0..3).map(|b| vec![(b, p("1"))]).collect(), vec![0, 1, 2]).unwrap();
        assert_eq!(sys.canonicalize().unwrap(), TransitionMatrix::identity(3));
    }

    #[test]
    fn rank_one_solution() {
        let c = rank_one().canonicalize().unwrap();
        assert_eq!(c.entry(0, 1), p("q"));
        assert_eq!(c.expand_in(&[(0, p("q")), (1, p("1"))]).unwrap(), vec![(1, p("1"))]);
        assert_eq!(c.expand_in(&[(0, p("1"))]).unwrap(), vec![(0, p("1"))]);
    }

    #[test]
    fn rejects_non_involution() {
        let sys = BarSystem::new(vec![vec![(0, p("1"))], vec![(0, p("q")), (1, p("1"))]], vec![0, 1]).unwrap();
        assert_eq!(sys.canonicalize(), Err(Error::NotInvolution { row: 0, col: 1 }));
        assert!(matches!(sys.canonicalize_unchecked(), Err(Error::Obstruction { row: 0, col: 1, .. })));
    }

    #[test]
    fn rejects_upper_entries() {
        let err = BarSystem::new(vec![vec![(0, p("1")), (1, p("q"))], vec![(1, p("1"))]], vec![0, 1]).unwrap_err();
        assert_eq!(err, Error::NotTriangular { row: 1, col: 0 });
    }

    #[test]
    fn inverse_round_trip() {
        let c = rank_one().canonicalize().unwrap();
        let inv = c.inverse().unwrap();
        assert_eq!(inv.entry(0, 1), p("-q"));
        assert_eq!(c.compose(&inv), TransitionMatrix::identity(2));
    }

    #[test]
    fn family_not_in_span() {
        let fam = BasisFamily::new(vec![vec![(0, p("1")), (2, p("1"))]], vec![0, 1, 2]).unwrap();
        assert_eq!(fam.expand(&[(1, p("1"))]), Err(Error::NotInSpan));
        assert_eq!(fam.expand(&[(0, p("q")), (2, p("q"))]).unwrap(), vec![(0, p("q"))]);
    }
}
