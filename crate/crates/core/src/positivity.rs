//! Transition coefficients between ι-canonical, canonical and mixed bases,
//! with nonnegativity verdicts and the comparison against parabolic
//! Kazhdan-Lusztig polynomials.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hecke::Hecke;
use crate::ring::LaurentPoly;
use crate::sparse::SparseVec;
use crate::tensor::based::{build_space, canonical_data, tensor_space, BasedModule};
use crate::tensor::simple::simple_extract;
use crate::tensor::space::{word_string, ModuleDescriptor, TensorSpace, Variant, Word};
use crate::weyl::{CoxType, GroupElement, ParabolicSet};

/// A descriptor with `k` factors split after the first `l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitSpec {
    pub descriptor: ModuleDescriptor,
    pub l: usize,
}

impl SplitSpec {
    pub fn new(descriptor: ModuleDescriptor, l: usize) -> Result<Self> {
        descriptor.validate()?;
        descriptor.split(l)?;
        Ok(Self { descriptor, l })
    }

    pub fn halves(&self) -> (ModuleDescriptor, ModuleDescriptor) {
        self.descriptor.split(self.l).expect("validated split")
    }
}

/// One coefficient `t_{b; b_α, b_β}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    pub b: String,
    pub b_alpha: String,
    pub b_beta: String,
    pub t: LaurentPoly,
    pub positive: bool,
}

impl Record {
    fn new(b: &[u8], a: &[u8], c: &[u8], t: LaurentPoly) -> Self {
        let positive = t.is_nonneg();
        Self { b: word_string(b), b_alpha: word_string(a), b_beta: word_string(c), t, positive }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExpansionKind {
    /// ι-canonical basis in `B^ι_α ⊗ B◇_β`.
    Mixed,
    /// Canonical basis in `B◇_α ⊗ B◇_β`.
    Pure,
    /// ι-canonical basis of `L(λ)` in its canonical basis.
    Simple,
}

/// Nonzero coefficients of an expansion, ordered by basis rank, with
/// summary counts.
#[derive(Clone, Debug, Serialize)]
pub struct PositivityReport {
    pub kind: ExpansionKind,
    pub space: ModuleDescriptor,
    pub split: Option<usize>,
    pub lambda: Option<Vec<usize>>,
    pub elements: usize,
    pub coefficients: usize,
    pub positive: usize,
    pub records: Vec<Record>,
    pub failures: Vec<Record>,
}

impl PositivityReport {
    fn new(kind: ExpansionKind, space: ModuleDescriptor, split: Option<usize>, lambda: Option<Vec<usize>>, elements: usize, records: Vec<Record>) -> Self {
        let failures: Vec<Record> = records.iter().filter(|r| !r.positive).cloned().collect();
        Self {
            kind,
            space,
            split,
            lambda,
            elements,
            coefficients: records.len(),
            positive: records.len() - failures.len(),
            records,
            failures,
        }
    }

    pub fn all_positive(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Coordinates of a vector of `X = X_α ⊗ X_β` in a product basis, given the
/// inverse transition matrices of both halves (columns indexed by standard
/// basis vectors).
fn tensor_expand(
    x: &TensorSpace,
    alpha: &TensorSpace,
    beta: &TensorSpace,
    inv_alpha: &dyn Fn(usize) -> Vec<(usize, LaurentPoly)>,
    inv_beta: &dyn Fn(usize) -> Vec<(usize, LaurentPoly)>,
    v: &SparseVec,
) -> Result<BTreeMap<(usize, usize), LaurentPoly>> {
    let wa = alpha.width();
    let mut out: BTreeMap<(usize, usize), LaurentPoly> = BTreeMap::new();
    for (i, c) in v.iter() {
        let w = x.word(i);
        let a = alpha.index_of(&w[..wa]).ok_or(Error::NotInSpan)?;
        let b = beta.index_of(&w[wa..]).ok_or(Error::NotInSpan)?;
        let ia = inv_alpha(a);
        let ib = inv_beta(b);
        for (ra, ea) in &ia {
            for (rb, eb) in &ib {
                *out.entry((*ra, *rb)).or_default() += &(c * ea) * eb;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

fn concat(a: &[u8], b: &[u8]) -> Word {
    let mut w = a.to_vec();
    w.extend_from_slice(b);
    w
}

/// Coefficients of one side's expansion: `(b, b_α, b_β) ↦ t`.
pub type Expansion = Vec<(usize, BTreeMap<(usize, usize), LaurentPoly>)>;

fn expand_generic(spec: &SplitSpec, iota: bool) -> Result<(Expansion, std::sync::Arc<BasedModule>, Vec<usize>)> {
    let (da, db) = spec.halves();
    let whole = build_space(&spec.descriptor)?;
    let x = &whole.space;
    let alpha_space = tensor_space(da.n, &da.factors)?;
    let beta_space = tensor_space(db.n, &db.factors)?;
    let cb = canonical_data(db.n, &db.factors)?;
    let inv_beta = |b: usize| cb.canonical_inv.column(b).clone();
    let expansions: Result<Expansion> = if iota {
        let alpha = build_space(&da)?;
        let inv_a = alpha.iota_std.inverse()?;
        let inv_alpha = |a: usize| inv_a.column(a).clone();
        x.order()
            .par_iter()
            .map(|&b| Ok((b, tensor_expand(x, &alpha_space, &beta_space, &inv_alpha, &inv_beta, &whole.iota_vector(b))?)))
            .collect()
    } else {
        let ca = canonical_data(da.n, &da.factors)?;
        let inv_alpha = |a: usize| ca.canonical_inv.column(a).clone();
        x.order()
            .par_iter()
            .map(|&b| Ok((b, tensor_expand(x, &alpha_space, &beta_space, &inv_alpha, &inv_beta, &whole.canonical_vector(b))?)))
            .collect()
    };
    Ok((expansions?, whole.clone(), x.order().to_vec()))
}

fn records_of(spec: &SplitSpec, exp: &Expansion, whole: &BasedModule) -> Result<Vec<Record>> {
    let (da, db) = spec.halves();
    let alpha_space = tensor_space(da.n, &da.factors)?;
    let beta_space = tensor_space(db.n, &db.factors)?;
    let mut out = Vec::new();
    for (b, coeffs) in exp {
        let bw = whole.space.word(*b);
        // list in decreasing rank of the product label
        let mut items: Vec<_> = coeffs.iter().collect();
        items.sort_by_key(|((a, c), _)| std::cmp::Reverse(whole.space.rank(whole.space.index_of(&concat(alpha_space.word(*a), beta_space.word(*c))).unwrap())));
        for ((a, c), t) in items {
            out.push(Record::new(bw, alpha_space.word(*a), beta_space.word(*c), t.clone()));
        }
    }
    Ok(out)
}

/// `b^ι = Σ t_{b;b_α,b_β} b^ι_α ⊗ b_β`.
pub fn expand_mixed(spec: &SplitSpec) -> Result<Expansion> {
    Ok(expand_generic(spec, true)?.0)
}

/// `b = Σ t′_{b;b_1,b_2} b_1 ⊗ b_2` for the canonical basis.
pub fn expand_pure(spec: &SplitSpec) -> Result<Expansion> {
    Ok(expand_generic(spec, false)?.0)
}

/// Report for [`expand_mixed`].
pub fn mixed_report(spec: &SplitSpec) -> Result<PositivityReport> {
    let (exp, whole, _) = expand_generic(spec, true)?;
    let records = records_of(spec, &exp, &whole)?;
    Ok(PositivityReport::new(ExpansionKind::Mixed, spec.descriptor.clone(), Some(spec.l), None, exp.len(), records))
}

/// Report for [`expand_pure`].
pub fn pure_report(spec: &SplitSpec) -> Result<PositivityReport> {
    let (exp, whole, _) = expand_generic(spec, false)?;
    let records = records_of(spec, &exp, &whole)?;
    Ok(PositivityReport::new(ExpansionKind::Pure, spec.descriptor.clone(), Some(spec.l), None, exp.len(), records))
}

/// Checks `Σ t·(b_α ⊗ b_β) = b` for every element of an expansion.
pub fn verify_round_trip(spec: &SplitSpec, exp: &Expansion, iota: bool) -> Result<()> {
    let (da, db) = spec.halves();
    let whole = build_space(&spec.descriptor)?;
    let alpha = build_space(&da)?;
    let cb = canonical_data(db.n, &db.factors)?;
    let x = &whole.space;
    for (b, coeffs) in exp {
        let mut acc = SparseVec::zero();
        for ((a, c), t) in coeffs {
            let va = if iota { alpha.iota_vector(*a) } else { alpha.canonical_vector(*a) };
            let vb = SparseVec::from_column(cb.canonical.column(*c));
            for (i, e) in va.iter() {
                for (j, f) in vb.iter() {
                    let w = concat(alpha.space.word(i), tensor_space(db.n, &db.factors)?.word(j));
                    acc.add_term(x.index_of(&w).ok_or(Error::NotInSpan)?, &(t * e) * f);
                }
            }
        }
        let target = if iota { whole.iota_vector(*b) } else { whole.canonical_vector(*b) };
        if acc != target {
            return Err(Error::Invariant(format!("round trip fails at {}", x.format_word(*b))));
        }
    }
    Ok(())
}

/// `b^ι = Σ t_{b;b_1} b_1` inside `L(λ)`.
pub fn expand_simple(n: usize, lambda: &[usize], variant: Variant) -> Result<PositivityReport> {
    let s = simple_extract(n, lambda, variant)?;
    let space = &s.host.space;
    let mut records = Vec::new();
    for &b in &s.iota {
        let mut col = s.host.iota.column(b).clone();
        col.sort_by_key(|(r, _)| std::cmp::Reverse(space.rank(*r)));
        for (r, t) in col {
            records.push(Record::new(space.word(b), space.word(r), &[], t));
        }
    }
    Ok(PositivityReport::new(ExpansionKind::Simple, s.host.descriptor.clone(), None, Some(lambda.to_vec()), s.iota.len(), records))
}

/// Outcome of a comparison against parabolic Kazhdan-Lusztig data.
#[derive(Clone, Debug, Default, Serialize)]
pub struct CrossCheck {
    pub orbits: usize,
    pub elements: usize,
    pub mismatches: Vec<String>,
}

impl CrossCheck {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn weakly_increasing(letters: u8, m: usize) -> Vec<Word> {
    fn rec(start: u8, letters: u8, m: usize, cur: &mut Word, out: &mut Vec<Word>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for a in start..=letters {
            cur.push(a);
            rec(a, letters, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, letters, m, &mut Vec::new(), &mut out);
    out
}

/// `(f·w)(j) = f(w(j))` with `f(-j) = θ f(j)`.
fn act_on_word(f: &[u8], w: &GroupElement, letters: u8) -> Word {
    (1..=f.len() as i32)
        .map(|j| {
            let k = w.apply(j);
            let a = f[k.unsigned_abs() as usize - 1];
            if k > 0 {
                a
            } else {
                letters + 1 - a
            }
        })
        .collect()
}

fn compare(report: &mut CrossCheck, label: String, got: &SparseVec, expected: &SparseVec) {
    if got != expected {
        report.mismatches.push(format!("{label}: tensor {got:?} vs Hecke {expected:?}"));
    }
}

/// Compares `B^ι` of `V^{⊗m}` (BW13 parameters) with parabolic
/// Kazhdan-Lusztig bases of type `B_m`, orbit by orbit: both over the
/// standard basis and, for the mixed expansion at `l = 0`, against the
/// expansion of parabolic KL elements in the hybrid basis with respect to
/// the type-A subgroup.
pub fn kl_cross_check(n: usize, m: usize) -> Result<CrossCheck> {
    let desc = ModuleDescriptor::tensor_power(n, m, Variant::Bw13);
    let module = build_space(&desc)?;
    let x = &module.space;
    let letters = x.letters();
    let h = Hecke::get(CoxType::b(m));
    let g = h.group();
    let type_a = ParabolicSet::from_labels(1..m as u8);
    let mut report = CrossCheck::default();
    let mut seen = vec![false; x.dim()];
    for f0 in weakly_increasing(letters, m) {
        if f0[0] < letters + 1 - f0[0] {
            continue;
        }
        let mut j: Vec<u8> = Vec::new();
        if 2 * f0[0] as usize == letters as usize + 1 {
            j.push(0);
        }
        j.extend((1..m).filter(|&i| f0[i - 1] == f0[i]).map(|i| i as u8));
        let j = ParabolicSet::from_labels(j);
        let pm = h.parabolic(j)?;
        report.orbits += 1;
        let word_of = |y: usize| act_on_word(&f0, g.element(y), letters);
        let idx = |y: usize| x.index_of(&word_of(y)).ok_or_else(|| Error::Invariant("orbit word outside the space".into()));
        for &w in pm.reps() {
            let b = idx(w)?;
            if std::mem::replace(&mut seen[b], true) {
                report.mismatches.push(format!("{} reached twice", x.format_word(b)));
            }
            report.elements += 1;
            let kl = pm.kl(w)?;
            let mut expected = SparseVec::zero();
            for (y, c) in kl.iter() {
                expected.add_term(idx(y)?, c.clone());
            }
            compare(&mut report, format!("standard {}", x.format_word(b)), &module.iota_vector(b), &expected);
            let mixed = h.decompose_mj(type_a, j, w)?;
            let mut expected = SparseVec::zero();
            for (y, c) in mixed.iter() {
                expected.add_term(idx(y)?, c.clone());
            }
            compare(&mut report, format!("mixed {}", x.format_word(b)), &SparseVec::from_column(module.iota.column(b)), &expected);
        }
    }
    if let Some(b) = seen.iter().position(|s| !s) {
        report.mismatches.push(format!("{} not reached by any orbit", x.format_word(b)));
    }
    Ok(report)
}

/// Compares `B◇` of `V^{⊗m}` with parabolic Kazhdan-Lusztig bases of type
/// `A_{m-1}`, orbit by orbit.
pub fn canonical_cross_check(n: usize, m: usize) -> Result<CrossCheck> {
    let data = canonical_data(n, &vec![crate::tensor::space::Factor::V; m])?;
    let x = tensor_space(n, &vec![crate::tensor::space::Factor::V; m])?;
    let mut report = CrossCheck::default();
    if m < 2 {
        report.elements = x.dim();
        report.orbits = x.dim();
        if !(0..x.dim()).all(|b| data.canonical.column(b).len() == 1) {
            report.mismatches.push("single factor basis is not standard".into());
        }
        return Ok(report);
    }
    let h = Hecke::get(CoxType::a(m - 1));
    let g = h.group();
    let mut seen = vec![false; x.dim()];
    for f0 in weakly_increasing(x.letters(), m) {
        let j = ParabolicSet::from_labels((1..m).filter(|&i| f0[i - 1] == f0[i]).map(|i| i as u8));
        let pm = h.parabolic(j)?;
        report.orbits += 1;
        let idx = |y: usize| x.index_of(&act_on_word(&f0, g.element(y), x.letters())).ok_or_else(|| Error::Invariant("orbit word outside the space".into()));
        for &w in pm.reps() {
            let b = idx(w)?;
            seen[b] = true;
            report.elements += 1;
            let mut expected = SparseVec::zero();
            for (y, c) in pm.kl(w)?.iter() {
                expected.add_term(idx(y)?, c.clone());
            }
            compare(&mut report, format!("canonical {}", x.format_word(b)), &SparseVec::from_column(data.canonical.column(b)), &expected);
        }
    }
    if seen.iter().any(|s| !s) {
        report.mismatches.push("orbits do not cover the standard basis".into());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_splits_are_identities() {
        let d = ModuleDescriptor::tensor_power(1, 2, Variant::Bw13);
        let full = expand_mixed(&SplitSpec::new(d.clone(), 2).unwrap()).unwrap();
        assert!(full.iter().all(|(b, c)| c.len() == 1 && c.contains_key(&(*b, 0))));
        let pure = expand_pure(&SplitSpec::new(d, 0).unwrap()).unwrap();
        assert!(pure.iter().all(|(b, c)| c.len() == 1 && c.contains_key(&(0, *b))));
    }

    #[test]
    fn rank_one_cross_checks() {
        assert!(kl_cross_check(1, 1).unwrap().passed());
        assert!(canonical_cross_check(1, 2).unwrap().passed());
    }
}
