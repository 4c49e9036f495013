//! Bar involutions, canonical and ι-canonical bases of tensor spaces.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::barsolve::{BarSystem, Column, TransitionMatrix};
use crate::error::{Error, Result};
use crate::linalg::{row_from_laurent, solve_unique, to_laurent, Row, Solution};
use crate::ring::{LaurentPoly, RatFunc};
use crate::sparse::SparseVec;

use super::ops::{bar_shift, hecke_a_on_word, Operator};
use super::space::{content, theta_weight, weight_strictly_below, word_string, Factor, ModuleDescriptor, TensorSpace, Variant, Word};

/// `ψ` on `V^{⊗m}`, anchored at weakly increasing words and compatible
/// with the bar involution of the type-A Hecke algebra.
#[derive(Default)]
pub struct AmbientPsi {
    memo: HashMap<Word, BTreeMap<Word, LaurentPoly>>,
}

impl AmbientPsi {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn psi(&mut self, w: &[u8]) -> BTreeMap<Word, LaurentPoly> {
        if let Some(v) = self.memo.get(w) {
            return v.clone();
        }
        let out = match w.windows(2).position(|p| p[0] > p[1]) {
            None => BTreeMap::from([(w.to_vec(), LaurentPoly::one())]),
            Some(p) => {
                // v_w = v_{w'}·H_i with w' ascending at i, and bar(H_i) = H_i + q - q^{-1}
                let mut prev = w.to_vec();
                prev.swap(p, p + 1);
                let base = self.psi(&prev);
                let shift = bar_shift();
                let mut acc: BTreeMap<Word, LaurentPoly> = BTreeMap::new();
                for (x, c) in &base {
                    for (y, d) in hecke_a_on_word(x, p + 1) {
                        *acc.entry(y).or_default() += c * &d;
                    }
                    *acc.entry(x.clone()).or_default() += c * &shift;
                }
                acc.retain(|_, c| !c.is_zero());
                acc
            }
        };
        self.memo.insert(w.to_vec(), out.clone());
        out
    }
}

/// Images `ψ(v_b)` of the standard basis of a tensor of wedges.
pub fn psi_bar(space: &TensorSpace) -> Operator {
    let mut amb = AmbientPsi::new();
    let cols = space
        .words()
        .iter()
        .map(|w| {
            let img = amb.psi(w);
            space.project_terms(img.iter())
        })
        .collect();
    Operator::from_columns(cols)
}

fn lower_sets(space: &TensorSpace, key: impl Fn(&Word) -> Vec<i32>) -> Vec<Vec<usize>> {
    let mut classes: BTreeMap<Vec<i32>, Vec<usize>> = BTreeMap::new();
    for &b in space.order() {
        classes.entry(key(space.word(b))).or_default().push(b);
    }
    let mut below = vec![Vec::new(); space.dim()];
    for members in classes.values() {
        for (k, &b) in members.iter().enumerate() {
            below[b] = members[..k].to_vec();
        }
    }
    below
}

/// `B◇` over the standard basis.
pub fn canonical_basis(space: &TensorSpace, psi: &Operator) -> Result<TransitionMatrix> {
    let cols: Vec<Column> = psi.columns().iter().map(|c| c.to_column()).collect();
    let n = space.n();
    let sys = BarSystem::new(cols, space.order().to_vec())?
        .with_below(lower_sets(space, |w| content(n, w).into_iter().map(i32::from).collect()))?;
    sys.canonicalize()
}

/// Solves for the operator `T = id + N` with `N` strictly lowering the
/// weight, preserving the coideal Cartan weight, and satisfying
/// `B_i T = T ψ(B_i)` for every coideal generator.
pub fn upsilon_solve(space: &TensorSpace, variant: Variant) -> Result<Operator> {
    let n = space.n();
    let dim = space.dim();
    let words = space.words();
    let tw: Vec<Vec<i32>> = words.iter().map(|w| theta_weight(n, w)).collect();

    // unknowns N[x][y], grouped by column y
    let mut by_col: Vec<Vec<(usize, usize)>> = vec![Vec::new(); dim];
    let mut unknowns: Vec<(usize, usize)> = Vec::new();
    for &y in space.order() {
        for &x in space.order() {
            if tw[x] == tw[y] && weight_strictly_below(n, &words[x], &words[y]) {
                by_col[y].push((x, unknowns.len()));
                unknowns.push((x, y));
            }
        }
    }
    let mut id_of: HashMap<(usize, usize), usize> = HashMap::new();
    for (k, &(x, y)) in unknowns.iter().enumerate() {
        id_of.insert((x, y), k);
    }

    let mut equations: Vec<(Row, RatFunc)> = Vec::new();
    for i in 1..=n {
        let b = space.iota_action(variant, i)?;
        let bb = space.iota_action_bar(variant, i)?;
        let diff = bb.sub(&b);
        let per_col: Vec<Vec<(Row, RatFunc)>> = (0..dim)
            .into_par_iter()
            .map(|y| {
                let mut rows: BTreeMap<usize, Vec<(usize, LaurentPoly)>> = BTreeMap::new();
                // (B N)[x][y] = Σ_z B[x][z] N[z][y]
                for &(z, u) in &by_col[y] {
                    for (x, c) in b.column(z).iter() {
                        rows.entry(x).or_default().push((u, c.clone()));
                    }
                }
                // -(N ψ(B))[x][y] = -Σ_z N[x][z] ψ(B)[z][y]
                for (z, c) in bb.column(y).iter() {
                    for &(x, u) in &by_col[z] {
                        rows.entry(x).or_default().push((u, -c));
                    }
                }
                for (x, _) in diff.column(y).iter() {
                    rows.entry(x).or_default();
                }
                rows.into_iter()
                    .map(|(x, entries)| (row_from_laurent(entries), RatFunc::from(diff.column(y).get(x))))
                    .filter(|(r, rhs)| !(r.is_empty() && rhs.is_zero()))
                    .collect()
            })
            .collect();
        equations.extend(per_col.into_iter().flatten());
    }

    let x = match solve_unique(unknowns.len(), equations) {
        Solution::Unique(x) => to_laurent(&x)?,
        Solution::Inconsistent => return Err(Error::NoIntertwiner),
        Solution::Underdetermined { free } => return Err(Error::NonUniqueIntertwiner { free }),
    };
    let mut cols: Vec<SparseVec> = (0..dim).map(SparseVec::basis).collect();
    for (k, &(r, c)) in unknowns.iter().enumerate() {
        cols[c].add_term(r, x[k].clone());
    }
    Ok(Operator::from_columns(cols))
}

/// Canonical data shared by both coideal variants.
#[derive(Debug)]
pub struct CanonicalData {
    pub psi: Operator,
    pub canonical: TransitionMatrix,
    pub canonical_inv: TransitionMatrix,
}

/// A tensor of wedges with its bar involutions and both bases.
#[derive(Debug)]
pub struct BasedModule {
    pub descriptor: ModuleDescriptor,
    pub space: Arc<TensorSpace>,
    pub canonical: Arc<CanonicalData>,
    pub upsilon: Operator,
    /// Images `ψ_ι(v_b)` of the standard basis.
    pub psi_iota: Operator,
    /// `B^ι` over `B◇`.
    pub iota: TransitionMatrix,
    /// `B^ι` over the standard basis.
    pub iota_std: TransitionMatrix,
}

impl BasedModule {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn psi(&self) -> &Operator {
        &self.canonical.psi
    }

    /// `B◇` over the standard basis.
    pub fn canonical_std(&self) -> &TransitionMatrix {
        &self.canonical.canonical
    }

    pub fn psi_iota_apply(&self, v: &SparseVec) -> SparseVec {
        self.psi_iota.apply_antilinear(v)
    }

    pub fn canonical_vector(&self, b: usize) -> SparseVec {
        SparseVec::from_column(self.canonical.canonical.column(b))
    }

    pub fn iota_vector(&self, b: usize) -> SparseVec {
        SparseVec::from_column(self.iota_std.column(b))
    }

    /// JSON-ready listing of a basis over the standard basis.
    pub fn export(&self, kind: BasisKind) -> BasisExport {
        let m = match kind {
            BasisKind::Canonical => &self.canonical.canonical,
            BasisKind::Iota => &self.iota_std,
        };
        let elements = self
            .space
            .order()
            .iter()
            .map(|&b| ElementExport {
                index: self.space.word(b).clone(),
                terms: m.column(b).iter().map(|(r, c)| (self.space.word(*r).clone(), c.clone())).collect(),
            })
            .collect();
        BasisExport { space: self.descriptor.clone(), basis: kind, elements }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisKind {
    Canonical,
    Iota,
}

#[derive(Clone, Debug, Serialize)]
pub struct ElementExport {
    pub index: Word,
    pub terms: Vec<(Word, LaurentPoly)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisExport {
    pub space: ModuleDescriptor,
    pub basis: BasisKind,
    pub elements: Vec<ElementExport>,
}

impl BasisExport {
    /// One line per basis element: `b(2,1) = (2,1) + q (1,2)`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.elements {
            let rhs: Vec<String> = e
                .terms
                .iter()
                .rev()
                .map(|(w, c)| if c.is_one() { word_string(w) } else { format!("[{c}]{}", word_string(w)) })
                .collect();
            out.push_str(&format!("b{} = {}\n", word_string(&e.index), rhs.join(" + ")));
        }
        out
    }
}

type SpaceKey = (usize, Vec<Factor>);

fn registry<K: std::hash::Hash + Eq, V>() -> Mutex<HashMap<K, V>> {
    Mutex::new(HashMap::new())
}

/// Standard basis of a tensor of wedges, shared process-wide.
pub fn tensor_space(n: usize, factors: &[Factor]) -> Result<Arc<TensorSpace>> {
    static CACHE: OnceLock<Mutex<HashMap<SpaceKey, Arc<TensorSpace>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(registry);
    let key = (n, factors.to_vec());
    if let Some(s) = cache.lock().unwrap().get(&key) {
        return Ok(s.clone());
    }
    let s = Arc::new(TensorSpace::new(n, factors)?);
    Ok(cache.lock().unwrap().entry(key).or_insert(s).clone())
}

/// `ψ` and `B◇` of a space, shared process-wide.
pub fn canonical_data(n: usize, factors: &[Factor]) -> Result<Arc<CanonicalData>> {
    static CACHE: OnceLock<Mutex<HashMap<SpaceKey, Arc<CanonicalData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(registry);
    let key = (n, factors.to_vec());
    if let Some(s) = cache.lock().unwrap().get(&key) {
        return Ok(s.clone());
    }
    let space = tensor_space(n, factors)?;
    let psi = psi_bar(&space);
    let canonical = canonical_basis(&space, &psi)?;
    let canonical_inv = canonical.inverse()?;
    let data = Arc::new(CanonicalData { psi, canonical, canonical_inv });
    Ok(cache.lock().unwrap().entry(key).or_insert(data).clone())
}

fn build_uncached(desc: &ModuleDescriptor) -> Result<BasedModule> {
    desc.validate()?;
    let space = tensor_space(desc.n, &desc.factors)?;
    let canonical = canonical_data(desc.n, &desc.factors)?;
    let upsilon = upsilon_solve(&space, desc.variant)?;
    let psi_iota = upsilon.compose(&canonical.psi);

    // ψ_ι in canonical coordinates: ψ_ι(b◇) = Υ(b◇)
    let c = &canonical.canonical;
    let cinv = &canonical.canonical_inv;
    let r_cols: Vec<Column> = (0..space.dim())
        .into_par_iter()
        .map(|b| {
            let img = upsilon.apply(&SparseVec::from_column(c.column(b)));
            cinv.apply(&img.to_column())
        })
        .collect();
    let n = desc.n;
    let sys = BarSystem::new(r_cols, space.order().to_vec())?
        .with_below(lower_sets(&space, |w| theta_weight(n, w)))?;
    let iota = sys.canonicalize()?;
    let iota_std = c.compose(&iota);
    Ok(BasedModule { descriptor: desc.clone(), space, canonical, upsilon, psi_iota, iota, iota_std })
}

/// Builds (or fetches) the based module for a descriptor.
pub fn build_space(desc: &ModuleDescriptor) -> Result<Arc<BasedModule>> {
    static CACHE: OnceLock<Mutex<HashMap<ModuleDescriptor, Arc<BasedModule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(registry);
    if let Some(s) = cache.lock().unwrap().get(desc) {
        return Ok(s.clone());
    }
    let m = Arc::new(build_uncached(desc)?);
    Ok(cache.lock().unwrap().entry(desc.clone()).or_insert(m).clone())
}

/// Image of a vector of `V^{⊗m}` (given on `source`) in a tensor of wedges
/// of the same width.
pub fn wedge_project(source: &TensorSpace, target: &TensorSpace, x: &SparseVec) -> Result<SparseVec> {
    if !source.is_tensor_power() || source.width() != target.width() || source.n() != target.n() {
        return Err(Error::InvalidDescriptor("projection needs a tensor power of the same width".into()));
    }
    Ok(target.project_terms(x.iter().map(|(i, c)| (source.word(i), c))))
}
