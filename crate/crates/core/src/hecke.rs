//! Hecke algebras of types A and B, their parabolic modules, and the
//! hybrid bases used to restrict to a parabolic subalgebra.
//!
//! Conventions: `(H_s + q)(H_s - q^-1) = 0`, so `H_s^2 = 1 + (q^-1 - q) H_s`
//! and `bar(H_s) = H_s + (q - q^-1)`. Modules are right modules. Vectors are
//! [`SparseVec`]s keyed by the dense element indices of the underlying
//! [`CoxeterGroup`].

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::barsolve::{BarSystem, BasisFamily, Column};
use crate::error::{Error, Result};
use crate::ring::{q_minus_qinv, qinv_minus_q, LaurentPoly};
use crate::sparse::SparseVec;
use crate::weyl::{CosetKind, CoxType, CoxeterGroup, ParabolicSet};

/// The Hecke algebra of a finite Weyl group, with memoized bar images and
/// Kazhdan-Lusztig elements.
pub struct Hecke {
    group: Arc<CoxeterGroup>,
    bar_cols: OnceLock<Vec<SparseVec>>,
    system: OnceLock<BarSystem>,
    kl: Mutex<HashMap<usize, Arc<SparseVec>>>,
    parabolics: Mutex<HashMap<u32, Arc<ParabolicModule>>>,
}

static ALGEBRAS: OnceLock<Mutex<HashMap<CoxType, Arc<Hecke>>>> = OnceLock::new();

impl Hecke {
    pub fn get(ty: CoxType) -> Arc<Hecke> {
        let map = ALGEBRAS.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(h) = map.lock().unwrap().get(&ty) {
            return h.clone();
        }
        let h = Arc::new(Self::new(CoxeterGroup::get(ty)));
        map.lock().unwrap().entry(ty).or_insert(h).clone()
    }

    pub fn new(group: Arc<CoxeterGroup>) -> Self {
        Self {
            group,
            bar_cols: OnceLock::new(),
            system: OnceLock::new(),
            kl: Mutex::new(HashMap::new()),
            parabolics: Mutex::new(HashMap::new()),
        }
    }

    pub fn group(&self) -> &CoxeterGroup {
        &self.group
    }

    pub fn cox_type(&self) -> CoxType {
        self.group.cox_type()
    }

    pub fn standard(&self, w: usize) -> SparseVec {
        SparseVec::basis(w)
    }

    /// `v · H_s`.
    pub fn mul_simple(&self, v: &SparseVec, s: u8) -> SparseVec {
        let g = &self.group;
        let mut out = SparseVec::zero();
        for (y, c) in v.iter() {
            let ys = g.right_mul(y, s);
            out.add_term(ys, c.clone());
            if g.length(ys) < g.length(y) {
                out.add_term(y, c * &qinv_minus_q());
            }
        }
        out
    }

    /// `H_s · v`.
    pub fn simple_mul(&self, s: u8, v: &SparseVec) -> SparseVec {
        let g = &self.group;
        let mut out = SparseVec::zero();
        for (y, c) in v.iter() {
            let sy = g.left_mul(y, s);
            out.add_term(sy, c.clone());
            if g.length(sy) < g.length(y) {
                out.add_term(y, c * &qinv_minus_q());
            }
        }
        out
    }

    /// `v · H_w`.
    pub fn mul_element(&self, v: &SparseVec, w: usize) -> SparseVec {
        self.group.reduced_word(w).into_iter().fold(v.clone(), |acc, s| self.mul_simple(&acc, s))
    }

    pub fn mul(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut out = SparseVec::zero();
        for (w, c) in b.iter() {
            out.add_scaled(&self.mul_element(a, w), c);
        }
        out
    }

    fn bar_columns(&self) -> &Vec<SparseVec> {
        self.bar_cols.get_or_init(|| {
            let g = &self.group;
            let mut cols: Vec<SparseVec> = Vec::with_capacity(g.order());
            cols.push(SparseVec::basis(0));
            for w in 1..g.order() {
                let s = *g.reduced_word(w).last().unwrap();
                let prev = &cols[g.right_mul(w, s)];
                let mut col = self.mul_simple(prev, s);
                col.add_scaled(prev, &q_minus_qinv());
                cols.push(col);
            }
            cols
        })
    }

    /// `bar(H_w)` in the standard basis.
    pub fn bar_standard(&self, w: usize) -> &SparseVec {
        &self.bar_columns()[w]
    }

    pub fn bar(&self, a: &SparseVec) -> SparseVec {
        let cols = self.bar_columns();
        let mut out = SparseVec::zero();
        for (w, c) in a.iter() {
            out.add_scaled(&cols[w], &c.bar());
        }
        out
    }

    /// The bar involution as a [`BarSystem`] on the Bruhat poset.
    pub fn bar_system(&self) -> &BarSystem {
        self.system.get_or_init(|| {
            let g = &self.group;
            let cols: Vec<Column> = self.bar_columns().iter().map(|v| v.to_column()).collect();
            let below = (0..g.order())
                .map(|w| g.bruhat_ideal(w).into_iter().filter(|&y| y != w).collect())
                .collect();
            BarSystem::new(cols, (0..g.order()).collect())
                .and_then(|s| s.with_below(below))
                .expect("Hecke bar matrix is unitriangular on the Bruhat order")
        })
    }

    /// Kazhdan-Lusztig element `C_w = Σ p_{y,w} H_y`.
    pub fn kl_basis(&self, w: usize) -> Result<Arc<SparseVec>> {
        if let Some(v) = self.kl.lock().unwrap().get(&w) {
            return Ok(v.clone());
        }
        let v = Arc::new(SparseVec::from_column(&self.bar_system().solve_column(w)?));
        Ok(self.kl.lock().unwrap().entry(w).or_insert(v).clone())
    }

    /// All Kazhdan-Lusztig elements, computed in parallel.
    pub fn kl_all(&self) -> Result<Vec<Arc<SparseVec>>> {
        (0..self.group.order()).into_par_iter().map(|w| self.kl_basis(w)).collect()
    }

    /// `p_{y,w}`.
    pub fn kl_poly(&self, y: usize, w: usize) -> Result<LaurentPoly> {
        Ok(self.kl_basis(w)?.get(y))
    }

    /// Hybrid element `H_{p_-} · C_{w'}` for `w = p_- w'`, `p_- ∈ W^I`, `w' ∈ W_I`.
    pub fn hybrid(&self, i: ParabolicSet, w: usize) -> Result<SparseVec> {
        let g = &self.group;
        let pm = g.right_coset_min(w, i);
        let wp = g.mul(g.inverse(pm), w);
        // H_{p_-} H_y = H_{p_- y} since lengths add for y in W_I.
        Ok(self.kl_basis(wp)?.map_keys(|y| g.mul(pm, y)))
    }

    /// The hybrid basis for `I`, indexed by group element.
    pub fn hybrid_family(&self, i: ParabolicSet) -> Result<BasisFamily> {
        let vectors = (0..self.group.order())
            .into_par_iter()
            .map(|w| self.hybrid(i, w).map(|v| v.to_column()))
            .collect::<Result<Vec<_>>>()?;
        BasisFamily::new(vectors, (0..self.group.order()).collect())
    }

    /// Coefficients `p^I_{y;w}` of `C_w` in the hybrid basis.
    pub fn decompose_gh(&self, i: ParabolicSet, w: usize) -> Result<SparseVec> {
        let fam = self.hybrid_family(i)?;
        self.decompose_gh_in(&fam, w)
    }

    /// As [`decompose_gh`](Self::decompose_gh) with a prebuilt hybrid family.
    pub fn decompose_gh_in(&self, fam: &BasisFamily, w: usize) -> Result<SparseVec> {
        Ok(SparseVec::from_column(&fam.expand(&self.kl_basis(w)?.to_column())?))
    }

    /// The parabolic module `M_J`, shared per `J`.
    pub fn parabolic(&self, j: ParabolicSet) -> Result<Arc<ParabolicModule>> {
        j.validate(self.cox_type())?;
        if let Some(m) = self.parabolics.lock().unwrap().get(&j.mask()) {
            return Ok(m.clone());
        }
        let m = Arc::new(ParabolicModule::new(self.group.clone(), j));
        Ok(self.parabolics.lock().unwrap().entry(j.mask()).or_insert(m).clone())
    }

    /// The embedding `M_w ↦ C_{w_J} · H_w`.
    pub fn embed_pj(&self, j: ParabolicSet, m: &SparseVec) -> Result<SparseVec> {
        let cwj = self.kl_basis(self.group.longest(j))?;
        let mut out = SparseVec::zero();
        for (w, c) in m.iter() {
            out.add_scaled(&self.mul_element(&cwj, w), c);
        }
        Ok(out)
    }

    /// Double coset data for `y` in `W_J \ W / W_I`: the minimal element
    /// `p_-`, the remainder `y' = p_-^-1 y ∈ W_I` and `K = p_-^-1 J p_- ∩ I`.
    pub fn coset_data(&self, i: ParabolicSet, j: ParabolicSet, y: usize) -> Result<(usize, usize, ParabolicSet)> {
        let g = &self.group;
        let pm = g.double_coset_min(y, j, i);
        let pinv = g.inverse(pm);
        let k = g.conjugate_into(pinv, j, i)?;
        Ok((pm, g.mul(pinv, y), k))
    }

    /// Parabolic hybrid element `M^I_y` of `M_J` for `y ∈ ^J W`, in the
    /// standard basis of `M_J`.
    pub fn parabolic_hybrid(&self, i: ParabolicSet, j: ParabolicSet, y: usize) -> Result<SparseVec> {
        let g = &self.group;
        let (pm, yp, k) = self.coset_data(i, j, y)?;
        if !g.in_parabolic(yp, i) || g.has_left_descent_in(yp, k) {
            return Err(Error::BadCosetData(format!("{} does not factor through its double coset", g.element(y))));
        }
        // Inside M_{p_-} · H_I the summand is induced from the trivial
        // character of H_K, so its canonical basis is that of M_K restricted to W_I.
        let mk = self.parabolic(k)?;
        Ok(mk.kl(yp)?.map_keys(|z| g.mul(pm, z)))
    }

    /// The parabolic hybrid basis of `M_J` for `I`, indexed by `^J W`.
    pub fn parabolic_hybrid_family(&self, i: ParabolicSet, j: ParabolicSet) -> Result<BasisFamily> {
        let mj = self.parabolic(j)?;
        let vectors = mj
            .reps()
            .par_iter()
            .map(|&y| self.parabolic_hybrid(i, j, y).map(|v| v.to_column()))
            .collect::<Result<Vec<_>>>()?;
        BasisFamily::new(vectors, (0..self.group.order()).collect())
    }

    /// Coefficients `p^{I,+}_{y,w}` of the parabolic KL element `M_w` of
    /// `M_J` in the parabolic hybrid basis, keyed by group index of `y`.
    pub fn decompose_mj(&self, i: ParabolicSet, j: ParabolicSet, w: usize) -> Result<SparseVec> {
        let fam = self.parabolic_hybrid_family(i, j)?;
        self.decompose_mj_in(&fam, j, w)
    }

    pub fn decompose_mj_in(&self, fam: &BasisFamily, j: ParabolicSet, w: usize) -> Result<SparseVec> {
        let mj = self.parabolic(j)?;
        let coeffs = fam.expand(&mj.kl(w)?.to_column())?;
        Ok(coeffs.into_iter().map(|(pos, c)| (mj.reps()[pos], c)).collect())
    }

    /// Terms of the hybrid expansion of `p_J^+(M^I_{p_- w})`: pairs
    /// `(x, q^e)` with `x = r w_{K'} p_- w` for `r ∈ W_J ∩ W^{K'}`,
    /// `K' = J ∩ p_- I p_-^-1` and `e = ℓ(w_J) - ℓ(x) + ℓ(p_- w)`.
    pub fn lemma_p_plus_terms(&self, i: ParabolicSet, j: ParabolicSet, pm: usize, w: usize) -> Result<Vec<(usize, LaurentPoly)>> {
        let g = &self.group;
        if g.double_coset_min(pm, j, i) != pm {
            return Err(Error::BadCosetData(format!("{} is not minimal in its double coset", g.element(pm))));
        }
        let k = g.conjugate_into(g.inverse(pm), j, i)?;
        if !g.in_parabolic(w, i) || g.has_left_descent_in(w, k) {
            return Err(Error::BadCosetData(format!("{} is not in W_I ∩ ^K W for K = {k}", g.element(w))));
        }
        let kp = g.conjugate_into(pm, i, j)?;
        let wj = g.longest(j);
        let wkp = g.longest(kp);
        let pw = g.mul(pm, w);
        let mut terms = Vec::new();
        for &r in g.parabolic_elements(j).iter() {
            if g.has_right_descent_in(r, kp) {
                continue;
            }
            let x = g.mul(g.mul(r, wkp), pw);
            let e = g.length(wj) as i32 - g.length(x) as i32 + g.length(pw) as i32;
            terms.push((x, LaurentPoly::q_pow(e)));
        }
        terms.sort_by_key(|(x, _)| *x);
        Ok(terms)
    }

    /// The right-hand side of the hybrid expansion of `p_J^+(M^I_{p_- w})`,
    /// synthesized in the standard basis of `H`.
    pub fn lemma_p_plus(&self, i: ParabolicSet, j: ParabolicSet, pm: usize, w: usize) -> Result<SparseVec> {
        let mut out = SparseVec::zero();
        for (x, c) in self.lemma_p_plus_terms(i, j, pm, w)? {
            out.add_scaled(&self.hybrid(i, x)?, &c);
        }
        Ok(out)
    }

    /// Checks `q^{ℓ(x)} p^I_{x, w_J w} = q^{ℓ(w_J) + ℓ(y)} p^{I,+}_{y,w}` with
    /// `x = r w_{K'} y` over every `w, y ∈ ^J W` and `r ∈ W_J ∩ W^{K'}`.
    /// Returns the number of identities checked.
    pub fn verify_scalar_identity(&self, i: ParabolicSet, j: ParabolicSet) -> Result<usize> {
        let g = &self.group;
        let mj = self.parabolic(j)?;
        let gh = self.hybrid_family(i)?;
        let mjf = self.parabolic_hybrid_family(i, j)?;
        let wj = g.longest(j);
        let counts = mj
            .reps()
            .par_iter()
            .map(|&w| -> Result<usize> {
                let lhs_coeffs = self.decompose_gh_in(&gh, g.mul(wj, w))?;
                let rhs_coeffs = self.decompose_mj_in(&mjf, j, w)?;
                let mut count = 0;
                for &y in mj.reps() {
                    let pm = g.double_coset_min(y, j, i);
                    let kp = g.conjugate_into(pm, i, j)?;
                    let wkp = g.longest(kp);
                    let rhs = rhs_coeffs.get(y).shift(g.length(wj) as i32 + g.length(y) as i32);
                    for &r in g.parabolic_elements(j).iter() {
                        if g.has_right_descent_in(r, kp) {
                            continue;
                        }
                        let x = g.mul(g.mul(r, wkp), y);
                        let lhs = lhs_coeffs.get(x).shift(g.length(x) as i32);
                        if lhs != rhs {
                            return Err(Error::Invariant(format!(
                                "scalar identity fails at w = {}, y = {}, r = {}: {lhs} != {rhs}",
                                g.element(w),
                                g.element(y),
                                g.element(r)
                            )));
                        }
                        count += 1;
                    }
                }
                Ok(count)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(counts.into_iter().sum())
    }

    /// JSON-ready expansion record.
    pub fn export(&self, basis: &str, index: usize, v: &SparseVec) -> BasisExport {
        BasisExport {
            basis: basis.to_string(),
            index: self.group.element(index).to_string(),
            terms: v.iter().map(|(y, c)| (self.group.element(y).to_string(), c.clone())).collect(),
        }
    }
}

/// `{"basis": ..., "index": ..., "terms": [[element, polynomial], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisExport {
    pub basis: String,
    pub index: String,
    pub terms: Vec<(String, LaurentPoly)>,
}

/// The induced module `M_J` with standard basis `{M_w : w ∈ ^J W}`.
/// Vectors are keyed by the group index of `w`.
pub struct ParabolicModule {
    group: Arc<CoxeterGroup>,
    j: ParabolicSet,
    reps: Vec<usize>,
    local: Vec<Option<usize>>,
    bar_cols: OnceLock<Vec<SparseVec>>,
    system: OnceLock<BarSystem>,
    kl: Mutex<HashMap<usize, Arc<SparseVec>>>,
}

impl ParabolicModule {
    pub fn new(group: Arc<CoxeterGroup>, j: ParabolicSet) -> Self {
        let reps = group.min_coset_reps(ParabolicSet::empty(), j, CosetKind::Left);
        let mut local = vec![None; group.order()];
        for (pos, &w) in reps.iter().enumerate() {
            local[w] = Some(pos);
        }
        Self {
            group,
            j,
            reps,
            local,
            bar_cols: OnceLock::new(),
            system: OnceLock::new(),
            kl: Mutex::new(HashMap::new()),
        }
    }

    pub fn j(&self) -> ParabolicSet {
        self.j
    }

    /// `^J W` in increasing index order.
    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn contains(&self, w: usize) -> bool {
        self.local[w].is_some()
    }

    /// `v · H_s`.
    pub fn act_simple(&self, v: &SparseVec, s: u8) -> SparseVec {
        let g = &self.group;
        let mut out = SparseVec::zero();
        for (y, c) in v.iter() {
            let ys = g.right_mul(y, s);
            if !self.contains(ys) {
                out.add_term(y, c.shift(-1));
            } else if g.length(ys) > g.length(y) {
                out.add_term(ys, c.clone());
            } else {
                out.add_term(ys, c.clone());
                out.add_term(y, c * &qinv_minus_q());
            }
        }
        out
    }

    /// `v · H_w`.
    pub fn act_element(&self, v: &SparseVec, w: usize) -> SparseVec {
        self.group.reduced_word(w).into_iter().fold(v.clone(), |acc, s| self.act_simple(&acc, s))
    }

    /// `v · h`.
    pub fn act(&self, v: &SparseVec, h: &SparseVec) -> SparseVec {
        let mut out = SparseVec::zero();
        for (w, c) in h.iter() {
            out.add_scaled(&self.act_element(v, w), c);
        }
        out
    }

    fn bar_columns(&self) -> &Vec<SparseVec> {
        self.bar_cols.get_or_init(|| {
            let g = &self.group;
            let mut cols: Vec<SparseVec> = Vec::with_capacity(self.reps.len());
            for &w in &self.reps {
                if w == 0 {
                    cols.push(SparseVec::basis(0));
                    continue;
                }
                // A right descent of w ∈ ^J W stays in ^J W.
                let s = *g.reduced_word(w).last().unwrap();
                let prev = &cols[self.local[g.right_mul(w, s)].unwrap()];
                let mut col = self.act_simple(prev, s);
                col.add_scaled(prev, &q_minus_qinv());
                cols.push(col);
            }
            cols
        })
    }

    pub fn bar_standard(&self, w: usize) -> &SparseVec {
        &self.bar_columns()[self.local[w].expect("element of ^J W")]
    }

    pub fn bar(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::zero();
        for (w, c) in v.iter() {
            out.add_scaled(self.bar_standard(w), &c.bar());
        }
        out
    }

    fn bar_system(&self) -> &BarSystem {
        self.system.get_or_init(|| {
            let g = &self.group;
            let cols: Vec<Column> = self
                .bar_columns()
                .iter()
                .map(|v| v.iter().map(|(w, c)| (self.local[w].unwrap(), c.clone())).collect())
                .collect();
            let below = self
                .reps
                .iter()
                .map(|&w| {
                    self.reps
                        .iter()
                        .enumerate()
                        .filter(|&(_, &y)| y != w && g.bruhat_leq(y, w))
                        .map(|(pos, _)| pos)
                        .collect()
                })
                .collect();
            BarSystem::new(cols, (0..self.reps.len()).collect())
                .and_then(|s| s.with_below(below))
                .expect("parabolic bar matrix is unitriangular on the Bruhat order")
        })
    }

    /// Parabolic KL element `M_w = Σ p^+_{y,w} M_y` for `w ∈ ^J W`.
    pub fn kl(&self, w: usize) -> Result<Arc<SparseVec>> {
        let pos = self.local[w].ok_or_else(|| {
            Error::InvalidElement(format!("{} is not a minimal coset representative for {}", self.group.element(w), self.j))
        })?;
        if let Some(v) = self.kl.lock().unwrap().get(&w) {
            return Ok(v.clone());
        }
        let col = self.bar_system().solve_column(pos)?;
        let v = Arc::new(col.into_iter().map(|(p, c)| (self.reps[p], c)).collect::<SparseVec>());
        Ok(self.kl.lock().unwrap().entry(w).or_insert(v).clone())
    }

    /// `p^+_{y,w}`.
    pub fn kl_poly(&self, y: usize, w: usize) -> Result<LaurentPoly> {
        Ok(self.kl(w)?.get(y))
    }

    /// Checks that the bar map of `M_J` is an involution.
    pub fn check_involution(&self) -> Result<()> {
        self.bar_system().check_involution()
    }
}
