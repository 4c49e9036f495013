//! Weyl groups of types `A_{m-1}` and `B_m` as (signed) permutations.
//!
//! Elements are stored by their window `[w(1), ..., w(m)]` with the
//! convention `w(-i) = -w(i)`; products compose as functions,
//! `(vw)(i) = v(w(i))`. Right multiplication by `s_i` swaps window entries
//! `i` and `i+1`, right multiplication by `s_0` negates the first entry.
//!
//! Type `A_{m-1}` has simple reflections `s_1, ..., s_{m-1}`; type `B_m`
//! has `s_0, s_1, ..., s_{m-1}`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
}

/// A Coxeter type together with its window size `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoxType {
    pub family: Family,
    /// Window length `m`.
    pub m: usize,
}

impl CoxType {
    /// `A_r`, the symmetric group on `r + 1` letters.
    pub fn a(r: usize) -> Self {
        Self { family: Family::A, m: r + 1 }
    }

    /// `B_m`, signed permutations of `m` letters.
    pub fn b(m: usize) -> Self {
        assert!(m >= 1, "B_m needs m >= 1");
        Self { family: Family::B, m }
    }

    /// Number of simple reflections.
    pub fn rank(&self) -> usize {
        match self.family {
            Family::A => self.m - 1,
            Family::B => self.m,
        }
    }

    /// Labels of the simple reflections, in increasing order.
    pub fn generators(&self) -> Vec<u8> {
        match self.family {
            Family::A => (1..self.m as u8).collect(),
            Family::B => (0..self.m as u8).collect(),
        }
    }

    pub fn has_generator(&self, s: u8) -> bool {
        match self.family {
            Family::A => s >= 1 && (s as usize) < self.m,
            Family::B => (s as usize) < self.m,
        }
    }

    pub fn full_set(&self) -> ParabolicSet {
        ParabolicSet::from_labels(self.generators())
    }
}

impl fmt::Display for CoxType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::A => write!(f, "A{}", self.m - 1),
            Family::B => write!(f, "B{}", self.m),
        }
    }
}

/// A signed permutation given by its window.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    window: Vec<i8>,
}

impl GroupElement {
    pub fn identity(m: usize) -> Self {
        Self { window: (1..=m as i8).collect() }
    }

    pub fn from_window(window: Vec<i8>) -> Result<Self> {
        let m = window.len();
        let mut seen = vec![false; m + 1];
        for &x in &window {
            let a = x.unsigned_abs() as usize;
            if a == 0 || a > m || seen[a] {
                return Err(Error::InvalidElement(format!("{window:?} is not a signed permutation")));
            }
            seen[a] = true;
        }
        Ok(Self { window })
    }

    /// Product of simple reflections `s_{w[0]} s_{w[1]} ...`.
    pub fn from_word(ty: CoxType, word: &[u8]) -> Result<Self> {
        let mut g = Self::identity(ty.m);
        for &s in word {
            if !ty.has_generator(s) {
                return Err(Error::InvalidElement(format!("s{s} is not a generator of {ty}")));
            }
            g = g.mul_simple(s);
        }
        Ok(g)
    }

    pub fn window(&self) -> &[i8] {
        &self.window
    }

    pub fn m(&self) -> usize {
        self.window.len()
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().enumerate().all(|(i, &x)| x as usize == i + 1)
    }

    /// Value `w(i)` for `i` in `±1..=±m`.
    pub fn apply(&self, i: i32) -> i32 {
        let v = self.window[(i.unsigned_abs() - 1) as usize] as i32;
        if i < 0 {
            -v
        } else {
            v
        }
    }

    /// Right multiplication `w s`.
    pub fn mul_simple(&self, s: u8) -> Self {
        let mut window = self.window.clone();
        if s == 0 {
            window[0] = -window[0];
        } else {
            window.swap(s as usize - 1, s as usize);
        }
        Self { window }
    }

    /// Left multiplication `s w`.
    pub fn simple_mul(&self, s: u8) -> Self {
        let window = self
            .window
            .iter()
            .map(|&x| {
                let a = x.unsigned_abs();
                let sign = x.signum();
                if s == 0 {
                    if a == 1 {
                        -x
                    } else {
                        x
                    }
                } else if a == s {
                    sign * (s as i8 + 1)
                } else if a == s + 1 {
                    sign * s as i8
                } else {
                    x
                }
            })
            .collect();
        Self { window }
    }

    /// Composition `self * other`.
    pub fn compose(&self, other: &Self) -> Self {
        let window = other.window.iter().map(|&j| self.apply(j as i32) as i8).collect();
        Self { window }
    }

    pub fn inverse(&self) -> Self {
        let mut window = vec![0i8; self.window.len()];
        for (i, &x) in self.window.iter().enumerate() {
            let a = x.unsigned_abs() as usize;
            window[a - 1] = if x < 0 { -(i as i8 + 1) } else { i as i8 + 1 };
        }
        Self { window }
    }

    /// Length via the inversion formulas: `inv` for type A and
    /// `inv + neg + nsp` for type B.
    pub fn length(&self, family: Family) -> usize {
        let w = &self.window;
        let m = w.len();
        let mut len = 0;
        for i in 0..m {
            for j in i + 1..m {
                if w[i] > w[j] {
                    len += 1;
                }
                if family == Family::B && (w[i] as i32) + (w[j] as i32) < 0 {
                    len += 1;
                }
            }
            if family == Family::B && w[i] < 0 {
                len += 1;
            }
        }
        len
    }

    pub fn is_right_descent(&self, s: u8) -> bool {
        if s == 0 {
            self.window[0] < 0
        } else {
            self.window[s as usize - 1] > self.window[s as usize]
        }
    }

    pub fn is_left_descent(&self, s: u8) -> bool {
        self.inverse().is_right_descent(s)
    }

    /// A reduced word, built greedily by stripping the smallest right descent.
    pub fn reduced_word(&self, ty: CoxType) -> Vec<u8> {
        let mut w = self.clone();
        let mut word = Vec::new();
        'outer: loop {
            for s in ty.generators() {
                if w.is_right_descent(s) {
                    word.push(s);
                    w = w.mul_simple(s);
                    continue 'outer;
                }
            }
            break;
        }
        word.reverse();
        word
    }

    /// Parses either a window `[-2, 1, 3]` or a word `s0 s1 s2` (`e` for the identity).
    pub fn parse(ty: CoxType, s: &str) -> Result<Self> {
        let t = s.trim();
        if t.starts_with('[') {
            let inner = t.trim_start_matches('[').trim_end_matches(']');
            let mut window = Vec::new();
            for part in inner.split(',') {
                let part = part.trim().replace('\u{2212}', "-");
                if part.is_empty() {
                    continue;
                }
                window.push(part.parse::<i8>().map_err(|_| Error::Parse(format!("bad window entry {part:?}")))?);
            }
            if window.len() != ty.m {
                return Err(Error::InvalidElement(format!("window {t} has wrong length for {ty}")));
            }
            let g = Self::from_window(window)?;
            if ty.family == Family::A && g.window.iter().any(|&x| x < 0) {
                return Err(Error::InvalidElement(format!("{t} is not in {ty}")));
            }
            return Ok(g);
        }
        if t.is_empty() || t == "e" {
            return Ok(Self::identity(ty.m));
        }
        let word = parse_word(t)?;
        Self::from_word(ty, &word)
    }
}

fn parse_word(t: &str) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    for tok in t.split(|c: char| c.is_whitespace() || c == ',' || c == '*').filter(|x| !x.is_empty()) {
        let digits = tok.trim_start_matches(['s', 'S']).trim_start_matches('_');
        let v: u8 = digits.parse().map_err(|_| Error::Parse(format!("bad generator {tok:?}")))?;
        out.push(v);
    }
    Ok(out)
}

/// Canonical window form `[-2, 1, 3]`.
impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.window.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A subset of the simple reflections, stored as a bitmask over labels.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct ParabolicSet {
    mask: u32,
}

impl ParabolicSet {
    pub fn empty() -> Self {
        Self { mask: 0 }
    }

    pub fn from_labels(labels: impl IntoIterator<Item = u8>) -> Self {
        Self { mask: labels.into_iter().fold(0, |m, s| m | (1 << s)) }
    }

    pub fn from_mask(mask: u32) -> Self {
        Self { mask }
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn contains(&self, s: u8) -> bool {
        self.mask & (1 << s) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn labels(&self) -> Vec<u8> {
        (0..32u8).filter(|&s| self.contains(s)).collect()
    }

    pub fn union(&self, o: &Self) -> Self {
        Self { mask: self.mask | o.mask }
    }

    pub fn intersection(&self, o: &Self) -> Self {
        Self { mask: self.mask & o.mask }
    }

    pub fn is_subset(&self, o: &Self) -> bool {
        self.mask & !o.mask == 0
    }

    /// Checks every label is a generator of `ty`.
    pub fn validate(&self, ty: CoxType) -> Result<()> {
        for s in self.labels() {
            if !ty.has_generator(s) {
                return Err(Error::InvalidParabolic(format!("s{s} is not a generator of {ty}")));
            }
        }
        Ok(())
    }

    /// All subsets of `self`, in increasing mask order.
    pub fn subsets(&self) -> Vec<ParabolicSet> {
        let mut out = Vec::new();
        let mut sub = 0u32;
        loop {
            out.push(Self { mask: sub });
            if sub == self.mask {
                break;
            }
            sub = (sub.wrapping_sub(self.mask)) & self.mask;
        }
        out.sort();
        out
    }
}

impl fmt::Display for ParabolicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, s) in self.labels().into_iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "s{s}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for ParabolicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for ParabolicSet {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('{').trim_end_matches('}');
        Ok(Self::from_labels(parse_word(t)?))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CosetKind {
    /// `^J W`: no left descents in `J`.
    Left,
    /// `W^J`: no right descents in `J`.
    Right,
    /// `^I W^J`.
    Double,
}

/// Output of the double coset factorization `w = u * pm * v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HkFactorization {
    pub u: GroupElement,
    pub pm: GroupElement,
    pub v: GroupElement,
    pub k: ParabolicSet,
}

/// A finite Weyl group with its multiplication tables, indexed densely.
///
/// Elements are sorted by `(length, window)`, so index 0 is the identity and
/// any order by index is a linear extension of the Bruhat order.
pub struct CoxeterGroup {
    ty: CoxType,
    gens: Vec<u8>,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
    lengths: Vec<usize>,
    right: Vec<Vec<usize>>,
    left: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    bruhat: OnceLock<Vec<Vec<u64>>>,
    parabolic_cache: Mutex<HashMap<u32, Arc<Vec<usize>>>>,
}

impl fmt::Debug for CoxeterGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoxeterGroup({}, order {})", self.ty, self.elements.len())
    }
}

static GROUPS: OnceLock<Mutex<HashMap<CoxType, Arc<CoxeterGroup>>>> = OnceLock::new();

impl CoxeterGroup {
    /// Shared instance for `ty`; built once per process.
    pub fn get(ty: CoxType) -> Arc<CoxeterGroup> {
        let map = GROUPS.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(g) = map.lock().unwrap().get(&ty) {
            return g.clone();
        }
        let g = Arc::new(Self::build(ty));
        map.lock().unwrap().entry(ty).or_insert(g).clone()
    }

    /// Builds the group by breadth-first search from the identity.
    pub fn build(ty: CoxType) -> CoxeterGroup {
        let gens = ty.generators();
        let id = GroupElement::identity(ty.m);
        let mut seen: HashMap<GroupElement, ()> = HashMap::new();
        let mut queue = VecDeque::from([id.clone()]);
        seen.insert(id, ());
        let mut all = Vec::new();
        while let Some(w) = queue.pop_front() {
            for &s in &gens {
                let ws = w.mul_simple(s);
                if !seen.contains_key(&ws) {
                    seen.insert(ws.clone(), ());
                    queue.push_back(ws);
                }
            }
            all.push(w);
        }
        all.sort_by_cached_key(|w| (w.length(ty.family), w.clone()));
        let index: HashMap<GroupElement, usize> = all.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let lengths = all.iter().map(|w| w.length(ty.family)).collect();
        let right = gens
            .iter()
            .map(|&s| all.iter().map(|w| index[&w.mul_simple(s)]).collect())
            .collect();
        let left = gens
            .iter()
            .map(|&s| all.iter().map(|w| index[&w.simple_mul(s)]).collect())
            .collect();
        let inverse = all.iter().map(|w| index[&w.inverse()]).collect();
        CoxeterGroup {
            ty,
            gens,
            elements: all,
            index,
            lengths,
            right,
            left,
            inverse,
            bruhat: OnceLock::new(),
            parabolic_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn cox_type(&self) -> CoxType {
        self.ty
    }

    pub fn generators(&self) -> &[u8] {
        &self.gens
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn index_of(&self, w: &GroupElement) -> Result<usize> {
        self.index
            .get(w)
            .copied()
            .ok_or_else(|| Error::InvalidElement(format!("{w} is not in {}", self.ty)))
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn length(&self, i: usize) -> usize {
        self.lengths[i]
    }

    fn gen_pos(&self, s: u8) -> usize {
        self.gens.iter().position(|&g| g == s).expect("generator label")
    }

    /// Index of `w s`.
    pub fn right_mul(&self, i: usize, s: u8) -> usize {
        self.right[self.gen_pos(s)][i]
    }

    /// Index of `s w`.
    pub fn left_mul(&self, i: usize, s: u8) -> usize {
        self.left[self.gen_pos(s)][i]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].compose(&self.elements[b])]
    }

    pub fn is_right_descent(&self, i: usize, s: u8) -> bool {
        self.lengths[self.right_mul(i, s)] < self.lengths[i]
    }

    pub fn is_left_descent(&self, i: usize, s: u8) -> bool {
        self.lengths[self.left_mul(i, s)] < self.lengths[i]
    }

    pub fn reduced_word(&self, i: usize) -> Vec<u8> {
        self.elements[i].reduced_word(self.ty)
    }

    pub fn from_word(&self, word: &[u8]) -> Result<usize> {
        self.index_of(&GroupElement::from_word(self.ty, word)?)
    }

    fn bruhat_table(&self) -> &Vec<Vec<u64>> {
        self.bruhat.get_or_init(|| {
            let n = self.order();
            let words = n.div_ceil(64);
            let mut table: Vec<Vec<u64>> = vec![vec![0; words]; n];
            table[0][0] = 1;
            // Subword property along a fixed reduced word: the ideal below
            // w = w's is ideal(w') united with ideal(w') * s.
            for w in 1..n {
                let word = self.reduced_word(w);
                let s = *word.last().unwrap();
                let prev = self.right_mul(w, s);
                let mut set = table[prev].clone();
                for x in 0..n {
                    if table[prev][x / 64] >> (x % 64) & 1 == 1 {
                        let xs = self.right_mul(x, s);
                        set[xs / 64] |= 1 << (xs % 64);
                    }
                }
                table[w] = set;
            }
            table
        })
    }

    /// Bruhat order test `y <= w`.
    pub fn bruhat_leq(&self, y: usize, w: usize) -> bool {
        if self.lengths[y] > self.lengths[w] {
            return false;
        }
        self.bruhat_table()[w][y / 64] >> (y % 64) & 1 == 1
    }

    /// All `y <= w`, in index order.
    pub fn bruhat_ideal(&self, w: usize) -> Vec<usize> {
        (0..=w).filter(|&y| self.bruhat_leq(y, w)).collect()
    }

    pub fn in_parabolic(&self, i: usize, j: ParabolicSet) -> bool {
        self.reduced_word(i).iter().all(|&s| j.contains(s))
    }

    /// Elements of `W_J`, in index order.
    pub fn parabolic_elements(&self, j: ParabolicSet) -> Arc<Vec<usize>> {
        if let Some(v) = self.parabolic_cache.lock().unwrap().get(&j.mask()) {
            return v.clone();
        }
        let labels = j.labels();
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(w) = queue.pop_front() {
            for &s in &labels {
                let ws = self.right_mul(w, s);
                if !seen[ws] {
                    seen[ws] = true;
                    queue.push_back(ws);
                }
            }
        }
        let v: Arc<Vec<usize>> = Arc::new((0..self.order()).filter(|&i| seen[i]).collect());
        self.parabolic_cache.lock().unwrap().entry(j.mask()).or_insert(v).clone()
    }

    /// Longest element `w_J` of `W_J`.
    pub fn longest(&self, j: ParabolicSet) -> usize {
        *self.parabolic_elements(j).last().unwrap()
    }

    pub fn has_left_descent_in(&self, i: usize, j: ParabolicSet) -> bool {
        j.labels().into_iter().any(|s| self.is_left_descent(i, s))
    }

    pub fn has_right_descent_in(&self, i: usize, j: ParabolicSet) -> bool {
        j.labels().into_iter().any(|s| self.is_right_descent(i, s))
    }

    /// Minimal coset representatives: `^J W`, `W^J` or `^I W^J`.
    ///
    /// For `Left` and `Right` only `j` is used.
    pub fn min_coset_reps(&self, i: ParabolicSet, j: ParabolicSet, kind: CosetKind) -> Vec<usize> {
        (0..self.order())
            .filter(|&w| match kind {
                CosetKind::Left => !self.has_left_descent_in(w, j),
                CosetKind::Right => !self.has_right_descent_in(w, j),
                CosetKind::Double => !self.has_left_descent_in(w, i) && !self.has_right_descent_in(w, j),
            })
            .collect()
    }

    /// Minimal representative of `W_I w W_J`, by stripping descents.
    pub fn double_coset_min(&self, w: usize, i: ParabolicSet, j: ParabolicSet) -> usize {
        let mut x = w;
        'outer: loop {
            for s in i.labels() {
                if self.is_left_descent(x, s) {
                    x = self.left_mul(x, s);
                    continue 'outer;
                }
            }
            for s in j.labels() {
                if self.is_right_descent(x, s) {
                    x = self.right_mul(x, s);
                    continue 'outer;
                }
            }
            return x;
        }
    }

    /// Minimal representative of the left coset `w W_J` (an element of `W^J`).
    pub fn right_coset_min(&self, w: usize, j: ParabolicSet) -> usize {
        self.double_coset_min(w, ParabolicSet::empty(), j)
    }

    /// Minimal representative of `W_J w` (an element of `^J W`).
    pub fn left_coset_min(&self, w: usize, j: ParabolicSet) -> usize {
        self.double_coset_min(w, j, ParabolicSet::empty())
    }

    /// The simple reflections `t` of `target` with `t = x s x^-1` for some `s`
    /// in `source`. A conjugate that lands in `W_target` without being simple
    /// is reported as `NotSimpleConjugate`.
    pub fn conjugate_into(&self, x: usize, source: ParabolicSet, target: ParabolicSet) -> Result<ParabolicSet> {
        let xinv = self.inverse(x);
        let mut out = ParabolicSet::empty();
        for s in source.labels() {
            let t = self.mul(self.right_mul(x, s), xinv);
            if self.length(t) == 1 {
                let label = self.reduced_word(t)[0];
                if target.contains(label) {
                    out = out.union(&ParabolicSet::from_labels([label]));
                }
            } else if self.in_parabolic(t, target) {
                return Err(Error::NotSimpleConjugate(format!(
                    "{} s{} {}^-1 = {}",
                    self.elements[x], s, self.elements[x], self.elements[t]
                )));
            }
        }
        Ok(out)
    }

    /// Factorization `w = u * pm * v` with `pm` the minimal element of
    /// `W_I w W_J`, `K = I ∩ pm J pm^-1`, `u ∈ W^K ∩ W_I`, `v ∈ W_J` and
    /// additive lengths.
    pub fn hk_factorize(&self, w: usize, i: ParabolicSet, j: ParabolicSet) -> Result<(usize, usize, usize, ParabolicSet)> {
        let pm = self.double_coset_min(w, i, j);
        let k = self.conjugate_into(pm, j, i)?;
        let pm_inv = self.inverse(pm);
        let wj = self.parabolic_elements(j);
        for &u in self.parabolic_elements(i).iter() {
            if self.has_right_descent_in(u, k) {
                continue;
            }
            let v = self.mul(self.mul(pm_inv, self.inverse(u)), w);
            if wj.binary_search(&v).is_ok() {
                if self.length(u) + self.length(pm) + self.length(v) != self.length(w) {
                    return Err(Error::Invariant(format!("lengths not additive for {}", self.elements[w])));
                }
                return Ok((u, pm, v, k));
            }
        }
        Err(Error::Invariant(format!("no factorization found for {}", self.elements[w])))
    }

    /// [`hk_factorize`](Self::hk_factorize) on group elements.
    pub fn hk_factorize_elements(&self, w: &GroupElement, i: ParabolicSet, j: ParabolicSet) -> Result<HkFactorization> {
        let (u, pm, v, k) = self.hk_factorize(self.index_of(w)?, i, j)?;
        Ok(HkFactorization {
            u: self.elements[u].clone(),
            pm: self.elements[pm].clone(),
            v: self.elements[v].clone(),
            k,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(ty: CoxType, w: &str) -> GroupElement {
        GroupElement::parse(ty, w).unwrap()
    }

    #[test]
    fn length_examples() {
        let a2 = CoxType::a(2);
        assert_eq!(GroupElement::identity(3).length(Family::A), 0);
        assert_eq!(e(a2, "[3, 2, 1]").length(Family::A), 3);
        let b2 = CoxeterGroup::get(CoxType::b(2));
        let w0 = b2.longest(CoxType::b(2).full_set());
        assert_eq!(b2.length(w0), 4);
        assert_eq!(b2.element(w0).window(), &[-1, -2]);
    }

    #[test]
    fn group_orders() {
        assert_eq!(CoxeterGroup::get(CoxType::a(3)).order(), 24);
        assert_eq!(CoxeterGroup::get(CoxType::b(3)).order(), 48);
    }

    #[test]
    fn parse_forms() {
        let b3 = CoxType::b(3);
        let w = e(b3, "s0 s1 s2");
        assert_eq!(e(b3, &w.to_string()), w);
        assert_eq!(e(b3, "[\u{2212}2, 1, 3]").window(), &[-2, 1, 3]);
        assert!(GroupElement::parse(CoxType::a(2), "[-1, 2, 3]").is_err());
        assert!(GroupElement::parse(CoxType::a(2), "s0").is_err());
        assert!(GroupElement::parse(CoxType::a(2), "[1, 1, 3]").is_err());
    }

    #[test]
    fn bruhat_examples() {
        let ty = CoxType::a(2);
        let g = CoxeterGroup::get(ty);
        let s12 = g.index_of(&e(ty, "s1 s2")).unwrap();
        let s21 = g.index_of(&e(ty, "s2 s1")).unwrap();
        assert!(!g.bruhat_leq(s12, s21));
        assert!(g.bruhat_leq(0, s21));
        assert!(g.bruhat_leq(s21, s21));
    }

    #[test]
    fn coset_rep_examples() {
        let ty = CoxType::a(2);
        let g = CoxeterGroup::get(ty);
        let j: ParabolicSet = "s1".parse().unwrap();
        let reps: Vec<_> = g
            .min_coset_reps(ParabolicSet::empty(), j, CosetKind::Left)
            .into_iter()
            .map(|i| g.element(i).clone())
            .collect();
        assert_eq!(reps, vec![e(ty, "e"), e(ty, "s2"), e(ty, "s2 s1")]);
        let dbl: Vec<_> = g
            .min_coset_reps("s1".parse().unwrap(), "s2".parse().unwrap(), CosetKind::Double)
            .into_iter()
            .map(|i| g.element(i).clone())
            .collect();
        assert_eq!(dbl, vec![e(ty, "e"), e(ty, "s2 s1")]);
        assert_eq!(g.min_coset_reps(ParabolicSet::empty(), ParabolicSet::empty(), CosetKind::Right).len(), 6);
    }

    #[test]
    fn hk_examples() {
        let ty = CoxType::a(2);
        let g = CoxeterGroup::get(ty);
        let f = g.hk_factorize_elements(&e(ty, "s1 s2"), "s1".parse().unwrap(), "s2".parse().unwrap()).unwrap();
        assert_eq!(f, HkFactorization { u: e(ty, "s1"), pm: e(ty, "e"), v: e(ty, "s2"), k: ParabolicSet::empty() });

        let ty = CoxType::b(2);
        let g = CoxeterGroup::get(ty);
        let s0: ParabolicSet = "s0".parse().unwrap();
        let f = g.hk_factorize_elements(&e(ty, "s0"), s0, s0).unwrap();
        assert_eq!(f, HkFactorization { u: e(ty, "e"), pm: e(ty, "e"), v: e(ty, "s0"), k: s0 });

        let i: ParabolicSet = "s1".parse().unwrap();
        let j: ParabolicSet = "s0,s1".parse().unwrap();
        let f = g.hk_factorize_elements(&GroupElement::identity(2), i, j).unwrap();
        assert_eq!(f.k, i.intersection(&j));
    }

    #[test]
    fn parabolic_set_text() {
        let j: ParabolicSet = "{s0,s2}".parse().unwrap();
        assert_eq!(j.to_string(), "{s0,s2}");
        assert!(j.validate(CoxType::a(3)).is_err());
        assert!(j.validate(CoxType::b(3)).is_ok());
        assert_eq!("".parse::<ParabolicSet>().unwrap(), ParabolicSet::empty());
        assert_eq!(CoxType::b(3).full_set().subsets().len(), 8);
    }
}
