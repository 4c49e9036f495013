//! Operators on tensor spaces: the quantum group generators acting through
//! the iterated coproduct, the coideal generators, and the right Hecke
//! actions of types A and B on tensor powers.

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{q_minus_qinv, qinv_minus_q, LaurentPoly};
use crate::sparse::SparseVec;

use super::h0::solve_h0;
use super::space::{TensorSpace, Variant, Word};

/// A square matrix stored by columns: `cols[j]` is the image of `v_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operator {
    cols: Vec<SparseVec>,
}

impl Operator {
    pub fn from_columns(cols: Vec<SparseVec>) -> Self {
        Self { cols }
    }

    pub fn identity(dim: usize) -> Self {
        Self { cols: (0..dim).map(SparseVec::basis).collect() }
    }

    pub fn zero(dim: usize) -> Self {
        Self { cols: vec![SparseVec::zero(); dim] }
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> LaurentPoly {
        self.cols[j].get(i)
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        v.linear_map(|j| self.cols[j].clone())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Operator) -> Operator {
        Operator { cols: other.cols.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn add(&self, other: &Operator) -> Operator {
        Operator { cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Operator) -> Operator {
        Operator { cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a - b).collect() }
    }

    pub fn scaled(&self, c: &LaurentPoly) -> Operator {
        Operator { cols: self.cols.iter().map(|v| v.scaled(c)).collect() }
    }

    /// Entrywise `q ↦ q^{-1}`.
    pub fn bar_entries(&self) -> Operator {
        Operator { cols: self.cols.iter().map(|v| v.bar_coefficients()).collect() }
    }

    /// Applies the antilinear map whose values on basis vectors are the
    /// columns: `Σ c_j v_j ↦ Σ bar(c_j) cols[j]`.
    pub fn apply_antilinear(&self, v: &SparseVec) -> SparseVec {
        self.apply(&v.bar_coefficients())
    }

    /// Composition of antilinear maps given by their basis images.
    pub fn compose_antilinear(&self, other: &Operator) -> Operator {
        Operator { cols: other.cols.iter().map(|c| self.apply_antilinear(c)).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.cols.iter().enumerate().all(|(j, c)| *c == SparseVec::basis(j))
    }
}

/// Chevalley generators of `U_q(sl_{n+1})`, indexed by `1..=n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UGen {
    E(usize),
    F(usize),
    K(usize),
    KInv(usize),
}

impl UGen {
    pub fn index(&self) -> usize {
        match *self {
            UGen::E(i) | UGen::F(i) | UGen::K(i) | UGen::KInv(i) => i,
        }
    }

    /// All generators for rank `n`.
    pub fn all(n: usize) -> Vec<UGen> {
        (1..=n).flat_map(|i| [UGen::E(i), UGen::F(i), UGen::K(i), UGen::KInv(i)]).collect()
    }
}

impl fmt::Display for UGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UGen::E(i) => write!(f, "E{i}"),
            UGen::F(i) => write!(f, "F{i}"),
            UGen::K(i) => write!(f, "K{i}"),
            UGen::KInv(i) => write!(f, "K{i}^-1"),
        }
    }
}

/// Exponent of `K_i` on the letter `a`.
fn letter_weight(i: usize, a: u8) -> i32 {
    let a = a as usize;
    (a == i) as i32 - (a == i + 1) as i32
}

/// Action of a generator on a word of `V^{⊗m}`. `E_i` acts at one position
/// with `K_i^{-1}` on every position to its right; `F_i` acts with `K_i` on
/// every position to its left.
pub fn act_on_word(g: UGen, w: &[u8]) -> Vec<(Word, LaurentPoly)> {
    match g {
        UGen::K(i) => vec![(w.to_vec(), LaurentPoly::q_pow(w.iter().map(|&a| letter_weight(i, a)).sum()))],
        UGen::KInv(i) => vec![(w.to_vec(), LaurentPoly::q_pow(-w.iter().map(|&a| letter_weight(i, a)).sum::<i32>()))],
        UGen::E(i) => {
            let mut out = Vec::new();
            for j in 0..w.len() {
                if w[j] as usize == i + 1 {
                    let e: i32 = w[j + 1..].iter().map(|&a| -letter_weight(i, a)).sum();
                    let mut x = w.to_vec();
                    x[j] = i as u8;
                    out.push((x, LaurentPoly::q_pow(e)));
                }
            }
            out
        }
        UGen::F(i) => {
            let mut out = Vec::new();
            for j in 0..w.len() {
                if w[j] as usize == i {
                    let e: i32 = w[..j].iter().map(|&a| letter_weight(i, a)).sum();
                    let mut x = w.to_vec();
                    x[j] = i as u8 + 1;
                    out.push((x, LaurentPoly::q_pow(e)));
                }
            }
            out
        }
    }
}

/// Scalars of a coideal generator `B_i = E_i + q^a F_{θi} K_i^{-1} + d K_i^{-1}`
/// as the pair `(a, d)`.
pub fn iota_coefficients(n: usize, variant: Variant, i: usize) -> (i32, bool) {
    if (n + 1) % 2 == 0 {
        let mid = (n + 1) / 2;
        let hit = i == mid;
        match variant {
            Variant::Bw13 => (hit as i32, hit),
            Variant::Bao17 => (hit as i32, false),
        }
    } else {
        match variant {
            Variant::Bw13 => (-((i == n / 2 + 1) as i32), false),
            Variant::Bao17 => (-((i == n / 2) as i32), false),
        }
    }
}

/// `v·H_i` on a word: the type-A right Hecke action swapping positions
/// `i` and `i+1` (1-based).
pub fn hecke_a_on_word(w: &[u8], i: usize) -> Vec<(Word, LaurentPoly)> {
    let (a, b) = (w[i - 1], w[i]);
    let mut s = w.to_vec();
    s.swap(i - 1, i);
    match a.cmp(&b) {
        std::cmp::Ordering::Less => vec![(s, LaurentPoly::one())],
        std::cmp::Ordering::Greater => vec![(s, LaurentPoly::one()), (w.to_vec(), qinv_minus_q())],
        std::cmp::Ordering::Equal => vec![(s, LaurentPoly::q_pow(-1))],
    }
}

impl TensorSpace {
    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n() {
            return Err(Error::InvalidDescriptor(format!("generator index {i} outside 1..={}", self.n())));
        }
        Ok(())
    }

    fn require_tensor_power(&self, what: &str) -> Result<()> {
        if !self.is_tensor_power() {
            return Err(Error::InvalidDescriptor(format!("{what} needs a tensor power of V")));
        }
        Ok(())
    }

    /// Matrix of a word-level map followed by projection to this space.
    pub fn operator_from_words(&self, f: impl Fn(&[u8]) -> Vec<(Word, LaurentPoly)>) -> Operator {
        let cols = self
            .words()
            .iter()
            .map(|w| {
                let terms = f(w);
                self.project_terms(terms.iter().map(|(w, c)| (w, c)))
            })
            .collect();
        Operator::from_columns(cols)
    }

    /// Action of a Chevalley generator.
    pub fn u_action(&self, g: UGen) -> Result<Operator> {
        self.check_index(g.index())?;
        Ok(self.operator_from_words(|w| act_on_word(g, w)))
    }

    /// The coideal generator `B_i`.
    pub fn iota_action(&self, variant: Variant, i: usize) -> Result<Operator> {
        self.iota_generator(variant, i, false)
    }

    /// The bar image of `B_i`: `E_i + q^{-a} F_{θi} K_i + d K_i`.
    pub fn iota_action_bar(&self, variant: Variant, i: usize) -> Result<Operator> {
        self.iota_generator(variant, i, true)
    }

    fn iota_generator(&self, variant: Variant, i: usize, barred: bool) -> Result<Operator> {
        self.check_index(i)?;
        let n = self.n();
        let ti = n + 1 - i;
        let (a, d) = iota_coefficients(n, variant, i);
        let (k, coeff) = if barred { (UGen::K(i), LaurentPoly::q_pow(-a)) } else { (UGen::KInv(i), LaurentPoly::q_pow(a)) };
        Ok(self.operator_from_words(|w| {
            let mut out = act_on_word(UGen::E(i), w);
            for (kw, kc) in act_on_word(k, w) {
                for (fw, fc) in act_on_word(UGen::F(ti), &kw) {
                    out.push((fw, &(&kc * &fc) * &coeff));
                }
                if d {
                    out.push((kw, kc));
                }
            }
            out
        }))
    }

    /// The Cartan element `K_i K_{n+1-i}^{-1}` of the coideal.
    pub fn theta_cartan(&self, i: usize) -> Result<Operator> {
        self.check_index(i)?;
        let ti = self.n() + 1 - i;
        Ok(self.operator_from_words(|w| {
            let e: i32 = w.iter().map(|&a| letter_weight(i, a) - letter_weight(ti, a)).sum();
            vec![(w.to_vec(), LaurentPoly::q_pow(e))]
        }))
    }

    /// The right action of `H_i`, `1 ≤ i < m`, on `V^{⊗m}`.
    pub fn hecke_a_action(&self, i: usize) -> Result<Operator> {
        self.require_tensor_power("the type A Hecke action")?;
        if i == 0 || i >= self.width() {
            return Err(Error::InvalidDescriptor(format!("Hecke generator {i} outside 1..{}", self.width())));
        }
        Ok(self.operator_from_words(|w| hecke_a_on_word(w, i)))
    }

    /// The right action of `H_0` on `V^{⊗m}`: the solved matrix on the first
    /// tensor factor.
    pub fn hecke_b0_action(&self, variant: Variant) -> Result<Operator> {
        self.require_tensor_power("the type B Hecke action")?;
        if self.width() == 0 {
            return Err(Error::InvalidDescriptor("H_0 needs at least one tensor factor".into()));
        }
        let h0 = solve_h0(self.n(), variant)?;
        Ok(self.operator_from_words(|w| {
            h0.image(w[0])
                .into_iter()
                .map(|(a, c)| {
                    let mut x = w.to_vec();
                    x[0] = a;
                    (x, c)
                })
                .collect()
        }))
    }
}

/// `q - q^{-1}` as used by the bar of `H_i`.
pub(crate) fn bar_shift() -> LaurentPoly {
    q_minus_qinv()
}
