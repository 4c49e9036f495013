//! Module descriptors and the standard bases of tensors of wedges.

use std::cmp::Reverse;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::LaurentPoly;
use crate::sparse::SparseVec;

/// A word `f(1..m)` of letters in `1..=n+1`.
pub type Word = Vec<u8>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    /// The natural representation.
    V,
    /// The quotient `∧^m V` of `V^{⊗m}`.
    Wedge(usize),
}

impl Factor {
    /// Number of tensor positions the factor occupies.
    pub fn width(&self) -> usize {
        match self {
            Factor::V => 1,
            Factor::Wedge(m) => *m,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::V => write!(f, "V"),
            Factor::Wedge(m) => write!(f, "wedge{m}"),
        }
    }
}

impl FromStr for Factor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "V" || t == "v" {
            return Ok(Factor::V);
        }
        let rest = t
            .strip_prefix("wedge")
            .or_else(|| t.strip_prefix("Wedge"))
            .ok_or_else(|| Error::InvalidDescriptor(format!("unknown factor {t:?}")))?;
        let m: usize = rest
            .trim_start_matches(['(', '^'])
            .trim_end_matches(')')
            .parse()
            .map_err(|_| Error::InvalidDescriptor(format!("bad wedge power in {t:?}")))?;
        Ok(Factor::Wedge(m))
    }
}

impl Serialize for Factor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Factor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parameter family of the coideal subalgebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Bw13,
    Bao17,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Bw13 => write!(f, "bw13"),
            Variant::Bao17 => write!(f, "bao17"),
        }
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "bw13" => Ok(Variant::Bw13),
            "bao17" => Ok(Variant::Bao17),
            other => Err(Error::InvalidDescriptor(format!("unknown variant {other:?}"))),
        }
    }
}

/// `n` (for `U_q(sl_{n+1})`), a list of factors and the coideal variant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModuleDescriptor {
    pub n: usize,
    pub factors: Vec<Factor>,
    pub variant: Variant,
}

impl ModuleDescriptor {
    pub fn new(n: usize, factors: Vec<Factor>, variant: Variant) -> Result<Self> {
        let d = Self { n, factors, variant };
        d.validate()?;
        Ok(d)
    }

    /// `V^{⊗m}`.
    pub fn tensor_power(n: usize, m: usize, variant: Variant) -> Self {
        Self { n, factors: vec![Factor::V; m], variant }
    }

    /// Parses a comma separated factor list such as `V,wedge2,V`.
    pub fn parse_factors(s: &str) -> Result<Vec<Factor>> {
        if s.trim().is_empty() {
            return Ok(Vec::new());
        }
        s.split(',').map(|t| t.parse()).collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidDescriptor("n must be at least 1".into()));
        }
        if self.n > 30 {
            return Err(Error::InvalidDescriptor("n must be at most 30".into()));
        }
        for f in &self.factors {
            if let Factor::Wedge(m) = f {
                if *m == 0 {
                    return Err(Error::InvalidDescriptor("wedge0 is not a valid factor".into()));
                }
                if *m > self.n {
                    return Err(Error::RankTooSmall { m: *m, n: self.n });
                }
            }
        }
        Ok(())
    }

    /// Total number of tensor positions.
    pub fn width(&self) -> usize {
        self.factors.iter().map(|f| f.width()).sum()
    }

    pub fn is_tensor_power(&self) -> bool {
        self.factors.iter().all(|f| *f == Factor::V)
    }

    /// Dimension `Π dim(factor)`.
    pub fn dimension(&self) -> u128 {
        self.factors
            .iter()
            .map(|f| match f {
                Factor::V => (self.n + 1) as u128,
                Factor::Wedge(m) => binomial(self.n + 1, *m),
            })
            .product()
    }

    /// The first `l` factors and the remaining ones.
    pub fn split(&self, l: usize) -> Result<(Self, Self)> {
        if l > self.factors.len() {
            return Err(Error::InvalidDescriptor(format!("split {l} exceeds {} factors", self.factors.len())));
        }
        Ok((
            Self { n: self.n, factors: self.factors[..l].to_vec(), variant: self.variant },
            Self { n: self.n, factors: self.factors[l..].to_vec(), variant: self.variant },
        ))
    }

    pub fn factors_string(&self) -> String {
        self.factors.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for ModuleDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} [{}] {}", self.n, self.factors_string(), self.variant)
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// Number of inversions `#{i < j : f(i) > f(j)}`.
pub fn inversions(w: &[u8]) -> usize {
    let mut c = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                c += 1;
            }
        }
    }
    c
}

/// Letter multiplicities `c_1, ..., c_{n+1}`.
pub fn content(n: usize, w: &[u8]) -> Vec<u16> {
    let mut c = vec![0u16; n + 1];
    for &a in w {
        c[a as usize - 1] += 1;
    }
    c
}

/// Weight as `K_i` exponents: `c_i - c_{i+1}`.
pub fn weight(n: usize, w: &[u8]) -> Vec<i32> {
    let c = content(n, w);
    (0..n).map(|i| c[i] as i32 - c[i + 1] as i32).collect()
}

/// Exponents of `K_i K_{n+1-i}^{-1}`.
pub fn theta_weight(n: usize, w: &[u8]) -> Vec<i32> {
    let wt = weight(n, w);
    (0..n).map(|i| wt[i] - wt[n - 1 - i]).collect()
}

/// True when `x` has weight strictly below that of `y` (their difference is a
/// nonzero sum of positive roots).
pub fn weight_strictly_below(n: usize, x: &[u8], y: &[u8]) -> bool {
    let (cx, cy) = (content(n, x), content(n, y));
    if cx == cy {
        return false;
    }
    let (mut px, mut py) = (0i32, 0i32);
    for a in 0..=n {
        px += cx[a] as i32;
        py += cy[a] as i32;
        if px > py {
            return false;
        }
    }
    px == py
}

fn format_word(w: &[u8]) -> String {
    let body: Vec<String> = w.iter().map(|a| a.to_string()).collect();
    format!("({})", body.join(","))
}

/// The standard basis of a tensor of wedges: words of the total width that
/// are strictly increasing inside every wedge segment.
#[derive(Debug)]
pub struct TensorSpace {
    n: usize,
    factors: Vec<Factor>,
    segments: Vec<(usize, usize)>,
    width: usize,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    order: Vec<usize>,
    rank: Vec<usize>,
}

impl TensorSpace {
    pub fn new(n: usize, factors: &[Factor]) -> Result<Self> {
        ModuleDescriptor { n, factors: factors.to_vec(), variant: Variant::Bw13 }.validate()?;
        let mut segments = Vec::new();
        let mut pos = 0;
        for f in factors {
            if let Factor::Wedge(m) = f {
                segments.push((pos, *m));
            }
            pos += f.width();
        }
        let width = pos;
        let letters = (n + 1) as u8;
        let mut words: Vec<Word> = vec![Vec::new()];
        for f in factors {
            let pieces: Vec<Word> = match f {
                Factor::V => (1..=letters).map(|a| vec![a]).collect(),
                Factor::Wedge(m) => increasing_words(letters, *m),
            };
            words = words
                .into_iter()
                .flat_map(|w| {
                    pieces.iter().map(move |p| {
                        let mut x = w.clone();
                        x.extend_from_slice(p);
                        x
                    })
                })
                .collect();
        }
        words.sort();
        let index = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut order: Vec<usize> = (0..words.len()).collect();
        order.sort_by_cached_key(|&i| {
            let w = &words[i];
            let sum: usize = w.iter().map(|&a| a as usize).sum();
            (Reverse(sum), content(n, w), inversions(w), w.clone())
        });
        let mut rank = vec![0; words.len()];
        for (p, &i) in order.iter().enumerate() {
            rank[i] = p;
        }
        Ok(Self { n, factors: factors.to_vec(), segments, width, words, index, order, rank })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> u8 {
        (self.n + 1) as u8
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// Total number of tensor positions.
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn word(&self, i: usize) -> &Word {
        &self.words[i]
    }

    pub fn index_of(&self, w: &[u8]) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn is_tensor_power(&self) -> bool {
        self.segments.is_empty()
    }

    /// Indices from lowest to highest in the linear extension used by the
    /// bar solvers: lower weight first, then fewer inversions.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn rank(&self, i: usize) -> usize {
        self.rank[i]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    /// Image of the ambient vector `v_w` (`w` of full width) in this space:
    /// inside each wedge segment a repeated letter gives 0 and otherwise the
    /// letters are sorted at the cost of `(-q)` per inversion.
    pub fn project_word(&self, w: &[u8]) -> Option<(usize, LaurentPoly)> {
        let mut word = w.to_vec();
        let mut inv = 0usize;
        for &(start, len) in &self.segments {
            let seg = &mut word[start..start + len];
            inv += inversions(seg);
            seg.sort_unstable();
            if seg.windows(2).any(|p| p[0] == p[1]) {
                return None;
            }
        }
        let c = if inv % 2 == 0 { LaurentPoly::q_pow(inv as i32) } else { -LaurentPoly::q_pow(inv as i32) };
        Some((self.index[&word], c))
    }

    /// Linear extension of [`project_word`](Self::project_word) to ambient
    /// vectors given as `(word, coefficient)` pairs.
    pub fn project_terms<'a>(&self, terms: impl IntoIterator<Item = (&'a Word, &'a LaurentPoly)>) -> SparseVec {
        let mut out = SparseVec::zero();
        for (w, c) in terms {
            if let Some((i, s)) = self.project_word(w) {
                out.add_term(i, c * &s);
            }
        }
        out
    }

    pub fn format_word(&self, i: usize) -> String {
        format_word(&self.words[i])
    }
}

fn increasing_words(letters: u8, m: usize) -> Vec<Word> {
    fn rec(start: u8, letters: u8, m: usize, cur: &mut Word, out: &mut Vec<Word>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for a in start..=letters {
            cur.push(a);
            rec(a + 1, letters, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, letters, m, &mut Vec::new(), &mut out);
    out
}

/// Display form `(2,1)` of a word.
pub fn word_string(w: &[u8]) -> String {
    format_word(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        let s = TensorSpace::new(2, &[Factor::Wedge(2), Factor::V]).unwrap();
        assert_eq!(s.dim(), 9);
        assert_eq!(TensorSpace::new(1, &[]).unwrap().dim(), 1);
        assert_eq!(
            TensorSpace::new(1, &[Factor::Wedge(2)]).unwrap_err(),
            Error::RankTooSmall { m: 2, n: 1 }
        );
    }

    #[test]
    fn projection_signs() {
        let s = TensorSpace::new(2, &[Factor::Wedge(2)]).unwrap();
        assert_eq!(s.project_word(&[1, 2]), Some((s.index_of(&[1, 2]).unwrap(), LaurentPoly::one())));
        assert_eq!(s.project_word(&[2, 1]), Some((s.index_of(&[1, 2]).unwrap(), -LaurentPoly::q())));
        assert_eq!(s.project_word(&[2, 2]), None);
    }

    #[test]
    fn dominance() {
        assert!(weight_strictly_below(1, &[2], &[1]));
        assert!(!weight_strictly_below(1, &[1], &[2]));
        assert!(!weight_strictly_below(2, &[1, 3], &[2, 2]) || weight_strictly_below(2, &[1, 3], &[2, 2]));
        assert!(weight_strictly_below(2, &[2, 3], &[1, 3]));
    }

    #[test]
    fn descriptor_text() {
        let f = ModuleDescriptor::parse_factors("V, wedge2,V").unwrap();
        assert_eq!(f, vec![Factor::V, Factor::Wedge(2), Factor::V]);
        let d = ModuleDescriptor::new(2, f, Variant::Bao17).unwrap();
        assert_eq!(serde_json::to_string(&d).unwrap(), r#"{"n":2,"factors":["V","wedge2","V"],"variant":"bao17"}"#);
        assert_eq!(d.dimension(), 27);
    }
}
