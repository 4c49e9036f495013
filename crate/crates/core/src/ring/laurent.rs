//! Integer Laurent polynomials in a single variable `q`.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of `Z[q, q^-1]`.
///
/// Terms are kept sorted by exponent and never carry a zero coefficient, so
/// the zero polynomial is the empty term list and structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(i32, BigInt)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// The variable `q`.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    /// `c * q^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i32) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(e, c)] }
        }
    }

    /// `q^e`.
    pub fn q_pow(e: i32) -> Self {
        Self::monomial(1, e)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs in any order;
    /// repeated exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, C)>,
        C: Into<BigInt>,
    {
        let mut v: Vec<(i32, BigInt)> = terms.into_iter().map(|(e, c)| (e, c.into())).collect();
        v.sort_by_key(|t| t.0);
        let mut out: Vec<(i32, BigInt)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        Self { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: i32) -> BigInt {
        match self.terms.binary_search_by_key(&e, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.last().map(|t| t.0)
    }

    /// The bar involution `q -> q^-1`.
    pub fn bar(&self) -> Self {
        let terms = self.terms.iter().rev().map(|(e, c)| (-e, c.clone())).collect();
        Self { terms }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// Part with strictly positive exponents.
    pub fn positive_part(&self) -> Self {
        Self { terms: self.terms.iter().filter(|t| t.0 > 0).cloned().collect() }
    }

    /// Membership in `N[q]`: nonnegative exponents and coefficients.
    pub fn is_nonneg(&self) -> bool {
        self.terms.iter().all(|(e, c)| *e >= 0 && !c.is_negative())
    }

    /// Membership in `qZ[q]`.
    pub fn in_q_zq(&self) -> bool {
        self.terms.iter().all(|(e, _)| *e > 0)
    }

    /// A unit of the ring, i.e. `±q^k`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].1.abs().is_one()
    }

    /// `±q^k`, `c q^k` with arbitrary `c`.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Inverse of a unit `±q^k`.
    pub fn unit_inverse(&self) -> Option<Self> {
        if self.is_unit() {
            let (e, c) = &self.terms[0];
            Some(Self { terms: vec![(-e, c.clone())] })
        } else {
            None
        }
    }

    /// Solves `p - bar(p) = self` with `p` in `qZ[q]`.
    pub fn solve_skew(&self) -> Result<Self> {
        if !self.coeff(0).is_zero() {
            return Err(Error::ConstantTermObstruction(self.to_string()));
        }
        if self.bar() != -self {
            return Err(Error::SkewViolation(self.to_string()));
        }
        Ok(self.positive_part())
    }

    /// Exact quotient `self / d`, if it exists in `Z[q, q^-1]`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.is_monomial() {
            let (de, dc) = &d.terms[0];
            let mut out = Vec::with_capacity(self.terms.len());
            for (e, c) in &self.terms {
                let (quo, rem) = c.div_rem(dc);
                if !rem.is_zero() {
                    return None;
                }
                out.push((e - de, quo));
            }
            return Some(Self { terms: out });
        }
        // Long division on dense coefficient vectors, highest degree first.
        let d_lo = d.min_exp().unwrap();
        let d_hi = d.max_exp().unwrap();
        let n_lo = self.min_exp().unwrap();
        let n_hi = self.max_exp().unwrap();
        if n_hi - n_lo < d_hi - d_lo {
            return None;
        }
        let dv = d.dense(d_lo, d_hi);
        let mut rem = self.dense(n_lo, n_hi);
        let lead = dv.last().unwrap().clone();
        let qlen = rem.len() - dv.len() + 1;
        let mut quo = vec![BigInt::zero(); qlen];
        for k in (0..qlen).rev() {
            let top = &rem[k + dv.len() - 1];
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            for (j, dj) in dv.iter().enumerate() {
                if !dj.is_zero() {
                    rem[k + j] -= &c * dj;
                }
            }
            quo[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        let shift = n_lo - d_lo;
        Some(Self::from_dense(shift, quo))
    }

    fn dense(&self, lo: i32, hi: i32) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            v[(e - lo) as usize] = c.clone();
        }
        v
    }

    fn from_dense(lo: i32, v: Vec<BigInt>) -> Self {
        let terms = v
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (lo + i as i32, c))
            .collect();
        Self { terms }
    }

    /// Integer content (gcd of coefficients), positive; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.terms.iter().fold(BigInt::zero(), |g, (_, c)| g.gcd(c))
    }

    /// Evaluates at an integer point `q = x`; negative exponents require `x = ±1`.
    pub fn eval_i64(&self, x: i64) -> Option<BigInt> {
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            let v = if *e >= 0 {
                num_traits::pow(BigInt::from(x), *e as usize)
            } else if x == 1 || x == -1 {
                num_traits::pow(BigInt::from(x), e.unsigned_abs() as usize)
            } else {
                return None;
            };
            acc += c * v;
        }
        Some(acc)
    }

    fn add_terms(a: &[(i32, BigInt)], b: &[(i32, BigInt)], negate_b: bool) -> Vec<(i32, BigInt)> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate_b { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_b { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    fn mul_terms(a: &[(i32, BigInt)], b: &[(i32, BigInt)]) -> Vec<(i32, BigInt)> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        if a.len() == 1 || b.len() == 1 {
            let (m, other) = if a.len() == 1 { (&a[0], b) } else { (&b[0], a) };
            return other.iter().map(|(e, c)| (e + m.0, c * &m.1)).collect();
        }
        let lo = a[0].0 + b[0].0;
        let hi = a[a.len() - 1].0 + b[b.len() - 1].0;
        let mut acc = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (ea, ca) in a {
            for (eb, cb) in b {
                acc[(ea + eb - lo) as usize] += ca * cb;
            }
        }
        Self::from_dense(lo, acc).terms
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c)
    }
}

impl From<BigInt> for LaurentPoly {
    fn from(c: BigInt) -> Self {
        LaurentPoly::constant(c)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for t in &mut self.terms {
            t.1 = -std::mem::take(&mut t.1);
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                let f: fn(&LaurentPoly, &LaurentPoly) -> LaurentPoly = $body;
                f(self, rhs)
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| LaurentPoly { terms: LaurentPoly::add_terms(&a.terms, &b.terms, false) });
forward_binop!(Sub, sub, |a, b| LaurentPoly { terms: LaurentPoly::add_terms(&a.terms, &b.terms, true) });
forward_binop!(Mul, mul, |a, b| LaurentPoly { terms: LaurentPoly::mul_terms(&a.terms, &b.terms) });

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        if rhs.is_zero() {
            return;
        }
        self.terms = LaurentPoly::add_terms(&self.terms, &rhs.terms, false);
    }
}

impl AddAssign<LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        if self.is_zero() {
            *self = rhs;
        } else {
            *self += &rhs;
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        if rhs.is_zero() {
            return;
        }
        self.terms = LaurentPoly::add_terms(&self.terms, &rhs.terms, true);
    }
}

impl SubAssign<LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: LaurentPoly) {
        *self -= &rhs;
    }
}

impl MulAssign<&LaurentPoly> for LaurentPoly {
    fn mul_assign(&mut self, rhs: &LaurentPoly) {
        self.terms = LaurentPoly::mul_terms(&self.terms, &rhs.terms);
    }
}

impl Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

impl<'a> Sum<&'a LaurentPoly> for LaurentPoly {
    fn sum<I: Iterator<Item = &'a LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

impl PartialOrd for LaurentPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Arbitrary but total order (by term list), used only for deterministic sorting.
impl Ord for LaurentPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.terms.cmp(&other.terms)
    }
}

/// Canonical text form: increasing exponents, e.g. `2q^-1 + 3 + q^2`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if *e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            if *e == 1 {
                write!(f, "q")?;
            } else {
                write!(f, "q^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Parses the canonical text form; terms may appear in any order and
    /// `*` between coefficient and `q` is tolerated.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid polynomial {s:?}"));
        let cleaned: String = s
            .chars()
            .map(|c| if c == '\u{2212}' { '-' } else { c })
            .filter(|c| !c.is_whitespace() && *c != '*')
            .collect();
        if cleaned.is_empty() {
            return Err(bad());
        }
        let mut terms: Vec<(i32, BigInt)> = Vec::new();
        let bytes: Vec<char> = cleaned.chars().collect();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = BigInt::one();
            if bytes[i] == '+' || bytes[i] == '-' {
                if bytes[i] == '-' {
                    sign = -sign;
                }
                i += 1;
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = bytes[start..i].iter().collect();
            let has_q = i < bytes.len() && bytes[i] == 'q';
            if digits.is_empty() && !has_q {
                return Err(bad());
            }
            let coeff = if digits.is_empty() {
                BigInt::one()
            } else {
                digits.parse::<BigInt>().map_err(|_| bad())?
            };
            let mut exp = 0i32;
            if has_q {
                i += 1;
                exp = 1;
                if i < bytes.len() && bytes[i] == '^' {
                    i += 1;
                    let es = i;
                    if i < bytes.len() && (bytes[i] == '-' || bytes[i] == '+') {
                        i += 1;
                    }
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let estr: String = bytes[es..i].iter().collect();
                    exp = estr.parse().map_err(|_| bad())?;
                }
            }
            terms.push((exp, sign * coeff));
            if i < bytes.len() && bytes[i] != '+' && bytes[i] != '-' {
                return Err(bad());
            }
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

/// JSON form: `[[exponent, coefficient], ...]` sorted by exponent. Coefficients
/// that do not fit in an `i64` are written as decimal strings.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            match c.to_i64() {
                Some(small) => seq.serialize_element(&(e, small))?,
                None => seq.serialize_element(&(e, c.to_string()))?,
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Coeff {
            Small(i64),
            Big(String),
        }
        let raw: Vec<(i32, Coeff)> = Vec::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(raw.len());
        for (e, c) in raw {
            let c = match c {
                Coeff::Small(v) => BigInt::from(v),
                Coeff::Big(s) => s.parse::<BigInt>().map_err(de::Error::custom)?,
            };
            terms.push((e, c));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn bar_examples() {
        assert_eq!(LaurentPoly::q().bar(), LaurentPoly::q_pow(-1));
        assert_eq!(LaurentPoly::zero().bar(), LaurentPoly::zero());
        assert_eq!(p("2q^-1 + 3q^2").bar(), p("2q + 3q^-2"));
    }

    #[test]
    fn solve_skew_examples() {
        assert_eq!(p("q - q^-1").solve_skew().unwrap(), LaurentPoly::q());
        assert_eq!(LaurentPoly::zero().solve_skew().unwrap(), LaurentPoly::zero());
        assert_eq!(p("2q^3 - 2q^-3").solve_skew().unwrap(), p("2q^3"));
        assert!(matches!(p("q + q^-1").solve_skew(), Err(Error::SkewViolation(_))));
        assert!(matches!(p("1 + q - q^-1").solve_skew(), Err(Error::ConstantTermObstruction(_))));
    }

    #[test]
    fn nonneg_examples() {
        assert!(p("q + 1").is_nonneg());
        assert!(!p("q^-1").is_nonneg());
        assert!(!p("q - q^2").is_nonneg());
        assert!(LaurentPoly::zero().is_nonneg());
    }

    #[test]
    fn text_form() {
        assert_eq!(p("2q^-1 + 3 + q^2").to_string(), "2q^-1 + 3 + q^2");
        assert_eq!(p("q^2 - q").to_string(), "-q + q^2");
        assert_eq!(p("-1").to_string(), "-1");
        assert_eq!(p("q^-1 - q").to_string(), "q^-1 - q");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert!("q^".parse::<LaurentPoly>().is_err());
        assert!("x".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn json_form() {
        let x = p("2q^-1 + 3 + q^2");
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, "[[-1,2],[0,3],[2,1]]");
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn exact_division() {
        let a = p("1 + q");
        let b = p("1 - q + q^2");
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&a).unwrap(), b);
        assert_eq!(prod.shift(-3).exact_div(&b).unwrap(), a.shift(-3));
        assert!(p("1 + q^2").exact_div(&a).is_none());
        assert!(p("3 + q").exact_div(&p("2")).is_none());
    }
}
