//! Fractions of Laurent polynomials, the field `Q(q)` used by the linear solvers.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::LaurentPoly;
use crate::error::{Error, Result};

/// `num / den` with `den != 0`.
///
/// Normalization is lazy: only cheap simplifications are applied eagerly
/// (unit denominators are folded into the numerator, exact quotients are
/// taken when they exist). Equality is decided by cross-multiplication.
#[derive(Clone)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::simplified(num, den))
    }

    pub fn zero() -> Self {
        Self { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Self { num: LaurentPoly::one(), den: LaurentPoly::one() }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// True when the value lies in `Z[q, q^-1]` and is a unit there.
    pub fn is_laurent_unit(&self) -> bool {
        self.den.is_one() && self.num.is_unit()
    }

    /// The Laurent polynomial equal to this fraction, if there is one.
    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        if self.den.is_one() {
            Some(self.num.clone())
        } else {
            self.num.exact_div(&self.den)
        }
    }

    pub fn bar(&self) -> Self {
        Self::simplified(self.num.bar(), self.den.bar())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::simplified(self.den.clone(), self.num.clone()))
    }

    /// Full reduction by the polynomial gcd of numerator and denominator.
    pub fn reduce(&self) -> Self {
        if self.den.is_one() || self.num.is_zero() {
            return Self::simplified(self.num.clone(), self.den.clone());
        }
        let g = poly_gcd(&self.num, &self.den);
        let num = self.num.exact_div(&g).expect("gcd divides numerator");
        let den = self.den.exact_div(&g).expect("gcd divides denominator");
        Self::simplified(num, den)
    }

    fn simplified(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_one() {
            return Self { num, den };
        }
        if let Some(inv) = den.unit_inverse() {
            return Self { num: &num * &inv, den: LaurentPoly::one() };
        }
        if let Some(quo) = num.exact_div(&den) {
            return Self { num: quo, den: LaurentPoly::one() };
        }
        // Strip common integer content and move powers of q into the numerator.
        let g = num.content().gcd(&den.content());
        let shift = den.min_exp().unwrap();
        let (mut num, mut den) = if g.is_one() {
            (num.shift(-shift), den.shift(-shift))
        } else {
            let gp = LaurentPoly::constant(g);
            (
                num.exact_div(&gp).unwrap().shift(-shift),
                den.exact_div(&gp).unwrap().shift(-shift),
            )
        };
        let lead_neg = den.terms().last().map(|(_, c)| c.is_negative()).unwrap_or(false);
        if lead_neg {
            num = -num;
            den = -den;
        }
        Self { num, den }
    }
}

impl From<LaurentPoly> for RatFunc {
    fn from(p: LaurentPoly) -> Self {
        Self { num: p, den: LaurentPoly::one() }
    }
}

impl From<&LaurentPoly> for RatFunc {
    fn from(p: &LaurentPoly) -> Self {
        Self { num: p.clone(), den: LaurentPoly::one() }
    }
}

impl From<i64> for RatFunc {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c).into()
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RatFunc {}

impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            return RatFunc::simplified(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::simplified(&self.num * &rhs.den + &rhs.num * &self.den, &self.den * &rhs.den)
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::simplified(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self * &rhs.inv().expect("division by zero rational function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -self.num, den: self.den }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                (&self).$m(rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

/// Dense coefficients of a polynomial (lowest degree first) after removing
/// the power of `q` dividing it.
fn to_poly(p: &LaurentPoly) -> Vec<BigInt> {
    let lo = p.min_exp().unwrap_or(0);
    let hi = p.max_exp().unwrap_or(0);
    let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
    for (e, c) in p.terms() {
        v[(e - lo) as usize] = c.clone();
    }
    v
}

fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let c = content(v);
    if c.is_zero() || c.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &c).collect()
}

fn trim(v: &mut Vec<BigInt>) {
    while v.len() > 1 && v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let lb = b.last().unwrap().clone();
    let db = b.len() - 1;
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &lr * bj;
        }
        r.pop();
        trim(&mut r);
        if r.iter().all(|c| c.is_zero()) {
            return vec![BigInt::zero()];
        }
    }
    r
}

/// Greatest common divisor in `Z[q, q^-1]`, normalized to be a polynomial
/// with nonzero constant term and positive leading coefficient.
pub fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let ca = content(&to_poly(a));
    let cb = content(&to_poly(b));
    let g_content = ca.gcd(&cb);
    let mut x = primitive(&to_poly(a));
    let mut y = primitive(&to_poly(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !(y.len() == 1 && y[0].is_zero()) {
        if y.len() == 1 {
            // nonzero constant: the primitive gcd is 1
            x = vec![BigInt::one()];
            break;
        }
        let r = pseudo_rem(&x, &y);
        x = y;
        y = if r.iter().all(|c| c.is_zero()) { vec![BigInt::zero()] } else { primitive(&r) };
    }
    let mut g = primitive(&x);
    if g.last().map(|c| c.is_negative()).unwrap_or(false) {
        g = g.into_iter().map(|c| -c).collect();
    }
    let poly = LaurentPoly::from_terms(g.into_iter().enumerate().map(|(i, c)| (i as i32, c)));
    &poly * &LaurentPoly::constant(g_content)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn cross_multiplication_equality() {
        let a = RatFunc::new(p("1 + q"), p("1 - q")).unwrap();
        let b = RatFunc::new(p("q + q^2"), p("q - q^2")).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, RatFunc::one());
    }

    #[test]
    fn embeds_laurent() {
        let x = p("q^-2 + 3q");
        let r: RatFunc = x.clone().into();
        assert_eq!(r.to_laurent().unwrap(), x);
        let y = RatFunc::new(p("q^2 - 1"), p("q - 1")).unwrap();
        assert_eq!(y.to_laurent().unwrap(), p("1 + q"));
        assert!(RatFunc::new(p("1"), p("1 + q")).unwrap().to_laurent().is_none());
    }

    #[test]
    fn field_operations() {
        let a = RatFunc::new(p("1"), p("1 + q")).unwrap();
        let b = RatFunc::new(p("q"), p("1 + q")).unwrap();
        assert_eq!(&a + &b, RatFunc::one());
        let c = &a / &b;
        assert_eq!(c, RatFunc::from(p("q^-1")));
        assert!(RatFunc::new(p("1"), LaurentPoly::zero()).is_err());
    }

    #[test]
    fn gcd_reduces() {
        let f = p("1 + q");
        let g = p("2 - q + q^3");
        let h = p("3 + q^2");
        let r = RatFunc::new(&f * &g, &f * &h).unwrap().reduce();
        assert_eq!(r.den(), &h);
        assert_eq!(poly_gcd(&(&f * &g).shift(-2), &(&f * &h)), f);
    }
}
