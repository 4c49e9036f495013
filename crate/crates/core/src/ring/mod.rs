//! Exact scalars: integer Laurent polynomials in `q` and their fractions.

mod laurent;
mod ratfunc;

pub use laurent::LaurentPoly;
pub use ratfunc::{poly_gcd, RatFunc};

/// `q - q^-1`.
pub fn q_minus_qinv() -> LaurentPoly {
    LaurentPoly::from_terms([(1, 1), (-1, -1)])
}

/// `q^-1 - q`.
pub fn qinv_minus_q() -> LaurentPoly {
    LaurentPoly::from_terms([(-1, 1), (1, -1)])
}
