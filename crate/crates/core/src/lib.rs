//! Exact computation of Kazhdan-Lusztig bases, canonical bases of tensor
//! modules for quantum `gl_n`, and their iota-canonical counterparts.

pub mod barsolve;
pub mod error;
pub mod hecke;
pub mod linalg;
pub mod positivity;
pub mod ring;
pub mod sparse;
pub mod tensor;
pub mod weyl;

pub use error::{Error, Result};
