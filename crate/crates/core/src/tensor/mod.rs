//! Tensor products of the natural representation of `U_q(sl_{n+1})` and of
//! its wedge powers, with the coideal actions, the bar involutions `ψ` and
//! `ψ_ι`, and the canonical and ι-canonical bases.

pub mod based;
pub mod h0;
pub mod ops;
pub mod simple;
pub mod space;

pub use based::{build_space, canonical_data, tensor_space, wedge_project, BasedModule, BasisExport, BasisKind};
pub use h0::{solve_h0, H0Solution};
pub use ops::{Operator, UGen};
pub use simple::{simple_extract, SimpleModule};
pub use space::{Factor, ModuleDescriptor, TensorSpace, Variant, Word};
