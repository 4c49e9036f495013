//! Simple modules `L(λ)` inside tensors of wedges, as the span of
//! `U·v⁺` for the tensor of highest weight vectors.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{row_from_laurent, Echelon};
use crate::sparse::SparseVec;

use super::based::{build_space, BasedModule};
use super::ops::UGen;
use super::space::{Factor, ModuleDescriptor, Variant};

/// A simple module with the basis elements of its host that lie in it.
#[derive(Debug)]
pub struct SimpleModule {
    /// Multiplicities `a_i` of the fundamental weights.
    pub lambda: Vec<usize>,
    pub host: Arc<BasedModule>,
    /// Dimension of `U·v⁺`.
    pub dim: usize,
    /// Indices of `B◇` elements in `L(λ)`, ordered by rank.
    pub canonical: Vec<usize>,
    /// Indices of `B^ι` elements in `L(λ)`, ordered by rank.
    pub iota: Vec<usize>,
}

/// The host descriptor: `a_i` copies of `∧^i V`, in increasing `i`.
pub fn host_descriptor(n: usize, lambda: &[usize], variant: Variant) -> Result<ModuleDescriptor> {
    if lambda.len() != n {
        return Err(Error::InvalidDescriptor(format!("weight needs {n} coordinates, got {}", lambda.len())));
    }
    let mut factors = Vec::new();
    for (k, &a) in lambda.iter().enumerate() {
        let f = if k == 0 { Factor::V } else { Factor::Wedge(k + 1) };
        factors.extend(std::iter::repeat_n(f, a));
    }
    ModuleDescriptor::new(n, factors, variant)
}

fn row(v: &SparseVec) -> crate::linalg::Row {
    row_from_laurent(v.iter().map(|(i, c)| (i, c.clone())))
}

/// Extracts `L(λ)` from its host and checks that both bases restrict to it.
pub fn simple_extract(n: usize, lambda: &[usize], variant: Variant) -> Result<SimpleModule> {
    let desc = host_descriptor(n, lambda, variant)?;
    let host = build_space(&desc)?;
    let space = &host.space;
    let mut top: Vec<u8> = Vec::new();
    for f in &desc.factors {
        top.extend(1..=f.width() as u8);
    }
    let start = space.index_of(&top).ok_or_else(|| Error::Invariant("highest weight word missing".into()))?;

    let lowering: Vec<_> = (1..=n).map(|i| space.u_action(UGen::F(i))).collect::<Result<_>>()?;
    let mut span = Echelon::new();
    let mut queue = vec![SparseVec::basis(start)];
    span.insert(row(&queue[0]));
    while let Some(v) = queue.pop() {
        for f in &lowering {
            let w = f.apply(&v);
            if !w.is_zero() && span.insert(row(&w)).is_some() {
                queue.push(w);
            }
        }
    }
    let dim = span.rank();

    let members = |vector: &dyn Fn(usize) -> SparseVec| -> Vec<usize> {
        space.order().iter().copied().filter(|&b| span.contains(row(&vector(b)))).collect()
    };
    let canonical = members(&|b| host.canonical_vector(b));
    let iota = members(&|b| host.iota_vector(b));
    if canonical.len() != dim {
        return Err(Error::SpanMismatch(format!("{} canonical elements for a module of dimension {dim}", canonical.len())));
    }
    if iota.len() != dim {
        return Err(Error::SpanMismatch(format!("{} ι-canonical elements for a module of dimension {dim}", iota.len())));
    }
    for &b in &iota {
        if host.iota.column(b).iter().any(|(r, _)| canonical.binary_search_by_key(&space.rank(*r), |&c| space.rank(c)).is_err()) {
            return Err(Error::SpanMismatch(format!("ι-canonical element {} leaves the canonical span", space.format_word(b))));
        }
    }
    Ok(SimpleModule { lambda: lambda.to_vec(), host, dim, canonical, iota })
}
