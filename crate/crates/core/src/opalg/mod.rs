//! Sparse weighted-shift operators on labelled bases.
//!
//! Operators are kept as lazy [`SparseKernel`]s and only materialized to
//! [`SparseMatrix`] form on a [`TruncatedBasis`] when a trace or an adjoint is
//! needed. Every check that compares against an infinite-dimensional identity
//! is restricted to interior labels, whose distance from the cutoff is at
//! least the total shift radius of the operator word involved. All radii and
//! margins are expressed in doubled units of the governing component.

mod basis;
mod kernel;
mod label;
mod matrix;
mod trace;
mod word;

pub use basis::TruncatedBasis;
pub use kernel::{merge_terms, AntiKernel, SparseKernel, Terms};
pub use label::{AlgebraTag, Comps, Label};
pub use matrix::{materialize, materialize_block, SparseMatrix};
pub use trace::{product_diagonal, product_trace, weighted_trace, TraceFactor};
pub use word::{evaluate_word, word_radius, AlgebraWord, GeneratorSet, Letter};

use crate::error::{Error, Result};

/// Apply a kernel to one basis vector. Fails on a label of another algebra.
pub fn apply(k: &SparseKernel, v: &Label) -> Result<Terms> {
    k.apply(v)
}

/// Largest coefficient modulus produced by any relation on any interior label.
///
/// `margin` (doubled units) must cover the total radius of the longest word.
pub fn relation_residual(
    rels: &[AlgebraWord],
    gens: &GeneratorSet,
    basis: &TruncatedBasis,
    margin: i32,
) -> Result<f64> {
    for r in rels {
        let radius = word_radius(r, gens)?;
        if margin < radius {
            return Err(Error::MarginTooSmall { margin, radius });
        }
    }
    let mut worst: f64 = 0.0;
    for &i in &basis.interior(margin) {
        let v = basis.label(i as usize);
        for r in rels {
            for (_, c) in evaluate_word(r, gens, v)? {
                worst = worst.max(c.norm());
            }
        }
    }
    Ok(worst)
}

/// Largest `|⟨t|k|v⟩| / rate(v)` over all basis sources `v` and emitted targets `t`.
pub fn sup_decay_ratio(
    k: &SparseKernel,
    basis: &TruncatedBasis,
    rate: &dyn Fn(&Label) -> f64,
) -> f64 {
    let mut worst: f64 = 0.0;
    let mut buf = Vec::new();
    for v in basis.labels() {
        buf.clear();
        k.apply_into(v, &mut buf);
        let r = rate(v);
        for (_, c) in merge_terms(std::mem::take(&mut buf)) {
            worst = worst.max(c.norm() / r);
        }
    }
    worst
}

/// Largest deviation between `materialize(b)` and the adjoint of
/// `materialize(a)`, restricted to interior rows and columns.
pub fn adjoint_residual(
    a: &SparseKernel,
    b: &SparseKernel,
    basis: &TruncatedBasis,
    margin: i32,
) -> f64 {
    let ma = materialize(a, basis);
    let mb = materialize(b, basis);
    let diff = mb.sub(&ma.adjoint()).expect("same basis");
    let mut keep = vec![false; basis.len()];
    for i in basis.interior(margin) {
        keep[i as usize] = true;
    }
    diff.max_abs_on(&keep)
}

/// The operator of a word, with letters bound to kernels. The unit word maps
/// to the identity on `tag`.
pub fn word_kernel(w: &AlgebraWord, gens: &GeneratorSet, tag: AlgebraTag) -> Result<SparseKernel> {
    let mut total = SparseKernel::zero(tag);
    for (c, letters) in &w.terms {
        let mut k = SparseKernel::identity(tag);
        for letter in letters {
            let g = gens
                .get(&letter.key())
                .ok_or_else(|| Error::UnboundGenerator(letter.key()))?;
            k = k.compose(g);
        }
        total = total.add(&k.scale(*c));
    }
    Ok(total)
}

/// Block-diagonal `c×c` array with the same kernel on every diagonal slot.
pub fn block_diagonal(k: &SparseKernel, c: usize) -> Vec<Vec<Option<SparseKernel>>> {
    (0..c)
        .map(|a| (0..c).map(|b| (a == b).then(|| k.clone())).collect())
        .collect()
}

/// Entrywise commutator `[k ⊗ 1, E]` of a scalar kernel with a kernel array.
pub fn block_commutator(
    k: &SparseKernel,
    block: &[Vec<Option<SparseKernel>>],
) -> Vec<Vec<Option<SparseKernel>>> {
    block
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| e.as_ref().map(|e| k.commutator(e)))
                .collect()
        })
        .collect()
}
