//! Lazily evaluated sparse operators on labelled bases.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64 as C64;

use super::label::{AlgebraTag, Label};
use crate::error::{Error, Result};

/// The list of `(target, coefficient)` pairs an operator produces on one basis vector.
pub type Terms = Vec<(Label, C64)>;

type Rule = dyn Fn(&Label, &mut Terms) + Send + Sync;

/// An operator given by its action on basis vectors.
///
/// `radius` is the largest change, in doubled units, of the governing
/// component of a label under one application.
#[derive(Clone)]
pub struct SparseKernel {
    tag: AlgebraTag,
    radius: i32,
    rule: Arc<Rule>,
}

impl std::fmt::Debug for SparseKernel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SparseKernel")
            .field("tag", &self.tag)
            .field("radius", &self.radius)
            .finish()
    }
}

impl SparseKernel {
    /// Build a kernel from a rule that pushes terms into a buffer.
    pub fn new<F>(tag: AlgebraTag, radius: i32, rule: F) -> Self
    where
        F: Fn(&Label, &mut Terms) + Send + Sync + 'static,
    {
        Self {
            tag,
            radius,
            rule: Arc::new(rule),
        }
    }

    pub fn zero(tag: AlgebraTag) -> Self {
        Self::new(tag, 0, |_, _| {})
    }

    pub fn identity(tag: AlgebraTag) -> Self {
        Self::new(tag, 0, |v, out| out.push((v.clone(), C64::new(1.0, 0.0))))
    }

    /// Diagonal operator `v -> f(v) v`.
    pub fn diagonal<F>(tag: AlgebraTag, f: F) -> Self
    where
        F: Fn(&Label) -> C64 + Send + Sync + 'static,
    {
        Self::new(tag, 0, move |v, out| out.push((v.clone(), f(v))))
    }

    #[inline]
    pub fn tag(&self) -> AlgebraTag {
        self.tag
    }

    #[inline]
    pub fn radius(&self) -> i32 {
        self.radius
    }

    /// Append the raw action on `v` to `out`, without tag checks or zero filtering.
    #[inline]
    pub fn apply_into(&self, v: &Label, out: &mut Terms) {
        (self.rule)(v, out)
    }

    /// The action on one basis vector, with exact zeros removed and like terms merged.
    pub fn apply(&self, v: &Label) -> Result<Terms> {
        if v.tag != self.tag {
            return Err(Error::WrongAlgebra {
                expected: self.tag,
                found: v.tag,
            });
        }
        let mut raw = Vec::new();
        self.apply_into(v, &mut raw);
        Ok(merge_terms(raw))
    }

    /// Apply to a finite linear combination of basis vectors.
    pub fn apply_vec(&self, vec: &[(Label, C64)]) -> Terms {
        let mut raw = Vec::new();
        let mut buf = Vec::new();
        for (v, c) in vec {
            buf.clear();
            self.apply_into(v, &mut buf);
            raw.extend(buf.drain(..).map(|(t, d)| (t, d * c)));
        }
        merge_terms(raw)
    }

    /// `self ∘ other`: apply `other` first. The result acts on the labels
    /// of `other`.
    pub fn compose(&self, other: &SparseKernel) -> SparseKernel {
        let (a, b) = (self.clone(), other.clone());
        SparseKernel::new(other.tag, self.radius + other.radius, move |v, out| {
            let mut first = Vec::new();
            b.apply_into(v, &mut first);
            let mut buf = Vec::new();
            for (w, c) in first {
                buf.clear();
                a.apply_into(&w, &mut buf);
                out.extend(buf.drain(..).map(|(t, d)| (t, d * c)));
            }
        })
    }

    /// `α·self + β·other`.
    pub fn combine(&self, alpha: C64, other: &SparseKernel, beta: C64) -> SparseKernel {
        let (a, b) = (self.clone(), other.clone());
        SparseKernel::new(self.tag, self.radius.max(other.radius), move |v, out| {
            let start = out.len();
            a.apply_into(v, out);
            for t in &mut out[start..] {
                t.1 *= alpha;
            }
            let mid = out.len();
            b.apply_into(v, out);
            for t in &mut out[mid..] {
                t.1 *= beta;
            }
        })
    }

    pub fn add(&self, other: &SparseKernel) -> SparseKernel {
        self.combine(C64::new(1.0, 0.0), other, C64::new(1.0, 0.0))
    }

    pub fn scale(&self, alpha: C64) -> SparseKernel {
        let a = self.clone();
        SparseKernel::new(self.tag, self.radius, move |v, out| {
            let start = out.len();
            a.apply_into(v, out);
            for t in &mut out[start..] {
                t.1 *= alpha;
            }
        })
    }

    /// `[self, other] = self∘other - other∘self`.
    pub fn commutator(&self, other: &SparseKernel) -> SparseKernel {
        self.compose(other).combine(
            C64::new(1.0, 0.0),
            &other.compose(self),
            C64::new(-1.0, 0.0),
        )
    }

    /// Same rule with a different declared radius.
    pub fn with_radius(&self, radius: i32) -> SparseKernel {
        Self {
            tag: self.tag,
            radius,
            rule: self.rule.clone(),
        }
    }
}

/// Merge like terms (sorted by label) and drop exact zeros.
pub fn merge_terms(raw: Terms) -> Terms {
    let mut map: BTreeMap<Label, C64> = BTreeMap::new();
    for (l, c) in raw {
        *map.entry(l).or_insert(C64::new(0.0, 0.0)) += c;
    }
    map.into_iter()
        .filter(|(_, c)| c.norm_sqr() != 0.0)
        .collect()
}

/// An antilinear operator `J(Σ c_v v) = Σ conj(c_v) J v`, stored through its
/// values on basis vectors.
#[derive(Clone, Debug)]
pub struct AntiKernel {
    pub on_basis: SparseKernel,
}

impl AntiKernel {
    pub fn new(on_basis: SparseKernel) -> Self {
        Self { on_basis }
    }

    /// Apply to a linear combination, conjugating its coefficients.
    pub fn apply_vec(&self, vec: &[(Label, C64)]) -> Terms {
        let conj: Terms = vec.iter().map(|(l, c)| (l.clone(), c.conj())).collect();
        self.on_basis.apply_vec(&conj)
    }

    /// The linear operator `self ∘ k ∘ inv`, where `inv` is the antilinear inverse.
    pub fn conjugate(&self, k: &SparseKernel, inv: &AntiKernel) -> SparseKernel {
        let (j, k, inv) = (self.clone(), k.clone(), inv.clone());
        let radius = k.radius() + j.on_basis.radius() + inv.on_basis.radius();
        SparseKernel::new(k.tag(), radius, move |v, out| {
            let start = vec![(v.clone(), C64::new(1.0, 0.0))];
            let w = inv.apply_vec(&start);
            let kw = k.apply_vec(&w);
            out.extend(j.apply_vec(&kw));
        })
    }

    /// Antilinear composition `self ∘ other` is linear.
    pub fn compose_anti(&self, other: &AntiKernel) -> SparseKernel {
        let (a, b) = (self.clone(), other.clone());
        let radius = a.on_basis.radius() + b.on_basis.radius();
        SparseKernel::new(a.on_basis.tag(), radius, move |v, out| {
            let w = b.apply_vec(&[(v.clone(), C64::new(1.0, 0.0))]);
            out.extend(a.apply_vec(&w));
        })
    }

    /// Composition with a linear operator on the right, `self ∘ k`, is antilinear.
    pub fn after(&self, k: &SparseKernel) -> AntiKernel {
        let (a, k) = (self.clone(), k.clone());
        let radius = a.on_basis.radius() + k.radius();
        AntiKernel::new(SparseKernel::new(k.tag(), radius, move |v, out| {
            let w = k.apply_vec(&[(v.clone(), C64::new(1.0, 0.0))]);
            out.extend(a.apply_vec(&w));
        }))
    }

    /// Composition with a linear operator on the left, `k ∘ self`, is antilinear.
    pub fn before(&self, k: &SparseKernel) -> AntiKernel {
        AntiKernel::new(k.compose(&self.on_basis))
    }
}
