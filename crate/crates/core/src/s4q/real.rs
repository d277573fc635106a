//! The real structure `J|l,m1,m2;j⟩± = i^{2l+1}(-1)^{j+m1}|l,-m1,-m2;j⟩±`
//! and the decay of the commutators `[a, JbJ]`.

use num_complex::Complex64 as C64;

use super::coeffs::ChiralCoefficients;
use super::kernels::{chiral_kernel, S4Gen};
use super::{admissible, chiral_basis};
use crate::error::{Error, Result};
use crate::opalg::{sup_decay_ratio, AlgebraTag, AntiKernel, Label, SparseKernel};
use crate::qcore::{DeformationParam, HalfInt};

/// `J` on the chiral space, extended antilinearly.
pub fn real_structure_j4() -> AntiKernel {
    let tag = AlgebraTag::S4Chiral;
    AntiKernel::new(SparseKernel::new(tag, 0, move |v, out| {
        if v.tag != tag || !admissible(v) {
            return;
        }
        let (l2, m12, m22, j2) = (v.comps[0], v.comps[1], v.comps[2], v.comps[3]);
        let phase = match (l2 + 1).rem_euclid(4) {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(0.0, 1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, -1.0),
        };
        let sign = if ((j2 + m12) / 2).rem_euclid(2) == 0 {
            1.0
        } else {
            -1.0
        };
        let mut w = v.clone();
        w.comps[1] = -m12;
        w.comps[2] = -m22;
        out.push((w, phase * sign));
    }))
}

/// `JbJ` for a generator `b`.
fn opposite(b: S4Gen, q: DeformationParam) -> SparseKernel {
    let j = real_structure_j4();
    j.conjugate(&chiral_kernel(b, q, None), &j)
}

/// `±⟨l+1,m1,m2;j|[x2, J x2 J]|l,m1,m2;j⟩±` computed from the kernels, with
/// `m1 = j`.
pub fn f_matrix_element(
    q: DeformationParam,
    l: HalfInt,
    j: HalfInt,
    m2: HalfInt,
    chirality: i32,
) -> Result<f64> {
    let src = Label::new(
        AlgebraTag::S4Chiral,
        &[l.twice, j.twice, m2.twice, j.twice, chirality],
    );
    if !admissible(&src) {
        return Err(Error::Domain(format!("label {src} is not admissible")));
    }
    let x2 = chiral_kernel(S4Gen::X2, q, None);
    let comm = x2.commutator(&opposite(S4Gen::X2, q));
    let tgt = src.shifted(&[(0, 2)]);
    let out = comm.apply(&src)?;
    let val: C64 = out.iter().filter(|(t, _)| *t == tgt).map(|(_, c)| *c).sum();
    Ok(chirality as f64 * val.re)
}

/// `f(l,j,m2) = D⁰_{l+1,j,m2-1}D⁺_{l,j,-m2} - D⁺_{l,j,m2-1}D⁰_{l,j,-m2}
/// + D⁰_{l+1,j,-m2-1}D⁺_{l,j,m2} - D⁺_{l,j,-m2-1}D⁰_{l,j,m2}`.
pub fn f_from_coefficients(q: DeformationParam, l: f64, j: f64, m2: f64) -> f64 {
    let c = ChiralCoefficients { q };
    c.d_zero(l + 1.0, j, m2 - 1.0) * c.d_plus(l, j, -m2)
        - c.d_plus(l, j, m2 - 1.0) * c.d_zero(l, j, -m2)
        + c.d_zero(l + 1.0, j, -m2 - 1.0) * c.d_plus(l, j, m2)
        - c.d_plus(l, j, -m2 - 1.0) * c.d_zero(l, j, m2)
}

/// `f(l,½,l) = -q^{-l-4}(1-q²)²[2](q^{l-1}+q^{-l+1}) √[2l+3] [l+1][l+2][l+3]
/// / ([2l+2][2l+4]²[2l+6])`.
pub fn f_closed_form(q: DeformationParam, l: f64) -> f64 {
    let qv = q.value();
    let n = |x: f64| q.num(x);
    -q.pow(-l - 4.0)
        * (1.0 - qv * qv).powi(2)
        * n(2.0)
        * (q.pow(l - 1.0) + q.pow(-l + 1.0))
        * n(2.0 * l + 3.0).sqrt()
        * n(l + 1.0)
        * n(l + 2.0)
        * n(l + 3.0)
        / (n(2.0 * l + 2.0) * n(2.0 * l + 4.0).powi(2) * n(2.0 * l + 6.0))
}

/// Largest coefficient of `[a, JbJ]` relative to `q^{2j}` over chiral labels
/// with `l ≤ cutoff`.
pub fn weak_real_decay4(a: S4Gen, b: S4Gen, q: DeformationParam, cutoff: HalfInt) -> f64 {
    let comm = chiral_kernel(a, q, None).commutator(&opposite(b, q));
    let basis = chiral_basis(cutoff, None);
    let qv = q.value();
    sup_decay_ratio(&comm, &basis, &|v: &Label| qv.powi(v.comps[3]))
}
