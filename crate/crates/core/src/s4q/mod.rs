//! The quantum orthogonal 4-sphere: `U_q(so(5))` representation data, the
//! scalar, chiral and Fock representations, index pairings, the Haar state,
//! deformed gamma matrices, zeta functions and the real structure.
//!
//! Scalar labels are `(2l, 2m1, 2m2, 2j)`, chiral labels append the chirality
//! `±1`, and Fock labels are `(k1, k2, ±1)`.

mod coeffs;
mod haar;
mod index;
mod kernels;
mod real;
mod zeta;

pub use coeffs::{epsilon, ChiralCoefficients, ScalarCoefficients, So5Coefficients};
pub use haar::{
    haar_classical, haar_formula, haar_formula_corrected, haar_gns, haar_monomial, haar_vector,
    monomial_word,
};
pub use index::{
    chiral_index, chiral_index_series, f_lj, fock_index, gamma_trace, gamma_trace_plain,
    idempotent_e, idempotent_from_gammas, twisted_certificate, twisted_pairing4, GammaSet,
};
pub use kernels::{
    chiral_kernel, crossed_relations, defining_relations, equivariant_generators, fock_generators,
    fock_kernel, generators, scalar_kernel, seven_polynomials, so5_kernel, S4Gen, So5,
};
pub use real::{
    f_closed_form, f_from_coefficients, f_matrix_element, real_structure_j4, weak_real_decay4,
};
pub use zeta::{
    dim_vl, dim_vl_scalar, top_residue4, x2x2_remainders, x2x2_shell_trace, zeta4, zeta4_closed,
    zeta4_tail_bound,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::opalg::{AlgebraTag, Label, TruncatedBasis};
use crate::qcore::HalfInt;

/// Which representation space of the 4-sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum S4Space {
    Scalar,
    Chiral,
    Fock,
}

impl S4Space {
    pub fn tag(self) -> AlgebraTag {
        match self {
            S4Space::Scalar => AlgebraTag::S4Scalar,
            S4Space::Chiral => AlgebraTag::S4Chiral,
            S4Space::Fock => AlgebraTag::Fock,
        }
    }
}

/// A basis vector `|l, m1, m2; j⟩` of the scalar space, or `|l, m1, m2; j⟩±`
/// of the chiral space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct S4Label {
    pub l: HalfInt,
    pub m1: HalfInt,
    pub m2: HalfInt,
    pub j: HalfInt,
    pub chirality: Option<i8>,
}

impl S4Label {
    pub fn scalar(l: HalfInt, m1: HalfInt, m2: HalfInt, j: HalfInt) -> Self {
        Self {
            l,
            m1,
            m2,
            j,
            chirality: None,
        }
    }

    pub fn chiral(l: HalfInt, m1: HalfInt, m2: HalfInt, j: HalfInt, chirality: i8) -> Self {
        Self {
            l,
            m1,
            m2,
            j,
            chirality: Some(chirality),
        }
    }

    pub fn to_label(&self) -> Label {
        match self.chirality {
            None => Label::new(
                AlgebraTag::S4Scalar,
                &[self.l.twice, self.m1.twice, self.m2.twice, self.j.twice],
            ),
            Some(c) => Label::new(
                AlgebraTag::S4Chiral,
                &[
                    self.l.twice,
                    self.m1.twice,
                    self.m2.twice,
                    self.j.twice,
                    c as i32,
                ],
            ),
        }
    }

    pub fn from_label(v: &Label) -> Result<Self> {
        let h = HalfInt::from_twice;
        match (v.tag, v.comps.len()) {
            (AlgebraTag::S4Scalar, 4) => Ok(Self::scalar(
                h(v.comps[0]),
                h(v.comps[1]),
                h(v.comps[2]),
                h(v.comps[3]),
            )),
            (AlgebraTag::S4Chiral, 5) => Ok(Self::chiral(
                h(v.comps[0]),
                h(v.comps[1]),
                h(v.comps[2]),
                h(v.comps[3]),
                v.comps[4] as i8,
            )),
            _ => Err(Error::WrongAlgebra {
                expected: AlgebraTag::S4Chiral,
                found: v.tag,
            }),
        }
    }

    /// The `ε ∈ {0, ±½}` with `l + ε - j - m2 ∈ 2ℕ`.
    pub fn epsilon(&self) -> f64 {
        epsilon(self.l.to_f64(), self.j.to_f64(), self.m2.to_f64())
    }

    pub fn is_admissible(&self) -> bool {
        admissible(&self.to_label())
    }
}

/// Admissibility of a scalar or chiral label (Fock labels only need `k ≥ 0`).
pub fn admissible(v: &Label) -> bool {
    match (v.tag, v.comps.len()) {
        (AlgebraTag::S4Scalar, 4) => {
            admissible_scalar(v.comps[0], v.comps[1], v.comps[2], v.comps[3])
        }
        (AlgebraTag::S4Chiral, 5) => {
            (v.comps[4] == 1 || v.comps[4] == -1)
                && admissible_chiral(v.comps[0], v.comps[1], v.comps[2], v.comps[3])
        }
        (AlgebraTag::Fock, 3) => {
            v.comps[0] >= 0 && v.comps[1] >= 0 && (v.comps[2] == 1 || v.comps[2] == -1)
        }
        _ => false,
    }
}

/// `l ∈ ℕ`, `j = 0..l`, `j - |m1| ∈ ℕ`, `l - j - |m2| ∈ 2ℕ` (doubled arguments).
pub(crate) fn admissible_scalar(l2: i32, m12: i32, m22: i32, j2: i32) -> bool {
    l2 >= 0
        && l2 % 2 == 0
        && j2 >= 0
        && j2 % 2 == 0
        && j2 <= l2
        && m12 % 2 == 0
        && j2 >= m12.abs()
        && m22 % 2 == 0
        && l2 - j2 - m22.abs() >= 0
        && (l2 - j2 - m22.abs()) % 4 == 0
}

/// `l ∈ ℕ+½`, `j = ½..l`, `j - |m1| ∈ ℕ`, `l + ½ - j - |m2| ∈ ℕ` (doubled arguments).
pub(crate) fn admissible_chiral(l2: i32, m12: i32, m22: i32, j2: i32) -> bool {
    l2 > 0
        && l2 % 2 == 1
        && j2 > 0
        && j2 % 2 == 1
        && j2 <= l2
        && (j2 - m12.abs()) >= 0
        && (j2 - m12).rem_euclid(2) == 0
        && l2 + 1 - j2 - m22.abs() >= 0
        && (l2 + 1 - j2 - m22).rem_euclid(2) == 0
}

/// Labels of `V_l` for a single `l` (scalar for integral `l`, chiral otherwise).
pub fn shell_labels(l2: i32, chirality: Option<i32>) -> Vec<Label> {
    let mut out = Vec::new();
    let start = if l2 % 2 == 0 { 0 } else { 1 };
    let mut j2 = start;
    while j2 <= l2 {
        for m12 in (-j2..=j2).step_by(2) {
            let span = l2 - j2 + l2 % 2;
            for m22 in (-span..=span).step_by(2) {
                let ok = match chirality {
                    None => admissible_scalar(l2, m12, m22, j2),
                    Some(_) => admissible_chiral(l2, m12, m22, j2),
                };
                if !ok {
                    continue;
                }
                match chirality {
                    None => out.push(Label::new(AlgebraTag::S4Scalar, &[l2, m12, m22, j2])),
                    Some(c) => out.push(Label::new(AlgebraTag::S4Chiral, &[l2, m12, m22, j2, c])),
                }
            }
        }
        j2 += 2;
    }
    out
}

/// Scalar basis with `l ≤ cutoff`.
pub fn scalar_basis(cutoff: HalfInt) -> TruncatedBasis {
    let mut labels = Vec::new();
    let mut l2 = 0;
    while l2 <= cutoff.twice {
        labels.extend(shell_labels(l2, None));
        l2 += 2;
    }
    TruncatedBasis::new(AlgebraTag::S4Scalar, cutoff, labels)
}

/// Chiral basis of `ℋ_+ ⊕ ℋ_-` with `l ≤ cutoff`, or one chirality only.
pub fn chiral_basis(cutoff: HalfInt, chirality: Option<i32>) -> TruncatedBasis {
    let chis: Vec<i32> = match chirality {
        Some(c) => vec![c],
        None => vec![1, -1],
    };
    let mut labels = Vec::new();
    for c in chis {
        let mut l2 = 1;
        while l2 <= cutoff.twice {
            labels.extend(shell_labels(l2, Some(c)));
            l2 += 2;
        }
    }
    TruncatedBasis::new(AlgebraTag::S4Chiral, cutoff, labels)
}

/// Fock basis of both sectors with `k1 + k2 ≤ cutoff`.
pub fn fock_basis(cutoff: u32) -> TruncatedBasis {
    let k = cutoff as i32;
    let mut labels = Vec::new();
    for s in [1, -1] {
        for k1 in 0..=k {
            for k2 in 0..=(k - k1) {
                labels.push(Label::new(AlgebraTag::Fock, &[k1, k2, s]));
            }
        }
    }
    TruncatedBasis::new(AlgebraTag::Fock, HalfInt::from_int(k), labels)
}
