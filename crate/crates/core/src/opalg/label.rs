//! Basis labels shared by every algebra.

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

/// Which representation space a label lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum AlgebraTag {
    /// Podleś sphere spinor space, components `(2l, 2m, sector)`.
    Podles,
    /// S⁴ scalar space, components `(2l, 2m1, 2m2, 2j)`.
    S4Scalar,
    /// S⁴ chiral space, components `(2l, 2m1, 2m2, 2j, chirality)`.
    S4Chiral,
    /// S⁴ Fock space, components `(k1, k2, sector)`.
    Fock,
    /// Odd sphere tableau labels, components `(n, h)` followed by rows `2..ℓ+1` of the tableau.
    OddSphere,
    /// Odd sphere symbol-space labels, components `(n, h, a_1.., b_0..)`.
    OddLambda,
    /// Plain integer labels used by tests and generic tooling.
    Generic,
}

impl AlgebraTag {
    /// Doubled value of the component that governs truncation.
    pub fn governing(self, comps: &[i32]) -> i32 {
        match self {
            AlgebraTag::Podles | AlgebraTag::S4Scalar | AlgebraTag::S4Chiral => comps[0],
            AlgebraTag::Fock | AlgebraTag::OddSphere | AlgebraTag::OddLambda => {
                2 * (comps[0] + comps[1])
            }
            AlgebraTag::Generic => 2 * comps[0],
        }
    }
}

/// Component storage: inline for up to twelve entries.
pub type Comps = SmallVec<[i32; 12]>;

/// An orthonormal basis vector, identified by its algebra and its integer tuple.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Label {
    pub tag: AlgebraTag,
    pub comps: Comps,
}

impl Label {
    pub fn new(tag: AlgebraTag, comps: &[i32]) -> Self {
        Self {
            tag,
            comps: Comps::from_slice(comps),
        }
    }

    /// Doubled value of the truncation-governing component.
    #[inline]
    pub fn governing(&self) -> i32 {
        self.tag.governing(&self.comps)
    }

    #[inline]
    pub fn get(&self, i: usize) -> i32 {
        self.comps[i]
    }

    /// Copy of the label with selected components shifted.
    pub fn shifted(&self, deltas: &[(usize, i32)]) -> Self {
        let mut out = self.clone();
        for &(i, d) in deltas {
            out.comps[i] += d;
        }
        out
    }
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}{:?}", self.tag, self.comps.as_slice())
    }
}
