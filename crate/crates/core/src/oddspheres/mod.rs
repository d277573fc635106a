//! Odd quantum spheres `S^{2ℓ+1}_q`: Gelfand-Tsetlin tableaux, the left
//! regular representation, the optimal Dirac operator, the symbol map, the
//! multiplicities of `|D|` and the noncommutative integral.
//!
//! A basis vector `|n,h;r⟩` is stored as the label `(n, h, rows 2..ℓ+1 of r)`;
//! the top row `(n+h, h, …, h, 0)` is implied by `n` and `h`.

mod coeffs;
mod integral;
mod kernels;
mod symbol;

pub use coeffs::{
    apply_move, cg_coeff, cg_radicand, cg_tilde, k_bound, moves, privileged_move, Move,
};
pub use integral::{
    c_const, c_const_corrected, decay_ideal_check, finite_diff_check, multiplicity,
    multiplicity_differences, multiplicity_weyl, nc_integral, weyl_dimension, DecayIdealCheck,
};
pub use kernels::{generators, left_regular_kernel, optimal_dirac, relations, z_name};
pub use symbol::{
    cp_residual, lambda_from_tableau, lambda_label, residual_bound, rho_generators, symbol_kernel,
    tableau_from_lambda, w_kernel, w_star_kernel, LambdaLabel,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::opalg::{AlgebraTag, Label, TruncatedBasis};
use crate::qcore::HalfInt;

/// A Gelfand-Tsetlin tableau of rank `ℓ`: row `i` (1-based) has `ℓ+2-i`
/// entries and the top-right entry is normalized to zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GTTableau {
    pub ell: usize,
    pub rows: Vec<Vec<i64>>,
}

impl GTTableau {
    /// Build from rows, checking shape, betweenness and normalization.
    pub fn new(ell: usize, rows: Vec<Vec<i64>>) -> Result<Self> {
        let t = Self { ell, rows };
        if !t.has_shape() {
            return Err(Error::InvalidParam(format!(
                "tableau rows do not have the shape of rank {ell}"
            )));
        }
        if !t.is_valid() {
            return Err(Error::Domain(format!(
                "{:?} violates betweenness or normalization",
                t.rows
            )));
        }
        Ok(t)
    }

    fn has_shape(&self) -> bool {
        self.rows.len() == self.ell + 1
            && self
                .rows
                .iter()
                .enumerate()
                .all(|(i, r)| r.len() == self.ell + 1 - i)
    }

    /// `r_{i,j}` with 1-based indices, zero out of range.
    #[inline]
    pub fn r(&self, i: usize, j: usize) -> i64 {
        if i == 0 || j == 0 || i > self.rows.len() {
            return 0;
        }
        self.rows[i - 1].get(j - 1).copied().unwrap_or(0)
    }

    /// Betweenness `r_{i,j} ≥ r_{i+1,j} ≥ r_{i,j+1}` and `r_{1,ℓ+1} = 0`.
    pub fn is_valid(&self) -> bool {
        if !self.has_shape() || self.r(1, self.ell + 1) != 0 {
            return false;
        }
        for i in 1..=self.ell {
            for j in 1..=(self.ell + 1 - i) {
                let below = self.r(i + 1, j);
                if self.r(i, j) < below || below < self.r(i, j + 1) {
                    return false;
                }
            }
        }
        true
    }

    /// The Young tableau `(r_{1,1}, …, r_{1,ℓ})`.
    pub fn young(&self) -> &[i64] {
        &self.rows[0][..self.ell]
    }
}

/// A basis vector `|n,h;r⟩` of `L²(S^{2ℓ+1}_q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OddLabel {
    pub n: i64,
    pub h: i64,
    pub tableau: GTTableau,
}

impl OddLabel {
    /// Checks that the tableau is valid with top row `(n+h, h, …, h, 0)`.
    pub fn new(n: i64, h: i64, tableau: GTTableau) -> Result<Self> {
        if n < 0 || h < 0 || !tableau.is_valid() || tableau.rows[0] != top_row(tableau.ell, n, h) {
            return Err(Error::Domain(format!(
                "({n},{h};{:?}) is not a basis label",
                tableau.rows
            )));
        }
        Ok(Self { n, h, tableau })
    }

    pub fn to_label(&self) -> Label {
        let mut comps = vec![self.n as i32, self.h as i32];
        for row in &self.tableau.rows[1..] {
            comps.extend(row.iter().map(|&x| x as i32));
        }
        Label::new(AlgebraTag::OddSphere, &comps)
    }

    /// Inverse of [`OddLabel::to_label`]; the rank is read off the length.
    pub fn from_label(v: &Label) -> Result<Self> {
        if v.tag != AlgebraTag::OddSphere {
            return Err(Error::WrongAlgebra {
                expected: AlgebraTag::OddSphere,
                found: v.tag,
            });
        }
        let t = tableau_of(v).ok_or_else(|| Error::Domain(format!("{v} has no tableau shape")))?;
        Self::new(v.comps[0] as i64, v.comps[1] as i64, t)
    }
}

/// `(n+h, h, …, h, 0)` with `ℓ+1` entries.
pub fn top_row(ell: usize, n: i64, h: i64) -> Vec<i64> {
    let mut row = vec![h; ell + 1];
    row[0] = n + h;
    row[ell] = 0;
    row
}

/// Rank encoded by the length of a tableau label, if the length fits.
pub(crate) fn rank_of(v: &Label) -> Option<usize> {
    let body = v.comps.len().checked_sub(2)?;
    (1..=8).find(|l| l * (l + 1) / 2 == body)
}

/// The full tableau of a label (no validity check).
pub(crate) fn tableau_of(v: &Label) -> Option<GTTableau> {
    let ell = rank_of(v)?;
    let (n, h) = (v.comps[0] as i64, v.comps[1] as i64);
    let mut rows = vec![top_row(ell, n, h)];
    let mut k = 2;
    for i in 2..=ell + 1 {
        let len = ell + 2 - i;
        rows.push(v.comps[k..k + len].iter().map(|&x| x as i64).collect());
        k += len;
    }
    Some(GTTableau { ell, rows })
}

/// Label of `(n, h, r)` from a full tableau.
pub(crate) fn label_of(n: i64, h: i64, t: &GTTableau) -> Label {
    let mut comps = vec![n as i32, h as i32];
    for row in &t.rows[1..] {
        comps.extend(row.iter().map(|&x| x as i32));
    }
    Label::new(AlgebraTag::OddSphere, &comps)
}

/// All GT tableaux below a given top row, in lexicographic order.
pub fn tableaux_with_top(ell: usize, top: &[i64]) -> Vec<GTTableau> {
    fn rec(ell: usize, rows: &mut Vec<Vec<i64>>, out: &mut Vec<GTTableau>) {
        let i = rows.len();
        if i == ell + 1 {
            out.push(GTTableau {
                ell,
                rows: rows.clone(),
            });
            return;
        }
        let prev = rows[i - 1].clone();
        let len = ell + 1 - i;
        let mut cur = vec![0i64; len];
        fill(ell, &prev, 0, &mut cur, rows, out);
    }
    fn fill(
        ell: usize,
        prev: &[i64],
        j: usize,
        cur: &mut Vec<i64>,
        rows: &mut Vec<Vec<i64>>,
        out: &mut Vec<GTTableau>,
    ) {
        if j == cur.len() {
            rows.push(cur.clone());
            rec(ell, rows, out);
            rows.pop();
            return;
        }
        for x in prev[j + 1]..=prev[j] {
            cur[j] = x;
            fill(ell, prev, j + 1, cur, rows, out);
        }
    }
    let mut out = Vec::new();
    let mut rows = vec![top.to_vec()];
    rec(ell, &mut rows, &mut out);
    out
}

pub(crate) fn require_rank(ell: usize) -> Result<()> {
    if !(2..=8).contains(&ell) {
        return Err(Error::InvalidParam(format!(
            "rank ℓ must lie in 2..=8, got {ell}"
        )));
    }
    Ok(())
}

/// All `|n,h;r⟩` at fixed `(n, h)`.
pub fn labels_at(ell: usize, n: i64, h: i64) -> Vec<OddLabel> {
    tableaux_with_top(ell, &top_row(ell, n, h))
        .into_iter()
        .map(|tableau| OddLabel { n, h, tableau })
        .collect()
}

/// All labels with `n + h ≤ cutoff`, in lexicographic order.
pub fn enumerate_labels(ell: usize, cutoff: u32) -> Result<TruncatedBasis> {
    require_rank(ell)?;
    let c = cutoff as i64;
    let mut labels = Vec::new();
    for n in 0..=c {
        for h in 0..=(c - n) {
            labels.extend(labels_at(ell, n, h).iter().map(OddLabel::to_label));
        }
    }
    Ok(TruncatedBasis::new(
        AlgebraTag::OddSphere,
        HalfInt::from_int(cutoff as i32),
        labels,
    ))
}
