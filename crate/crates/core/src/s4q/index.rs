//! Deformed gamma matrices, the idempotent `e`, and the index pairings on
//! the Fock and chiral Fredholm modules.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::kernels::{chiral_kernel, fock_kernel, S4Gen};
use super::{chiral_basis, fock_basis, S4Space};
use crate::error::{Error, Result};
use crate::opalg::{
    block_commutator, block_diagonal, materialize, materialize_block, product_diagonal,
    sup_decay_ratio, AlgebraTag, Label, SparseKernel, TraceFactor, TruncatedBasis,
};
use crate::qcore::{DeformationParam, HalfInt};

type Mat4 = [[f64; 4]; 4];

/// The five gamma matrices `γ_0, γ_{±1}, γ_{±2}` and the twist
/// `η = diag(q⁴, q⁻², q², q⁻⁴)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaSet {
    pub g0: Mat4,
    pub g1: Mat4,
    pub gm1: Mat4,
    pub g2: Mat4,
    pub gm2: Mat4,
    pub eta: [f64; 4],
}

impl GammaSet {
    pub fn new(q: DeformationParam) -> Self {
        let q = q.value();
        let z = [0.0; 4];
        GammaSet {
            g0: [
                [1.0, 0.0, 0.0, 0.0],
                [0.0, -q * q, 0.0, 0.0],
                [0.0, 0.0, -q * q, 0.0],
                [0.0, 0.0, 0.0, q.powi(4)],
            ],
            g1: [[0.0, 0.0, -q, 0.0], [0.0, 0.0, 0.0, q.powi(3)], z, z],
            gm1: [z, z, [-1.0 / q, 0.0, 0.0, 0.0], [0.0, q, 0.0, 0.0]],
            g2: [[0.0, q.powi(3), 0.0, 0.0], z, [0.0, 0.0, 0.0, q.powi(3)], z],
            gm2: [
                z,
                [q.powi(-3), 0.0, 0.0, 0.0],
                z,
                [0.0, 0.0, q.powi(-3), 0.0],
            ],
            eta: [q.powi(4), q.powi(-2), q * q, q.powi(-4)],
        }
    }

    /// `γ_i` for `i ∈ {0, ±1, ±2}`.
    pub fn gamma(&self, i: i32) -> Result<&Mat4> {
        match i {
            0 => Ok(&self.g0),
            1 => Ok(&self.g1),
            -1 => Ok(&self.gm1),
            2 => Ok(&self.g2),
            -2 => Ok(&self.gm2),
            _ => Err(Error::InvalidParam(format!(
                "gamma index {i} not in {{0,±1,±2}}"
            ))),
        }
    }

    /// The generator paired with `γ_i` in `e = ½(1 + Σ γ_i x_i)`.
    pub fn generator(i: i32) -> S4Gen {
        match i {
            0 => S4Gen::X0,
            1 => S4Gen::X1,
            -1 => S4Gen::X1Star,
            2 => S4Gen::X2,
            _ => S4Gen::X2Star,
        }
    }
}

fn mat_mul(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut c = [[0.0; 4]; 4];
    for i in 0..4 {
        for k in 0..4 {
            if a[i][k] != 0.0 {
                for j in 0..4 {
                    c[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    c
}

fn triple(g: &GammaSet, i: i32, j: i32, k: i32, twisted: bool) -> Result<f64> {
    let m = mat_mul(&mat_mul(g.gamma(i)?, g.gamma(j)?), g.gamma(k)?);
    Ok((0..4)
        .map(|a| if twisted { g.eta[a] * m[a][a] } else { m[a][a] })
        .sum())
}

/// `Tr_{C⁴}(η γ_i γ_j γ_k)`.
pub fn gamma_trace(i: i32, j: i32, k: i32, q: DeformationParam) -> Result<C64> {
    Ok(C64::new(triple(&GammaSet::new(q), i, j, k, true)?, 0.0))
}

/// `Tr_{C⁴}(γ_i γ_j γ_k)` without the twist.
pub fn gamma_trace_plain(i: i32, j: i32, k: i32, q: DeformationParam) -> Result<C64> {
    Ok(C64::new(triple(&GammaSet::new(q), i, j, k, false)?, 0.0))
}

/// `e = ½(1 + Σ_i γ_i x_i)` as a `4×4` array of kernels, with `x_i` supplied
/// by `kernel`. Entries that vanish identically are `None`.
pub fn idempotent_from_gammas(
    gammas: &GammaSet,
    tag: AlgebraTag,
    kernel: impl Fn(S4Gen) -> SparseKernel,
) -> Vec<Vec<Option<SparseKernel>>> {
    let ks: Vec<(i32, SparseKernel)> = [0, 1, -1, 2, -2]
        .iter()
        .map(|&i| (i, kernel(GammaSet::generator(i))))
        .collect();
    let mut out = vec![vec![None; 4]; 4];
    for (a, row) in out.iter_mut().enumerate() {
        for (b, slot) in row.iter_mut().enumerate() {
            let mut acc: Option<SparseKernel> =
                (a == b).then(|| SparseKernel::identity(tag).scale(C64::new(0.5, 0.0)));
            for (i, k) in &ks {
                let c = gammas.gamma(*i).expect("valid index")[a][b];
                if c != 0.0 {
                    let term = k.scale(C64::new(0.5 * c, 0.0));
                    acc = Some(match acc {
                        None => term,
                        Some(x) => x.add(&term),
                    });
                }
            }
            *slot = acc;
        }
    }
    out
}

/// The idempotent `e` on the chiral (both chiralities) or Fock space.
pub fn idempotent_e(space: S4Space, q: DeformationParam) -> Result<Vec<Vec<Option<SparseKernel>>>> {
    let g = GammaSet::new(q);
    match space {
        S4Space::Chiral => Ok(idempotent_from_gammas(&g, AlgebraTag::S4Chiral, |x| {
            chiral_kernel(x, q, None)
        })),
        S4Space::Fock => Ok(idempotent_from_gammas(&g, AlgebraTag::Fock, |x| {
            fock_kernel(x, q)
        })),
        S4Space::Scalar => Err(Error::InvalidParam(
            "the index pairing uses the chiral or Fock space".into(),
        )),
    }
}

/// Position of the chirality (or Fock sector) component.
fn sector_slot(tag: AlgebraTag) -> usize {
    if tag == AlgebraTag::Fock {
        2
    } else {
        4
    }
}

/// `F` swaps the two summands.
pub(crate) fn sign_f(tag: AlgebraTag) -> SparseKernel {
    let slot = sector_slot(tag);
    SparseKernel::new(tag, 0, move |v, out| {
        if v.tag == tag && super::admissible(v) {
            let mut w = v.clone();
            w.comps[slot] = -w.comps[slot];
            out.push((w, C64::new(1.0, 0.0)));
        }
    })
}

/// `γF`, with `γ = ±1` on the `±` summand.
pub(crate) fn gamma_f(tag: AlgebraTag) -> SparseKernel {
    let slot = sector_slot(tag);
    SparseKernel::new(tag, 0, move |v, out| {
        if v.tag == tag && super::admissible(v) {
            let mut w = v.clone();
            w.comps[slot] = -w.comps[slot];
            let g = w.comps[slot] as f64;
            out.push((w, C64::new(g, 0.0)));
        }
    })
}

fn all_sources(
    basis: &TruncatedBasis,
    c: usize,
    weight: impl Fn(&Label, usize) -> f64,
) -> (Vec<u32>, Vec<f64>) {
    let mut src = Vec::with_capacity(basis.len() * c);
    let mut wts = Vec::with_capacity(basis.len() * c);
    for (i, v) in basis.labels().iter().enumerate() {
        for a in 0..c {
            src.push((i * c + a) as u32);
            wts.push(weight(v, a));
        }
    }
    (src, wts)
}

fn weighted_sum(diag: &[C64], w: &[f64]) -> f64 {
    diag.iter().zip(w).fold(0.0, |acc, (d, w)| acc + d.re * w)
}

/// `¼(1-q²)² Tr(γF[F,x0])` on the Fock space with `k1 + k2 ≤ cutoff`.
///
/// `[F, x0]` is diagonal in `(k1, k2)`, so every basis vector contributes.
pub fn fock_index(q: DeformationParam, cutoff: u32) -> Result<f64> {
    let tag = AlgebraTag::Fock;
    let basis = fock_basis(cutoff);
    let comm = sign_f(tag).commutator(&fock_kernel(S4Gen::X0, q));
    let m = materialize(&gamma_f(tag).compose(&comm), &basis);
    let qv = q.value();
    Ok(0.25 * (1.0 - qv * qv).powi(2) * m.trace().re)
}

fn chiral_factors(
    q: DeformationParam,
    cutoff: HalfInt,
) -> (TruncatedBasis, TraceFactor, TraceFactor) {
    let tag = AlgebraTag::S4Chiral;
    let basis = chiral_basis(cutoff, None);
    let e = idempotent_from_gammas(&GammaSet::new(q), tag, |x| chiral_kernel(x, q, None));
    let comm = block_commutator(&sign_f(tag), &e);
    let m = TraceFactor::new(materialize_block(&comm, &basis));
    let g = TraceFactor::new(materialize_block(&block_diagonal(&gamma_f(tag), 4), &basis));
    (basis, g, m)
}

fn require_chiral_cutoff(cutoff: HalfInt) -> Result<()> {
    if cutoff.twice < 9 {
        return Err(Error::InvalidParam(format!(
            "chiral cutoff must be at least 9/2, got {cutoff}"
        )));
    }
    Ok(())
}

/// `½ Tr_{ℋ⊗C⁴}(γF[F,e])` over all chiral labels with `l ≤ cutoff`.
///
/// `[F, x_i]` keeps `l` fixed (only the `±`-signed middle terms survive), so
/// the truncated trace is the exact partial sum over the shells `l ≤ cutoff`.
pub fn chiral_index(q: DeformationParam, cutoff: HalfInt) -> Result<f64> {
    require_chiral_cutoff(cutoff)?;
    let (basis, g, m) = chiral_factors(q, cutoff);
    let (src, wts) = all_sources(&basis, 4, |_, _| 1.0);
    let diag = product_diagonal(&[&g, &m], &src);
    Ok(0.5 * weighted_sum(&diag, &wts))
}

/// The generic term `f_{lj}(q)` of the index series.
pub fn f_lj(l: f64, j: f64, q: f64) -> f64 {
    let r = (1.0 + q * q) / (1.0 - q * q);
    let first = (2.0 * j + 1.0) * (1.0 + q.powf(4.0 * j + 2.0)) - r * (1.0 - q.powf(4.0 * j + 2.0));
    let den = (1.0 - q.powf(4.0 * l + 4.0))
        * (1.0 - q.powf(4.0 * l + 8.0))
        * (1.0 - q.powf(4.0 * j))
        * (1.0 - q.powf(4.0 * j + 4.0));
    let second = (l - j + 1.0) * (1.0 + q.powf(4.0 * l + 6.0)) * (1.0 + q.powf(4.0 * j + 2.0))
        - r * q * q * (q.powf(4.0 * j) - q.powf(4.0 * l + 4.0));
    (1.0 - q * q).powi(4) * first / den * q.powf(2.0 * l - 1.0) * second
}

/// Partial sum of `f_{lj}(q)` over `l ∈ ℕ+½`, `l ≤ cutoff`, `j = ½..l`.
pub fn chiral_index_series(q: DeformationParam, cutoff: HalfInt) -> f64 {
    let qv = q.value();
    let mut total = 0.0;
    let mut l2 = 1;
    while l2 <= cutoff.twice {
        let mut j2 = 1;
        while j2 <= l2 {
            total += f_lj(l2 as f64 / 2.0, j2 as f64 / 2.0, qv);
            j2 += 2;
        }
        l2 += 2;
    }
    total
}

/// `Tr_{ℋ⊗C⁴}(η K1⁻⁸K2⁻⁶ γF[F,e]⁵)` over chiral labels with `l ≤ cutoff`,
/// with `K1⁻⁸K2⁻⁶ → q^{-(2m1+6m2)}`.
pub fn twisted_pairing4(q: DeformationParam, cutoff: HalfInt) -> Result<f64> {
    require_chiral_cutoff(cutoff)?;
    let (basis, g, m) = chiral_factors(q, cutoff);
    let qv = q.value();
    let eta = GammaSet::new(q).eta;
    let (src, wts) = all_sources(&basis, 4, |v, a| {
        eta[a] * qv.powf(-(v.comps[1] as f64 + 3.0 * v.comps[2] as f64))
    });
    let diag = product_diagonal(&[&g, &m, &m, &m, &m, &m], &src);
    Ok(weighted_sum(&diag, &wts))
}

/// Largest coefficient of `K1⁻⁸K2⁻⁶[F,x0][F,x1][F,x2]` relative to `q^{j/3}`
/// over chiral labels with `l ≤ cutoff`.
pub fn twisted_certificate(q: DeformationParam, cutoff: HalfInt) -> f64 {
    let tag = AlgebraTag::S4Chiral;
    let f = sign_f(tag);
    let qv = q.value();
    let weight = SparseKernel::diagonal(tag, move |v: &Label| {
        C64::new(qv.powf(-(v.comps[1] as f64 + 3.0 * v.comps[2] as f64)), 0.0)
    });
    let c = |g| f.commutator(&chiral_kernel(g, q, None));
    let k = weight
        .compose(&c(S4Gen::X0))
        .compose(&c(S4Gen::X1))
        .compose(&c(S4Gen::X2));
    let basis = chiral_basis(cutoff, None);
    sup_decay_ratio(&k, &basis, &|v: &Label| qv.powf(v.comps[3] as f64 / 6.0))
}
