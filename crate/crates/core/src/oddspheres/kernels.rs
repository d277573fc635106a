//! The left regular representation of `A(S^{2ℓ+1}_q)`, its defining
//! relations, and the optimal Dirac operator.

use num_complex::Complex64 as C64;

use super::coeffs::{apply_move, cg_coeff, moves, unapply_move};
use super::{label_of, require_rank, tableau_of, top_row};
use crate::error::Result;
use crate::opalg::{AlgebraTag, AlgebraWord, GeneratorSet, Label, SparseKernel, Terms};
use crate::qcore::DeformationParam;

/// Generator name `z{j}`.
pub fn z_name(j: usize) -> String {
    format!("z{j}")
}

/// Decoded source: `(n, h, tableau)` when `v` is a valid rank-`ell` label.
fn decode(ell: usize, v: &Label) -> Option<(i64, i64, super::GTTableau)> {
    if v.tag != AlgebraTag::OddSphere {
        return None;
    }
    let t = tableau_of(v)?;
    let (n, h) = (v.comps[0] as i64, v.comps[1] as i64);
    (t.ell == ell && n >= 0 && h >= 0 && t.is_valid()).then_some((n, h, t))
}

/// Matrix elements `⟨t|π(z*_{ℓ+2-i})|v⟩` for all targets `t`.
fn star_terms(ell: usize, i: usize, q: DeformationParam, v: &Label, out: &mut Terms) {
    let Some((n, h, r)) = decode(ell, v) else {
        return;
    };
    let (l, nf, hf) = (ell as f64, n as f64, h as f64);
    let qi = q.pow(1.0 - i as f64);
    let pre1 = q.pow(0.5 * (l + hf)) * (q.num(nf + 1.0) / q.num(nf + hf + l + 1.0)).sqrt();
    for m in moves(ell, i, 1) {
        let c = cg_coeff(i, &r, &m, q);
        if c != 0.0 {
            out.push((
                label_of(n + 1, h, &apply_move(&r, &m)),
                C64::new(pre1 * qi * c, 0.0),
            ));
        }
    }
    if h == 0 {
        return;
    }
    let pre2 = q.pow(-0.5 * nf) * (q.num(hf + l - 1.0) / q.num(nf + hf + l - 1.0)).sqrt();
    for m in moves(ell, i, ell + 1) {
        let c = cg_coeff(i, &r, &m, q);
        if c != 0.0 {
            out.push((
                label_of(n, h - 1, &apply_move(&r, &m)),
                C64::new(pre2 * qi * c, 0.0),
            ));
        }
    }
}

/// Matrix elements of the adjoint `π(z_{ℓ+2-i})`, found by undoing each move
/// and reading off the coefficient of the source it came from.
fn plain_terms(ell: usize, i: usize, q: DeformationParam, v: &Label, out: &mut Terms) {
    let Some((n, h, r)) = decode(ell, v) else {
        return;
    };
    let mut buf = Vec::new();
    for (first, (sn, sh)) in [(1, (n - 1, h)), (ell + 1, (n, h + 1))] {
        if sn < 0 {
            continue;
        }
        for m in moves(ell, i, first) {
            let u = unapply_move(&r, &m);
            if u.rows[0] != top_row(ell, sn, sh) || !u.is_valid() {
                continue;
            }
            let src = label_of(sn, sh, &u);
            buf.clear();
            star_terms(ell, i, q, &src, &mut buf);
            let c: C64 = buf.iter().filter(|(t, _)| t == v).map(|(_, c)| *c).sum();
            if c != C64::new(0.0, 0.0) {
                out.push((src, c.conj()));
            }
        }
    }
}

/// `π(z_j)` (or `π(z_j*)` when `star`) on the rank-`ell` tableau space.
pub fn left_regular_kernel(
    j: usize,
    star: bool,
    ell: usize,
    q: DeformationParam,
) -> Result<SparseKernel> {
    require_rank(ell)?;
    if j == 0 || j > ell + 1 {
        return Err(crate::Error::InvalidParam(format!(
            "generator index {j} not in 1..={}",
            ell + 1
        )));
    }
    let i = ell + 2 - j;
    Ok(if star {
        SparseKernel::new(AlgebraTag::OddSphere, 2, move |v, out| {
            star_terms(ell, i, q, v, out)
        })
    } else {
        SparseKernel::new(AlgebraTag::OddSphere, 2, move |v, out| {
            plain_terms(ell, i, q, v, out)
        })
    })
}

/// `z_j, z_j*` for `j = 1..ℓ+1`.
pub fn generators(ell: usize, q: DeformationParam) -> Result<GeneratorSet> {
    let mut g = GeneratorSet::new();
    for j in 1..=ell + 1 {
        g.insert(z_name(j), left_regular_kernel(j, false, ell, q)?);
        g.insert(
            format!("{}*", z_name(j)),
            left_regular_kernel(j, true, ell, q)?,
        );
    }
    Ok(g)
}

/// The defining relations, each written so that it must vanish:
/// `z_i z_j - q z_j z_i` (`i<j`), `z_i* z_j - q z_j z_i*` (`i≠j`),
/// `[z_1*, z_1]`, `[z_{i+1}*, z_{i+1}] - (1-q²) Σ_{j≤i} z_j z_j*`, and
/// `Σ z_i z_i* - 1`.
pub fn relations(ell: usize, q: DeformationParam) -> Vec<AlgebraWord> {
    let qv = q.value();
    let z = |j: usize| AlgebraWord::gen(&z_name(j));
    let zs = |j: usize| AlgebraWord::gen_star(&z_name(j));
    let mut rels = Vec::new();
    for i in 1..=ell + 1 {
        for j in (i + 1)..=ell + 1 {
            rels.push(z(i).mul(&z(j)).sub(&z(j).mul(&z(i)).scale_re(qv)));
        }
    }
    for i in 1..=ell + 1 {
        for j in (1..=ell + 1).filter(|&j| j != i) {
            rels.push(zs(i).mul(&z(j)).sub(&z(j).mul(&zs(i)).scale_re(qv)));
        }
    }
    rels.push(zs(1).commutator(&z(1)));
    for i in 1..=ell {
        let mut sum = AlgebraWord::zero();
        for j in 1..=i {
            sum = sum.add(&z(j).mul(&zs(j)));
        }
        rels.push(
            zs(i + 1)
                .commutator(&z(i + 1))
                .sub(&sum.scale_re(1.0 - qv * qv)),
        );
    }
    let mut sphere = AlgebraWord::scalar(-1.0);
    for j in 1..=ell + 1 {
        sphere = sphere.add(&z(j).mul(&zs(j)));
    }
    rels.push(sphere);
    rels
}

/// `D|n,h;r⟩ = -(h+1)` for `n = 0` and `n+h+1` otherwise.
pub fn optimal_dirac() -> SparseKernel {
    SparseKernel::diagonal(AlgebraTag::OddSphere, |v| {
        let (n, h) = (v.comps[0] as f64, v.comps[1] as f64);
        C64::new(if n == 0.0 { -(h + 1.0) } else { n + h + 1.0 }, 0.0)
    })
}
