//! The symbol representation `ρ` on `Ĥ`, the partial isometry `W`, and the
//! residuals `π(z_i) - W*ρ(z_i)W`.
//!
//! `Λ`-labels are stored as `(n, h, a_1..a_{ℓ-1}, b_0..b_{ℓ-1})`. The kernels
//! of `ρ` act on the lattice with `h` unbounded below, so that `ρ_1(u)` is
//! unitary and `ρ` is an exact representation; `W` only reaches `h ≥ 0` and
//! `W*` annihilates everything else.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::kernels::{left_regular_kernel, z_name};
use super::{enumerate_labels, label_of, require_rank, tableau_of, top_row, GTTableau};
use crate::error::{Error, Result};
use crate::opalg::{merge_terms, AlgebraTag, GeneratorSet, Label, SparseKernel};
use crate::qcore::DeformationParam;

/// A basis vector `|n,h;a,b⟩⟩` of `Ĥ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LambdaLabel {
    pub n: i64,
    pub h: i64,
    /// `a_1 ≤ … ≤ a_{ℓ-1}`.
    pub a: Vec<i64>,
    /// `b_0 ≤ … ≤ b_{ℓ-1}`.
    pub b: Vec<i64>,
}

impl LambdaLabel {
    pub fn ell(&self) -> usize {
        self.b.len()
    }

    /// `0 ≤ a_1 ≤ … ≤ a_{ℓ-1} ≤ n` and `b_0 ≤ … ≤ b_{ℓ-1} ≤ h`, with `n ≥ 0`.
    /// `h` itself is not required to be non-negative (see the module notes).
    pub fn in_lattice(&self) -> bool {
        let a_ok = self.a.first().map_or(true, |&a1| a1 >= 0)
            && self.a.windows(2).all(|w| w[0] <= w[1])
            && self.a.last().map_or(true, |&a| a <= self.n);
        let b_ok =
            self.b.windows(2).all(|w| w[0] <= w[1]) && self.b.last().map_or(true, |&b| b <= self.h);
        self.n >= 0 && a_ok && b_ok
    }

    /// Membership in `Λ` proper, that is the lattice with `h ≥ 0`.
    pub fn in_lambda(&self) -> bool {
        self.h >= 0 && self.in_lattice()
    }

    /// The extra constraints `b_1 ≥ 0` and `b_0 ≥ -a_1` under which `W*` is
    /// nonzero.
    pub fn satisfies_add(&self) -> bool {
        let a1 = self.a.first().copied().unwrap_or(0);
        self.b.len() >= 2 && self.b[1] >= 0 && self.b[0] >= -a1
    }

    pub fn to_label(&self) -> Label {
        let mut comps = vec![self.n as i32, self.h as i32];
        comps.extend(self.a.iter().map(|&x| x as i32));
        comps.extend(self.b.iter().map(|&x| x as i32));
        Label::new(AlgebraTag::OddLambda, &comps)
    }

    pub fn from_label(v: &Label) -> Result<Self> {
        decode_lambda(v).ok_or_else(|| Error::WrongAlgebra {
            expected: AlgebraTag::OddLambda,
            found: v.tag,
        })
    }

    /// `b_k` with `b_ℓ := h`.
    #[inline]
    fn bk(&self, k: usize) -> i64 {
        if k == self.ell() {
            self.h
        } else {
            self.b[k]
        }
    }
}

fn decode_lambda(v: &Label) -> Option<LambdaLabel> {
    if v.tag != AlgebraTag::OddLambda || v.comps.len() < 5 || v.comps.len() % 2 == 0 {
        return None;
    }
    let ell = (v.comps.len() - 1) / 2;
    let c: Vec<i64> = v.comps.iter().map(|&x| x as i64).collect();
    Some(LambdaLabel {
        n: c[0],
        h: c[1],
        a: c[2..ell + 1].to_vec(),
        b: c[ell + 1..].to_vec(),
    })
}

/// `λ(n,h,a,b)` as a [`Label`].
pub fn lambda_label(n: i64, h: i64, a: &[i64], b: &[i64]) -> Label {
    LambdaLabel {
        n,
        h,
        a: a.to_vec(),
        b: b.to_vec(),
    }
    .to_label()
}

/// `a_j = r_{ℓ+1-j,1} - h` and `b_k = h - r_{ℓ+1-k,k+1}`.
pub fn lambda_from_tableau(n: i64, h: i64, r: &GTTableau) -> LambdaLabel {
    let ell = r.ell;
    let a = (1..ell).map(|j| r.r(ell + 1 - j, 1) - h).collect();
    let b = (0..ell).map(|k| h - r.r(ell + 1 - k, k + 1)).collect();
    LambdaLabel { n, h, a, b }
}

/// The tableau with top row `(n+h, h, …, h, 0)`, row `ℓ+1-j` starting with
/// `a_j + h`, row `ℓ+1-k` ending with `h - b_k`, and `h` elsewhere. `None`
/// when the constraints `b_1 ≥ 0`, `b_0 ≥ -a_1` fail.
pub fn tableau_from_lambda(x: &LambdaLabel) -> Option<GTTableau> {
    let ell = x.ell();
    if x.h < 0 || !x.in_lattice() || !x.satisfies_add() {
        return None;
    }
    let mut rows = vec![top_row(ell, x.n, x.h)];
    for i in 2..=ell + 1 {
        let len = ell + 2 - i;
        let mut row = vec![x.h; len];
        let k = ell + 1 - i;
        if k >= 1 {
            row[0] = x.a[k - 1] + x.h;
        }
        row[len - 1] = x.h - x.b[k];
        rows.push(row);
    }
    let t = GTTableau { ell, rows };
    t.is_valid().then_some(t)
}

/// `W|n,h;r⟩ = |n,h;a(r),b(r)⟩⟩`.
pub fn w_kernel() -> SparseKernel {
    SparseKernel::new(AlgebraTag::OddSphere, 0, |v, out| {
        if v.tag != AlgebraTag::OddSphere {
            return;
        }
        if let Some(t) = tableau_of(v).filter(GTTableau::is_valid) {
            let (n, h) = (v.comps[0] as i64, v.comps[1] as i64);
            out.push((lambda_from_tableau(n, h, &t).to_label(), C64::new(1.0, 0.0)));
        }
    })
}

/// `W*|n,h;a,b⟩⟩ = |n,h;r(n,h;a,b)⟩` when the extra constraints hold, else 0.
pub fn w_star_kernel() -> SparseKernel {
    SparseKernel::new(AlgebraTag::OddLambda, 0, |v, out| {
        if let Some(x) = decode_lambda(v) {
            if let Some(t) = tableau_from_lambda(&x) {
                out.push((label_of(x.n, x.h, &t), C64::new(1.0, 0.0)));
            }
        }
    })
}

/// `ρ_i(A)` for `2 ≤ i ≤ ℓ+1`: the diagonal weight `q^{b_{i-1} - b_{i-2}}`.
fn rho_a(i: usize, q: DeformationParam) -> SparseKernel {
    SparseKernel::new(AlgebraTag::OddLambda, 0, move |v, out| {
        if let Some(x) = decode_lambda(v).filter(LambdaLabel::in_lattice) {
            let e = x.bk(i - 1) - x.bk(i - 2);
            out.push((v.clone(), C64::new(q.value().powi(e as i32), 0.0)));
        }
    })
}

/// Shift `b + i̲` (ones from position `i-1` on) and `h + 1`, or the inverse.
fn shift_b(x: &LambdaLabel, i: usize, up: bool) -> LambdaLabel {
    let d = if up { 1 } else { -1 };
    let mut y = x.clone();
    y.h += d;
    for (k, bk) in y.b.iter_mut().enumerate() {
        if k + 1 >= i {
            *bk += d;
        }
    }
    y
}

/// `ρ_i(B)` (or `ρ_i(B*)`) for `2 ≤ i ≤ ℓ+1`, weight `√(1 - q^{2(b_{i-1}-b_{i-2}+1)})`.
fn rho_b(i: usize, star: bool, q: DeformationParam) -> SparseKernel {
    let weight = move |x: &LambdaLabel| {
        let e = x.bk(i - 1) - x.bk(i - 2) + 1;
        (1.0 - q.value().powi(2 * e as i32)).max(0.0).sqrt()
    };
    SparseKernel::new(AlgebraTag::OddLambda, 2, move |v, out| {
        let Some(x) = decode_lambda(v).filter(LambdaLabel::in_lattice) else {
            return;
        };
        if star {
            let y = shift_b(&x, i, false);
            if y.in_lattice() {
                let w = weight(&y);
                if w != 0.0 {
                    out.push((y.to_label(), C64::new(w, 0.0)));
                }
            }
        } else {
            let w = weight(&x);
            if w != 0.0 {
                out.push((shift_b(&x, i, true).to_label(), C64::new(w, 0.0)));
            }
        }
    })
}

/// `ρ_1(u)` (or `u*`): `|n,h;a,b⟩⟩ ↦ |n,h±1;a,b±1⟩⟩`.
fn rho_u(star: bool) -> SparseKernel {
    SparseKernel::new(AlgebraTag::OddLambda, 2, move |v, out| {
        if let Some(x) = decode_lambda(v).filter(LambdaLabel::in_lattice) {
            out.push((shift_b(&x, 1, !star).to_label(), C64::new(1.0, 0.0)));
        }
    })
}

/// `ρ(z_j)` or `ρ(z_j)*` on `Ĥ`, composed from the tensor factors of
/// `φ(z_j)`: `u` or `B` in slot `j` and `A` in every later slot.
pub fn symbol_kernel(
    j: usize,
    star: bool,
    ell: usize,
    q: DeformationParam,
) -> Result<SparseKernel> {
    require_rank(ell)?;
    if j == 0 || j > ell + 1 {
        return Err(Error::InvalidParam(format!(
            "generator index {j} not in 1..={}",
            ell + 1
        )));
    }
    let mut diag = SparseKernel::identity(AlgebraTag::OddLambda);
    for k in (j + 1)..=ell + 1 {
        diag = diag.compose(&rho_a(k, q));
    }
    let head = if j == 1 {
        rho_u(star)
    } else {
        rho_b(j, star, q)
    };
    Ok(if star {
        diag.compose(&head)
    } else {
        head.compose(&diag)
    })
}

/// `z_j, z_j*` bound to the symbol kernels.
pub fn rho_generators(ell: usize, q: DeformationParam) -> Result<GeneratorSet> {
    let mut g = GeneratorSet::new();
    for j in 1..=ell + 1 {
        g.insert(z_name(j), symbol_kernel(j, false, ell, q)?);
        g.insert(format!("{}*", z_name(j)), symbol_kernel(j, true, ell, q)?);
    }
    Ok(g)
}

/// `π(x) - W*ρ(x)W` on the tableau space, for `x = z_j` or `z_j*`.
fn difference(j: usize, star: bool, ell: usize, q: DeformationParam) -> Result<SparseKernel> {
    let pi = left_regular_kernel(j, star, ell, q)?;
    let approx = w_star_kernel()
        .compose(&symbol_kernel(j, star, ell, q)?)
        .compose(&w_kernel());
    Ok(pi.combine(
        C64::new(1.0, 0.0),
        &approx.with_radius(2),
        C64::new(-1.0, 0.0),
    ))
}

fn sup_ratio(k: &SparseKernel, labels: &[Label], q: DeformationParam) -> f64 {
    let mut worst: f64 = 0.0;
    let mut buf = Vec::new();
    for v in labels {
        buf.clear();
        k.apply_into(v, &mut buf);
        let rate = q.value().powi(v.comps[1]);
        for (_, c) in merge_terms(std::mem::take(&mut buf)) {
            worst = worst.max(c.norm() / rate);
        }
    }
    worst
}

/// `sup |⟨t|π(x) - W*ρ(x)W|v⟩| / q^{h(v)}` over labels with `n+h ≤ cutoff`,
/// for `x = z_j` (or `z_j*` when `star`).
pub fn residual_bound(
    j: usize,
    star: bool,
    ell: usize,
    q: DeformationParam,
    cutoff: u32,
) -> Result<f64> {
    let basis = enumerate_labels(ell, cutoff)?;
    Ok(sup_ratio(&difference(j, star, ell, q)?, basis.labels(), q))
}

/// The same ratio for `p_ij = z_i* z_j` on the invariant subspace `n = h + N`,
/// with `W*ρ(p_ij)W` built from `ρ(z_i)*ρ(z_j)`.
pub fn cp_residual(
    i: usize,
    j: usize,
    ell: usize,
    q: DeformationParam,
    charge: i64,
    cutoff: u32,
) -> Result<f64> {
    let pi = left_regular_kernel(i, true, ell, q)?.compose(&left_regular_kernel(j, false, ell, q)?);
    let rho = symbol_kernel(i, true, ell, q)?.compose(&symbol_kernel(j, false, ell, q)?);
    let approx = w_star_kernel().compose(&rho).compose(&w_kernel());
    let diff = pi.combine(C64::new(1.0, 0.0), &approx, C64::new(-1.0, 0.0));
    let basis = enumerate_labels(ell, cutoff)?;
    let labels: Vec<Label> = basis
        .labels()
        .iter()
        .filter(|v| (v.comps[0] - v.comps[1]) as i64 == charge)
        .cloned()
        .collect();
    Ok(sup_ratio(&diff, &labels, q))
}
