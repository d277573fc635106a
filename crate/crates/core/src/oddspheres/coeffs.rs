//! Clebsch-Gordan coefficients `C_q(i, r, m)` of the left regular
//! representation, the exponent bound `K(i, r, m)`, and the limiting weights
//! `C̃_q(i, r, mⁱ)` of the privileged moves.

use super::GTTableau;
use crate::qcore::DeformationParam;

/// A move `m = (m_1, …, m_i)` with `1 ≤ m_k ≤ ℓ+2-k` (1-based entries).
pub type Move = Vec<usize>;

/// `r^{(m)}`: add one at `(k, m_k)` for `k ≤ i`, then subtract one everywhere
/// when `m_1 = ℓ+1`. The result is not checked for validity.
pub fn apply_move(r: &GTTableau, m: &[usize]) -> GTTableau {
    let shift = if m[0] == r.ell + 1 { 1 } else { 0 };
    let mut rows = r.rows.clone();
    for (k, &mk) in m.iter().enumerate() {
        rows[k][mk - 1] += 1;
    }
    for row in rows.iter_mut() {
        for x in row.iter_mut() {
            *x -= shift;
        }
    }
    GTTableau { ell: r.ell, rows }
}

/// Inverse of [`apply_move`].
pub fn unapply_move(r: &GTTableau, m: &[usize]) -> GTTableau {
    let shift = if m[0] == r.ell + 1 { 1 } else { 0 };
    let mut rows = r.rows.clone();
    for row in rows.iter_mut() {
        for x in row.iter_mut() {
            *x += shift;
        }
    }
    for (k, &mk) in m.iter().enumerate() {
        rows[k][mk - 1] -= 1;
    }
    GTTableau { ell: r.ell, rows }
}

/// All moves in `Γ^{(i)}` with a prescribed first entry.
pub fn moves(ell: usize, i: usize, first: usize) -> Vec<Move> {
    let mut out = vec![vec![first]];
    for k in 2..=i {
        let mut next = Vec::new();
        for m in &out {
            for mk in 1..=(ell + 2 - k) {
                let mut w = m.clone();
                w.push(mk);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// The privileged move `mⁱ = (ℓ+1, ℓ, …, ℓ+2-i)`.
pub fn privileged_move(ell: usize, i: usize) -> Move {
    (1..=i).map(|k| ell + 2 - k).collect()
}

/// `sign(x)` with `sign(0) = -1`.
fn sign(x: i64) -> f64 {
    if x > 0 {
        1.0
    } else {
        -1.0
    }
}

/// `C_q(i, r, m)`, zero when `r^{(m)}` is not a GT tableau.
///
/// Indices follow the 1-based convention with `r_{i,j} = 0` out of range,
/// empty sums `0` and empty products `1`. The sign factor
/// `Π_k sign(m_k - m_{k+1})` is taken with `sign(0) = -1`: with `sign(0) = 1`
/// the kernels miss the commutation relations at order one, and this choice
/// is the one that keeps the privileged-move coefficients positive.
pub fn cg_coeff(i: usize, r: &GTTableau, m: &[usize], q: DeformationParam) -> f64 {
    let ell = r.ell;
    debug_assert_eq!(m.len(), i);
    if !apply_move(r, m).is_valid() {
        return 0.0;
    }
    let mm = |k: usize| m[k - 1] as i64;
    let rr = |a: usize, b: usize| r.r(a, b);

    let mut e = 1 + mm(1) - 2 * mm(i) - rr(1, m[0]) + 2 * rr(i, m[i - 1]) - rr(i, ell + 2 - i);
    for k in 1..=(ell + 1 - i) {
        e += rr(i + 1, k) - rr(i, k);
    }
    let mut value = q.pow(0.5 * e as f64);

    for k in 1..i {
        value *= sign(mm(k) - mm(k + 1));
    }
    let rad = cg_radicand(i, r, m, q);
    debug_assert!(
        rad.is_finite(),
        "vanishing denominator at a valid move {m:?} on {:?}",
        r.rows
    );
    value * rad.max(0.0).sqrt()
}

/// Signed radicand of [`cg_coeff`], exposed so that tests can check it is
/// non-negative on every valid move.
pub fn cg_radicand(i: usize, r: &GTTableau, m: &[usize], q: DeformationParam) -> f64 {
    let ell = r.ell;
    let mm = |k: usize| m[k - 1] as i64;
    let rr = |a: usize, b: usize| r.r(a, b);
    let n = |x: i64| q.num(x as f64);
    let mut rad = 1.0;
    for k in 1..i {
        let (mk, mk1) = (m[k - 1], m[k]);
        for j in (1..=(ell + 2 - k)).filter(|&j| j != mk) {
            let ji = j as i64;
            rad *= n(rr(k, j) - rr(k + 1, mk1) - ji + mm(k + 1))
                / n(rr(k, j) - rr(k, mk) - ji + mm(k));
        }
        for j in (1..=(ell + 1 - k)).filter(|&j| j != mk1) {
            let ji = j as i64;
            rad *= n(rr(k + 1, j) - rr(k, mk) - ji + mm(k) - 1)
                / n(rr(k + 1, j) - rr(k + 1, mk1) - ji + mm(k + 1) - 1);
        }
    }
    let mi = m[i - 1];
    for k in 1..=(ell + 1 - i) {
        rad *= n(rr(i + 1, k) - rr(i, mi) - k as i64 + mm(i) - 1);
    }
    for k in (1..=(ell + 2 - i)).filter(|&k| k != mi) {
        rad /= n(rr(i, k) - rr(i, mi) - k as i64 + mm(i));
    }
    rad
}

/// `K(i, r, m) = Σ_{k<i} ( Σ_{j=min}^{max-1} (r_{k+1,j} - r_{k,j+1})
/// + 2 Σ_{j=m_{k+1}+1}^{m_k-1} (r_{k,j} - r_{k+1,j}) )`.
pub fn k_bound(i: usize, r: &GTTableau, m: &[usize]) -> i64 {
    let mut total = 0;
    for k in 1..i {
        let (a, b) = (m[k - 1], m[k]);
        for j in a.min(b)..a.max(b) {
            total += r.r(k + 1, j) - r.r(k, j + 1);
        }
        for j in (b + 1)..a {
            total += 2 * (r.r(k, j) - r.r(k + 1, j));
        }
    }
    total
}

/// `1 - q^{2x}`, the normalized q-number whose argument is non-negative in
/// the privileged-move coefficients.
fn qan(x: i64, q: DeformationParam) -> f64 {
    1.0 - q.value().powi(2 * x as i32)
}

/// `C̃_q(i, r, mⁱ)`: `√(1-q^{2r_{2,ℓ}})` for `i = 1`,
/// `q^{r_{i,ℓ+2-i}} √(1-q^{2(r_{i+1,ℓ+1-i} - r_{i,ℓ+2-i})})` for `2 ≤ i ≤ ℓ`,
/// and `q^{r_{ℓ+1,1}}` for `i = ℓ+1`.
pub fn cg_tilde(i: usize, r: &GTTableau, q: DeformationParam) -> f64 {
    let ell = r.ell;
    if i == 1 {
        qan(r.r(2, ell), q).max(0.0).sqrt()
    } else if i <= ell {
        let top = r.r(i, ell + 2 - i);
        q.value().powi(top as i32) * qan(r.r(i + 1, ell + 1 - i) - top, q).max(0.0).sqrt()
    } else {
        q.value().powi(r.r(ell + 1, 1) as i32)
    }
}
