//! Zeta functions of the chiral Dirac operator `D|v⟩± = (l+3/2)|v⟩∓`, the
//! `x2x2*` dimension-spectrum probe, and the top residue.

use num_complex::Complex64 as C64;

use super::kernels::{chiral_kernel, S4Gen};
use super::shell_labels;
use crate::error::{Error, Result};
use crate::opalg::AlgebraWord;
use crate::qcore::{zeta_closed, DeformationParam, HalfInt};

/// `dim V_l = (2/3)(l+5/2)(l+3/2)(l+1/2)` for `l ∈ ℕ+½`.
pub fn dim_vl(l: HalfInt) -> f64 {
    let l = l.to_f64();
    2.0 / 3.0 * (l + 2.5) * (l + 1.5) * (l + 0.5)
}

/// `dim V_{(0,l)} = (2l+3)(l+1)(l+2)/6` for `l ∈ ℕ`.
pub fn dim_vl_scalar(l: u32) -> f64 {
    let l = l as f64;
    (2.0 * l + 3.0) * (l + 1.0) * (l + 2.0) / 6.0
}

/// Partial sum `Σ_{l ≤ cutoff} 2 (l+3/2)^{-s} dim V_l` of `Tr|D|^{-s}`.
pub fn zeta4(s: f64, cutoff: HalfInt) -> Result<f64> {
    if !(s > 4.0) {
        return Err(Error::Domain(format!(
            "Tr|D|^-s converges only for s > 4, got {s}"
        )));
    }
    let mut total = 0.0;
    let mut l2 = 1;
    while l2 <= cutoff.twice {
        let l = HalfInt::from_twice(l2);
        total += 2.0 * (l.to_f64() + 1.5).powf(-s) * dim_vl(l);
        l2 += 2;
    }
    Ok(total)
}

/// `(4/3)(ζ(s-3) - ζ(s-1))`.
pub fn zeta4_closed(s: f64) -> Result<f64> {
    if !(s > 4.0) {
        return Err(Error::Domain(format!(
            "the closed form needs s > 4, got {s}"
        )));
    }
    Ok(4.0 / 3.0 * (zeta_closed(s - 3.0)? - zeta_closed(s - 1.0)?))
}

/// Upper bound `(4/3) N^{4-s}/(s-4)` for the omitted tail, `N = l_max + 3/2`.
pub fn zeta4_tail_bound(s: f64, cutoff: HalfInt) -> f64 {
    // Shells are half-integral, so the last one kept is the largest odd
    // `2l ≤ 2·cutoff`.
    let last = if cutoff.twice % 2 == 0 {
        cutoff.twice - 1
    } else {
        cutoff.twice
    };
    let n = last as f64 / 2.0 + 1.5;
    4.0 / 3.0 * n.powf(4.0 - s) / (s - 4.0)
}

/// `Σ ⟨v|x2 x2*|v⟩` over both chiralities of the shell `l` (doubled `l2`).
pub fn x2x2_shell_trace(q: DeformationParam, l2: i32) -> f64 {
    let x2 = chiral_kernel(S4Gen::X2, q, None);
    let x2s = chiral_kernel(S4Gen::X2Star, q, None);
    let mut total = 0.0;
    for c in [1, -1] {
        for v in shell_labels(l2, Some(c)) {
            let mut mid = Vec::new();
            x2s.apply_into(&v, &mut mid);
            let out = x2.apply_vec(&mid);
            total += out
                .iter()
                .filter(|(t, _)| *t == v)
                .map(|(_, c)| c.re)
                .sum::<f64>();
        }
    }
    total
}

/// `(n, r_n / n)` with `n = l + 3/2` and `r_n = c_n - (4/3)n³ + 4(1-q⁴)⁻¹ n²`,
/// where `c_n` is the shell trace of `x2x2*`. Boundedness of `r_n/n` means the
/// partial sums of `ζ_{x2x2*}` differ from `(4/3)ζ(s-3) - 4(1-q⁴)⁻¹ζ(s-2)` by
/// a function holomorphic for `Re s > 2`.
pub fn x2x2_remainders(q: DeformationParam, cutoff: HalfInt) -> Vec<(f64, f64)> {
    let q4 = q.value().powi(4);
    let mut out = Vec::new();
    let mut l2 = 1;
    while l2 <= cutoff.twice {
        let n = l2 as f64 / 2.0 + 1.5;
        let c = x2x2_shell_trace(q, l2);
        let r = c - 4.0 / 3.0 * n.powi(3) + 4.0 / (1.0 - q4) * n * n;
        out.push((n, r / n));
        l2 += 2;
    }
    out
}

/// Top residue `(2/(3π)) ∫ σ(a) dθ` with `σ(x0) = σ(x1) = 0`, `σ(x2) = e^{iθ}`.
pub fn top_residue4(a: &AlgebraWord) -> Result<f64> {
    let mut constant = C64::new(0.0, 0.0);
    for (c, letters) in &a.terms {
        let mut coef = *c;
        let mut winding = 0i32;
        for l in letters {
            match (l.name.as_str(), l.star) {
                ("x0", _) | ("x1", _) => coef = C64::new(0.0, 0.0),
                ("x2", false) => winding += 1,
                ("x2", true) => winding -= 1,
                _ => return Err(Error::UnboundGenerator(l.key())),
            }
        }
        if winding == 0 {
            constant += coef;
        }
    }
    Ok(4.0 / 3.0 * constant.re)
}
