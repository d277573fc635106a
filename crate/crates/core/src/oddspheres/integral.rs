//! Multiplicities of `|D|`, the constant `C_ℓ`, the trace-class check for
//! `L_{2,ℓ}`, and the noncommutative integral through the map `σ`.

use num_complex::Complex64 as C64;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::kernels::z_name;
use super::{require_rank, top_row};
use crate::error::{Error, Result};
use crate::opalg::AlgebraWord;
use crate::qcore::DeformationParam;

/// Number of GT patterns below `row` (rows of decreasing length down to one
/// entry), counted by direct enumeration.
fn count_below(row: &[i64]) -> u128 {
    fn fill(prev: &[i64], j: usize, cur: &mut Vec<i64>) -> u128 {
        if j == cur.len() {
            return count_below(cur);
        }
        let mut total = 0;
        for x in prev[j + 1]..=prev[j] {
            cur[j] = x;
            total += fill(prev, j + 1, cur);
        }
        total
    }
    if row.len() <= 1 {
        return 1;
    }
    let mut cur = vec![0; row.len() - 1];
    fill(row, 0, &mut cur)
}

/// `μ_k`: the number of labels with `n + h + 1 = k`, by enumeration.
pub fn multiplicity(ell: usize, k: u64) -> Result<u128> {
    require_rank(ell)?;
    if k == 0 {
        return Err(Error::InvalidParam(
            "the eigenvalue index k starts at 1".into(),
        ));
    }
    let k = k as i64;
    Ok((0..k)
        .map(|h| count_below(&top_row(ell, k - 1 - h, h)))
        .sum())
}

/// Dimension of the `SU(ℓ+1)` irrep with highest weight `λ`, from Weyl's
/// product `Π_{j≤k} (k-j+1 + Σ_{i=j}^k λ_i) / Π_k k!`.
pub fn weyl_dimension(lambda: &[u64]) -> u128 {
    let ell = lambda.len();
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for k in 1..=ell {
        for j in 1..=k {
            let s: u64 = lambda[j - 1..k].iter().sum();
            num *= (k - j + 1) as u128 + s as u128;
        }
        den *= (1..=k as u128).product::<u128>();
    }
    debug_assert_eq!(num % den, 0);
    num / den
}

/// `μ_k` summed from Weyl dimensions at `λ_i = nδ_{i,1} + hδ_{i,ℓ}`,
/// `n + h = k - 1`.
pub fn multiplicity_weyl(ell: usize, k: u64) -> Result<u128> {
    require_rank(ell)?;
    if k == 0 {
        return Err(Error::InvalidParam(
            "the eigenvalue index k starts at 1".into(),
        ));
    }
    Ok((0..k)
        .map(|h| {
            let mut lambda = vec![0; ell];
            lambda[0] += k - 1 - h;
            lambda[ell - 1] += h;
            weyl_dimension(&lambda)
        })
        .sum())
}

fn factorial(n: usize) -> i128 {
    (1..=n as i128).product()
}

/// `C_ℓ = (1/ℓ!) Σ_{i=0}^{ℓ-1} (-1)^i / (i! (ℓ+i)!)`, exactly.
pub fn c_const(ell: usize) -> Ratio<i128> {
    let sum = (0..ell).fold(Ratio::from_integer(0), |acc, i| {
        let term = Ratio::new(1, factorial(i) * factorial(ell + i));
        if i % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    });
    sum / factorial(ell)
}

/// Leading coefficient of `μ_k` as a polynomial in `k`,
/// `(1/ℓ!) Σ_{i=0}^{ℓ-1} (-1)^i / (i! (ℓ-1-i)! (ℓ+i))`, which equals
/// `1/(ℓ (2ℓ-1)!)`.
///
/// This is what the leading term of the sum over `m` in the multiplicity
/// expansion gives when the binomial coefficient and the Faulhaber factor
/// `1/(r+1)` are kept; [`c_const`] differs from it for every `ℓ ≥ 2`.
pub fn c_const_corrected(ell: usize) -> Ratio<i128> {
    let ell_i = ell as i128;
    let sum = (0..ell).fold(Ratio::from_integer(0), |acc, i| {
        let term = Ratio::new(
            1,
            factorial(i) * factorial(ell - 1 - i) * (ell_i + i as i128),
        );
        if i % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    });
    sum / factorial(ell)
}

/// Forward differences `Δ^order μ_k` for `k = 1..=kmax-order`, exactly.
pub fn multiplicity_differences(ell: usize, kmax: u64, order: usize) -> Result<Vec<i128>> {
    if (kmax as usize) <= order {
        return Err(Error::InvalidParam(format!(
            "kmax = {kmax} leaves no difference of order {order}"
        )));
    }
    let mut seq = (1..=kmax)
        .map(|k| multiplicity(ell, k).map(|m| m as i128))
        .collect::<Result<Vec<_>>>()?;
    for _ in 0..order {
        seq = seq.windows(2).map(|w| w[1] - w[0]).collect();
    }
    Ok(seq)
}

/// `max_k |Δ^{2ℓ} μ_k / (2ℓ)! - C_ℓ|` over all `k` with `k + 2ℓ ≤ kmax`,
/// evaluated in rational arithmetic.
pub fn finite_diff_check(ell: usize, kmax: u64) -> Result<f64> {
    require_rank(ell)?;
    let c = c_const(ell);
    let scale = factorial(2 * ell);
    let worst = multiplicity_differences(ell, kmax, 2 * ell)?
        .into_iter()
        .map(|d| {
            let gap = Ratio::new(d, scale) - c;
            if gap < Ratio::from_integer(0) {
                -gap
            } else {
                gap
            }
        })
        .max()
        .unwrap_or_else(|| Ratio::from_integer(0));
    Ok(*worst.numer() as f64 / *worst.denom() as f64)
}

/// Partial sums of `Tr(L_{2,ℓ}|D|^{-s})` and of the dominating series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayIdealCheck {
    /// `Σ_{k ≤ K} k^{-s} Σ_{|D| = k} q^{r_{2,ℓ}}`, for `K = 1..=Λ`.
    pub partial_sums: Vec<f64>,
    /// `(1-q)^{-1} Σ_{k ≤ K} k^{-s} #{labels at level k with r_{2,ℓ} = 0}`.
    pub bounds: Vec<f64>,
    /// `#{labels at level k with r_{2,ℓ} = 0}`, for `k = 1..=Λ`.
    pub counts: Vec<u128>,
}

impl DecayIdealCheck {
    /// The last partial sum.
    pub fn value(&self) -> f64 {
        self.partial_sums.last().copied().unwrap_or(0.0)
    }

    pub fn monotone(&self) -> bool {
        self.partial_sums.windows(2).all(|w| w[1] >= w[0])
    }

    /// Every partial sum lies below the matching bound.
    pub fn dominated(&self) -> bool {
        self.partial_sums
            .iter()
            .zip(&self.bounds)
            .all(|(s, b)| s <= b)
    }
}

/// Enumerate the second row of every tableau at level `k` and report, for
/// each, `r_{2,ℓ}` together with the number of completions below it.
fn second_rows(ell: usize, k: i64, mut visit: impl FnMut(i64, u128)) {
    fn fill(prev: &[i64], j: usize, cur: &mut Vec<i64>, visit: &mut dyn FnMut(i64, u128)) {
        if j == cur.len() {
            visit(*cur.last().unwrap_or(&0), count_below(cur));
            return;
        }
        for x in prev[j + 1]..=prev[j] {
            cur[j] = x;
            fill(prev, j + 1, cur, visit);
        }
    }
    for h in 0..k {
        let top = top_row(ell, k - 1 - h, h);
        let mut cur = vec![0; ell];
        fill(&top, 0, &mut cur, &mut visit);
    }
}

/// Check that `L_{2,ℓ}|D|^{-s}` has convergent trace up to level `Λ`:
/// returns the partial sums and the dominating series.
pub fn decay_ideal_check(
    ell: usize,
    q: DeformationParam,
    s: f64,
    cutoff: u32,
) -> Result<DecayIdealCheck> {
    require_rank(ell)?;
    if !(s > 2.0 * ell as f64) {
        return Err(Error::InvalidParam(format!(
            "need s > 2ℓ = {}, got {s}",
            2 * ell
        )));
    }
    let qv = q.value();
    let mut out = DecayIdealCheck {
        partial_sums: Vec::new(),
        bounds: Vec::new(),
        counts: Vec::new(),
    };
    let (mut sum, mut bound) = (0.0, 0.0);
    for k in 1..=cutoff as i64 {
        let mut weight = 0.0;
        let mut count = 0u128;
        second_rows(ell, k, |r2l, c| {
            weight += qv.powi(r2l as i32) * c as f64;
            if r2l == 0 {
                count += c;
            }
        });
        let ks = (k as f64).powf(-s);
        sum += ks * weight;
        bound += ks * count as f64 / (1.0 - qv);
        out.partial_sums.push(sum);
        out.bounds.push(bound);
        out.counts.push(count);
    }
    Ok(out)
}

/// `∫ a |D|^{-2ℓ-1} = C_ℓ/(2π) ∫ σ(a) dθ`, with `σ(z_i) = 0` for `i ≤ ℓ` and
/// `σ(z_{ℓ+1}) = e^{iθ}`.
///
/// Each monomial contributes its coefficient times `C_ℓ` when it contains
/// only `z_{ℓ+1}` and `z_{ℓ+1}*` in equal numbers, and nothing otherwise.
/// The result does not depend on `q`.
pub fn nc_integral(word: &AlgebraWord, ell: usize, _q: DeformationParam) -> Result<C64> {
    require_rank(ell)?;
    let names: Vec<String> = (1..=ell + 1).map(z_name).collect();
    let last = &names[ell];
    let c = c_const(ell);
    let c = *c.numer() as f64 / *c.denom() as f64;
    let mut total = C64::new(0.0, 0.0);
    for (coef, letters) in &word.terms {
        if let Some(bad) = letters.iter().find(|l| !names.contains(&l.name)) {
            return Err(Error::InvalidParam(format!(
                "unknown generator {bad} for rank {ell}"
            )));
        }
        if letters.iter().any(|l| &l.name != last) {
            continue;
        }
        let winding: i64 = letters.iter().map(|l| if l.star { -1 } else { 1 }).sum();
        if winding == 0 {
            total += coef * c;
        }
    }
    Ok(total)
}
