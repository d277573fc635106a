//! The Haar state: closed formula on monomials and its evaluation as the
//! vector state of the scalar representation at `|0,0,0;0⟩`.

use num_complex::Complex64 as C64;

use super::kernels::{generators, S4Gen};
use super::S4Space;
use crate::error::{Error, Result};
use crate::opalg::{evaluate_word, AlgebraTag, AlgebraWord, Label, Letter};
use crate::qcore::{q_double_factorial, DeformationParam};

/// `φ(x0^{2j} x1^k x1*^k) = q^{(2j-1)(j+k)-3j} [3] [2j-1]!! [2k]!! / [2(j+k)+3]!!`.
pub fn haar_formula(j: u32, k: u32, q: DeformationParam) -> Result<f64> {
    let (j, k) = (j as i64, k as i64);
    let df = |n: i64| q_double_factorial(n, q);
    let e = ((2 * j - 1) * (j + k) - 3 * j) as f64;
    Ok(q.pow(e) * q.num(3.0) * df(2 * j - 1)? * df(2 * k)? / df(2 * (j + k) + 3)?)
}

/// `q^{2jk-4j-k} [3] [2j-1]!! [2k]!! / [2(j+k)+3]!!`, the value obtained by
/// running the twisted-cyclicity recursion
/// `φ(x0^{2j} x1^k x1*^k) = q^{2k-2j-1} [2j-1]/[2k+2] φ(x0^{2j-2} x1^{k+1} x1*^{k+1})`
/// down to `φ(x1^n x1*^n) = q^{-n} [3] [2n]!!/[2n+3]!!`. It differs from
/// [`haar_formula`] by the factor `q^{-2j²}` and agrees with [`haar_gns`].
pub fn haar_formula_corrected(j: u32, k: u32, q: DeformationParam) -> Result<f64> {
    let (j, k) = (j as i64, k as i64);
    let df = |n: i64| q_double_factorial(n, q);
    let e = (2 * j * k - 4 * j - k) as f64;
    Ok(q.pow(e) * q.num(3.0) * df(2 * j - 1)? * df(2 * k)? / df(2 * (j + k) + 3)?)
}

/// The formula on `x0^{n0} x1^{n1} (x1*)^{n2} x2^{n3}`, zero unless `n0` is
/// even, `n1 = n2` and `n3 = 0`.
pub fn haar_monomial(n0: u32, n1: u32, n2: u32, n3: u32, q: DeformationParam) -> Result<f64> {
    if n0 % 2 == 1 || n1 != n2 || n3 != 0 {
        return Ok(0.0);
    }
    haar_formula(n0 / 2, n1, q)
}

/// The classical value `3 (2k)!! (2j-1)!! / (2j+2k+3)!!`.
pub fn haar_classical(j: u32, k: u32) -> f64 {
    let df = |n: i64| -> f64 {
        let mut acc = 1.0;
        let mut m = n;
        while m > 1 {
            acc *= m as f64;
            m -= 2;
        }
        acc
    };
    let (j, k) = (j as i64, k as i64);
    3.0 * df(2 * k) * df(2 * j - 1) / df(2 * j + 2 * k + 3)
}

/// The cyclic vector `|0,0,0;0⟩` of the scalar representation.
pub fn haar_vector() -> Label {
    Label::new(AlgebraTag::S4Scalar, &[0, 0, 0, 0])
}

/// `⟨0|a|0⟩` in the scalar representation. The kernels act on the full
/// (untruncated) space, so no cutoff is involved.
pub fn haar_gns(word: &AlgebraWord, q: DeformationParam) -> Result<f64> {
    let gens = generators(S4Space::Scalar, q);
    for (_, letters) in &word.terms {
        for l in letters {
            if !gens.contains_key(&l.key()) {
                return Err(Error::UnboundGenerator(l.key()));
            }
        }
    }
    let v = haar_vector();
    let out = evaluate_word(word, &gens, &v)?;
    Ok(out
        .iter()
        .filter(|(t, _)| *t == v)
        .map(|(_, c)| *c)
        .sum::<C64>()
        .re)
}

/// The monomial word `x0^{n0} x1^{n1} (x1*)^{n2} x2^{n3}`.
pub fn monomial_word(n0: u32, n1: u32, n2: u32, n3: u32) -> AlgebraWord {
    let mut letters = Vec::new();
    for (g, n) in [
        (S4Gen::X0, n0),
        (S4Gen::X1, n1),
        (S4Gen::X1Star, n2),
        (S4Gen::X2, n3),
    ] {
        for _ in 0..n {
            letters.push(match g {
                S4Gen::X1Star => Letter::star("x1"),
                other => Letter::new(other.name()),
            });
        }
    }
    AlgebraWord::monomial(C64::new(1.0, 0.0), letters)
}
