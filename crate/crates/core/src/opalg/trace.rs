//! Traces of sparse products restricted to interior basis vectors.

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use super::basis::TruncatedBasis;
use super::kernel::SparseKernel;
use super::matrix::SparseMatrix;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// Weighted trace `Σ_v w(v) ⟨v|k|v⟩` over all basis labels, in enumeration order.
pub fn weighted_trace(
    weight: &(dyn Fn(&super::Label) -> f64 + Sync),
    k: &SparseKernel,
    basis: &TruncatedBasis,
) -> C64 {
    let mut buf = Vec::new();
    let mut acc = ZERO;
    for v in basis.labels() {
        buf.clear();
        k.apply_into(v, &mut buf);
        let diag: C64 = buf.iter().filter(|(t, _)| t == v).map(|(_, c)| *c).sum();
        acc += diag * weight(v);
    }
    acc
}

/// A matrix together with its transpose, so both rows and columns are cheap.
#[derive(Debug, Clone)]
pub struct TraceFactor {
    rows: SparseMatrix,
    cols: SparseMatrix,
}

impl TraceFactor {
    pub fn new(m: SparseMatrix) -> Self {
        let cols = m.transpose();
        Self { rows: m, cols }
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.rows.dim()
    }
}

/// Dense accumulator with a list of touched indices.
struct Scratch {
    acc: Vec<C64>,
    mark: Vec<bool>,
    touched: Vec<u32>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Self {
            acc: vec![ZERO; n],
            mark: vec![false; n],
            touched: Vec::new(),
        }
    }

    /// `out = x · M` where `M` is given by rows (`x` is a row vector).
    fn step(&mut self, x: &[(u32, C64)], m: &SparseMatrix, out: &mut Vec<(u32, C64)>) {
        for &(i, xi) in x {
            let (cols, vals) = m.row(i as usize);
            for (&c, &v) in cols.iter().zip(vals) {
                let cu = c as usize;
                if !self.mark[cu] {
                    self.mark[cu] = true;
                    self.touched.push(c);
                }
                self.acc[cu] += xi * v;
            }
        }
        out.clear();
        for &c in &self.touched {
            let cu = c as usize;
            out.push((c, self.acc[cu]));
            self.acc[cu] = ZERO;
            self.mark[cu] = false;
        }
        self.touched.clear();
    }
}

/// Per-source diagonal entries `⟨v|M_1 M_2 ⋯ M_n|v⟩` for the given sources.
///
/// The product is split in the middle: a row vector is pushed through the
/// left factors and a column vector through the right factors, and the two
/// are contracted. Each value depends only on the data, so the result is
/// independent of thread scheduling.
pub fn product_diagonal(factors: &[&TraceFactor], sources: &[u32]) -> Vec<C64> {
    if factors.is_empty() {
        return vec![C64::new(1.0, 0.0); sources.len()];
    }
    let n = factors[0].dim();
    let split = factors.len().div_ceil(2);
    sources
        .par_iter()
        .map_init(
            || (Scratch::new(n), vec![ZERO; n], Vec::new(), Vec::new()),
            |(scratch, dense, a, b), &v| {
                // row side: e_vᵀ M_1 ⋯ M_split
                a.clear();
                a.push((v, C64::new(1.0, 0.0)));
                for f in &factors[..split] {
                    scratch.step(a, &f.rows, b);
                    std::mem::swap(a, b);
                }
                let left = std::mem::take(a);
                // column side: M_{split+1} ⋯ M_n e_v, via rows of the transposes
                a.clear();
                a.push((v, C64::new(1.0, 0.0)));
                for f in factors[split..].iter().rev() {
                    scratch.step(a, &f.cols, b);
                    std::mem::swap(a, b);
                }
                for &(i, x) in a.iter() {
                    dense[i as usize] = x;
                }
                let mut s = ZERO;
                for &(i, x) in &left {
                    s += x * dense[i as usize];
                }
                for &(i, _) in a.iter() {
                    dense[i as usize] = ZERO;
                }
                *a = left;
                s
            },
        )
        .collect()
}

/// `Σ_v w_v ⟨v|M_1 ⋯ M_n|v⟩`, summed in the order of `sources`.
pub fn product_trace(factors: &[&TraceFactor], sources: &[u32], weights: &[f64]) -> C64 {
    let diag = product_diagonal(factors, sources);
    diag.iter()
        .zip(weights)
        .fold(ZERO, |acc, (d, w)| acc + d * *w)
}
