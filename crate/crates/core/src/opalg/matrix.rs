//! Compressed sparse row matrices with complex entries.

use num_complex::Complex64 as C64;

use super::basis::TruncatedBasis;
use super::kernel::SparseKernel;
use crate::error::{Error, Result};

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// A square sparse matrix in CSR layout. Column indices in each row are
/// strictly increasing, so every `(row, col)` appears at most once.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    n: usize,
    row_ptr: Vec<usize>,
    cols: Vec<u32>,
    vals: Vec<C64>,
}

impl SparseMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            row_ptr: vec![0; n + 1],
            cols: Vec::new(),
            vals: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            n,
            row_ptr: (0..=n).collect(),
            cols: (0..n as u32).collect(),
            vals: vec![C64::new(1.0, 0.0); n],
        }
    }

    /// Build from `(row, col, value)` triples; duplicates are summed.
    pub fn from_triplets(n: usize, mut trip: Vec<(u32, u32, C64)>) -> Result<Self> {
        if let Some(&(r, c, _)) = trip.iter().find(|t| t.0 as usize >= n || t.1 as usize >= n) {
            return Err(Error::DimensionMismatch(r.max(c) as usize, n));
        }
        trip.sort_by_key(|t| (t.0, t.1));
        let mut row_ptr = vec![0usize; n + 1];
        let mut cols = Vec::with_capacity(trip.len());
        let mut vals: Vec<C64> = Vec::with_capacity(trip.len());
        let mut last: Option<(u32, u32)> = None;
        for (r, c, v) in trip {
            if last == Some((r, c)) {
                *vals.last_mut().unwrap() += v;
            } else {
                cols.push(c);
                vals.push(v);
                row_ptr[r as usize + 1] += 1;
                last = Some((r, c));
            }
        }
        for i in 0..n {
            row_ptr[i + 1] += row_ptr[i];
        }
        Ok(Self {
            n,
            row_ptr,
            cols,
            vals,
        })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    /// Column indices and values of row `r`.
    #[inline]
    pub fn row(&self, r: usize) -> (&[u32], &[C64]) {
        let (a, b) = (self.row_ptr[r], self.row_ptr[r + 1]);
        (&self.cols[a..b], &self.vals[a..b])
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        let (cols, vals) = self.row(r);
        match cols.binary_search(&(c as u32)) {
            Ok(k) => vals[k],
            Err(_) => ZERO,
        }
    }

    pub fn triplets(&self) -> Vec<(u32, u32, C64)> {
        let mut out = Vec::with_capacity(self.nnz());
        for r in 0..self.n {
            let (cols, vals) = self.row(r);
            out.extend(cols.iter().zip(vals).map(|(&c, &v)| (r as u32, c, v)));
        }
        out
    }

    /// Transpose without conjugation.
    pub fn transpose(&self) -> Self {
        let trip = self
            .triplets()
            .into_iter()
            .map(|(r, c, v)| (c, r, v))
            .collect();
        Self::from_triplets(self.n, trip).expect("transpose keeps dimensions")
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let trip = self
            .triplets()
            .into_iter()
            .map(|(r, c, v)| (c, r, v.conj()))
            .collect();
        Self::from_triplets(self.n, trip).expect("adjoint keeps dimensions")
    }

    pub fn scale(&self, alpha: C64) -> Self {
        let mut out = self.clone();
        out.vals.iter_mut().for_each(|v| *v *= alpha);
        out
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        Ok(())
    }

    /// `α·self + β·other`.
    pub fn combine(&self, alpha: C64, other: &Self, beta: C64) -> Result<Self> {
        self.check_dim(other)?;
        let mut trip: Vec<_> = self
            .triplets()
            .into_iter()
            .map(|(r, c, v)| (r, c, alpha * v))
            .collect();
        trip.extend(
            other
                .triplets()
                .into_iter()
                .map(|(r, c, v)| (r, c, beta * v)),
        );
        Self::from_triplets(self.n, trip)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(C64::new(1.0, 0.0), other, C64::new(1.0, 0.0))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(C64::new(1.0, 0.0), other, C64::new(-1.0, 0.0))
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut acc = vec![ZERO; self.n];
        let mut mark = vec![false; self.n];
        let mut touched: Vec<u32> = Vec::new();
        let mut row_ptr = vec![0usize; self.n + 1];
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        for r in 0..self.n {
            let (ac, av) = self.row(r);
            for (&k, &a) in ac.iter().zip(av) {
                let (bc, bv) = other.row(k as usize);
                for (&c, &b) in bc.iter().zip(bv) {
                    if !mark[c as usize] {
                        mark[c as usize] = true;
                        touched.push(c);
                    }
                    acc[c as usize] += a * b;
                }
            }
            touched.sort_unstable();
            for &c in &touched {
                cols.push(c);
                vals.push(acc[c as usize]);
                acc[c as usize] = ZERO;
                mark[c as usize] = false;
            }
            touched.clear();
            row_ptr[r + 1] = cols.len();
        }
        Ok(Self {
            n: self.n,
            row_ptr,
            cols,
            vals,
        })
    }

    /// `[self, other]`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.compose(other)?.sub(&other.compose(self)?)
    }

    /// Sum of diagonal entries, accumulated in row order.
    pub fn trace(&self) -> C64 {
        (0..self.n).fold(ZERO, |acc, r| acc + self.get(r, r))
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.vals.iter().fold(0.0, |m, v| m.max(v.norm()))
    }

    /// Largest entry modulus restricted to rows and columns in `keep`.
    pub fn max_abs_on(&self, keep: &[bool]) -> f64 {
        let mut m: f64 = 0.0;
        for r in 0..self.n {
            if !keep[r] {
                continue;
            }
            let (cols, vals) = self.row(r);
            for (&c, v) in cols.iter().zip(vals) {
                if keep[c as usize] {
                    m = m.max(v.norm());
                }
            }
        }
        m
    }

    /// Symmetric permutation `P M Pᵀ` with `perm[old] = new`.
    pub fn permute(&self, perm: &[u32]) -> Self {
        let trip = self
            .triplets()
            .into_iter()
            .map(|(r, c, v)| (perm[r as usize], perm[c as usize], v))
            .collect();
        Self::from_triplets(self.n, trip).expect("permutation keeps dimensions")
    }
}

/// Matrix of a kernel on a truncated basis: entry `(t, v)` is `⟨t|k|v⟩`.
/// Targets outside the basis are dropped.
pub fn materialize(k: &SparseKernel, basis: &TruncatedBasis) -> SparseMatrix {
    materialize_block(&[vec![Some(k.clone())]], basis)
}

/// Matrix of a `c×c` array of kernels acting on `basis ⊗ C^c`; the index of
/// `v ⊗ e_a` is `c·index(v) + a`. `None` entries are zero.
pub fn materialize_block(
    block: &[Vec<Option<SparseKernel>>],
    basis: &TruncatedBasis,
) -> SparseMatrix {
    let c = block.len();
    let n = basis.len() * c;
    let mut trip = Vec::new();
    let mut buf = Vec::new();
    for (vi, v) in basis.labels().iter().enumerate() {
        for (a, row) in block.iter().enumerate() {
            for (b, entry) in row.iter().enumerate() {
                let Some(k) = entry else { continue };
                buf.clear();
                k.apply_into(v, &mut buf);
                for (t, coef) in buf.drain(..) {
                    if coef.norm_sqr() == 0.0 {
                        continue;
                    }
                    if let Some(ti) = basis.index_of(&t) {
                        let row = (ti as usize * c + a) as u32;
                        let col = (vi * c + b) as u32;
                        trip.push((row, col, coef));
                    }
                }
            }
        }
    }
    SparseMatrix::from_triplets(n, trip).expect("indices come from the basis")
}
