//! Podleś spheres: equivariant representations on the spinor spaces
//! `ℋ_{-N} ⊕ ℋ_N`, the isospectral Dirac operator, index pairings, zeta data
//! and the real structure.
//!
//! Labels are `(2l, 2m, σ)` where `σ = ±1` selects the summand `ℋ_{σN}`.
//! For `N = 0` only `σ = +1` is used and the space is the scalar one.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::opalg::{
    block_commutator, block_diagonal, materialize_block, product_diagonal, AlgebraTag, AlgebraWord,
    AntiKernel, GeneratorSet, Label, SparseKernel, Terms, TraceFactor, TruncatedBasis,
};
use crate::qcore::{zeta_closed, DeformationParam, HalfInt};

const TAG: AlgebraTag = AlgebraTag::Podles;

/// Interior margin (doubled units) used by index traces: three steps in `l`.
pub const INDEX_MARGIN: i32 = 6;

/// Parameters `(q, s, N)` of a Podleś sphere representation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PodlesParams {
    pub q: DeformationParam,
    pub s: f64,
    pub n: HalfInt,
}

impl PodlesParams {
    pub fn new(q: f64, s: f64, n: HalfInt) -> Result<Self> {
        let q = DeformationParam::new(q)?;
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::InvalidParam(format!("s={s} must lie in [0,1]")));
        }
        Ok(Self { q, s, n })
    }

    /// `t = 1 - s²`.
    #[inline]
    pub fn t(&self) -> f64 {
        1.0 - self.s * self.s
    }

    /// The sector signs in use: both for `N ≠ 0`, only `+1` for `N = 0`.
    pub fn sectors(&self) -> &'static [i32] {
        if self.n.twice == 0 {
            &[1]
        } else {
            &[-1, 1]
        }
    }

    fn require_spinor(&self) -> Result<()> {
        if self.n.twice == 0 {
            return Err(Error::InvalidParam(
                "the spinor construction needs N ≠ 0".into(),
            ));
        }
        Ok(())
    }

    #[inline]
    fn num(&self, x: f64) -> f64 {
        self.q.num(x)
    }

    #[inline]
    fn pw(&self, x: f64) -> f64 {
        self.q.pow(x)
    }
}

/// Square root of a radicand that is nonnegative up to rounding.
#[inline]
pub(crate) fn sqrt_nn(x: f64) -> f64 {
    debug_assert!(x > -1e-9 * (1.0 + x.abs()), "negative radicand {x}");
    x.max(0.0).sqrt()
}

/// The label `|l, m; σN⟩`.
pub fn label(l: HalfInt, m: HalfInt, sector: i32) -> Label {
    Label::new(TAG, &[l.twice, m.twice, sector])
}

/// Admissibility: `l - |N| ∈ ℕ`, `l - |m| ∈ ℕ`, and a valid sector.
pub fn admissible(p: &PodlesParams, v: &Label) -> bool {
    if v.tag != TAG || v.comps.len() != 3 {
        return false;
    }
    let (l2, m2, s) = (v.comps[0], v.comps[1], v.comps[2]);
    let n2 = p.n.twice.abs();
    p.sectors().contains(&s)
        && l2 >= n2
        && (l2 - n2) % 2 == 0
        && l2 >= m2.abs()
        && (l2 - m2) % 2 == 0
}

/// All admissible labels with `l ≤ cutoff`.
pub fn basis(p: &PodlesParams, cutoff: HalfInt) -> TruncatedBasis {
    let n2 = p.n.twice.abs();
    let mut labels = Vec::new();
    for &s in p.sectors() {
        let mut l2 = n2;
        while l2 <= cutoff.twice {
            for m2 in (-l2..=l2).step_by(2) {
                labels.push(Label::new(TAG, &[l2, m2, s]));
            }
            l2 += 2;
        }
    }
    TruncatedBasis::new(TAG, cutoff, labels)
}

/// `α_N(l)` in the closed form with the parameter `t`.
pub fn alpha(l: HalfInt, p: &PodlesParams) -> Result<f64> {
    let n = p.n.to_f64();
    if l.twice < p.n.twice.abs() || !l.same_parity(p.n) {
        return Err(Error::Domain(format!(
            "alpha needs l ≥ |N| with l-N integral, got l={l}"
        )));
    }
    let l = l.to_f64();
    if l == 0.0 {
        return Ok(0.0);
    }
    let t = p.t();
    let first =
        sqrt_nn(p.num(2.0) * p.num(l + n) * p.num(l - n) * p.num(2.0 * l) / p.num(2.0 * l + 1.0));
    let second = sqrt_nn(
        (1.0 - t) / p.num(l).powi(2)
            + p.pw(-2.0 * n) * (t - 1.0 + p.pw(2.0 * n)).powi(2) / p.num(2.0 * l).powi(2),
    );
    Ok(first * second)
}

/// `β_N(l)` in the closed form with the parameter `t`, with `sign(0) = +1`.
pub fn beta(l: HalfInt, p: &PodlesParams) -> Result<f64> {
    if l.twice < p.n.twice.abs() || !l.same_parity(p.n) {
        return Err(Error::Domain(format!(
            "beta needs l ≥ |N| with l-N integral, got l={l}"
        )));
    }
    let (n, l, t) = (p.n.to_f64(), l.to_f64(), p.t());
    let an = n.abs();
    let sign = p.n.sign() as f64;
    let top = p.num(2.0 * n) * (p.num(2.0) - p.pw(sign) * t)
        + t * (1.0 / p.q.value() - p.q.value()) * p.num(l - an) * p.num(l + an + 1.0);
    Ok(top / (p.q.value() * p.num(2.0 * l + 2.0)))
}

/// `α_{N',l}` for the sector value `N'`; set to zero for `l ≤ |N'|`.
pub fn alpha_nl(p: &PodlesParams, nn: f64, l: f64) -> f64 {
    if l <= nn.abs() + 1e-9 {
        return 0.0;
    }
    let s2 = p.s * p.s;
    let rad =
        p.num(2.0) * p.num(l + nn) * p.num(l - nn) / (p.num(2.0 * l - 1.0) * p.num(2.0 * l + 1.0));
    let tw = (p.pw(l + nn) + p.pw(-(l + nn)) * s2) * (p.pw(l - nn) * s2 + p.pw(-(l - nn)));
    sqrt_nn(rad) * sqrt_nn(tw) / p.num(2.0 * l)
}

/// `β_{N',l}` for the sector value `N'`; set to zero at `l = 0`.
pub fn beta_nl(p: &PodlesParams, nn: f64, l: f64) -> f64 {
    if l == 0.0 {
        return 0.0;
    }
    let (q, s2) = (p.q.value(), p.s * p.s);
    let top = (p.num(2.0 * l) - p.pw(l + nn + 1.0) * p.num(2.0) * p.num(l - nn)) * (1.0 - s2)
        + q * p.num(2.0) * p.num(2.0 * nn) * s2;
    top / (q * q * p.num(2.0 * l) * p.num(2.0 * l + 2.0))
}

/// The coefficient family `Ã⁺, Ã⁰, B̃⁺, B̃⁰, B̃⁻` for one sector value `N'`.
#[derive(Debug, Clone, Copy)]
pub struct CrossCoefficients<'a> {
    pub p: &'a PodlesParams,
    pub nn: f64,
}

impl CrossCoefficients<'_> {
    pub fn a_plus(&self, l: f64, m: f64) -> f64 {
        let p = self.p;
        p.pw(m)
            * sqrt_nn(p.num(2.0) * p.num(l - m + 1.0) * p.num(l + m + 1.0))
            * alpha_nl(p, self.nn, l + 1.0)
    }

    pub fn a_zero(&self, l: f64, m: f64) -> f64 {
        let p = self.p;
        (p.num(2.0 * l) - p.pw(l + m + 1.0) * p.num(2.0) * p.num(l - m)) * beta_nl(p, self.nn, l)
    }

    pub fn b_plus(&self, l: f64, m: f64) -> f64 {
        let p = self.p;
        p.pw(-l + m)
            * sqrt_nn(p.num(l + m + 1.0) * p.num(l + m + 2.0))
            * alpha_nl(p, self.nn, l + 1.0)
    }

    pub fn b_zero(&self, l: f64, m: f64) -> f64 {
        let p = self.p;
        -p.pw(m + 2.0)
            * sqrt_nn(p.num(2.0) * p.num(l - m) * p.num(l + m + 1.0))
            * beta_nl(p, self.nn, l)
    }

    pub fn b_minus(&self, l: f64, m: f64) -> f64 {
        let p = self.p;
        -p.pw(l + m + 1.0) * sqrt_nn(p.num(l - m) * p.num(l - m - 1.0)) * alpha_nl(p, self.nn, l)
    }
}

/// Generators with a kernel on the spinor space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PodlesGen {
    X1,
    X0,
    Xm1,
    X1Star,
    A,
    B,
    BStar,
}

impl PodlesGen {
    pub const ALL: [PodlesGen; 7] = [
        PodlesGen::X1,
        PodlesGen::X0,
        PodlesGen::Xm1,
        PodlesGen::X1Star,
        PodlesGen::A,
        PodlesGen::B,
        PodlesGen::BStar,
    ];

    /// The adjoint generator.
    pub fn star(self) -> PodlesGen {
        match self {
            PodlesGen::X1 => PodlesGen::X1Star,
            PodlesGen::X1Star => PodlesGen::X1,
            PodlesGen::B => PodlesGen::BStar,
            PodlesGen::BStar => PodlesGen::B,
            g => g,
        }
    }
}

fn push(out: &mut Terms, p: &PodlesParams, l: f64, m: f64, sector: i32, c: f64) {
    if c == 0.0 {
        return;
    }
    let v = Label::new(
        TAG,
        &[(2.0 * l).round() as i32, (2.0 * m).round() as i32, sector],
    );
    if admissible(p, &v) {
        out.push((v, C64::new(c, 0.0)));
    }
}

fn decode(v: &Label) -> (f64, f64, i32) {
    (v.comps[0] as f64 / 2.0, v.comps[1] as f64 / 2.0, v.comps[2])
}

fn x1_kernel(p: PodlesParams) -> SparseKernel {
    SparseKernel::new(TAG, 2, move |v, out| {
        if !admissible(&p, v) {
            return;
        }
        let (l, m, s) = decode(v);
        let c = CrossCoefficients {
            p: &p,
            nn: s as f64 * p.n.to_f64(),
        };
        push(out, &p, l + 1.0, m + 1.0, s, c.b_plus(l, m));
        push(out, &p, l, m + 1.0, s, c.b_zero(l, m));
        push(out, &p, l - 1.0, m + 1.0, s, c.b_minus(l, m));
    })
}

fn x0_kernel(p: PodlesParams) -> SparseKernel {
    SparseKernel::new(TAG, 2, move |v, out| {
        if !admissible(&p, v) {
            return;
        }
        let (l, m, s) = decode(v);
        let c = CrossCoefficients {
            p: &p,
            nn: s as f64 * p.n.to_f64(),
        };
        push(out, &p, l + 1.0, m, s, c.a_plus(l, m));
        push(out, &p, l, m, s, c.a_zero(l, m));
        if l - 1.0 >= m.abs() - 1e-9 {
            push(out, &p, l - 1.0, m, s, c.a_plus(l - 1.0, m));
        }
    })
}

fn x1_star_kernel(p: PodlesParams) -> SparseKernel {
    SparseKernel::new(TAG, 2, move |v, out| {
        if !admissible(&p, v) {
            return;
        }
        let (l, m, s) = decode(v);
        let c = CrossCoefficients {
            p: &p,
            nn: s as f64 * p.n.to_f64(),
        };
        push(out, &p, l + 1.0, m - 1.0, s, c.b_minus(l + 1.0, m - 1.0));
        push(out, &p, l, m - 1.0, s, c.b_zero(l, m - 1.0));
        if l - 1.0 >= (m - 1.0).abs() - 1e-9 {
            push(out, &p, l - 1.0, m - 1.0, s, c.b_plus(l - 1.0, m - 1.0));
        }
    })
}

/// Kernel of a generator, acting diagonally on both sectors.
pub fn generator_kernel(g: PodlesGen, p: &PodlesParams) -> SparseKernel {
    let p = *p;
    let one = C64::new(1.0, 0.0);
    let qq2 = p.q.value() * p.num(2.0);
    match g {
        PodlesGen::X1 => x1_kernel(p),
        PodlesGen::X0 => x0_kernel(p),
        PodlesGen::X1Star => x1_star_kernel(p),
        PodlesGen::Xm1 => x1_star_kernel(p).scale(C64::new(-1.0 / p.q.value(), 0.0)),
        PodlesGen::A => {
            let t = p.t();
            let id = SparseKernel::new(TAG, 0, move |v, out| {
                if admissible(&p, v) {
                    out.push((v.clone(), one));
                }
            });
            id.combine(
                C64::new(t / qq2, 0.0),
                &x0_kernel(p),
                C64::new(-1.0 / qq2, 0.0),
            )
            .with_radius(2)
        }
        PodlesGen::B => x1_kernel(p).scale(C64::new(1.0 / qq2.sqrt(), 0.0)),
        PodlesGen::BStar => x1_star_kernel(p).scale(C64::new(1.0 / qq2.sqrt(), 0.0)),
    }
}

/// Generator kernels bound to the names used by [`relations_ddlw`] and
/// [`relations_ab`]: `x1, x0, xm1, A, B` and their starred forms.
pub fn generators(p: &PodlesParams) -> GeneratorSet {
    let mut g = GeneratorSet::new();
    let x1 = generator_kernel(PodlesGen::X1, p);
    let x1s = generator_kernel(PodlesGen::X1Star, p);
    let x0 = generator_kernel(PodlesGen::X0, p);
    let a = generator_kernel(PodlesGen::A, p);
    let mq = C64::new(-1.0 / p.q.value(), 0.0);
    g.insert("x1".into(), x1.clone());
    g.insert("x1*".into(), x1s.clone());
    g.insert("x0".into(), x0.clone());
    g.insert("x0*".into(), x0);
    g.insert("xm1".into(), x1s.scale(mq));
    g.insert("xm1*".into(), x1.scale(mq));
    g.insert("A".into(), a.clone());
    g.insert("A*".into(), a);
    g.insert("B".into(), generator_kernel(PodlesGen::B, p));
    g.insert("B*".into(), generator_kernel(PodlesGen::BStar, p));
    g
}

fn w(name: &str) -> AlgebraWord {
    AlgebraWord::gen(name)
}

/// The four commutation relations in the generators `x1, x0, x-1`, written
/// so that each must vanish.
pub fn relations_ddlw(p: &PodlesParams) -> Vec<AlgebraWord> {
    let q = p.q.value();
    let t = p.t();
    let b2 = p.num(2.0);
    let (x1, x0, xm1) = (w("x1"), w("x0"), w("xm1"));
    let one = AlgebraWord::unit();
    vec![
        x1.mul(&x0)
            .sub(&x0.mul(&x1).scale_re(q.powi(-2)))
            .sub(&x1.scale_re(t * (1.0 - q.powi(-2)))),
        xm1.mul(&x0)
            .sub(&x0.mul(&xm1).scale_re(q * q))
            .sub(&xm1.scale_re(t * (1.0 - q * q))),
        xm1.mul(&x1)
            .scale_re(-b2)
            .add(
                &x0.scale_re(q * q)
                    .add(&one.scale_re(t))
                    .mul(&x0.sub(&one.scale_re(t))),
            )
            .sub(&one.scale_re(b2 * b2 * (1.0 - t))),
        x1.mul(&xm1)
            .scale_re(-b2)
            .add(
                &x0.scale_re(q.powi(-2))
                    .add(&one.scale_re(t))
                    .mul(&x0.sub(&one.scale_re(t))),
            )
            .sub(&one.scale_re(b2 * b2 * (1.0 - t))),
    ]
}

/// The defining relations in the generators `A = A*`, `B`, `B*`.
pub fn relations_ab(p: &PodlesParams) -> Vec<AlgebraWord> {
    let q2 = p.q.value().powi(2);
    let s2 = p.s * p.s;
    let (a, b, bs) = (w("A"), AlgebraWord::gen("B"), AlgebraWord::gen_star("B"));
    let one = AlgebraWord::unit();
    vec![
        a.mul(&b).sub(&b.mul(&a).scale_re(q2)),
        b.mul(&bs).add(&a.add(&one.scale_re(s2)).mul(&a.sub(&one))),
        bs.mul(&b).add(
            &a.scale_re(q2)
                .add(&one.scale_re(s2))
                .mul(&a.scale_re(q2).sub(&one)),
        ),
        a.sub(&AlgebraWord::gen_star("A")),
    ]
}

/// Hopf generators of `U_q(su(2))` acting on each `V_l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Hopf {
    K,
    KInv,
    E,
    F,
}

/// `K|l,m⟩ = q^m|l,m⟩`, `E|l,m⟩ = √([l-m][l+m+1])|l,m+1⟩`, `F = E*`.
pub fn uqsu2_kernel(h: Hopf, p: &PodlesParams) -> SparseKernel {
    let p = *p;
    SparseKernel::new(TAG, 0, move |v, out| {
        if !admissible(&p, v) {
            return;
        }
        let (l, m, s) = decode(v);
        match h {
            Hopf::K => push(out, &p, l, m, s, p.pw(m)),
            Hopf::KInv => push(out, &p, l, m, s, p.pw(-m)),
            Hopf::E => push(
                out,
                &p,
                l,
                m + 1.0,
                s,
                sqrt_nn(p.num(l - m) * p.num(l + m + 1.0)),
            ),
            Hopf::F => push(
                out,
                &p,
                l,
                m - 1.0,
                s,
                sqrt_nn(p.num(l + m) * p.num(l - m + 1.0)),
            ),
        }
    })
}

/// Generators plus `K, E, F` for equivariance checks.
pub fn equivariant_generators(p: &PodlesParams) -> GeneratorSet {
    let mut g = generators(p);
    g.insert("K".into(), uqsu2_kernel(Hopf::K, p));
    g.insert("K*".into(), uqsu2_kernel(Hopf::K, p));
    g.insert("E".into(), uqsu2_kernel(Hopf::E, p));
    g.insert("E*".into(), uqsu2_kernel(Hopf::F, p));
    g.insert("F".into(), uqsu2_kernel(Hopf::F, p));
    g
}

/// Crossed-product relations `KB = qBK`, `KA = AK`, `EB = q⁻¹BE`, `EA = AE - q^{-1/2}BK`.
pub fn equivariance_relations(p: &PodlesParams) -> Vec<AlgebraWord> {
    let q = p.q.value();
    let (k, e, a, b) = (w("K"), w("E"), w("A"), w("B"));
    vec![
        k.mul(&b).sub(&b.mul(&k).scale_re(q)),
        k.mul(&a).sub(&a.mul(&k)),
        e.mul(&b).sub(&b.mul(&e).scale_re(1.0 / q)),
        e.mul(&a)
            .sub(&a.mul(&e))
            .add(&b.mul(&k).scale_re(q.powf(-0.5))),
    ]
}

/// `D|l,m;±N⟩ = (l-|N|+1)|l,m;∓N⟩`.
pub fn dirac(p: &PodlesParams) -> Result<SparseKernel> {
    p.require_spinor()?;
    let p = *p;
    let an = p.n.to_f64().abs();
    Ok(SparseKernel::new(TAG, 0, move |v, out| {
        if admissible(&p, v) {
            let (l, m, s) = decode(v);
            push(out, &p, l, m, -s, l - an + 1.0);
        }
    }))
}

/// `F|l,m;±N⟩ = |l,m;∓N⟩`.
pub fn sign_f(p: &PodlesParams) -> Result<SparseKernel> {
    p.require_spinor()?;
    let p = *p;
    Ok(SparseKernel::new(TAG, 0, move |v, out| {
        if admissible(&p, v) {
            let (l, m, s) = decode(v);
            push(out, &p, l, m, -s, 1.0);
        }
    }))
}

/// `γ = +1` on `ℋ_{-N}` and `-1` on `ℋ_N`.
pub fn grading(p: &PodlesParams) -> Result<SparseKernel> {
    p.require_spinor()?;
    let p = *p;
    Ok(SparseKernel::new(TAG, 0, move |v, out| {
        if admissible(&p, v) {
            let (l, m, s) = decode(v);
            push(out, &p, l, m, s, -(s as f64));
        }
    }))
}

/// `2×2` array of kernels of the idempotent
/// `e_s = (1+s²)⁻¹ [[s²+A, qB], [q⁻¹B*, 1-q²A]]`.
pub fn idempotent_es(p: &PodlesParams) -> Vec<Vec<Option<SparseKernel>>> {
    let q = p.q.value();
    let s2 = p.s * p.s;
    let c = 1.0 / (1.0 + s2);
    let pp = *p;
    let id = SparseKernel::new(TAG, 0, move |v, out| {
        if admissible(&pp, v) {
            out.push((v.clone(), C64::new(1.0, 0.0)));
        }
    });
    let a = generator_kernel(PodlesGen::A, p);
    let b = generator_kernel(PodlesGen::B, p);
    let bs = generator_kernel(PodlesGen::BStar, p);
    let re = |x: f64| C64::new(x, 0.0);
    vec![
        vec![
            Some(id.combine(re(c * s2), &a, re(c))),
            Some(b.scale(re(c * q))),
        ],
        vec![
            Some(bs.scale(re(c / q))),
            Some(id.combine(re(c), &a, re(-c * q * q))),
        ],
    ]
}

fn gamma_f(p: &PodlesParams) -> Result<SparseKernel> {
    Ok(grading(p)?.compose(&sign_f(p)?))
}

/// Per-source weights and sources of an interior trace on `basis ⊗ C^c`.
fn block_sources(
    basis: &TruncatedBasis,
    c: usize,
    margin: i32,
    weight: impl Fn(&Label, usize) -> f64,
) -> (Vec<u32>, Vec<f64>) {
    let mut src = Vec::new();
    let mut wts = Vec::new();
    for i in basis.interior(margin) {
        let v = basis.label(i as usize);
        for a in 0..c {
            src.push(i * c as u32 + a as u32);
            wts.push(weight(v, a));
        }
    }
    (src, wts)
}

fn weighted_sum(diag: &[C64], w: &[f64]) -> f64 {
    diag.iter().zip(w).fold(0.0, |acc, (d, w)| acc + d.re * w)
}

fn require_cutoff(p: &PodlesParams, cutoff: HalfInt, extra: i32) -> Result<()> {
    if cutoff.twice < p.n.twice.abs() + 2 * extra {
        return Err(Error::InvalidParam(format!(
            "cutoff {cutoff} must be at least |N|+{extra}"
        )));
    }
    Ok(())
}

/// `½ Tr_{ℋ⊗C²}(γF[F,e_s])` over interior labels.
pub fn fredholm_index(p: &PodlesParams, cutoff: HalfInt) -> Result<f64> {
    p.require_spinor()?;
    require_cutoff(p, cutoff, 4)?;
    let basis = basis(p, cutoff);
    let f = sign_f(p)?;
    let comm = block_commutator(&f, &idempotent_es(p));
    let m = TraceFactor::new(materialize_block(&comm, &basis));
    let g = TraceFactor::new(materialize_block(&block_diagonal(&gamma_f(p)?, 2), &basis));
    let (src, wts) = block_sources(&basis, 2, INDEX_MARGIN, |_, _| 1.0);
    let diag = product_diagonal(&[&g, &m], &src);
    Ok(0.5 * weighted_sum(&diag, &wts))
}

/// `½ Tr(γF[F,a])` over interior labels for an element given as a word in
/// the generators of [`generators`].
pub fn chern0(a: &AlgebraWord, p: &PodlesParams, cutoff: HalfInt) -> Result<f64> {
    p.require_spinor()?;
    let gens = generators(p);
    let ka = crate::opalg::word_kernel(a, &gens, TAG)?;
    let radius = crate::opalg::word_radius(a, &gens)?;
    let basis = basis(p, cutoff);
    let f = sign_f(p)?;
    let m = TraceFactor::new(crate::opalg::materialize(&f.commutator(&ka), &basis));
    let g = TraceFactor::new(crate::opalg::materialize(&gamma_f(p)?, &basis));
    let (src, wts) = block_sources(&basis, 1, radius.max(2), |_, _| 1.0);
    let diag = product_diagonal(&[&g, &m], &src);
    Ok(0.5 * weighted_sum(&diag, &wts))
}

/// `-½ Tr_{ℋ⊗C²}(K⁻²ηγF[F,e_s]³)` with `K⁻² → q^{-2m}` and `η = diag(q, q⁻¹)`.
pub fn twisted_q_index(p: &PodlesParams, cutoff: HalfInt) -> Result<f64> {
    p.require_spinor()?;
    require_cutoff(p, cutoff, 4)?;
    let q = p.q.value();
    let basis = basis(p, cutoff);
    let f = sign_f(p)?;
    let comm = block_commutator(&f, &idempotent_es(p));
    let m = TraceFactor::new(materialize_block(&comm, &basis));
    let g = TraceFactor::new(materialize_block(&block_diagonal(&gamma_f(p)?, 2), &basis));
    let eta = [q, 1.0 / q];
    let (src, wts) = block_sources(&basis, 2, INDEX_MARGIN, |v, a| {
        q.powf(-(v.comps[1] as f64)) * eta[a]
    });
    let diag = product_diagonal(&[&g, &m, &m, &m], &src);
    Ok(-0.5 * weighted_sum(&diag, &wts))
}

/// Partial sum of `Tr(T|D|^{-s})` over shells `l ≤ cutoff`. With `weight = None`
/// the shell traces of the identity are used directly.
pub fn zeta_partial(
    weight: Option<&dyn Fn(&Label) -> f64>,
    s: f64,
    p: &PodlesParams,
    cutoff: HalfInt,
) -> Result<f64> {
    p.require_spinor()?;
    let n2 = p.n.twice.abs();
    let an = p.n.to_f64().abs();
    let mut total = 0.0;
    let mut l2 = n2;
    while l2 <= cutoff.twice {
        let l = l2 as f64 / 2.0;
        let shell = match weight {
            None => 2.0 * (l2 + 1) as f64,
            Some(wf) => {
                let mut acc = 0.0;
                for &sec in p.sectors() {
                    for m2 in (-l2..=l2).step_by(2) {
                        acc += wf(&Label::new(TAG, &[l2, m2, sec]));
                    }
                }
                acc
            }
        };
        total += shell * (l - an + 1.0).powf(-s);
        l2 += 2;
    }
    Ok(total)
}

/// `4ζ(s-1) + (4|N|-2)ζ(s)`.
pub fn zeta_closed_form(s: f64, p: &PodlesParams) -> Result<f64> {
    if s <= 2.0 {
        return Err(Error::Domain(format!(
            "the full trace converges only for s > 2, got {s}"
        )));
    }
    let an = p.n.to_f64().abs();
    Ok(4.0 * zeta_closed(s - 1.0)? + (4.0 * an - 2.0) * zeta_closed(s)?)
}

/// Upper bound for the omitted tail `Σ_{n > M} (4n + 4|N| - 2) n^{-s}`, where
/// `M = l_max - |N| + 1` and `l_max ≤ cutoff` is the last shell kept.
pub fn zeta_tail_bound(s: f64, p: &PodlesParams, cutoff: HalfInt) -> f64 {
    let an = p.n.to_f64().abs();
    let mm = ((cutoff.twice - p.n.twice.abs()) / 2) as f64 + 1.0;
    4.0 * mm.powf(2.0 - s) / (s - 2.0) + (4.0 * an - 2.0).abs() * mm.powf(1.0 - s) / (s - 1.0)
}

/// Top residue of `ζ_a` through the symbol map `A ↦ 0`, `B ↦ s u`, `B* ↦ s ū`.
/// Letters `x0, x1, xm1` are mapped through the change of generators.
pub fn top_residue(a: &AlgebraWord, p: &PodlesParams) -> Result<f64> {
    let q = p.q.value();
    let t = p.t();
    let r = (q * p.num(2.0)).sqrt();
    let mut constant = C64::new(0.0, 0.0);
    for (c, letters) in &a.terms {
        let mut coef = *c;
        let mut winding = 0i32;
        for l in letters {
            let (f, wnd) = match (l.name.as_str(), l.star) {
                ("A", _) => (0.0, 0),
                ("B", false) => (p.s, 1),
                ("B", true) => (p.s, -1),
                ("x0", _) => (t, 0),
                ("x1", false) => (r * p.s, 1),
                ("x1", true) => (r * p.s, -1),
                ("xm1", false) => (-r * p.s / q, -1),
                ("xm1", true) => (-r * p.s / q, 1),
                _ => return Err(Error::UnboundGenerator(l.key())),
            };
            coef *= f;
            winding += wnd;
        }
        if winding == 0 {
            constant += coef;
        }
    }
    Ok(4.0 * constant.re)
}

/// `J|l,m;±N⟩ = (-1)^{m+N}|l,-m;∓N⟩`, extended antilinearly.
pub fn real_structure_j(p: &PodlesParams) -> Result<AntiKernel> {
    p.require_spinor()?;
    let p = *p;
    Ok(AntiKernel::new(SparseKernel::new(TAG, 0, move |v, out| {
        if admissible(&p, v) {
            let (l, m, s) = decode(v);
            let e = (v.comps[1] + p.n.twice) / 2;
            let sign = if e.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            push(out, &p, l, -m, -s, sign);
        }
    })))
}

/// `J⁻¹ = (-1)^{2N} J`.
pub fn real_structure_j_inverse(p: &PodlesParams) -> Result<AntiKernel> {
    let j = real_structure_j(p)?;
    let sign = if p.n.twice.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    };
    Ok(AntiKernel::new(j.on_basis.scale(C64::new(sign, 0.0))))
}

/// Decay ratios against `q^l` of `[a, J b* J⁻¹]` and `[[D,a], J b* J⁻¹]`.
pub fn weak_real_decay(
    a: PodlesGen,
    b: PodlesGen,
    p: &PodlesParams,
    cutoff: HalfInt,
) -> Result<(f64, f64)> {
    let j = real_structure_j(p)?;
    let jinv = real_structure_j_inverse(p)?;
    let ka = generator_kernel(a, p);
    let kbs = generator_kernel(b.star(), p);
    let opp = j.conjugate(&kbs, &jinv);
    let d = dirac(p)?;
    let first = ka.commutator(&opp);
    let second = d.commutator(&ka).commutator(&opp);
    let basis = basis(p, cutoff);
    let q = p.q.value();
    let rate = |v: &Label| q.powf(v.comps[0] as f64 / 2.0);
    Ok((
        crate::opalg::sup_decay_ratio(&first, &basis, &rate),
        crate::opalg::sup_decay_ratio(&second, &basis, &rate),
    ))
}

/// Coefficients of the left regular representation at `N = 0`, in the form
/// obtained directly from the spherical harmonics.
pub mod left_regular {
    use super::PodlesParams;

    fn rad(p: &PodlesParams, l: f64) -> f64 {
        let s2 = p.s * p.s;
        (p.num(2.0 * l).powi(2) * s2 + p.num(l).powi(2) * (1.0 - s2).powi(2)).sqrt()
    }

    pub fn b_plus(p: &PodlesParams, l: f64, m: f64) -> f64 {
        p.q.pow(-(l - m) - 0.5) * rad(p, l + 1.0) / p.num(2.0 * l + 2.0)
            * (p.num(l + m + 1.0) * p.num(l + m + 2.0)
                / (p.num(2.0 * l + 1.0) * p.num(2.0 * l + 3.0)))
            .sqrt()
    }

    pub fn b_zero(p: &PodlesParams, l: f64, m: f64) -> f64 {
        let q = p.q.value();
        if l == 0.0 {
            return 0.0;
        }
        -(1.0 - p.s * p.s) * (1.0 - q * q) * p.q.pow(m - 0.5) * p.num(l) * p.num(l + 1.0)
            / (p.num(2.0 * l) * p.num(2.0 * l + 2.0))
            * super::sqrt_nn(p.num(l - m) * p.num(l + m + 1.0))
    }

    pub fn b_minus(p: &PodlesParams, l: f64, m: f64) -> f64 {
        if l == 0.0 {
            return 0.0;
        }
        -p.q.pow(l + m + 0.5) * rad(p, l) / p.num(2.0 * l)
            * super::sqrt_nn(
                p.num(l - m) * p.num(l - m - 1.0) / (p.num(2.0 * l - 1.0) * p.num(2.0 * l + 1.0)),
            )
    }

    pub fn a_plus(p: &PodlesParams, l: f64, m: f64) -> f64 {
        -p.q.pow(m - 1.0) * rad(p, l + 1.0) / p.num(2.0 * l + 2.0)
            * super::sqrt_nn(
                p.num(l + m + 1.0) * p.num(l - m + 1.0)
                    / (p.num(2.0 * l + 1.0) * p.num(2.0 * l + 3.0)),
            )
    }

    pub fn a_zero(p: &PodlesParams, l: f64, m: f64) -> f64 {
        if l == 0.0 {
            return (1.0 - p.s * p.s) / (1.0 + p.q.value().powi(2));
        }
        (1.0 - p.s * p.s) / p.q.value() * (1.0 + p.q.pow(2.0 * m)) * p.num(l) * p.num(l + 1.0)
            / (p.num(2.0 * l) * p.num(2.0 * l + 2.0))
    }
}

/// Largest deviation between the `N = 0` representation (after the change of
/// generators) and the left regular representation, over labels `l ≤ cutoff - 1`.
/// Each matrix element is compared directly, so a constant unitary
/// discrepancy between the two conventions shows up in the result.
pub fn scalar_consistency(p: &PodlesParams, cutoff: HalfInt) -> Result<f64> {
    if p.n.twice != 0 {
        return Err(Error::InvalidParam("scalar consistency needs N = 0".into()));
    }
    let basis = basis(p, cutoff);
    let a = generator_kernel(PodlesGen::A, p);
    let b = generator_kernel(PodlesGen::B, p);
    let mut worst: f64 = 0.0;
    for &i in &basis.interior(2) {
        let v = basis.label(i as usize);
        let (l, m, _) = decode(v);
        let mut expect_a = vec![
            (label_f(l + 1.0, m), left_regular::a_plus(p, l, m)),
            (label_f(l, m), left_regular::a_zero(p, l, m)),
        ];
        if l >= 1.0 && m.abs() <= l - 1.0 {
            expect_a.push((label_f(l - 1.0, m), left_regular::a_plus(p, l - 1.0, m)));
        }
        let mut expect_b = vec![(label_f(l + 1.0, m + 1.0), left_regular::b_plus(p, l, m))];
        if m + 1.0 <= l {
            expect_b.push((label_f(l, m + 1.0), left_regular::b_zero(p, l, m)));
        }
        if l >= 1.0 && m + 1.0 <= l - 1.0 {
            expect_b.push((label_f(l - 1.0, m + 1.0), left_regular::b_minus(p, l, m)));
        }
        for (k, expect) in [(&a, expect_a), (&b, expect_b)] {
            let got = k.apply(v)?;
            worst = worst.max(term_deviation(&got, &expect));
        }
    }
    Ok(worst)
}

fn label_f(l: f64, m: f64) -> Label {
    Label::new(
        TAG,
        &[(2.0 * l).round() as i32, (2.0 * m).round() as i32, 1],
    )
}

fn term_deviation(got: &Terms, expect: &[(Label, f64)]) -> f64 {
    let mut worst: f64 = 0.0;
    for (lab, c) in got {
        let e = expect.iter().find(|(l, _)| l == lab).map_or(0.0, |x| x.1);
        worst = worst.max((c - C64::new(e, 0.0)).norm());
    }
    for (lab, e) in expect {
        if !got.iter().any(|(l, _)| l == lab) {
            worst = worst.max(e.abs());
        }
    }
    worst
}
