//! Weighted-shift kernels of the generators on the scalar, chiral and Fock
//! spaces, the `U_q(so(5))` action, and the relation words.
//!
//! Each generator is a table of shifts `(Δ2l, Δ2m1, Δ2m2, Δ2j)` with a
//! coefficient evaluated at the source label. The adjoint of a table sends
//! `v` to `v - Δ` with the coefficient evaluated at `v - Δ`, so starred
//! generators and `F_i = E_i*` are exact adjoints by construction.

use std::sync::Arc;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::coeffs::{ChiralCoefficients, ScalarCoefficients, So5Coefficients};
use super::{admissible, S4Space};
use crate::error::{Error, Result};
use crate::opalg::{AlgebraTag, AlgebraWord, GeneratorSet, SparseKernel};
use crate::qcore::DeformationParam;

/// Generators of the coordinate algebra with a kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum S4Gen {
    X0,
    X1,
    X2,
    X1Star,
    X2Star,
}

impl S4Gen {
    pub const ALL: [S4Gen; 5] = [
        S4Gen::X0,
        S4Gen::X1,
        S4Gen::X2,
        S4Gen::X1Star,
        S4Gen::X2Star,
    ];

    pub fn star(self) -> S4Gen {
        match self {
            S4Gen::X0 => S4Gen::X0,
            S4Gen::X1 => S4Gen::X1Star,
            S4Gen::X1Star => S4Gen::X1,
            S4Gen::X2 => S4Gen::X2Star,
            S4Gen::X2Star => S4Gen::X2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            S4Gen::X0 => "x0",
            S4Gen::X1 => "x1",
            S4Gen::X2 => "x2",
            S4Gen::X1Star => "x1*",
            S4Gen::X2Star => "x2*",
        }
    }

    fn base(self) -> (usize, bool) {
        match self {
            S4Gen::X0 => (0, false),
            S4Gen::X1 => (1, false),
            S4Gen::X2 => (2, false),
            S4Gen::X1Star => (1, true),
            S4Gen::X2Star => (2, true),
        }
    }
}

/// Generators of `U_q(so(5))` with a kernel on each `V_l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum So5 {
    K1,
    K2,
    E1,
    E2,
    F1,
    F2,
}

#[derive(Clone, Copy)]
pub(crate) struct Pt {
    pub l: f64,
    pub m1: f64,
    pub m2: f64,
    pub j: f64,
    pub s: f64,
}

impl Pt {
    fn of(c: &[i32]) -> Self {
        Pt {
            l: c[0] as f64 / 2.0,
            m1: c[1] as f64 / 2.0,
            m2: c[2] as f64 / 2.0,
            j: c[3] as f64 / 2.0,
            s: if c.len() > 4 { c[4] as f64 } else { 0.0 },
        }
    }
}

#[derive(Clone, Copy)]
pub(crate) struct Ctx {
    pub q: DeformationParam,
    pub sc: ScalarCoefficients,
    pub ch: ChiralCoefficients,
    pub so: So5Coefficients,
}

impl Ctx {
    pub fn new(q: DeformationParam) -> Self {
        Ctx {
            q,
            sc: ScalarCoefficients { q },
            ch: ChiralCoefficients { q },
            so: So5Coefficients { q },
        }
    }
}

type CoefFn = fn(&Ctx, &Pt) -> f64;

#[derive(Clone, Copy)]
struct Entry {
    d: [i32; 4],
    c: CoefFn,
}

const fn en(d: [i32; 4], c: CoefFn) -> Entry {
    Entry { d, c }
}

fn scalar_table(i: usize) -> Vec<Entry> {
    match i {
        0 => vec![
            en([2, 0, 0, 2], |c, p| {
                c.sc.a(p.j, p.m1) * c.sc.c_plus(p.l, p.j, p.m2)
            }),
            en([-2, 0, 0, 2], |c, p| {
                c.sc.a(p.j, p.m1) * c.sc.c_minus(p.l, p.j, p.m2)
            }),
            en([2, 0, 0, -2], |c, p| {
                c.sc.a(p.j - 1.0, p.m1) * c.sc.c_minus(p.l + 1.0, p.j - 1.0, p.m2)
            }),
            en([-2, 0, 0, -2], |c, p| {
                c.sc.a(p.j - 1.0, p.m1) * c.sc.c_plus(p.l - 1.0, p.j - 1.0, p.m2)
            }),
        ],
        1 => vec![
            en([2, 2, 0, 2], |c, p| {
                c.sc.b_plus(p.j, p.m1) * c.sc.c_plus(p.l, p.j, p.m2)
            }),
            en([-2, 2, 0, 2], |c, p| {
                c.sc.b_plus(p.j, p.m1) * c.sc.c_minus(p.l, p.j, p.m2)
            }),
            en([2, 2, 0, -2], |c, p| {
                c.sc.b_minus(p.j, p.m1) * c.sc.c_minus(p.l + 1.0, p.j - 1.0, p.m2)
            }),
            en([-2, 2, 0, -2], |c, p| {
                c.sc.b_minus(p.j, p.m1) * c.sc.c_plus(p.l - 1.0, p.j - 1.0, p.m2)
            }),
        ],
        _ => vec![
            en([2, 0, 2, 0], |c, p| c.sc.d_plus(p.l, p.j, p.m2)),
            en([-2, 0, 2, 0], |c, p| c.sc.d_minus(p.l, p.j, p.m2)),
        ],
    }
}

fn chiral_table(i: usize) -> Vec<Entry> {
    match i {
        0 => vec![
            en([2, 0, 0, 2], |c, p| {
                c.ch.a_plus(p.j, p.m1) * c.ch.c_plus(p.l, p.j, p.m2)
            }),
            en([0, 0, 0, 2], |c, p| {
                -p.s * c.ch.a_plus(p.j, p.m1) * c.ch.c_zero(p.l, p.j, p.m2)
            }),
            en([-2, 0, 0, 2], |c, p| {
                c.ch.a_plus(p.j, p.m1) * c.ch.c_minus(p.l, p.j, p.m2)
            }),
            en([2, 0, 0, 0], |c, p| {
                c.ch.a_zero(p.j, p.m1) * c.ch.h_plus(p.l, p.j, p.m2)
            }),
            en([0, 0, 0, 0], |c, p| {
                p.s * c.ch.a_zero(p.j, p.m1) * c.ch.h_zero(p.l, p.j, p.m2)
            }),
            en([-2, 0, 0, 0], |c, p| {
                c.ch.a_zero(p.j, p.m1) * c.ch.h_plus(p.l - 1.0, p.j, p.m2)
            }),
            en([2, 0, 0, -2], |c, p| {
                c.ch.a_plus(p.j - 1.0, p.m1) * c.ch.c_minus(p.l + 1.0, p.j - 1.0, p.m2)
            }),
            en([0, 0, 0, -2], |c, p| {
                -p.s * c.ch.a_plus(p.j - 1.0, p.m1) * c.ch.c_zero(p.l, p.j - 1.0, p.m2)
            }),
            en([-2, 0, 0, -2], |c, p| {
                c.ch.a_plus(p.j - 1.0, p.m1) * c.ch.c_plus(p.l - 1.0, p.j - 1.0, p.m2)
            }),
        ],
        1 => vec![
            en([2, 2, 0, 2], |c, p| {
                c.ch.b_plus(p.j, p.m1) * c.ch.c_plus(p.l, p.j, p.m2)
            }),
            en([0, 2, 0, 2], |c, p| {
                -p.s * c.ch.b_plus(p.j, p.m1) * c.ch.c_zero(p.l, p.j, p.m2)
            }),
            en([-2, 2, 0, 2], |c, p| {
                c.ch.b_plus(p.j, p.m1) * c.ch.c_minus(p.l, p.j, p.m2)
            }),
            en([2, 2, 0, 0], |c, p| {
                c.ch.b_zero(p.j, p.m1) * c.ch.h_plus(p.l, p.j, p.m2)
            }),
            en([0, 2, 0, 0], |c, p| {
                p.s * c.ch.b_zero(p.j, p.m1) * c.ch.h_zero(p.l, p.j, p.m2)
            }),
            en([-2, 2, 0, 0], |c, p| {
                c.ch.b_zero(p.j, p.m1) * c.ch.h_plus(p.l - 1.0, p.j, p.m2)
            }),
            en([2, 2, 0, -2], |c, p| {
                c.ch.b_minus(p.j, p.m1) * c.ch.c_minus(p.l + 1.0, p.j - 1.0, p.m2)
            }),
            en([0, 2, 0, -2], |c, p| {
                -p.s * c.ch.b_minus(p.j, p.m1) * c.ch.c_zero(p.l, p.j - 1.0, p.m2)
            }),
            en([-2, 2, 0, -2], |c, p| {
                c.ch.b_minus(p.j, p.m1) * c.ch.c_plus(p.l - 1.0, p.j - 1.0, p.m2)
            }),
        ],
        _ => vec![
            en([2, 0, 2, 0], |c, p| c.ch.d_plus(p.l, p.j, p.m2)),
            en([0, 0, 2, 0], |c, p| p.s * c.ch.d_zero(p.l, p.j, p.m2)),
            en([-2, 0, 2, 0], |c, p| c.ch.d_minus(p.l, p.j, p.m2)),
        ],
    }
}

fn so5_table(h: So5) -> (Vec<Entry>, bool) {
    let e1 = || {
        vec![en([0, 2, 0, 0], |c, p| {
            c.q.num(p.j - p.m1).max(0.0).sqrt() * c.q.num(p.j + p.m1 + 1.0).max(0.0).sqrt()
        })]
    };
    let e2 = || {
        vec![
            en([0, -2, 2, 2], |c, p| {
                (c.q.num(p.j - p.m1 + 1.0) * c.q.num(p.j - p.m1 + 2.0))
                    .max(0.0)
                    .sqrt()
                    * c.so.a(p.l, p.j, p.m2)
            }),
            en([0, -2, 2, 0], |c, p| {
                (c.q.num(p.j + p.m1) * c.q.num(p.j - p.m1 + 1.0))
                    .max(0.0)
                    .sqrt()
                    * c.so.b(p.l, p.j, p.m2)
            }),
            en([0, -2, 2, -2], |c, p| {
                (c.q.num(p.j + p.m1) * c.q.num(p.j + p.m1 - 1.0))
                    .max(0.0)
                    .sqrt()
                    * c.so.c(p.l, p.j, p.m2)
            }),
        ]
    };
    match h {
        So5::K1 => (vec![en([0, 0, 0, 0], |c, p| c.q.pow(p.m1))], false),
        So5::K2 => (vec![en([0, 0, 0, 0], |c, p| c.q.pow(p.m2 - p.m1))], false),
        So5::E1 => (e1(), false),
        So5::F1 => (e1(), true),
        So5::E2 => (e2(), false),
        So5::F2 => (e2(), true),
    }
}

fn table_kernel(
    tag: AlgebraTag,
    table: Vec<Entry>,
    q: DeformationParam,
    adjoint: bool,
    chirality: Option<i32>,
) -> SparseKernel {
    let ctx = Ctx::new(q);
    let table = Arc::new(table);
    let radius = table.iter().map(|e| e.d[0].abs()).max().unwrap_or(0);
    SparseKernel::new(tag, radius, move |v, out| {
        if v.tag != tag || !admissible(v) {
            return;
        }
        if let Some(c) = chirality {
            if v.comps[4] != c {
                return;
            }
        }
        for e in table.iter() {
            let mut other = v.clone();
            for k in 0..4 {
                if adjoint {
                    other.comps[k] -= e.d[k];
                } else {
                    other.comps[k] += e.d[k];
                }
            }
            if !admissible(&other) {
                continue;
            }
            let at = if adjoint {
                Pt::of(&other.comps)
            } else {
                Pt::of(&v.comps)
            };
            let c = (e.c)(&ctx, &at);
            if c != 0.0 {
                out.push((other, C64::new(c, 0.0)));
            }
        }
    })
}

/// Kernel of a generator in the scalar representation.
pub fn scalar_kernel(g: S4Gen, q: DeformationParam) -> SparseKernel {
    let (i, adj) = g.base();
    table_kernel(AlgebraTag::S4Scalar, scalar_table(i), q, adj, None)
}

/// Kernel of a generator on the chiral space `ℋ_+ ⊕ ℋ_-`, acting on each
/// summand with its own sign; with `Some(±1)` it is restricted to `ℋ_±`.
pub fn chiral_kernel(g: S4Gen, q: DeformationParam, chirality: Option<i32>) -> SparseKernel {
    let (i, adj) = g.base();
    table_kernel(AlgebraTag::S4Chiral, chiral_table(i), q, adj, chirality)
}

/// Kernel of a `U_q(so(5))` generator on the scalar or chiral space.
pub fn so5_kernel(h: So5, space: S4Space, q: DeformationParam) -> Result<SparseKernel> {
    if space == S4Space::Fock {
        return Err(Error::InvalidParam(
            "U_q(so(5)) acts on the scalar and chiral spaces only".into(),
        ));
    }
    let (table, adj) = so5_table(h);
    Ok(table_kernel(space.tag(), table, q, adj, None))
}

/// Kernel of a generator on both Fock sectors.
pub fn fock_kernel(g: S4Gen, q: DeformationParam) -> SparseKernel {
    let qv = q.value();
    let tag = AlgebraTag::Fock;
    SparseKernel::new(tag, 2, move |v, out| {
        if v.tag != tag || !admissible(v) {
            return;
        }
        let (k1, k2, s) = (v.comps[0], v.comps[1], v.comps[2]);
        let re = |x: f64| C64::new(x, 0.0);
        match g {
            S4Gen::X0 => out.push((v.clone(), re(s as f64 * qv.powi(2 * (k1 + k2))))),
            S4Gen::X1 => out.push((
                v.shifted(&[(0, 1)]),
                re(qv.powi(2 * k2) * (1.0 - qv.powi(4 * (k1 + 1))).sqrt()),
            )),
            S4Gen::X1Star => {
                if k1 > 0 {
                    out.push((
                        v.shifted(&[(0, -1)]),
                        re(qv.powi(2 * k2) * (1.0 - qv.powi(4 * k1)).sqrt()),
                    ));
                }
            }
            S4Gen::X2 => out.push((
                v.shifted(&[(1, 1)]),
                re((1.0 - qv.powi(4 * (k2 + 1))).sqrt()),
            )),
            S4Gen::X2Star => {
                if k2 > 0 {
                    out.push((v.shifted(&[(1, -1)]), re((1.0 - qv.powi(4 * k2)).sqrt())));
                }
            }
        }
    })
}

fn bind(kernel: impl Fn(S4Gen) -> SparseKernel) -> GeneratorSet {
    let mut g = GeneratorSet::new();
    for x in S4Gen::ALL {
        g.insert(x.name().to_string(), kernel(x));
    }
    g.insert("x0*".into(), kernel(S4Gen::X0));
    g
}

/// Generator kernels `x0, x0*, x1, x1*, x2, x2*` on a space.
pub fn generators(space: S4Space, q: DeformationParam) -> GeneratorSet {
    match space {
        S4Space::Scalar => bind(|g| scalar_kernel(g, q)),
        S4Space::Chiral => bind(|g| chiral_kernel(g, q, None)),
        S4Space::Fock => fock_generators(q),
    }
}

/// Generator kernels on the Fock space.
pub fn fock_generators(q: DeformationParam) -> GeneratorSet {
    bind(|g| fock_kernel(g, q))
}

/// Generators plus `K_i, E_i, F_i` (with `K_i* = K_i`, `E_i* = F_i`).
pub fn equivariant_generators(space: S4Space, q: DeformationParam) -> Result<GeneratorSet> {
    let mut g = generators(space, q);
    for (h, name, star) in [
        (So5::K1, "K1", So5::K1),
        (So5::K2, "K2", So5::K2),
        (So5::E1, "E1", So5::F1),
        (So5::E2, "E2", So5::F2),
        (So5::F1, "F1", So5::E1),
        (So5::F2, "F2", So5::E2),
    ] {
        g.insert(name.into(), so5_kernel(h, space, q)?);
        g.insert(format!("{name}*"), so5_kernel(star, space, q)?);
    }
    Ok(g)
}

fn w(name: &str) -> AlgebraWord {
    AlgebraWord::gen(name)
}

fn ws(name: &str) -> AlgebraWord {
    AlgebraWord::gen_star(name)
}

/// The verification polynomials `Pol_1 … Pol_7`, each of which must vanish.
pub fn seven_polynomials(q: DeformationParam) -> Vec<AlgebraWord> {
    let q2 = q.value().powi(2);
    let q4 = q2 * q2;
    let (x0, x1, x2, x1s, x2s) = (w("x0"), w("x1"), w("x2"), ws("x1"), ws("x2"));
    vec![
        x0.mul(&x2).sub(&x2.mul(&x0).scale_re(q2)),
        x1.mul(&x2).sub(&x2.mul(&x1).scale_re(q2)),
        x2s.mul(&x1).sub(&x1.mul(&x2s).scale_re(q2)),
        x0.mul(&x1).sub(&x1.mul(&x0).scale_re(q2)),
        x1.commutator(&x1s).add(&x0.mul(&x0).scale_re(1.0 - q4)),
        x2.commutator(&x2s)
            .add(&x1s.mul(&x1))
            .sub(&x1.mul(&x1s).scale_re(q4)),
        x0.mul(&x0)
            .add(&x1.mul(&x1s))
            .add(&x2.mul(&x2s))
            .sub(&AlgebraWord::unit()),
    ]
}

/// All defining relations: `x_i x_j = q² x_j x_i` (`i<j`), `x_i* x_j = q² x_j x_i*`
/// (`i≠j`), the two commutator relations, the sphere relation, and `x0 = x0*`.
pub fn defining_relations(q: DeformationParam) -> Vec<AlgebraWord> {
    let q2 = q.value().powi(2);
    let q4 = q2 * q2;
    let x = [w("x0"), w("x1"), w("x2")];
    let xs = [ws("x0"), ws("x1"), ws("x2")];
    let mut rels = Vec::new();
    for i in 0..3 {
        for j in (i + 1)..3 {
            rels.push(x[i].mul(&x[j]).sub(&x[j].mul(&x[i]).scale_re(q2)));
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                rels.push(xs[i].mul(&x[j]).sub(&x[j].mul(&xs[i]).scale_re(q2)));
            }
        }
    }
    rels.push(
        xs[1]
            .commutator(&x[1])
            .sub(&x[0].mul(&x[0]).scale_re(1.0 - q4)),
    );
    rels.push(
        xs[2]
            .commutator(&x[2])
            .sub(&xs[1].mul(&x[1]))
            .add(&x[1].mul(&xs[1]).scale_re(q4)),
    );
    rels.push(
        x[0].mul(&x[0])
            .add(&x[1].mul(&xs[1]))
            .add(&x[2].mul(&xs[2]))
            .sub(&AlgebraWord::unit()),
    );
    rels.push(x[0].sub(&xs[0]));
    rels
}

/// The crossed-product relations between `U_q(so(5))` and the generators.
pub fn crossed_relations(q: DeformationParam) -> Vec<AlgebraWord> {
    let qv = q.value();
    let (x0, x1, x2, x1s) = (w("x0"), w("x1"), w("x2"), ws("x1"));
    let (k1, k2, e1, e2, f1, f2) = (w("K1"), w("K2"), w("E1"), w("E2"), w("F1"), w("F2"));
    let lr = |a: &AlgebraWord, b: &AlgebraWord, c: f64| a.mul(b).sub(&b.mul(a).scale_re(c));
    vec![
        lr(&k1, &x0, 1.0),
        lr(&k1, &x1, qv),
        lr(&k1, &x2, 1.0),
        lr(&k2, &x0, 1.0),
        lr(&k2, &x1, 1.0 / qv),
        lr(&k2, &x2, qv),
        lr(&e1, &x0, 1.0).sub(&x1.mul(&k1).scale_re(qv.powf(-0.5))),
        lr(&e1, &x1, 1.0 / qv),
        lr(&e1, &x2, 1.0),
        lr(&f1, &x0, 1.0).add(&k1.mul(&x1s).scale_re(qv.powf(-0.5))),
        lr(&f1, &x1, 1.0 / qv).sub(&x0.mul(&k1).scale_re(qv.sqrt() * q.num(2.0))),
        lr(&f1, &x2, 1.0),
        lr(&e2, &x0, 1.0),
        lr(&e2, &x1, qv).sub(&x2.mul(&k2)),
        lr(&e2, &x2, 1.0 / qv),
        lr(&f2, &x0, 1.0),
        lr(&f2, &x1, qv),
        lr(&f2, &x2, 1.0 / qv).sub(&x1.mul(&k2)),
    ]
}
