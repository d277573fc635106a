//! Relation and adjoint checks for every supported representation, shared
//! by the command-line front end and the C interface.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::opalg::{
    adjoint_residual, relation_residual, word_radius, AlgebraWord, GeneratorSet, TruncatedBasis,
};
use crate::qcore::{DeformationParam, HalfInt};
use crate::{oddspheres, podles, s4q};

/// A representation that can be verified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Algebra {
    Podles,
    S4Scalar,
    S4Chiral,
    S4ChiralPlus,
    S4ChiralMinus,
    S4Fock,
    Odd,
}

impl Algebra {
    pub const ALL: [Algebra; 7] = [
        Algebra::Podles,
        Algebra::S4Scalar,
        Algebra::S4Chiral,
        Algebra::S4ChiralPlus,
        Algebra::S4ChiralMinus,
        Algebra::S4Fock,
        Algebra::Odd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algebra::Podles => "podles",
            Algebra::S4Scalar => "s4q-scalar",
            Algebra::S4Chiral => "s4q-chiral",
            Algebra::S4ChiralPlus => "s4q-chiral+",
            Algebra::S4ChiralMinus => "s4q-chiral-",
            Algebra::S4Fock => "s4q-fock",
            Algebra::Odd => "odd",
        }
    }

    /// Cutoff used when none is given.
    pub fn default_cutoff(self) -> HalfInt {
        match self {
            Algebra::Podles => HalfInt::from_int(8),
            Algebra::S4Scalar => HalfInt::from_int(6),
            Algebra::S4Chiral | Algebra::S4ChiralPlus | Algebra::S4ChiralMinus => {
                HalfInt::from_twice(13)
            }
            Algebra::S4Fock => HalfInt::from_int(20),
            Algebra::Odd => HalfInt::from_int(5),
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algebra {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        Algebra::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .or(match s.as_str() {
                "s4q" => Some(Algebra::S4Scalar),
                "s5q" => Some(Algebra::Odd),
                _ => None,
            })
            .ok_or(Error::Parse(s))
    }
}

/// Parameters of a verification run. Unused fields are ignored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyParams {
    pub q: f64,
    pub s: f64,
    pub n: HalfInt,
    pub ell: usize,
    pub cutoff: HalfInt,
    /// Relative change applied to one generator kernel, to test the harness.
    pub perturb: f64,
}

/// Worst interior residuals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub relation: f64,
    pub adjoint: f64,
    pub labels: usize,
}

impl VerifyReport {
    pub fn worst(&self) -> f64 {
        self.relation.max(self.adjoint)
    }
}

struct Setup {
    gens: GeneratorSet,
    rels: Vec<AlgebraWord>,
    pairs: Vec<(String, String)>,
    basis: TruncatedBasis,
}

fn chiral_generators(q: DeformationParam, chirality: i32) -> GeneratorSet {
    let mut g = GeneratorSet::new();
    for x in s4q::S4Gen::ALL {
        g.insert(
            x.name().to_string(),
            s4q::chiral_kernel(x, q, Some(chirality)),
        );
    }
    g.insert(
        "x0*".into(),
        s4q::chiral_kernel(s4q::S4Gen::X0, q, Some(chirality)),
    );
    g
}

fn pairs(names: &[&str]) -> Vec<(String, String)> {
    names
        .iter()
        .map(|n| (n.to_string(), format!("{n}*")))
        .collect()
}

fn setup(alg: Algebra, p: &VerifyParams) -> Result<Setup> {
    let q = DeformationParam::new(p.q)?;
    Ok(match alg {
        Algebra::Podles => {
            let pp = podles::PodlesParams::new(p.q, p.s, p.n)?;
            let mut rels = podles::relations_ddlw(&pp);
            rels.extend(podles::relations_ab(&pp));
            Setup {
                gens: podles::generators(&pp),
                rels,
                pairs: pairs(&["x1", "x0", "A", "B"]),
                basis: podles::basis(&pp, p.cutoff),
            }
        }
        Algebra::S4Scalar | Algebra::S4Chiral => {
            let space = if alg == Algebra::S4Scalar {
                s4q::S4Space::Scalar
            } else {
                s4q::S4Space::Chiral
            };
            let mut rels = s4q::defining_relations(q);
            rels.extend(s4q::seven_polynomials(q));
            rels.extend(s4q::crossed_relations(q));
            let basis = match space {
                s4q::S4Space::Scalar => s4q::scalar_basis(p.cutoff),
                _ => s4q::chiral_basis(p.cutoff, None),
            };
            Setup {
                gens: s4q::equivariant_generators(space, q)?,
                rels,
                pairs: pairs(&["x0", "x1", "x2"]),
                basis,
            }
        }
        Algebra::S4ChiralPlus | Algebra::S4ChiralMinus => {
            let c = if alg == Algebra::S4ChiralPlus { 1 } else { -1 };
            let mut rels = s4q::defining_relations(q);
            rels.extend(s4q::seven_polynomials(q));
            Setup {
                gens: chiral_generators(q, c),
                rels,
                pairs: pairs(&["x0", "x1", "x2"]),
                basis: s4q::chiral_basis(p.cutoff, Some(c)),
            }
        }
        Algebra::S4Fock => {
            let mut rels = s4q::defining_relations(q);
            rels.extend(s4q::seven_polynomials(q));
            let cutoff = u32::try_from(p.cutoff.twice / 2)
                .map_err(|_| Error::InvalidParam("Fock cutoff must be non-negative".into()))?;
            Setup {
                gens: s4q::fock_generators(q),
                rels,
                pairs: pairs(&["x0", "x1", "x2"]),
                basis: s4q::fock_basis(cutoff),
            }
        }
        Algebra::Odd => {
            let cutoff = u32::try_from(p.cutoff.twice / 2)
                .map_err(|_| Error::InvalidParam("cutoff must be non-negative".into()))?;
            let names: Vec<String> = (1..=p.ell + 1).map(oddspheres::z_name).collect();
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            Setup {
                gens: oddspheres::generators(p.ell, q)?,
                rels: oddspheres::relations(p.ell, q),
                pairs: pairs(&refs),
                basis: oddspheres::enumerate_labels(p.ell, cutoff)?,
            }
        }
    })
}

/// Largest relation residual and largest deviation of each starred
/// generator from the adjoint of its partner, both on interior labels.
///
/// With `perturb ≠ 0` the alphabetically first unstarred generator is scaled
/// by `1 + perturb` before checking.
pub fn verify(alg: Algebra, p: &VerifyParams) -> Result<VerifyReport> {
    let mut s = setup(alg, p)?;
    if p.perturb != 0.0 {
        let key = s.gens.keys().filter(|k| !k.ends_with('*')).min().cloned();
        if let Some(key) = key {
            let k = s.gens[&key].scale(C64::new(1.0 + p.perturb, 0.0));
            s.gens.insert(key, k);
        }
    }
    let mut margin = 0;
    for r in &s.rels {
        margin = margin.max(word_radius(r, &s.gens)?);
    }
    if s.basis.interior(margin).is_empty() {
        return Err(Error::InvalidParam(format!(
            "cutoff {} leaves no interior labels at margin {margin}",
            p.cutoff
        )));
    }
    let relation = relation_residual(&s.rels, &s.gens, &s.basis, margin)?;
    let mut adjoint: f64 = 0.0;
    for (a, b) in &s.pairs {
        let (ka, kb) = (&s.gens[a], &s.gens[b]);
        let m = ka.radius().max(kb.radius()).max(margin);
        adjoint = adjoint.max(adjoint_residual(ka, kb, &s.basis, m));
    }
    Ok(VerifyReport {
        relation,
        adjoint,
        labels: s.basis.len(),
    })
}
