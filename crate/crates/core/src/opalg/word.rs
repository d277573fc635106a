//! Formal *-polynomials in named generators.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_complex::Complex64 as C64;

use super::kernel::{merge_terms, SparseKernel, Terms};
use super::label::Label;
use crate::error::{Error, Result};

/// One generator occurrence, possibly starred.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub name: String,
    pub star: bool,
}

impl Letter {
    pub fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            star: false,
        }
    }

    pub fn star(name: &str) -> Self {
        Self {
            name: name.to_string(),
            star: true,
        }
    }

    /// Key under which the kernel of this letter is looked up.
    pub fn key(&self) -> String {
        if self.star {
            format!("{}*", self.name)
        } else {
            self.name.clone()
        }
    }

    pub fn involution(&self) -> Self {
        Self {
            name: self.name.clone(),
            star: !self.star,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

/// A finite linear combination of ordered words; the empty word is the unit.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AlgebraWord {
    pub terms: Vec<(C64, Vec<Letter>)>,
}

impl AlgebraWord {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn unit() -> Self {
        Self::monomial(C64::new(1.0, 0.0), Vec::new())
    }

    pub fn monomial(c: C64, letters: Vec<Letter>) -> Self {
        Self {
            terms: vec![(c, letters)],
        }
    }

    /// A single generator.
    pub fn gen(name: &str) -> Self {
        Self::monomial(C64::new(1.0, 0.0), vec![Letter::new(name)])
    }

    /// A single starred generator.
    pub fn gen_star(name: &str) -> Self {
        Self::monomial(C64::new(1.0, 0.0), vec![Letter::star(name)])
    }

    pub fn scalar(c: f64) -> Self {
        Self::monomial(C64::new(c, 0.0), Vec::new())
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            terms: self.terms.iter().map(|(a, w)| (a * c, w.clone())).collect(),
        }
    }

    pub fn scale_re(&self, c: f64) -> Self {
        self.scale(C64::new(c, 0.0))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self { terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale_re(-1.0))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = Vec::new();
        for (a, u) in &self.terms {
            for (b, v) in &other.terms {
                let mut w = u.clone();
                w.extend(v.iter().cloned());
                terms.push((a * b, w));
            }
        }
        Self { terms }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::unit(), |acc, _| acc.mul(self))
    }

    /// `[self, other]`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// The antilinear anti-multiplicative involution.
    pub fn star(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(c, w)| (c.conj(), w.iter().rev().map(Letter::involution).collect()))
                .collect(),
        }
    }

    /// Merge identical words and drop zero coefficients.
    pub fn simplify(&self) -> Self {
        let mut map: BTreeMap<Vec<Letter>, C64> = BTreeMap::new();
        for (c, w) in &self.terms {
            *map.entry(w.clone()).or_insert(C64::new(0.0, 0.0)) += c;
        }
        Self {
            terms: map
                .into_iter()
                .filter(|(_, c)| c.norm_sqr() != 0.0)
                .map(|(w, c)| (c, w))
                .collect(),
        }
    }

    /// Largest number of letters in a term.
    pub fn degree(&self) -> usize {
        self.terms.iter().map(|(_, w)| w.len()).max().unwrap_or(0)
    }

    /// Parse `"x0^2 x1 x1* - 0.5 x2"`: terms separated by `+`/`-`, an optional
    /// real coefficient, letters separated by spaces or `·`, stars as suffix.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(s.to_string());
        let mut out = Self::zero();
        let normalized = s
            .replace('·', " ")
            .replace(" - ", " + -")
            .replace(" -", " + -");
        for raw in normalized.split('+') {
            let raw = raw.trim();
            if raw.is_empty() {
                continue;
            }
            let mut coef = 1.0;
            let mut letters = Vec::new();
            let mut tokens: Vec<&str> = raw.split_whitespace().collect();
            if let Some(first) = tokens.first() {
                if *first == "-" {
                    coef = -1.0;
                    tokens.remove(0);
                } else if let Some(rest) = first.strip_prefix('-') {
                    coef = -1.0;
                    if rest.is_empty() {
                        tokens.remove(0);
                    } else {
                        tokens[0] = rest;
                    }
                }
            }
            for tok in tokens {
                if let Ok(c) = tok.parse::<f64>() {
                    coef *= c;
                    continue;
                }
                let (base, power) = match tok.split_once('^') {
                    Some((b, p)) => (b, p.parse::<u32>().map_err(|_| bad())?),
                    None => (tok, 1),
                };
                let (name, star) = match base.strip_suffix('*') {
                    Some(n) => (n, true),
                    None => (base, false),
                };
                if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                    return Err(bad());
                }
                for _ in 0..power {
                    letters.push(Letter {
                        name: name.to_string(),
                        star,
                    });
                }
            }
            out.terms.push((C64::new(coef, 0.0), letters));
        }
        if out.terms.is_empty() {
            return Err(bad());
        }
        Ok(out)
    }
}

impl fmt::Display for AlgebraWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (c, w)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            for l in w {
                write!(f, " {l}")?;
            }
        }
        Ok(())
    }
}

/// Named generator kernels; starred generators are stored under `"name*"`.
pub type GeneratorSet = HashMap<String, SparseKernel>;

/// Apply a word to a basis vector, rightmost letter first, merging like terms.
pub fn evaluate_word(w: &AlgebraWord, gens: &GeneratorSet, v: &Label) -> Result<Terms> {
    let mut total = Vec::new();
    let mut buf = Vec::new();
    for (c, letters) in &w.terms {
        let mut cur: Terms = vec![(v.clone(), *c)];
        for letter in letters.iter().rev() {
            let k = gens
                .get(&letter.key())
                .ok_or_else(|| Error::UnboundGenerator(letter.key()))?;
            let mut next = Vec::new();
            for (u, a) in &cur {
                buf.clear();
                k.apply_into(u, &mut buf);
                next.extend(buf.drain(..).map(|(t, b)| (t, b * a)));
            }
            cur = merge_terms(next);
        }
        total.extend(cur);
    }
    Ok(merge_terms(total))
}

/// Total declared shift radius of the longest (by radius) term of a word.
pub fn word_radius(w: &AlgebraWord, gens: &GeneratorSet) -> Result<i32> {
    let mut best = 0;
    for (_, letters) in &w.terms {
        let mut r = 0;
        for letter in letters {
            let k = gens
                .get(&letter.key())
                .ok_or_else(|| Error::UnboundGenerator(letter.key()))?;
            r += k.radius();
        }
        best = best.max(r);
    }
    Ok(best)
}
