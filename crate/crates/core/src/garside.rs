//! Braid group arithmetic through the dual Garside structure.
//!
//! Every braid is stored in left-greedy normal form `δ^p · s_1 ⋯ s_r`, where
//! `δ` is the dual Garside element (the maximum partition) and every `s_i`
//! is a proper dual simple braid. Equality of normal forms decides the word
//! problem.
//!
//! Conjugation by `δ` acts on simples by rotation: `δ_π · δ = δ · δ_{π+1}`
//! where `π+1` is [`NoncrossingPartition::rotate`] by one step.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_same_n, Error, Result};
use crate::ncpart::{left_complement_unchecked, right_complement_unchecked, NoncrossingPartition, Permutation};

/// A word in the dual simple braids, optionally preceded by a power of `δ`.
///
/// The same type carries boundary words, whose factors must be boundary
/// partitions for a running boundary set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualSimpleWord {
    pub n: usize,
    pub delta_exp: i64,
    pub factors: Vec<NoncrossingPartition>,
}

impl DualSimpleWord {
    pub fn new(n: usize, factors: Vec<NoncrossingPartition>) -> Result<Self> {
        Self::with_delta(n, 0, factors)
    }

    pub fn with_delta(n: usize, delta_exp: i64, factors: Vec<NoncrossingPartition>) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfRange { what: "n", value: 0, min: 1, max: crate::ncpart::MAX_N as i64 });
        }
        for f in &factors {
            check_same_n(n, f.n())?;
        }
        Ok(DualSimpleWord { n, delta_exp, factors })
    }

    /// The concatenation `self · other`.
    pub fn concat(&self, other: &DualSimpleWord) -> Result<DualSimpleWord> {
        check_same_n(self.n, other.n)?;
        let mut factors: Vec<NoncrossingPartition> =
            self.factors.iter().map(|f| f.rotate(other.delta_exp)).collect();
        factors.extend(other.factors.iter().cloned());
        Ok(DualSimpleWord { n: self.n, delta_exp: self.delta_exp + other.delta_exp, factors })
    }
}

#[derive(Serialize, Deserialize)]
struct WordRepr {
    n: usize,
    word: Vec<Vec<Vec<usize>>>,
    #[serde(rename = "deltaExp", default, skip_serializing_if = "is_zero")]
    delta_exp: i64,
}

fn is_zero(x: &i64) -> bool {
    *x == 0
}

fn parse_factors(n: usize, raw: &[Vec<Vec<usize>>]) -> Result<Vec<NoncrossingPartition>> {
    raw.iter().map(|b| NoncrossingPartition::from_partial_blocks(n, b)).collect()
}

impl Serialize for DualSimpleWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WordRepr {
            n: self.n,
            word: self.factors.iter().map(|f| f.blocks()).collect(),
            delta_exp: self.delta_exp,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DualSimpleWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = WordRepr::deserialize(d)?;
        let factors = parse_factors(repr.n, &repr.word).map_err(serde::de::Error::custom)?;
        DualSimpleWord::with_delta(repr.n, repr.delta_exp, factors).map_err(serde::de::Error::custom)
    }
}

/// A braid in left-greedy normal form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GarsideElement {
    n: usize,
    inf: i64,
    factors: Vec<NoncrossingPartition>,
}

impl GarsideElement {
    pub fn identity(n: usize) -> Self {
        GarsideElement { n, inf: 0, factors: Vec::new() }
    }

    /// `δ^p`.
    pub fn delta_power(n: usize, p: i64) -> Self {
        GarsideElement { n, inf: p, factors: Vec::new() }
    }

    /// The dual simple braid `δ_π`.
    pub fn simple(pi: &NoncrossingPartition) -> Self {
        normalize(pi.n(), 0, vec![pi.clone()])
    }

    /// Normalizes `δ^inf · factors`; the factors may be arbitrary simples.
    pub fn from_parts(n: usize, inf: i64, factors: Vec<NoncrossingPartition>) -> Result<Self> {
        for f in &factors {
            check_same_n(n, f.n())?;
        }
        Ok(normalize(n, inf, factors))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Exponent of the maximal `δ`-power prefix.
    pub fn inf(&self) -> i64 {
        self.inf
    }

    pub fn factors(&self) -> &[NoncrossingPartition] {
        &self.factors
    }

    /// `inf + r`, the exponent of the minimal `δ`-power above the element.
    pub fn sup(&self) -> i64 {
        self.inf + self.factors.len() as i64
    }

    pub fn is_identity(&self) -> bool {
        self.inf == 0 && self.factors.is_empty()
    }

    /// Whether the element lies in the positive monoid.
    pub fn is_positive(&self) -> bool {
        self.inf >= 0
    }

    /// The normal form read back as a word.
    pub fn to_word(&self) -> DualSimpleWord {
        DualSimpleWord { n: self.n, delta_exp: self.inf, factors: self.factors.clone() }
    }

    /// The induced permutation of the punctures.
    pub fn perm(&self) -> Permutation {
        let mut sigma = NoncrossingPartition::maximum(self.n).perm().pow(self.inf);
        for f in &self.factors {
            sigma = sigma.then(&f.perm());
        }
        sigma
    }

    /// Canonical string key, e.g. `1|(1 2)(3 4)|(2 3)`.
    pub fn key(&self) -> String {
        let mut key = self.inf.to_string();
        for f in &self.factors {
            key.push('|');
            key.push_str(&f.perm().to_string());
        }
        key
    }
}

impl fmt::Display for GarsideElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "δ^{}", self.inf)?;
        for x in &self.factors {
            write!(f, " · {}", x.perm())?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    n: usize,
    inf: i64,
    factors: Vec<Vec<Vec<usize>>>,
}

impl Serialize for GarsideElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementRepr {
            n: self.n,
            inf: self.inf,
            factors: self.factors.iter().map(|f| f.blocks()).collect(),
        }
        .serialize(s)
    }
}

/// Reading an element renormalizes it, so any `δ^p`-prefixed word is accepted.
impl<'de> Deserialize<'de> for GarsideElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = ElementRepr::deserialize(d)?;
        let factors = parse_factors(repr.n, &repr.factors).map_err(serde::de::Error::custom)?;
        GarsideElement::from_parts(repr.n, repr.inf, factors).map_err(serde::de::Error::custom)
    }
}

/// `δ_a · δ_b` as a single simple, when the product is simple.
pub fn simple_product(a: &NoncrossingPartition, b: &NoncrossingPartition) -> Result<Option<NoncrossingPartition>> {
    let join = a.join(b)?;
    if a.rank() + b.rank() != join.rank() {
        return Ok(None);
    }
    if right_complement_unchecked(a, &join) == *b {
        Ok(Some(join))
    } else {
        Ok(None)
    }
}

/// The product of two simples known to multiply to a simple.
fn product_unchecked(a: &NoncrossingPartition, b: &NoncrossingPartition) -> NoncrossingPartition {
    NoncrossingPartition::from_perm(&a.perm().then(&b.perm())).expect("greedy step produces a simple")
}

/// Rewrites `δ^inf · factors` into left-greedy normal form.
///
/// Each local step replaces `(a, b)` by `(a·u, u⁻¹·b)` with `u` the largest
/// prefix of `b` that still fits under `a`. At a fixed point maxima sit at
/// the front and discrete factors at the back.
fn normalize(n: usize, inf: i64, factors: Vec<NoncrossingPartition>) -> GarsideElement {
    let mut fs: Vec<NoncrossingPartition> = factors.into_iter().filter(|f| !f.is_discrete()).collect();
    loop {
        let mut changed = false;
        for i in (0..fs.len().saturating_sub(1)).rev() {
            if fs[i].is_maximum() || fs[i + 1].is_discrete() {
                continue;
            }
            let u = fs[i].kreweras().meet_unchecked(&fs[i + 1]);
            if u.is_discrete() {
                continue;
            }
            let b = right_complement_unchecked(&u, &fs[i + 1]);
            fs[i] = product_unchecked(&fs[i], &u);
            fs[i + 1] = b;
            changed = true;
        }
        if !changed {
            break;
        }
    }
    let maxima = fs.iter().take_while(|f| f.is_maximum()).count();
    let factors: Vec<NoncrossingPartition> =
        fs.into_iter().skip(maxima).filter(|f| !f.is_discrete()).collect();
    GarsideElement { n, inf: inf + maxima as i64, factors }
}

/// Normal form of a word.
pub fn normal_form(w: &DualSimpleWord) -> GarsideElement {
    normalize(w.n, w.delta_exp, w.factors.clone())
}

/// The group product `g · h`.
pub fn multiply(g: &GarsideElement, h: &GarsideElement) -> Result<GarsideElement> {
    check_same_n(g.n, h.n)?;
    let mut factors: Vec<NoncrossingPartition> = g.factors.iter().map(|f| f.rotate(h.inf)).collect();
    factors.extend(h.factors.iter().cloned());
    Ok(normalize(g.n, g.inf + h.inf, factors))
}

/// The group inverse.
///
/// Uses `δ_s⁻¹ = δ⁻¹ · δ_{L(s)}` with `L(s)` the left complement of `s` in
/// the maximum, then moves every `δ⁻¹` to the front.
pub fn invert(g: &GarsideElement) -> GarsideElement {
    let n = g.n;
    let r = g.factors.len() as i64;
    let max = NoncrossingPartition::maximum(n);
    // g⁻¹ = δ^{-1} L_r · δ^{-1} L_{r-1} ⋯ δ^{-1} L_1 · δ^{-p}; the factor
    // L_j has j δ⁻¹'s to its right once the trailing δ^{-p} is included.
    let factors: Vec<NoncrossingPartition> = g
        .factors
        .iter()
        .enumerate()
        .rev()
        .map(|(j, s)| left_complement_unchecked(s, &max).rotate(-(j as i64) - g.inf))
        .collect();
    normalize(n, -r - g.inf, factors)
}

/// Prefix order: `g ≼ h` iff `g⁻¹h` is positive.
pub fn leq_prefix(g: &GarsideElement, h: &GarsideElement) -> Result<bool> {
    Ok(multiply(&invert(g), h)?.inf >= 0)
}

/// The abelianization `Braid_n → ℤ`, sending every simple to its rank.
pub fn abelianize(g: &GarsideElement) -> i64 {
    g.inf * (g.n as i64 - 1) + g.factors.iter().map(|f| f.rank() as i64).sum::<i64>()
}
