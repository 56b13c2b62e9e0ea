//! Wrapping numbers and the Fix/Move decomposition of boundary braids.
//!
//! A boundary set `B ⊆ [n]` marks punctures whose strands must travel along
//! the boundary of the disk. A simple `δ_π` keeps such a strand in place when
//! it is a singleton of `π`, and advances it by one step when it shares a
//! block with its successor. Summing these steps gives wrapping numbers.
//!
//! Every boundary partition splits as `δ_π = δ_fix · δ_move`, where the fix
//! part isolates the boundary points and the move part is determined by the
//! boundary motion alone.

use serde::{Deserialize, Serialize};

use crate::error::{check_same_n, Error, Result};
use crate::garside::{invert, multiply, normal_form, DualSimpleWord, GarsideElement};
use crate::ncpart::{enumerate_nc, right_complement_unchecked, NoncrossingPartition};

/// A boundary word: factors are boundary partitions for the running set,
/// after `delta_exp` implicit copies of `δ`.
pub type BoundaryWord = DualSimpleWord;

/// A subset of `[n]`, sorted.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct BoundarySet {
    n: usize,
    members: Vec<usize>,
}

impl BoundarySet {
    pub fn new(n: usize, members: &[usize]) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfRange { what: "n", value: 0, min: 1, max: crate::ncpart::MAX_N as i64 });
        }
        let mut members = members.to_vec();
        for &b in &members {
            if b == 0 || b > n {
                return Err(Error::OutOfRange { what: "boundary point", value: b as i64, min: 1, max: n as i64 });
            }
        }
        members.sort_unstable();
        members.dedup();
        Ok(BoundarySet { n, members })
    }

    pub fn empty(n: usize) -> Self {
        BoundarySet { n, members: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        BoundarySet { n, members: (1..=n).collect() }
    }

    /// The subset of `[n]` encoded by the bits of `mask`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        BoundarySet { n, members: (1..=n).filter(|b| mask >> (b - 1) & 1 == 1).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, b: usize) -> bool {
        self.members.binary_search(&b).is_ok()
    }

    /// Every member moved by `s` steps around the cycle.
    pub fn shift(&self, s: i64) -> Self {
        let members: Vec<usize> = self.members.iter().map(|&b| cyclic(self.n, b as i64 + s)).collect();
        BoundarySet::new(self.n, &members).expect("shift stays in range")
    }
}

impl Serialize for BoundarySet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.members.serialize(s)
    }
}

/// The representative of `x` in `[1, n]`.
pub(crate) fn cyclic(n: usize, x: i64) -> usize {
    (x - 1).rem_euclid(n as i64) as usize + 1
}

/// Wrapping numbers of the strands starting at the members of `base`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WrappingProfile {
    pub base: BoundarySet,
    /// Aligned with `base.members()`.
    pub w: Vec<i64>,
}

impl WrappingProfile {
    pub fn new(base: BoundarySet, w: Vec<i64>) -> Result<Self> {
        if w.len() != base.len() {
            return Err(Error::IndexMismatch { expected: base.len(), got: w.len() });
        }
        Ok(WrappingProfile { base, w })
    }

    pub fn zero(base: BoundarySet) -> Self {
        let w = vec![0; base.len()];
        WrappingProfile { base, w }
    }
}

#[derive(Serialize, Deserialize)]
struct ProfileRepr {
    n: usize,
    #[serde(rename = "B")]
    b: Vec<usize>,
    w: Vec<i64>,
}

impl Serialize for WrappingProfile {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ProfileRepr { n: self.base.n, b: self.base.members.clone(), w: self.w.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WrappingProfile {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = ProfileRepr::deserialize(d)?;
        if repr.b.len() != repr.w.len() {
            return Err(serde::de::Error::custom(Error::IndexMismatch { expected: repr.b.len(), got: repr.w.len() }));
        }
        let mut pairs: Vec<(usize, i64)> = repr.b.into_iter().zip(repr.w).collect();
        pairs.sort_unstable();
        let members: Vec<usize> = pairs.iter().map(|p| p.0).collect();
        let base = BoundarySet::new(repr.n, &members).map_err(serde::de::Error::custom)?;
        if base.len() != members.len() {
            return Err(serde::de::Error::custom("repeated boundary point"));
        }
        Ok(WrappingProfile { base, w: pairs.iter().map(|p| p.1).collect() })
    }
}

/// Result of applying one boundary partition to a boundary set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Step {
    pub image: BoundarySet,
    /// One bit per member of the source set, in sorted order.
    pub bits: Vec<u8>,
}

fn bit_of(pi: &NoncrossingPartition, b: usize) -> Option<u8> {
    let n = pi.n();
    if pi.is_singleton(b) {
        Some(0)
    } else if n > 1 && pi.same_block(b, cyclic(n, b as i64 + 1)) {
        Some(1)
    } else {
        None
    }
}

/// Applies `π` to `B` when `π` is a boundary partition for `B`.
pub fn boundary_step(pi: &NoncrossingPartition, set: &BoundarySet) -> Result<Option<Step>> {
    check_same_n(pi.n(), set.n)?;
    let mut bits = Vec::with_capacity(set.len());
    let mut image = Vec::with_capacity(set.len());
    for &b in &set.members {
        match bit_of(pi, b) {
            Some(bit) => {
                bits.push(bit);
                image.push(cyclic(set.n, b as i64 + bit as i64));
            }
            None => return Ok(None),
        }
    }
    Ok(Some(Step { image: BoundarySet::new(set.n, &image)?, bits }))
}

pub fn is_boundary_partition(pi: &NoncrossingPartition, set: &BoundarySet) -> bool {
    set.members.iter().all(|&b| bit_of(pi, b).is_some())
}

/// All boundary partitions for `set`, in canonical order.
pub fn boundary_partitions(set: &BoundarySet) -> Result<Vec<NoncrossingPartition>> {
    Ok(enumerate_nc(set.n)?.into_iter().filter(|p| is_boundary_partition(p, set)).collect())
}

/// Wrapping numbers of a boundary word and the final boundary set.
pub fn wrapping_of_word(word: &BoundaryWord, set: &BoundarySet) -> Result<(WrappingProfile, BoundarySet)> {
    check_same_n(word.n, set.n)?;
    let n = set.n;
    let mut pos: Vec<usize> = set.members.iter().map(|&b| cyclic(n, b as i64 + word.delta_exp)).collect();
    let mut w = vec![word.delta_exp; set.len()];
    for (index, pi) in word.factors.iter().enumerate() {
        check_same_n(n, pi.n())?;
        for (k, p) in pos.iter_mut().enumerate() {
            let bit = bit_of(pi, *p).ok_or(Error::FactorNotBoundary { index, b: *p })?;
            w[k] += bit as i64;
            *p = cyclic(n, *p as i64 + bit as i64);
        }
    }
    let image = BoundarySet::new(n, &pos)?;
    Ok((WrappingProfile { base: set.clone(), w }, image))
}

/// `π` with every member of `set` split off as a singleton.
pub fn fix_part(pi: &NoncrossingPartition, set: &BoundarySet) -> Result<NoncrossingPartition> {
    check_same_n(pi.n(), set.n)?;
    let blocks: Vec<Vec<usize>> = pi
        .blocks()
        .into_iter()
        .map(|b| b.into_iter().filter(|x| !set.contains(*x)).collect::<Vec<_>>())
        .filter(|b| !b.is_empty())
        .collect();
    NoncrossingPartition::from_partial_blocks(pi.n(), &blocks)
}

/// The right complement of the fix part inside `π`.
pub fn move_part(pi: &NoncrossingPartition, set: &BoundarySet) -> Result<NoncrossingPartition> {
    if !is_boundary_partition(pi, set) {
        check_same_n(pi.n(), set.n)?;
        return Err(Error::NotBoundary);
    }
    Ok(right_complement_unchecked(&fix_part(pi, set)?, pi))
}

/// The two factors of a boundary braid.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Decomposition {
    pub fix: GarsideElement,
    #[serde(rename = "move")]
    pub mov: GarsideElement,
}

/// Splits the braid of a boundary word as `fix · move`.
///
/// The move part is the product of the move parts of the individual steps,
/// taken at the running boundary set. A `δ⁻¹` step from `C` contributes the
/// inverse of the move part of `δ` from `C - 1`.
pub fn decompose(word: &BoundaryWord, set: &BoundarySet) -> Result<Decomposition> {
    check_same_n(word.n, set.n)?;
    let n = set.n;
    let total = normal_form(word);
    if set.is_empty() {
        return Ok(Decomposition { fix: total, mov: GarsideElement::identity(n) });
    }
    let max = NoncrossingPartition::maximum(n);
    let mut current = set.clone();
    let mut mov = GarsideElement::identity(n);
    for _ in 0..word.delta_exp.unsigned_abs() {
        let step = if word.delta_exp > 0 {
            let m = GarsideElement::simple(&move_part(&max, &current)?);
            current = current.shift(1);
            m
        } else {
            current = current.shift(-1);
            invert(&GarsideElement::simple(&move_part(&max, &current)?))
        };
        mov = multiply(&mov, &step)?;
    }
    for (index, pi) in word.factors.iter().enumerate() {
        let step = boundary_step(pi, &current)?.ok_or_else(|| {
            let b = current.members.iter().copied().find(|&b| bit_of(pi, b).is_none()).unwrap_or(0);
            Error::FactorNotBoundary { index, b }
        })?;
        mov = multiply(&mov, &GarsideElement::simple(&move_part(pi, &current)?))?;
        current = step.image;
    }
    let fix = multiply(&total, &invert(&mov))?;
    Ok(Decomposition { fix, mov })
}

/// Whether `b_1 + w_1 < … < b_k + w_k < b_1 + w_1 + n` for the sorted members.
pub fn validate_wrapping(set: &BoundarySet, profile: &WrappingProfile) -> Result<bool> {
    if profile.w.len() != set.len() {
        return Err(Error::IndexMismatch { expected: set.len(), got: profile.w.len() });
    }
    if profile.base != *set {
        check_same_n(profile.base.n, set.n)?;
        return Err(Error::IndexMismatch { expected: set.len(), got: profile.base.len() });
    }
    let ends: Vec<i64> = set.members.iter().zip(&profile.w).map(|(&b, &w)| b as i64 + w).collect();
    let increasing = ends.windows(2).all(|p| p[0] < p[1]);
    let closes = match (ends.first(), ends.last()) {
        (Some(first), Some(last)) => ends.len() == 1 || *last < first + set.n as i64,
        _ => true,
    };
    Ok(increasing && closes)
}

/// A boundary word for `set` with the prescribed wrapping numbers.
///
/// After pulling out `δ^m` for the minimum `m`, each round advances every
/// strand with positive remaining weight by one step using the single block
/// spanned by those strands and their successors.
pub fn realize_wrapping(set: &BoundarySet, profile: &WrappingProfile) -> Result<BoundaryWord> {
    if !validate_wrapping(set, profile)? {
        return Err(Error::InvalidProfile);
    }
    let n = set.n;
    let Some(&m) = profile.w.iter().min() else {
        return DualSimpleWord::new(n, Vec::new());
    };
    let mut rest: Vec<i64> = profile.w.iter().map(|w| w - m).collect();
    let mut pos = set.members.clone();
    let mut factors = Vec::new();
    while rest.iter().any(|&r| r > 0) {
        let mut block = Vec::new();
        for (k, p) in pos.iter_mut().enumerate() {
            if rest[k] > 0 {
                block.push(*p);
                *p = cyclic(n, *p as i64 + 1);
                block.push(*p);
                rest[k] -= 1;
            }
        }
        block.sort_unstable();
        block.dedup();
        let pi = NoncrossingPartition::irreducible(n, &block)?;
        factors.push(pi.rotate(m));
    }
    DualSimpleWord::with_delta(n, m, factors)
}

/// The move simple from `set` advancing exactly the points in `advancing`.
///
/// Defined when no advancing point runs into a staying member; the blocks
/// are `{i, …, j+1}` over the maximal cyclic runs `i, …, j` of `advancing`.
pub fn move_simple_advancing(set: &BoundarySet, advancing: &BoundarySet) -> Result<Option<NoncrossingPartition>> {
    check_same_n(set.n, advancing.n)?;
    let n = set.n;
    if !advancing.members.iter().all(|&b| set.contains(b)) {
        return Ok(None);
    }
    let next = |b: usize| cyclic(n, b as i64 + 1);
    for &b in &advancing.members {
        if set.contains(next(b)) && !advancing.contains(next(b)) {
            return Ok(None);
        }
    }
    if advancing.len() == n {
        return Ok(Some(NoncrossingPartition::maximum(n)));
    }
    let mut blocks = Vec::new();
    for &start in &advancing.members {
        if advancing.contains(cyclic(n, start as i64 - 1)) {
            continue;
        }
        let mut block = vec![start];
        let mut x = start;
        while advancing.contains(x) {
            x = next(x);
            block.push(x);
        }
        blocks.push(block);
    }
    NoncrossingPartition::from_partial_blocks(n, &blocks).map(Some)
}

/// The unique move simple carrying `from` onto `to`, if the edge exists.
pub fn move_simple_between(from: &BoundarySet, to: &BoundarySet) -> Result<Option<NoncrossingPartition>> {
    check_same_n(from.n, to.n)?;
    if from.len() != to.len() {
        return Err(Error::IndexMismatch { expected: from.len(), got: to.len() });
    }
    let n = from.n;
    if from.len() == n {
        return Ok(Some(NoncrossingPartition::discrete(n)));
    }
    // Inside a maximal run i..j of `from` a staying prefix is followed by an
    // advancing suffix; the image misses exactly the first point of that
    // suffix, or j+1 when nothing advances.
    let mut advancing = Vec::new();
    for &start in &from.members {
        if from.contains(cyclic(n, start as i64 - 1)) {
            continue;
        }
        let mut run = vec![start];
        while from.contains(cyclic(n, *run.last().unwrap() as i64 + 1)) {
            run.push(cyclic(n, *run.last().unwrap() as i64 + 1));
        }
        let end = cyclic(n, *run.last().unwrap() as i64 + 1);
        match run.iter().position(|&x| !to.contains(x)) {
            Some(t) => advancing.extend_from_slice(&run[t..]),
            None if !to.contains(end) => {}
            None => return Ok(None),
        }
    }
    let advancing = BoundarySet::new(n, &advancing)?;
    let Some(pi) = move_simple_advancing(from, &advancing)? else {
        return Ok(None);
    };
    match boundary_step(&pi, from)? {
        Some(step) if step.image == *to => Ok(Some(pi)),
        _ => Ok(None),
    }
}
