//! Noncrossing partitions of `[n]`, their lattice operations, and the
//! correspondence with noncrossing permutations.
//!
//! Points are labelled `1..=n` in every public interface. A partition is
//! stored as the array of block leaders (the least element of the block
//! containing each point), which is canonical: two partitions are equal
//! exactly when their leader arrays agree.
//!
//! Permutations act on the right and multiply left to right: in the product
//! `σ·τ` the point `i` goes first through `σ` and then through `τ`. With this
//! convention the block `{i_1 < … < i_k}` corresponds to the cycle
//! `(i_1 i_2 … i_k)` and `(1 5 6)·(2 3 4 5) = (1 2 3 4 5 6)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{check_same_n, Error, Result};

/// Largest `n` accepted by [`enumerate_nc`].
pub const MAX_ENUMERATE_N: usize = 14;

/// Largest number of points a partition may have.
pub const MAX_N: usize = 255;

/// A permutation of `[n]` acting on the right.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    image: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { image: (0..n as u8).collect() }
    }

    /// Builds a permutation from its one-line notation, `images[i-1] = i·σ`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n == 0 || n > MAX_N {
            return Err(Error::InvalidPermutation(format!("size {n} unsupported")));
        }
        let mut seen = vec![false; n];
        let mut image = Vec::with_capacity(n);
        for &j in images {
            if j == 0 || j > n || seen[j - 1] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection of [{n}]"
                )));
            }
            seen[j - 1] = true;
            image.push((j - 1) as u8);
        }
        Ok(Permutation { image })
    }

    /// Builds a permutation from disjoint cycles written with points `1..=n`.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::InvalidPermutation(format!("size {n} unsupported")));
        }
        let mut image: Vec<u8> = (0..n as u8).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for &x in cycle {
                if x == 0 || x > n || used[x - 1] {
                    return Err(Error::InvalidPermutation(format!(
                        "cycles {cycles:?} are not disjoint cycles on [{n}]"
                    )));
                }
                used[x - 1] = true;
            }
            for (k, &x) in cycle.iter().enumerate() {
                let y = cycle[(k + 1) % cycle.len()];
                image[x - 1] = (y - 1) as u8;
            }
        }
        Ok(Permutation { image })
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    /// `i·σ` for a point `i` in `1..=n`.
    pub fn apply(&self, i: usize) -> usize {
        self.image[i - 1] as usize + 1
    }

    /// One-line notation with points `1..=n`.
    pub fn images(&self) -> Vec<usize> {
        self.image.iter().map(|&j| j as usize + 1).collect()
    }

    /// The product `self·other`: first `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.n(), other.n());
        Permutation {
            image: self.image.iter().map(|&j| other.image[j as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0u8; self.n()];
        for (i, &j) in self.image.iter().enumerate() {
            image[j as usize] = i as u8;
        }
        Permutation { image }
    }

    pub fn pow(&self, k: i64) -> Permutation {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Permutation::identity(self.n());
        for _ in 0..k.unsigned_abs() {
            out = out.then(&base);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// Nontrivial cycles, each starting at its least point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.image[x] as usize;
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// A noncrossing partition of `[n]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NoncrossingPartition {
    lead: Vec<u8>,
}

fn validate_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(Error::OutOfRange {
            what: "n",
            value: n as i64,
            min: 1,
            max: MAX_N as i64,
        });
    }
    Ok(())
}

/// Leader array from arbitrary block labels.
fn canonical_leads(labels: &[usize]) -> Vec<u8> {
    let mut first = std::collections::HashMap::new();
    labels
        .iter()
        .enumerate()
        .map(|(i, l)| *first.entry(*l).or_insert(i as u8))
        .collect()
}

fn blocks_of(lead: &[u8]) -> Vec<Vec<u8>> {
    let n = lead.len();
    let mut index = vec![usize::MAX; n];
    let mut blocks: Vec<Vec<u8>> = Vec::new();
    for i in 0..n {
        let l = lead[i] as usize;
        if l == i {
            index[i] = blocks.len();
            blocks.push(vec![i as u8]);
        } else {
            blocks[index[l]].push(i as u8);
        }
    }
    blocks
}

/// Two blocks cross exactly when arcs between consecutive block elements cross.
fn has_crossing(lead: &[u8]) -> bool {
    let n = lead.len();
    let mut last = vec![usize::MAX; n];
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    for (i, &l) in lead.iter().enumerate() {
        let l = l as usize;
        if last[l] != usize::MAX {
            arcs.push((last[l], i));
        }
        last[l] = i;
    }
    for (x, &(a, c)) in arcs.iter().enumerate() {
        for &(b, d) in &arcs[x + 1..] {
            if (a < b && b < c && c < d) || (b < a && a < d && d < c) {
                return true;
            }
        }
    }
    false
}

/// Validates that `blocks` partition `[n]`, returning block labels per point.
fn partition_labels(n: usize, blocks: &[Vec<usize>], fill_singletons: bool) -> Result<Vec<usize>> {
    validate_n(n)?;
    let mut label = vec![usize::MAX; n];
    for (k, block) in blocks.iter().enumerate() {
        if block.is_empty() {
            return Err(Error::NotAPartition { n, reason: "empty block".into() });
        }
        for &x in block {
            if x == 0 || x > n {
                return Err(Error::NotAPartition {
                    n,
                    reason: format!("element {x} outside [1, {n}]"),
                });
            }
            if label[x - 1] != usize::MAX {
                return Err(Error::NotAPartition {
                    n,
                    reason: format!("element {x} appears twice"),
                });
            }
            label[x - 1] = k;
        }
    }
    let next = blocks.len();
    for (i, l) in label.iter_mut().enumerate() {
        if *l == usize::MAX {
            if !fill_singletons {
                return Err(Error::NotAPartition {
                    n,
                    reason: format!("element {} is not covered", i + 1),
                });
            }
            *l = next + i;
        }
    }
    Ok(label)
}

/// True iff the partition `blocks` of `[n]` has no crossing quadruple.
pub fn is_noncrossing(n: usize, blocks: &[Vec<usize>]) -> Result<bool> {
    let labels = partition_labels(n, blocks, false)?;
    Ok(!has_crossing(&canonical_leads(&labels)))
}

impl NoncrossingPartition {
    /// Builds a partition from blocks covering `[n]` exactly.
    pub fn new(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        Self::from_labels(n, partition_labels(n, blocks, false)?)
    }

    /// Builds a partition from its non-singleton blocks; uncovered points
    /// become singletons.
    pub fn from_partial_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        Self::from_labels(n, partition_labels(n, blocks, true)?)
    }

    fn from_labels(n: usize, labels: Vec<usize>) -> Result<Self> {
        let lead = canonical_leads(&labels);
        if has_crossing(&lead) {
            return Err(Error::Crossing { n });
        }
        Ok(NoncrossingPartition { lead })
    }

    pub(crate) fn from_leads_unchecked(lead: Vec<u8>) -> Self {
        debug_assert!(!has_crossing(&lead));
        NoncrossingPartition { lead }
    }

    pub fn discrete(n: usize) -> Self {
        NoncrossingPartition { lead: (0..n as u8).collect() }
    }

    pub fn maximum(n: usize) -> Self {
        NoncrossingPartition { lead: vec![0; n] }
    }

    /// The irreducible partition `π_A` whose only non-singleton block is `A`.
    pub fn irreducible(n: usize, block: &[usize]) -> Result<Self> {
        Self::from_partial_blocks(n, &[block.to_vec()])
    }

    pub fn n(&self) -> usize {
        self.lead.len()
    }

    /// Blocks with points `1..=n`, each ascending, ordered by least element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        blocks_of(&self.lead)
            .into_iter()
            .map(|b| b.into_iter().map(|x| x as usize + 1).collect())
            .collect()
    }

    /// Blocks of size at least two.
    pub fn nontrivial_blocks(&self) -> Vec<Vec<usize>> {
        self.blocks().into_iter().filter(|b| b.len() > 1).collect()
    }

    pub fn block_count(&self) -> usize {
        self.lead.iter().enumerate().filter(|(i, &l)| *i == l as usize).count()
    }

    pub fn rank(&self) -> usize {
        self.n() - self.block_count()
    }

    pub fn is_discrete(&self) -> bool {
        self.rank() == 0
    }

    pub fn is_maximum(&self) -> bool {
        self.lead.iter().all(|&l| l == 0)
    }

    /// Whether points `i` and `j` (1-based) lie in the same block.
    pub fn same_block(&self, i: usize, j: usize) -> bool {
        self.lead[i - 1] == self.lead[j - 1]
    }

    /// Whether `{i}` is a block.
    pub fn is_singleton(&self, i: usize) -> bool {
        let l = self.lead[i - 1];
        l as usize == i - 1 && self.lead[i..].iter().all(|&m| m != l)
    }

    /// Refinement order: every block of `self` lies inside a block of `other`.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        check_same_n(self.n(), other.n())?;
        Ok(self.leq_unchecked(other))
    }

    pub(crate) fn leq_unchecked(&self, other: &Self) -> bool {
        self.lead
            .iter()
            .enumerate()
            .all(|(i, &l)| other.lead[i] == other.lead[l as usize])
    }

    /// Greatest lower bound: the common refinement.
    pub fn meet(&self, other: &Self) -> Result<Self> {
        check_same_n(self.n(), other.n())?;
        Ok(self.meet_unchecked(other))
    }

    pub(crate) fn meet_unchecked(&self, other: &Self) -> Self {
        let labels: Vec<usize> = self
            .lead
            .iter()
            .zip(&other.lead)
            .map(|(&a, &b)| a as usize * 256 + b as usize)
            .collect();
        NoncrossingPartition::from_leads_unchecked(canonical_leads(&labels))
    }

    /// Least upper bound: the partition join, closed under merging crossing
    /// blocks.
    pub fn join(&self, other: &Self) -> Result<Self> {
        check_same_n(self.n(), other.n())?;
        let n = self.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        fn union(parent: &mut [usize], a: usize, b: usize) {
            let (ra, rb) = (find(parent, a), find(parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        for i in 0..n {
            union(&mut parent, i, self.lead[i] as usize);
            union(&mut parent, i, other.lead[i] as usize);
        }
        loop {
            let labels: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
            let lead = canonical_leads(&labels);
            let mut last = vec![usize::MAX; n];
            let mut arcs = Vec::new();
            for (i, &l) in lead.iter().enumerate() {
                let l = l as usize;
                if last[l] != usize::MAX {
                    arcs.push((last[l], i));
                }
                last[l] = i;
            }
            let mut merged = false;
            for (x, &(a, c)) in arcs.iter().enumerate() {
                for &(b, d) in &arcs[x + 1..] {
                    if (a < b && b < c && c < d) || (b < a && a < d && d < c) {
                        union(&mut parent, a, b);
                        merged = true;
                    }
                }
            }
            if !merged {
                return Ok(NoncrossingPartition { lead });
            }
        }
    }

    /// The noncrossing permutation: the increasing cycle on every block.
    pub fn perm(&self) -> Permutation {
        let n = self.n();
        let mut image = vec![0u8; n];
        for block in blocks_of(&self.lead) {
            for (k, &x) in block.iter().enumerate() {
                image[x as usize] = block[(k + 1) % block.len()];
            }
        }
        Permutation { image }
    }

    /// The partition whose noncrossing permutation is `sigma`, if any.
    pub fn from_perm(sigma: &Permutation) -> Option<Self> {
        let n = sigma.n();
        let mut lead = vec![u8::MAX; n];
        for start in 0..n {
            if lead[start] != u8::MAX {
                continue;
            }
            // `start` is the least point of its orbit; the orbit must climb
            // and then return to it.
            let mut prev = start;
            lead[start] = start as u8;
            let mut x = sigma.image[start] as usize;
            while x != start {
                if x < prev {
                    return None;
                }
                lead[x] = start as u8;
                prev = x;
                x = sigma.image[x] as usize;
            }
        }
        if has_crossing(&lead) {
            None
        } else {
            Some(NoncrossingPartition { lead })
        }
    }

    /// Element-wise rotation `i ↦ i + s (mod n)`.
    pub fn rotate(&self, s: i64) -> Self {
        let n = self.n() as i64;
        let shift = s.rem_euclid(n) as usize;
        if shift == 0 {
            return self.clone();
        }
        let mut labels = vec![0usize; self.n()];
        for (i, &l) in self.lead.iter().enumerate() {
            labels[(i + shift) % self.n()] = l as usize;
        }
        NoncrossingPartition { lead: canonical_leads(&labels) }
    }

    /// The unique `π₂` with `δ_self · δ_π₂ = δ_max`.
    pub fn kreweras(&self) -> Self {
        right_complement_unchecked(self, &Self::maximum(self.n()))
    }

    /// The unique `π₁` with `δ_π₁ · δ_self = δ_max`.
    pub fn left_kreweras(&self) -> Self {
        left_complement_unchecked(self, &Self::maximum(self.n()))
    }
}

impl PartialOrd for NoncrossingPartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical total order: by rank, then lexicographically on the block list.
impl Ord for NoncrossingPartition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n()
            .cmp(&other.n())
            .then(self.rank().cmp(&other.rank()))
            .then_with(|| blocks_of(&self.lead).cmp(&blocks_of(&other.lead)))
    }
}

impl fmt::Display for NoncrossingPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| {
                let xs: Vec<String> = b.iter().map(|x| x.to_string()).collect();
                format!("{{{}}}", xs.join(","))
            })
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for NoncrossingPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NC{}{}", self.n(), self)
    }
}

#[derive(Serialize, Deserialize)]
struct PartitionRepr {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl Serialize for NoncrossingPartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PartitionRepr { n: self.n(), blocks: self.blocks() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for NoncrossingPartition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = PartitionRepr::deserialize(d)?;
        NoncrossingPartition::from_partial_blocks(repr.n, &repr.blocks)
            .map_err(serde::de::Error::custom)
    }
}

/// All noncrossing partitions of `[n]` in canonical order.
pub fn enumerate_nc(n: usize) -> Result<Vec<NoncrossingPartition>> {
    if n == 0 || n > MAX_ENUMERATE_N {
        return Err(Error::OutOfRange {
            what: "n",
            value: n as i64,
            min: 1,
            max: MAX_ENUMERATE_N as i64,
        });
    }
    // Blocks still open for extension form a stack; joining a block closes
    // every block above it.
    fn grow(i: usize, lead: &mut Vec<u8>, open: &mut Vec<u8>, out: &mut Vec<NoncrossingPartition>) {
        let n = lead.len();
        if i == n {
            out.push(NoncrossingPartition { lead: lead.clone() });
            return;
        }
        lead[i] = i as u8;
        open.push(i as u8);
        grow(i + 1, lead, open, out);
        open.pop();
        for p in 0..open.len() {
            let closed = open.split_off(p + 1);
            lead[i] = open[p];
            grow(i + 1, lead, open, out);
            open.extend(closed);
        }
    }
    let mut out = Vec::new();
    grow(0, &mut vec![0; n], &mut Vec::with_capacity(n), &mut out);
    out.sort_by_cached_key(|p| (p.rank(), blocks_of(&p.lead)));
    Ok(out)
}

/// The pair of complements of `π` inside `π'`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplementPair {
    /// `π₁` with `δ_π₁ · δ_π = δ_π'`.
    pub left: NoncrossingPartition,
    /// `π₂` with `δ_π · δ_π₂ = δ_π'`.
    pub right: NoncrossingPartition,
}

pub(crate) fn right_complement_unchecked(
    pi: &NoncrossingPartition,
    target: &NoncrossingPartition,
) -> NoncrossingPartition {
    let sigma = pi.perm().inverse().then(&target.perm());
    NoncrossingPartition::from_perm(&sigma).expect("complement of a refinement is noncrossing")
}

pub(crate) fn left_complement_unchecked(
    pi: &NoncrossingPartition,
    target: &NoncrossingPartition,
) -> NoncrossingPartition {
    let sigma = target.perm().then(&pi.perm().inverse());
    NoncrossingPartition::from_perm(&sigma).expect("complement of a refinement is noncrossing")
}

/// Left and right complements of `pi` in `target`, requiring `pi ≤ target`.
pub fn complements(pi: &NoncrossingPartition, target: &NoncrossingPartition) -> Result<ComplementPair> {
    if !pi.leq(target)? {
        return Err(Error::NotBelow);
    }
    let right = NoncrossingPartition::from_perm(&pi.perm().inverse().then(&target.perm()));
    let left = NoncrossingPartition::from_perm(&target.perm().then(&pi.perm().inverse()));
    match (left, right) {
        (Some(left), Some(right))
            if left.rank() + pi.rank() == target.rank()
                && right.rank() + pi.rank() == target.rank() =>
        {
            Ok(ComplementPair { left, right })
        }
        _ => Err(Error::Internal(format!(
            "complements of {pi} in {target} failed rank additivity"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, blocks: &[&[usize]]) -> NoncrossingPartition {
        let blocks: Vec<Vec<usize>> = blocks.iter().map(|b| b.to_vec()).collect();
        NoncrossingPartition::from_partial_blocks(n, &blocks).unwrap()
    }

    #[test]
    fn crossing_detection() {
        assert!(!is_noncrossing(4, &[vec![1, 3], vec![2, 4]]).unwrap());
        assert!(is_noncrossing(9, &[vec![1, 2, 6, 9], vec![3, 5], vec![4], vec![7, 8]]).unwrap());
        let singletons: Vec<Vec<usize>> = (1..=5).map(|i| vec![i]).collect();
        assert!(is_noncrossing(5, &singletons).unwrap());
    }

    #[test]
    fn rejects_non_partitions() {
        let overlap = is_noncrossing(3, &[vec![1, 2], vec![2, 3]]);
        assert!(matches!(overlap, Err(Error::NotAPartition { .. })));
        let missing = is_noncrossing(3, &[vec![1, 2]]);
        assert!(matches!(missing, Err(Error::NotAPartition { .. })));
        assert!(matches!(NoncrossingPartition::new(4, &[vec![1, 3], vec![2, 4]]), Err(Error::Crossing { .. })));
        assert!(NoncrossingPartition::new(0, &[]).is_err());
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_nc(1).unwrap().len(), 1);
        assert_eq!(enumerate_nc(4).unwrap().len(), 14);
        assert!(enumerate_nc(0).is_err());
        assert!(enumerate_nc(15).is_err());
        let nc4 = enumerate_nc(4).unwrap();
        let ranks: Vec<usize> = nc4.iter().map(|p| p.rank()).collect();
        assert_eq!(ranks, vec![0, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 3]);
        assert!(nc4.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn order_examples() {
        let a = p(4, &[&[1, 3]]);
        let b = p(4, &[&[1, 3, 4]]);
        assert!(a.leq(&b).unwrap());
        let c = p(4, &[&[1, 2]]);
        let d = p(4, &[&[3, 4]]);
        assert!(!c.leq(&d).unwrap() && !d.leq(&c).unwrap());
        assert!(NoncrossingPartition::discrete(4).leq(&c).unwrap());
        assert!(c.leq(&p(5, &[])).is_err());
    }

    #[test]
    fn meet_and_join_examples() {
        let x = p(4, &[&[1, 3]]);
        let y = p(4, &[&[2, 4]]);
        assert_eq!(x.join(&y).unwrap(), NoncrossingPartition::maximum(4));
        let u = p(4, &[&[1, 2], &[3, 4]]);
        let v = p(4, &[&[1, 4], &[2, 3]]);
        assert_eq!(u.meet(&v).unwrap(), NoncrossingPartition::discrete(4));
        assert_eq!(u.meet(&u).unwrap(), u);
        assert_eq!(u.join(&NoncrossingPartition::discrete(4)).unwrap(), u);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(NoncrossingPartition::discrete(7).rank(), 0);
        assert_eq!(NoncrossingPartition::maximum(9).rank(), 8);
        assert_eq!(p(9, &[&[2, 3, 5, 8]]).rank(), 3);
    }

    #[test]
    fn perm_examples() {
        let pi = p(9, &[&[1, 2, 6, 9], &[3, 5], &[7, 8]]);
        assert_eq!(pi.perm().to_string(), "(1 2 6 9)(3 5)(7 8)");
        assert_eq!(NoncrossingPartition::maximum(6).perm().to_string(), "(1 2 3 4 5 6)");
        assert!(NoncrossingPartition::discrete(5).perm().is_identity());
    }

    #[test]
    fn product_convention() {
        let a = Permutation::from_cycles(6, &[vec![1, 5, 6]]).unwrap();
        let b = Permutation::from_cycles(6, &[vec![2, 3, 4, 5]]).unwrap();
        assert_eq!((&a * &b).to_string(), "(1 2 3 4 5 6)");
    }

    #[test]
    fn partition_of_perm_examples() {
        let full = Permutation::from_cycles(6, &[vec![1, 2, 3, 4, 5, 6]]).unwrap();
        assert_eq!(NoncrossingPartition::from_perm(&full), Some(NoncrossingPartition::maximum(6)));
        let t = Permutation::from_cycles(4, &[vec![1, 2]]).unwrap();
        assert_eq!(NoncrossingPartition::from_perm(&t), Some(p(4, &[&[1, 2]])));
        let bad = Permutation::from_cycles(3, &[vec![1, 3, 2]]).unwrap();
        assert_eq!(NoncrossingPartition::from_perm(&bad), None);
        let crossing = Permutation::from_cycles(4, &[vec![1, 3], vec![2, 4]]).unwrap();
        assert_eq!(NoncrossingPartition::from_perm(&crossing), None);
    }

    #[test]
    fn complement_examples() {
        let pi = p(5, &[&[2, 4]]);
        let pair = complements(&pi, &pi).unwrap();
        assert!(pair.left.is_discrete() && pair.right.is_discrete());
        let target = p(5, &[&[1, 2, 4], &[5]]);
        let pair = complements(&NoncrossingPartition::discrete(5), &target).unwrap();
        assert_eq!(pair.left, target);
        assert_eq!(pair.right, target);
        assert_eq!(complements(&p(4, &[&[1, 2]]), &p(4, &[&[3, 4]])), Err(Error::NotBelow));
    }

    #[test]
    fn rotate_examples() {
        let pi = p(4, &[&[1, 2]]);
        assert_eq!(pi.rotate(0), pi);
        assert_eq!(pi.rotate(4), pi);
        assert_eq!(pi.rotate(1), p(4, &[&[2, 3]]));
        assert_eq!(pi.rotate(-1), p(4, &[&[1, 4]]));
    }

    #[test]
    fn singleton_and_serde() {
        let pi = p(5, &[&[2, 4]]);
        assert!(pi.is_singleton(1) && pi.is_singleton(3) && !pi.is_singleton(2));
        let json = serde_json::to_string(&pi).unwrap();
        assert_eq!(json, r#"{"n":5,"blocks":[[1],[2,4],[3],[5]]}"#);
        let back: NoncrossingPartition = serde_json::from_str(&json).unwrap();
        assert_eq!(back, pi);
        assert!(serde_json::from_str::<NoncrossingPartition>(r#"{"n":4,"blocks":[[1,3],[2,4]]}"#).is_err());
    }
}
