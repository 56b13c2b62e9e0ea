#![allow(dead_code)]

use boundary_braids::boundary::{boundary_partitions, boundary_step, BoundarySet, BoundaryWord};
use boundary_braids::{enumerate_nc, DualSimpleWord, NoncrossingPartition};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use std::ops::RangeInclusive;

/// Every set partition of `[n]` as block lists, via restricted growth strings.
pub fn all_set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(i: usize, n: usize, labels: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            let mut blocks = vec![Vec::new(); max];
            for (x, &l) in labels.iter().enumerate() {
                blocks[l].push(x + 1);
            }
            out.push(blocks);
            return;
        }
        for l in 0..=max {
            labels.push(l);
            rec(i + 1, n, labels, max.max(l + 1), out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, &mut Vec::new(), 0, &mut out);
    out
}

/// Direct search for a crossing quadruple `a < b < c < d`.
pub fn crosses(blocks: &[Vec<usize>]) -> bool {
    let n: usize = blocks.iter().map(|b| b.len()).sum();
    let mut label = vec![0; n + 1];
    for (k, b) in blocks.iter().enumerate() {
        for &x in b {
            label[x] = k;
        }
    }
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                for d in c + 1..=n {
                    if label[a] == label[c] && label[b] == label[d] && label[a] != label[b] {
                        return true;
                    }
                }
            }
        }
    }
    false
}

pub fn nc(n: usize, blocks: &[&[usize]]) -> NoncrossingPartition {
    let blocks: Vec<Vec<usize>> = blocks.iter().map(|b| b.to_vec()).collect();
    NoncrossingPartition::from_partial_blocks(n, &blocks).unwrap()
}

pub fn proper_simples(n: usize) -> Vec<NoncrossingPartition> {
    enumerate_nc(n).unwrap().into_iter().filter(|p| !p.is_discrete()).collect()
}

/// A random word of nontrivial simples with a small random δ-exponent.
pub fn random_word(rng: &mut ChaCha8Rng, n: usize, len: usize) -> DualSimpleWord {
    let simples = proper_simples(n);
    let factors = (0..len).map(|_| simples[rng.gen_range(0..simples.len())].clone()).collect();
    DualSimpleWord::with_delta(n, rng.gen_range(-2..=2), factors).unwrap()
}

/// Boundary partitions per boundary set, computed on demand.
#[derive(Default)]
pub struct BoundaryCache(HashMap<BoundarySet, Vec<NoncrossingPartition>>);

impl BoundaryCache {
    pub fn get(&mut self, set: &BoundarySet) -> &[NoncrossingPartition] {
        self.0.entry(set.clone()).or_insert_with(|| boundary_partitions(set).unwrap())
    }
}

/// A random boundary word for `set` with length and δ-exponent drawn from
/// the given ranges.
pub fn random_boundary_word(
    rng: &mut ChaCha8Rng,
    cache: &mut BoundaryCache,
    set: &BoundarySet,
    lens: RangeInclusive<usize>,
    deltas: RangeInclusive<i64>,
) -> BoundaryWord {
    let n = set.n();
    let len = rng.gen_range(lens);
    let delta_exp = rng.gen_range(deltas);
    let mut current = set.shift(delta_exp);
    let mut factors = Vec::new();
    for _ in 0..len {
        let options = cache.get(&current);
        let pi = options[rng.gen_range(0..options.len())].clone();
        current = boundary_step(&pi, &current).unwrap().unwrap().image;
        factors.push(pi);
    }
    DualSimpleWord::with_delta(n, delta_exp, factors).unwrap()
}

pub fn random_set(rng: &mut ChaCha8Rng, n: usize) -> BoundarySet {
    BoundarySet::from_mask(n, rng.gen_range(0..1u64 << n))
}
