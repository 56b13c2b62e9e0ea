//! Finite balls in the dual braid complex and machine checks of the
//! product structure of boundary braids.
//!
//! Balls grow from the identity by right multiplication with nontrivial dual
//! simple braids, so every ball lives in the positive monoid and its radius
//! counts simple factors. An edge `g → gδ_π` has norm `rk(π)`.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::ser::SerializeMap;
use serde::Serialize;

use crate::boundary::{
    boundary_partitions, boundary_step, decompose, fix_part, move_part, move_simple_advancing, BoundarySet,
    BoundaryWord,
};
use crate::error::{check_same_n, Error, Result};
use crate::garside::{abelianize, invert, multiply, DualSimpleWord, GarsideElement};
use crate::ncpart::{enumerate_nc, NoncrossingPartition};
use crate::orthoscheme::{DeltaComplex, Rational};

/// Largest `n` accepted by ball builders.
pub const MAX_BALL_N: usize = 7;

/// Largest radius accepted by ball builders.
pub const MAX_RADIUS: usize = 6;

/// Default cap on the number of vertices of a ball.
pub const DEFAULT_VERTEX_LIMIT: usize = 200_000;

/// A labelled edge `source → source · δ_label`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledEdge {
    pub source: usize,
    pub target: usize,
    pub label: NoncrossingPartition,
}

/// A ball around the identity in the dual braid complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyBall {
    pub n: usize,
    pub radius: usize,
    /// Sorted by abelianization, then by key, so edges increase the index.
    pub vertices: Vec<GarsideElement>,
    pub edges: Vec<LabeledEdge>,
    /// Simplices of dimension at least two as vertex tuples, when requested.
    pub simplices: Vec<Vec<usize>>,
}

impl CayleyBall {
    pub fn index_of(&self, g: &GarsideElement) -> Option<usize> {
        self.vertices.iter().position(|v| v == g)
    }

    /// The underlying orthoscheme complex with norms `rk(label)`.
    pub fn to_complex(&self) -> DeltaComplex {
        let mut x = DeltaComplex::new();
        for v in &self.vertices {
            x.add_vertex(v.key());
        }
        for e in &self.edges {
            x.insert_raw_simplex(vec![e.source, e.target]);
            x.set_norm(e.source, e.target, Rational::from_integer(e.label.rank() as i64));
        }
        for s in &self.simplices {
            x.insert_raw_simplex(s.clone());
        }
        x
    }
}

struct Limits {
    radius: usize,
    max_vertices: usize,
}

fn check_ball_args(n: usize, radius: usize) -> Result<()> {
    if n == 0 || n > MAX_BALL_N {
        return Err(Error::OutOfRange { what: "n", value: n as i64, min: 1, max: MAX_BALL_N as i64 });
    }
    if radius > MAX_RADIUS {
        return Err(Error::OutOfRange { what: "radius", value: radius as i64, min: 0, max: MAX_RADIUS as i64 });
    }
    Ok(())
}

/// Breadth-first growth from the identity. `labels_at` lists the admissible
/// labels at a vertex and `advance` computes the data of a new vertex.
fn grow<T: Clone>(
    n: usize,
    limits: &Limits,
    root: T,
    labels_at: &mut dyn FnMut(&T) -> Vec<NoncrossingPartition>,
    advance: &dyn Fn(&T, &NoncrossingPartition) -> T,
) -> Result<(Vec<GarsideElement>, Vec<T>)> {
    let id = GarsideElement::identity(n);
    let mut seen: HashMap<GarsideElement, usize> = HashMap::from([(id.clone(), 0)]);
    let mut elements = vec![id];
    let mut data = vec![root];
    let mut frontier = vec![0usize];
    let mut edges_seen = 0usize;
    for _ in 0..limits.radius {
        let mut next = Vec::new();
        for &v in &frontier {
            let labels = labels_at(&data[v]);
            for pi in labels {
                edges_seen += 1;
                let h = multiply(&elements[v], &GarsideElement::simple(&pi))?;
                if seen.contains_key(&h) {
                    continue;
                }
                if elements.len() >= limits.max_vertices {
                    return Err(Error::ResourceBound { vertices: elements.len(), edges: edges_seen });
                }
                seen.insert(h.clone(), elements.len());
                next.push(elements.len());
                data.push(advance(&data[v], &pi));
                elements.push(h);
            }
        }
        frontier = next;
    }
    Ok((elements, data))
}

/// Reorders vertices by `(abelianization, key)` and collects edges and,
/// when `max_dim ≥ 2`, chain simplices up to that dimension.
fn assemble(
    n: usize,
    radius: usize,
    elements: Vec<GarsideElement>,
    labels_at: &dyn Fn(usize) -> Vec<NoncrossingPartition>,
    max_dim: usize,
) -> Result<(CayleyBall, Vec<usize>)> {
    let mut order: Vec<usize> = (0..elements.len()).collect();
    let keys: Vec<(i64, String)> = elements.iter().map(|g| (abelianize(g), g.key())).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    let mut new_index = vec![0; elements.len()];
    for (i, &old) in order.iter().enumerate() {
        new_index[old] = i;
    }
    let lookup: HashMap<&GarsideElement, usize> = elements.iter().enumerate().map(|(i, g)| (g, new_index[i])).collect();
    let mut edges = Vec::new();
    let mut simplices = Vec::new();
    for &old in &order {
        let g = &elements[old];
        let labels = labels_at(old);
        let mut targets: Vec<(NoncrossingPartition, usize)> = Vec::new();
        for pi in labels {
            let h = multiply(g, &GarsideElement::simple(&pi))?;
            if let Some(&t) = lookup.get(&h) {
                targets.push((pi, t));
            }
        }
        for (pi, t) in &targets {
            edges.push(LabeledEdge { source: new_index[old], target: *t, label: pi.clone() });
        }
        if max_dim >= 2 {
            chains(new_index[old], &targets, max_dim, &mut simplices);
        }
    }
    edges.sort_by_key(|e| (e.source, e.target));
    simplices.sort();
    let ball = CayleyBall { n, radius, vertices: order.iter().map(|&i| elements[i].clone()).collect(), edges, simplices };
    Ok((ball, order))
}

/// Simplices `[g, gδ_{π_1}, …, gδ_{π_d}]` for strict chains `π_1 < … < π_d`
/// of admissible labels whose endpoints are all in the ball.
fn chains(base: usize, targets: &[(NoncrossingPartition, usize)], max_dim: usize, out: &mut Vec<Vec<usize>>) {
    fn rec(
        chain: &mut Vec<usize>,
        last: usize,
        targets: &[(NoncrossingPartition, usize)],
        max_dim: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if chain.len() >= 3 {
            out.push(chain.clone());
        }
        if chain.len() > max_dim {
            return;
        }
        for (j, (pi, t)) in targets.iter().enumerate() {
            let (prev, _) = &targets[last];
            if pi.rank() > prev.rank() && prev.leq_unchecked(pi) {
                chain.push(*t);
                rec(chain, j, targets, max_dim, out);
                chain.pop();
            }
        }
    }
    for (j, (_, t)) in targets.iter().enumerate() {
        let mut chain = vec![base, *t];
        rec(&mut chain, j, targets, max_dim, out);
    }
}

fn nontrivial_simples(n: usize) -> Result<Vec<NoncrossingPartition>> {
    Ok(enumerate_nc(n)?.into_iter().filter(|p| !p.is_discrete()).collect())
}

/// The ball of the given radius, with chain simplices up to dimension
/// `max_dim` (at most `n - 1`; pass 1 for the graph only).
pub fn build_ball(n: usize, radius: usize, max_dim: usize) -> Result<CayleyBall> {
    build_ball_limited(n, radius, max_dim, DEFAULT_VERTEX_LIMIT)
}

pub fn build_ball_limited(n: usize, radius: usize, max_dim: usize, max_vertices: usize) -> Result<CayleyBall> {
    check_ball_args(n, radius)?;
    let simples = nontrivial_simples(n)?;
    let limits = Limits { radius, max_vertices };
    let (elements, _) = grow(n, &limits, (), &mut |_| simples.clone(), &|_, _| ())?;
    let (ball, _) = assemble(n, radius, elements, &|_| simples.clone(), max_dim.min(n.saturating_sub(1)))?;
    Ok(ball)
}

/// Per-vertex data of a boundary ball.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryVertex {
    /// Image of the boundary set under the braid.
    pub bdry: BoundarySet,
    /// A boundary word reaching the vertex from the identity.
    pub word: BoundaryWord,
}

/// A ball restricted to boundary braids for `base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryBall {
    pub base: BoundarySet,
    pub ball: CayleyBall,
    /// Aligned with `ball.vertices`.
    pub data: Vec<BoundaryVertex>,
    /// Wrapping bits of every edge, aligned with `ball.edges`.
    pub bits: Vec<Vec<u8>>,
}

/// Grows a ball along edges whose labels are boundary partitions for the
/// running boundary set.
pub fn build_boundary_ball(base: &BoundarySet, radius: usize, max_dim: usize) -> Result<BoundaryBall> {
    let n = base.n();
    check_ball_args(n, radius)?;
    let mut cache: BTreeMap<BoundarySet, Vec<NoncrossingPartition>> = BTreeMap::new();
    let mut labels_for = |set: &BoundarySet| -> Vec<NoncrossingPartition> {
        cache
            .entry(set.clone())
            .or_insert_with(|| boundary_partitions(set).unwrap_or_default().into_iter().filter(|p| !p.is_discrete()).collect())
            .clone()
    };
    let limits = Limits { radius, max_vertices: DEFAULT_VERTEX_LIMIT };
    let root = BoundaryVertex { bdry: base.clone(), word: DualSimpleWord::new(n, Vec::new())? };
    let (elements, data) = grow(
        n,
        &limits,
        root,
        &mut |v: &BoundaryVertex| labels_for(&v.bdry),
        &|v: &BoundaryVertex, pi: &NoncrossingPartition| {
            let step = boundary_step(pi, &v.bdry).ok().flatten().expect("label is a boundary partition");
            let mut word = v.word.clone();
            word.factors.push(pi.clone());
            BoundaryVertex { bdry: step.image, word }
        },
    )?;
    let label_lists: Vec<Vec<NoncrossingPartition>> = data.iter().map(|v| labels_for(&v.bdry)).collect();
    let (ball, order) = assemble(n, radius, elements, &|i| label_lists[i].clone(), max_dim.min(n.saturating_sub(1)))?;
    let data: Vec<BoundaryVertex> = order.iter().map(|&i| data[i].clone()).collect();
    let bits = ball
        .edges
        .iter()
        .map(|e| boundary_step(&e.label, &data[e.source].bdry).map(|s| s.expect("boundary edge").bits))
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundaryBall { base: base.clone(), ball, data, bits })
}

/// The product of move simples along a path of advancing sets.
pub fn split_lift(base: &BoundarySet, path: &[BoundarySet]) -> Result<GarsideElement> {
    let n = base.n();
    let mut current = base.clone();
    let mut out = GarsideElement::identity(n);
    for (index, advancing) in path.iter().enumerate() {
        check_same_n(n, advancing.n())?;
        let pi = move_simple_advancing(&current, advancing)?.ok_or_else(|| Error::IllegalStep {
            index,
            reason: format!("cannot advance {:?} inside {:?}", advancing.members(), current.members()),
        })?;
        current = boundary_step(&pi, &current)?.expect("move simple is a boundary partition").image;
        out = multiply(&out, &GarsideElement::simple(&pi))?;
    }
    Ok(out)
}

/// Outcome of [`product_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductReport {
    pub n: usize,
    #[serde(rename = "B")]
    pub base: BoundarySet,
    pub radius: usize,
    pub vertices: usize,
    pub edges: usize,
    /// Distinct boundary sets met in the ball.
    #[serde(rename = "boundarySets")]
    pub boundary_sets: usize,
    pub violations: Vec<String>,
}

/// Checks the product decomposition of the boundary ball for `base`.
///
/// (a) At every boundary set met, `π ↦ (fix, move)` is an order isomorphism
/// onto the product of the images. (b) `β ↦ (Fix(β), Move(β))` recomposes,
/// fixes the base pointwise, is injective, and turns every edge into a fix
/// edge and a move edge. (c) Ranks split additively.
pub fn product_check(base: &BoundarySet, radius: usize) -> Result<ProductReport> {
    let n = base.n();
    let bb = build_boundary_ball(base, radius, 1)?;
    let mut violations = Vec::new();

    let mut sets: Vec<&BoundarySet> = bb.data.iter().map(|v| &v.bdry).collect();
    sets.sort();
    sets.dedup();
    for set in &sets {
        poset_product_violations(set, &mut violations)?;
    }

    let mut parts = Vec::with_capacity(bb.ball.vertices.len());
    let mut seen_pairs: HashSet<(GarsideElement, GarsideElement)> = HashSet::new();
    for (beta, v) in bb.ball.vertices.iter().zip(&bb.data) {
        let d = decompose(&v.word, base)?;
        if multiply(&d.fix, &d.mov)? != *beta {
            violations.push(format!("fix·move differs from {}", beta.key()));
        }
        let sigma = d.fix.perm();
        if base.members().iter().any(|&b| sigma.apply(b) != b) {
            violations.push(format!("fix part of {} moves a boundary point", beta.key()));
        }
        if !seen_pairs.insert((d.fix.clone(), d.mov.clone())) {
            violations.push(format!("decomposition of {} repeats another vertex", beta.key()));
        }
        parts.push(d);
    }

    for e in &bb.ball.edges {
        let set = &bb.data[e.source].bdry;
        let fix = fix_part(&e.label, set)?;
        let mov = move_part(&e.label, set)?;
        let (src, dst) = (&parts[e.source], &parts[e.target]);
        let expected_move = multiply(&src.mov, &GarsideElement::simple(&mov))?;
        if dst.mov != expected_move {
            violations.push(format!("move part not multiplicative along {} -> {}", e.source, e.target));
        }
        let conj = multiply(&multiply(&src.mov, &GarsideElement::simple(&fix))?, &invert(&src.mov))?;
        if dst.fix != multiply(&src.fix, &conj)? {
            violations.push(format!("fix part not twisted-multiplicative along {} -> {}", e.source, e.target));
        }
        let conj_is_fix_simple = conj.inf() == 0
            && conj.factors().len() <= 1
            && conj.factors().iter().all(|f| base.members().iter().all(|&b| f.is_singleton(b)));
        if !conj_is_fix_simple {
            violations.push(format!("fix edge along {} -> {} is not a base-fixing simple", e.source, e.target));
        }
        if e.label.rank() != fix.rank() + mov.rank() {
            violations.push(format!("rank does not split along {} -> {}", e.source, e.target));
        }
    }

    Ok(ProductReport {
        n,
        base: base.clone(),
        radius,
        vertices: bb.ball.vertices.len(),
        edges: bb.ball.edges.len(),
        boundary_sets: sets.len(),
        violations,
    })
}

/// Violations of the order isomorphism `π ↦ (fix, move)` at one boundary set.
pub fn poset_product_violations(set: &BoundarySet, out: &mut Vec<String>) -> Result<()> {
    let parts = boundary_partitions(set)?;
    let pairs: Vec<(NoncrossingPartition, NoncrossingPartition)> =
        parts.iter().map(|p| Ok((fix_part(p, set)?, move_part(p, set)?))).collect::<Result<_>>()?;
    let mut fixes: Vec<&NoncrossingPartition> = pairs.iter().map(|p| &p.0).collect();
    let mut moves: Vec<&NoncrossingPartition> = pairs.iter().map(|p| &p.1).collect();
    fixes.sort();
    fixes.dedup();
    moves.sort();
    moves.dedup();
    let distinct: HashSet<&(NoncrossingPartition, NoncrossingPartition)> = pairs.iter().collect();
    let tag = format!("{:?}", set.members());
    if distinct.len() != pairs.len() {
        out.push(format!("{tag}: decomposition of boundary partitions is not injective"));
    }
    if distinct.len() != fixes.len() * moves.len() {
        out.push(format!(
            "{tag}: {} pairs do not fill the {}x{} product",
            distinct.len(),
            fixes.len(),
            moves.len()
        ));
    }
    for (i, a) in parts.iter().enumerate() {
        for (j, b) in parts.iter().enumerate() {
            let lhs = a.leq_unchecked(b);
            let rhs = pairs[i].0.leq_unchecked(&pairs[j].0) && pairs[i].1.leq_unchecked(&pairs[j].1);
            if lhs != rhs {
                out.push(format!("{tag}: order not reflected between {a} and {b}"));
            }
        }
    }
    Ok(())
}

struct EdgeLabels<'a>(&'a CayleyBall);

impl Serialize for EdgeLabels<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.edges.iter().map(|e| (e.source, e.target, &e.label)))
    }
}

fn serialize_ball<S: serde::Serializer>(
    ball: &CayleyBall,
    extra: Option<&BoundaryBall>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let complex = serde_json::to_value(ball.to_complex()).map_err(serde::ser::Error::custom)?;
    let serde_json::Value::Object(fields) = complex else {
        return Err(serde::ser::Error::custom("complex did not serialize to an object"));
    };
    let mut map = s.serialize_map(None)?;
    for (k, v) in &fields {
        map.serialize_entry(k, v)?;
    }
    map.serialize_entry("labels", &EdgeLabels(ball))?;
    if let Some(bb) = extra {
        let bdry: BTreeMap<String, &BoundarySet> =
            ball.vertices.iter().zip(&bb.data).map(|(g, d)| (g.key(), &d.bdry)).collect();
        map.serialize_entry("bdry", &bdry)?;
        let bits: Vec<(usize, usize, &Vec<u8>)> =
            ball.edges.iter().zip(&bb.bits).map(|(e, b)| (e.source, e.target, b)).collect();
        map.serialize_entry("bits", &bits)?;
    }
    map.end()
}

impl Serialize for CayleyBall {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_ball(self, None, s)
    }
}

impl Serialize for BoundaryBall {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_ball(&self.ball, Some(self), s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, members: &[usize]) -> BoundarySet {
        BoundarySet::new(n, members).unwrap()
    }

    #[test]
    fn small_balls() {
        let b0 = build_ball(4, 0, 1).unwrap();
        assert_eq!((b0.vertices.len(), b0.edges.len()), (1, 0));
        let b1 = build_ball(3, 1, 1).unwrap();
        assert_eq!(b1.vertices.len(), 5);
        let max = NoncrossingPartition::maximum(3);
        let x = b1.to_complex();
        let e = b1.edges.iter().find(|e| e.label == max).unwrap();
        assert_eq!(x.norm(e.source, e.target), Some(Rational::from_integer(2)));
        assert!(matches!(build_ball_limited(4, 2, 1, 10), Err(Error::ResourceBound { .. })));
        assert!(build_ball(8, 1, 1).is_err());
    }

    #[test]
    fn boundary_ball_examples() {
        let b = build_boundary_ball(&BoundarySet::empty(3), 2, 1).unwrap();
        assert_eq!(b.ball, build_ball(3, 2, 1).unwrap());
        let bb = build_boundary_ball(&set(6, &[1, 2, 3, 4, 6]), 1, 1).unwrap();
        let label = NoncrossingPartition::irreducible(6, &[2, 3, 4, 5]).unwrap();
        let e = bb.ball.edges.iter().find(|e| e.source == 0 && e.label == label).unwrap();
        assert_eq!(bb.data[e.target].bdry, set(6, &[1, 3, 4, 5, 6]));
        let bb = build_boundary_ball(&set(5, &[2, 4, 5]), 1, 1).unwrap();
        assert_eq!(bb.ball.edges.iter().filter(|e| e.source == 0).count(), 11);
    }

    #[test]
    fn split_examples() {
        let b = set(4, &[1, 2]);
        assert!(split_lift(&b, &[]).unwrap().is_identity());
        let full = BoundarySet::full(5);
        assert_eq!(split_lift(&full, std::slice::from_ref(&full)).unwrap(), GarsideElement::delta_power(5, 1));
        assert!(matches!(split_lift(&b, &[set(4, &[1])]), Err(Error::IllegalStep { index: 0, .. })));
    }

    #[test]
    fn product_check_small() {
        let report = product_check(&set(4, &[1]), 2).unwrap();
        assert_eq!(report.violations, Vec::<String>::new());
        let report = product_check(&BoundarySet::full(4), 2).unwrap();
        assert_eq!(report.violations, Vec::<String>::new());
    }
}
