//! Finite Δ-complexes with orthoscheme metrics.
//!
//! A simplex is an ordered tuple of vertex indices; its faces are the
//! subtuples. Tuples may repeat a vertex, which lets a single vertex carry a
//! loop edge. Each edge carries a norm, its squared length, and a metric is
//! an orthoscheme metric exactly when norms add along every 2-simplex.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

/// Largest cube dimension accepted by [`subdivide_cube`].
pub const MAX_CUBE_DIM: usize = 7;

/// A finite Δ-complex with edge norms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DeltaComplex {
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    simplices: BTreeMap<usize, BTreeSet<Vec<usize>>>,
    norms: BTreeMap<(usize, usize), Rational>,
}

impl DeltaComplex {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a vertex, returning the index of an existing vertex with the same key.
    pub fn add_vertex(&mut self, key: impl Into<String>) -> usize {
        let key = key.into();
        if let Some(&i) = self.index.get(&key) {
            return i;
        }
        let i = self.vertices.len();
        self.index.insert(key.clone(), i);
        self.vertices.push(key);
        i
    }

    /// Adds a simplex together with all of its faces.
    pub fn add_simplex(&mut self, simplex: &[usize]) {
        let d = simplex.len();
        if d < 2 || self.contains_simplex(simplex) {
            return;
        }
        for skip in 0..d {
            let face: Vec<usize> = simplex.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, &v)| v).collect();
            self.add_simplex(&face);
        }
        self.simplices.entry(d - 1).or_default().insert(simplex.to_vec());
    }

    /// Inserts a simplex without its faces.
    pub fn insert_raw_simplex(&mut self, simplex: Vec<usize>) {
        if simplex.len() >= 2 {
            self.simplices.entry(simplex.len() - 1).or_default().insert(simplex);
        }
    }

    pub fn set_norm(&mut self, from: usize, to: usize, norm: Rational) {
        self.norms.insert((from, to), norm);
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, key: &str) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Simplices of dimension `d ≥ 1`.
    pub fn simplices(&self, d: usize) -> impl Iterator<Item = &Vec<usize>> {
        self.simplices.get(&d).into_iter().flatten()
    }

    pub fn count(&self, d: usize) -> usize {
        if d == 0 {
            self.vertices.len()
        } else {
            self.simplices.get(&d).map_or(0, |s| s.len())
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.simplices(1).map(|e| (e[0], e[1]))
    }

    pub fn contains_simplex(&self, simplex: &[usize]) -> bool {
        match simplex.len() {
            0 => false,
            1 => simplex[0] < self.vertices.len(),
            d => self.simplices.get(&(d - 1)).is_some_and(|s| s.contains(simplex)),
        }
    }

    pub fn norm(&self, from: usize, to: usize) -> Option<Rational> {
        self.norms.get(&(from, to)).copied()
    }

    pub fn norms(&self) -> impl Iterator<Item = ((usize, usize), Rational)> + '_ {
        self.norms.iter().map(|(&k, &v)| (k, v))
    }

    /// Highest dimension of a simplex, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        let top = self.simplices.iter().rev().find(|(_, s)| !s.is_empty()).map(|(&d, _)| d);
        top.or(if self.vertices.is_empty() { None } else { Some(0) })
    }

    /// Number of simplices in each dimension, starting from vertices.
    pub fn f_vector(&self) -> Vec<usize> {
        match self.dim() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|k| self.count(k)).collect(),
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// Simplices that are not faces of another simplex, isolated vertices included.
    pub fn maximal_simplices(&self) -> Vec<Vec<usize>> {
        let mut covered: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut used = vec![false; self.vertices.len()];
        for simplices in self.simplices.values() {
            for s in simplices {
                for &v in s {
                    used[v] = true;
                }
                if s.len() > 2 {
                    for skip in 0..s.len() {
                        let face: Vec<usize> = s.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, &v)| v).collect();
                        covered.insert(face);
                    }
                }
            }
        }
        let mut out: Vec<Vec<usize>> = (0..self.vertices.len()).filter(|&v| !used[v]).map(|v| vec![v]).collect();
        for simplices in self.simplices.values() {
            out.extend(simplices.iter().filter(|s| !covered.contains(*s)).cloned());
        }
        out
    }

    /// Maximal simplices of the top dimension.
    pub fn top_cells(&self) -> Vec<Vec<usize>> {
        match self.dim() {
            None => Vec::new(),
            Some(0) => (0..self.vertices.len()).map(|v| vec![v]).collect(),
            Some(d) => self.simplices(d).cloned().collect(),
        }
    }

    /// The full subcomplex on the vertices accepted by `keep`, reindexed in
    /// the original order.
    pub fn full_subcomplex(&self, keep: impl Fn(usize) -> bool) -> DeltaComplex {
        let mut out = DeltaComplex::new();
        let mut map = vec![usize::MAX; self.vertices.len()];
        for (v, key) in self.vertices.iter().enumerate() {
            if keep(v) {
                map[v] = out.add_vertex(key.clone());
            }
        }
        for simplices in self.simplices.values() {
            for s in simplices {
                if s.iter().all(|&v| map[v] != usize::MAX) {
                    out.insert_raw_simplex(s.iter().map(|&v| map[v]).collect());
                }
            }
        }
        for (&(a, b), &r) in &self.norms {
            if map[a] != usize::MAX && map[b] != usize::MAX {
                out.set_norm(map[a], map[b], r);
            }
        }
        out
    }

    /// Equality of simplices and norms, ignoring vertex keys.
    pub fn same_structure(&self, other: &DeltaComplex) -> bool {
        let nonempty = |c: &DeltaComplex| -> Vec<(usize, BTreeSet<Vec<usize>>)> {
            c.simplices.iter().filter(|(_, s)| !s.is_empty()).map(|(&d, s)| (d, s.clone())).collect()
        };
        self.vertices.len() == other.vertices.len()
            && nonempty(self) == nonempty(other)
            && self.norms == other.norms
    }
}

/// A failed law at a specific simplex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub simplex: Vec<usize>,
    pub law: ViolationKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    VertexOutOfRange,
    MissingFace,
    MissingNorm,
    NonPositiveNorm,
    NonAdditiveNorms,
}

/// All violations of the face-closure and orthoscheme norm laws.
pub fn check_complex(x: &DeltaComplex) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = x.vertices.len();
    for simplices in x.simplices.values() {
        for s in simplices {
            let violation = |law| Violation { simplex: s.clone(), law };
            if s.iter().any(|&v| v >= n) {
                out.push(violation(ViolationKind::VertexOutOfRange));
                continue;
            }
            if s.len() > 2 {
                for skip in 0..s.len() {
                    let face: Vec<usize> = s.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, &v)| v).collect();
                    if !x.contains_simplex(&face) {
                        out.push(violation(ViolationKind::MissingFace));
                        break;
                    }
                }
            }
            match s.len() {
                2 => match x.norm(s[0], s[1]) {
                    None => out.push(violation(ViolationKind::MissingNorm)),
                    Some(r) if r <= Rational::zero() => out.push(violation(ViolationKind::NonPositiveNorm)),
                    Some(_) => {}
                },
                3 => {
                    if let (Some(a), Some(b), Some(c)) = (x.norm(s[0], s[1]), x.norm(s[1], s[2]), x.norm(s[0], s[2])) {
                        if a + b != c {
                            out.push(violation(ViolationKind::NonAdditiveNorms));
                        }
                    }
                }
                _ => {}
            }
        }
    }
    out
}

fn subset_key(members: impl IntoIterator<Item = usize>) -> String {
    let parts: Vec<String> = members.into_iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// The unit `k`-cube subdivided into the `k!` standard orthoschemes `1_B`,
/// `B` running over chains of subsets of `[k]`.
pub fn subdivide_cube(k: usize) -> Result<DeltaComplex> {
    if k == 0 || k > MAX_CUBE_DIM {
        return Err(Error::OutOfRange { what: "k", value: k as i64, min: 1, max: MAX_CUBE_DIM as i64 });
    }
    let mut x = DeltaComplex::new();
    for mask in 0u32..(1 << k) {
        x.add_vertex(subset_key((1..=k).filter(|i| mask >> (i - 1) & 1 == 1)));
    }
    // Every chain of subsets, extended one strict superset at a time.
    fn extend(chain: &mut Vec<usize>, full: usize, x: &mut DeltaComplex) {
        let last = *chain.last().unwrap();
        if chain.len() >= 2 {
            x.insert_raw_simplex(chain.clone());
        }
        let free = full & !last;
        let mut add = free;
        while add != 0 {
            chain.push(last | add);
            extend(chain, full, x);
            chain.pop();
            add = (add - 1) & free;
        }
    }
    let full = (1usize << k) - 1;
    for start in 0..=full {
        extend(&mut vec![start], full, &mut x);
    }
    for (a, b) in x.edges().collect::<Vec<_>>() {
        let r = (b.count_ones() - a.count_ones()) as i64;
        x.set_norm(a, b, Rational::from_integer(r));
    }
    Ok(x)
}

/// A single ordered simplex with its vertices labelled `0..=dim`.
pub fn standard_simplex(norms: &[Rational]) -> DeltaComplex {
    let mut x = DeltaComplex::new();
    for v in 0..=norms.len() {
        x.add_vertex(v.to_string());
    }
    let all: Vec<usize> = (0..=norms.len()).collect();
    x.add_simplex(&all);
    for i in 0..=norms.len() {
        for j in i + 1..=norms.len() {
            x.set_norm(i, j, norms[i..j].iter().sum());
        }
    }
    x
}

/// The canonical product `X ⧄ Y`.
///
/// Vertex `(i, j)` gets index `i·|Y| + j`. A pair of simplices of dimensions
/// `p` and `q` contributes one top cell per monotone lattice path through
/// the grid `[0, p] × [0, q]`. Norms add across the factors. Factors with
/// loop edges can produce two cells on the same vertex tuple; those are
/// identified.
pub fn product_complex(x: &DeltaComplex, y: &DeltaComplex) -> DeltaComplex {
    let mut out = DeltaComplex::new();
    for kx in &x.vertices {
        for ky in &y.vertices {
            out.add_vertex(format!("({kx},{ky})"));
        }
    }
    let ny = y.vertices.len();
    let xs = x.maximal_simplices();
    let ys = y.maximal_simplices();
    for s in &xs {
        for t in &ys {
            let (p, q) = (s.len() - 1, t.len() - 1);
            // A path is a choice of which p of the p+q steps move in X.
            for steps in 0u64..(1u64 << (p + q)) {
                if steps.count_ones() as usize != p {
                    continue;
                }
                let mut grid = vec![(0, 0)];
                for k in 0..p + q {
                    let (a, b) = grid[k];
                    grid.push(if steps >> k & 1 == 1 { (a + 1, b) } else { (a, b + 1) });
                }
                let cell: Vec<usize> = grid.iter().map(|&(a, b)| s[a] * ny + t[b]).collect();
                out.add_simplex(&cell);
                for i in 0..grid.len() {
                    for j in i + 1..grid.len() {
                        let ((a, b), (a2, b2)) = (grid[i], grid[j]);
                        let part = |c: &DeltaComplex, s: &[usize], a: usize, a2: usize| {
                            if a == a2 {
                                Rational::zero()
                            } else {
                                c.norm(s[a], s[a2]).unwrap_or_else(Rational::zero)
                            }
                        };
                        out.set_norm(cell[i], cell[j], part(x, s, a, a2) + part(y, t, b, b2));
                    }
                }
            }
        }
    }
    out
}

/// Squared lengths of the ordered basis `v_1, …, v_k` of an orthoscheme.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderedSimplexCoords {
    #[serde(rename = "basisNorms", with = "rational_list")]
    pub basis_norms: Vec<Rational>,
}

impl OrderedSimplexCoords {
    pub fn new(basis_norms: Vec<Rational>) -> Result<Self> {
        if let Some(r) = basis_norms.iter().find(|r| **r <= Rational::zero()) {
            return Err(Error::InvalidComplex(format!("basis norm {r} is not positive")));
        }
        Ok(OrderedSimplexCoords { basis_norms })
    }

    pub fn dim(&self) -> usize {
        self.basis_norms.len()
    }

    /// Basis norms of the facet opposite vertex `p_i`; deleting an interior
    /// vertex merges the two adjacent basis vectors.
    pub fn facet(&self, i: usize) -> Result<OrderedSimplexCoords> {
        let k = self.dim();
        if i > k || k == 0 {
            return Err(Error::OutOfRange { what: "vertex", value: i as i64, min: 0, max: k as i64 });
        }
        let r = &self.basis_norms;
        let basis_norms = if i == 0 {
            r[1..].to_vec()
        } else if i == k {
            r[..k - 1].to_vec()
        } else {
            let mut v = r[..i - 1].to_vec();
            v.push(r[i - 1] + r[i]);
            v.extend_from_slice(&r[i + 1..]);
            v
        };
        Ok(OrderedSimplexCoords { basis_norms })
    }
}

/// Vertex coordinates of an orthoscheme together with exact squared distances.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Embedding {
    /// `p_j = Σ_{ℓ ≤ j} √r_ℓ · e_ℓ`.
    pub coords: Vec<Vec<f64>>,
    #[serde(rename = "squaredDistances", with = "rational_matrix")]
    pub squared_distances: Vec<Vec<Rational>>,
}

/// Places `p_0, …, p_k` at partial sums of mutually orthogonal vectors.
pub fn embed_orthoscheme(c: &OrderedSimplexCoords) -> Embedding {
    let k = c.dim();
    let roots: Vec<f64> = c.basis_norms.iter().map(|r| r.to_f64().unwrap_or(f64::NAN).sqrt()).collect();
    let coords = (0..=k)
        .map(|j| (0..k).map(|l| if l < j { roots[l] } else { 0.0 }).collect())
        .collect();
    let squared_distances = (0..=k)
        .map(|i| {
            (0..=k)
                .map(|j| c.basis_norms[i.min(j)..i.max(j)].iter().sum())
                .collect()
        })
        .collect();
    Embedding { coords, squared_distances }
}

/// Formats a rational as `p/q`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidComplex(format!("malformed rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

mod rational_list {
    use super::*;

    pub fn serialize<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let raw: Vec<serde_json::Value> = Vec::deserialize(d)?;
        raw.iter().map(|v| rational_from_json(v).map_err(serde::de::Error::custom)).collect()
    }
}

mod rational_matrix {
    use super::*;

    pub fn serialize<S: serde::Serializer>(m: &[Vec<Rational>], s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = m.iter().map(|row| row.iter().map(format_rational).collect()).collect();
        rows.serialize(s)
    }
}

fn rational_from_json(v: &serde_json::Value) -> Result<Rational> {
    match v {
        serde_json::Value::String(s) => parse_rational(s),
        serde_json::Value::Number(x) => x
            .as_i64()
            .map(Rational::from_integer)
            .ok_or_else(|| Error::InvalidComplex(format!("norm {x} is not an integer or p/q string"))),
        other => Err(Error::InvalidComplex(format!("norm {other} is not a rational"))),
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexRepr {
    vertices: Vec<String>,
    simplices: BTreeMap<String, Vec<Vec<usize>>>,
    norms: Vec<(usize, usize, serde_json::Value)>,
}

impl Serialize for DeltaComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        // Dimension keys compare as numbers, not strings.
        use serde::ser::SerializeMap;
        #[derive(Serialize)]
        struct Repr<'a> {
            vertices: &'a [String],
            simplices: Dims<'a>,
            norms: Vec<(usize, usize, String)>,
        }
        struct Dims<'a>(&'a BTreeMap<usize, BTreeSet<Vec<usize>>>);
        impl Serialize for Dims<'_> {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let nonempty: Vec<_> = self.0.iter().filter(|(_, v)| !v.is_empty()).collect();
                let mut map = s.serialize_map(Some(nonempty.len()))?;
                for (d, v) in nonempty {
                    map.serialize_entry(&d.to_string(), v)?;
                }
                map.end()
            }
        }
        Repr {
            vertices: &self.vertices,
            simplices: Dims(&self.simplices),
            norms: self.norms.iter().map(|(&(a, b), r)| (a, b, format_rational(r))).collect(),
        }
        .serialize(s)
    }
}

/// Reading keeps simplices exactly as listed, so [`check_complex`] can report
/// missing faces.
impl<'de> Deserialize<'de> for DeltaComplex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = ComplexRepr::deserialize(d)?;
        let mut x = DeltaComplex::new();
        for key in repr.vertices {
            let before = x.vertex_count();
            if x.add_vertex(key.clone()) != before {
                return Err(D::Error::custom(format!("duplicate vertex key {key:?}")));
            }
        }
        for (dim, list) in repr.simplices {
            let d: usize = dim.parse().map_err(|_| D::Error::custom(format!("bad dimension key {dim:?}")))?;
            for s in list {
                if s.len() != d + 1 {
                    return Err(D::Error::custom(format!("simplex {s:?} listed under dimension {d}")));
                }
                x.insert_raw_simplex(s);
            }
        }
        for (a, b, r) in repr.norms {
            x.set_norm(a, b, rational_from_json(&r).map_err(D::Error::custom)?);
        }
        Ok(x)
    }
}
