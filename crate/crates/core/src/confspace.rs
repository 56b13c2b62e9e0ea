//! Orthoscheme configuration spaces of `k` points on an oriented `n`-cycle
//! and the dilated columns covering them.
//!
//! A cell of the `k`-fold product of the cycle is a base tuple `x` together
//! with a chain `∅ ⊊ S_1 ⊊ … ⊊ S_l` of coordinate sets; its vertices are
//! `x + 1_{S_i}` with coordinates read mod `n`. The configuration space keeps
//! the cells whose vertices have pairwise distinct coordinates. An edge that
//! advances `|S|` coordinates has norm `|S|`.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::boundary::cyclic;
use crate::error::{Error, Result};
use crate::orthoscheme::{DeltaComplex, Rational};

/// Largest `n` accepted by [`build_conf_cycle`].
pub const MAX_CYCLE: usize = 12;

/// A configuration space of points on a cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleConfigComplex {
    pub k: usize,
    pub n: usize,
    pub labeled: bool,
    #[serde(flatten)]
    pub complex: DeltaComplex,
}

fn tuple_key(xs: &[i64]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn set_key(xs: &[i64]) -> String {
    let mut sorted = xs.to_vec();
    sorted.sort_unstable();
    let parts: Vec<String> = sorted.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Collision-free chains from `base` in the cube tiling, each reported as
/// its list of vertices. `admit` decides which points may be used.
fn chains_from(base: &[i64], admit: &dyn Fn(&[i64]) -> bool, out: &mut Vec<Vec<Vec<i64>>>) {
    let k = base.len();
    fn grow(
        chain: &mut Vec<Vec<i64>>,
        used: u32,
        k: usize,
        admit: &dyn Fn(&[i64]) -> bool,
        out: &mut Vec<Vec<Vec<i64>>>,
    ) {
        if chain.len() >= 2 {
            out.push(chain.clone());
        }
        let free = ((1u32 << k) - 1) & !used;
        let mut add = free;
        while add != 0 {
            let mut next = chain.last().unwrap().clone();
            for (i, x) in next.iter_mut().enumerate() {
                if add >> i & 1 == 1 {
                    *x += 1;
                }
            }
            if admit(&next) {
                chain.push(next);
                grow(chain, used | add, k, admit, out);
                chain.pop();
            }
            add = (add - 1) & free;
        }
    }
    grow(&mut vec![base.to_vec()], 0, k, admit, out);
}

fn distinct_mod(xs: &[i64], n: usize) -> bool {
    let mut seen = vec![false; n];
    xs.iter().all(|&x| !std::mem::replace(&mut seen[cyclic(n, x) - 1], true))
}

/// Injective `k`-tuples over `[n]` in lexicographic order.
fn injective_tuples(k: usize, n: usize) -> Vec<Vec<i64>> {
    fn rec(k: usize, n: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in 1..=n as i64 {
            if !cur.contains(&x) {
                cur.push(x);
                rec(k, n, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(k, n, &mut Vec::new(), &mut out);
    out
}

/// `Conf_k` (labeled) or `UConf_k` (unlabeled) of the oriented `n`-cycle.
///
/// Labeled vertices are tuples keyed `(a,b)`, unlabeled ones are sets keyed
/// `{a,b}` represented by their sorted tuple. With `k > n` the space is empty.
pub fn build_conf_cycle(k: usize, n: usize, labeled: bool) -> Result<CycleConfigComplex> {
    if k == 0 || k > 8 {
        return Err(Error::OutOfRange { what: "k", value: k as i64, min: 1, max: 8 });
    }
    if n == 0 || n > MAX_CYCLE {
        return Err(Error::OutOfRange { what: "n", value: n as i64, min: 1, max: MAX_CYCLE as i64 });
    }
    let mut complex = DeltaComplex::new();
    if k > n {
        return Ok(CycleConfigComplex { k, n, labeled, complex });
    }
    let key = |xs: &[i64]| -> String {
        let reduced: Vec<i64> = xs.iter().map(|&x| cyclic(n, x) as i64).collect();
        if labeled {
            tuple_key(&reduced)
        } else {
            set_key(&reduced)
        }
    };
    let bases: Vec<Vec<i64>> = injective_tuples(k, n)
        .into_iter()
        .filter(|t| labeled || t.windows(2).all(|w| w[0] < w[1]))
        .collect();
    for base in &bases {
        complex.add_vertex(key(base));
    }
    // Unlabeled cells are images of labeled ones; coordinate permutations
    // of the base produce the same vertex sets, so sorted bases suffice.
    let admit = |xs: &[i64]| distinct_mod(xs, n);
    for base in &bases {
        let mut chains = Vec::new();
        chains_from(base, &admit, &mut chains);
        for chain in chains {
            let ids: Vec<usize> = chain.iter().map(|v| complex.add_vertex(key(v))).collect();
            for i in 0..ids.len() {
                for j in i + 1..ids.len() {
                    let steps: i64 = chain[j].iter().zip(&chain[i]).map(|(a, b)| a - b).sum();
                    complex.set_norm(ids[i], ids[j], Rational::from_integer(steps));
                }
            }
            complex.insert_raw_simplex(ids);
        }
    }
    Ok(CycleConfigComplex { k, n, labeled, complex })
}

/// Counts for one connected component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentSummary {
    /// Least vertex key in the component.
    pub representative: String,
    pub vertices: usize,
    pub edges: usize,
    #[serde(rename = "topCells")]
    pub top_cells: usize,
    pub dim: usize,
    pub euler: i64,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Connected components, ordered by representative key.
pub fn components(x: &DeltaComplex) -> Vec<ComponentSummary> {
    let mut uf = UnionFind::new(x.vertex_count());
    for (a, b) in x.edges() {
        uf.union(a, b);
    }
    let mut counts: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut reps: HashMap<usize, String> = HashMap::new();
    for (v, key) in x.vertices().iter().enumerate() {
        let r = uf.find(v);
        let counts = counts.entry(r).or_default();
        if counts.is_empty() {
            counts.push(0);
        }
        counts[0] += 1;
        let rep = reps.entry(r).or_insert_with(|| key.clone());
        if key < rep {
            *rep = key.clone();
        }
    }
    let top = x.dim().unwrap_or(0);
    for d in 1..=top {
        for s in x.simplices(d) {
            let c = counts.get_mut(&uf.find(s[0])).expect("component exists");
            if c.len() <= d {
                c.resize(d + 1, 0);
            }
            c[d] += 1;
        }
    }
    let mut out: Vec<ComponentSummary> = counts
        .into_iter()
        .map(|(r, c)| ComponentSummary {
            representative: reps[&r].clone(),
            vertices: c[0],
            edges: c.get(1).copied().unwrap_or(0),
            top_cells: *c.last().unwrap(),
            dim: c.len() - 1,
            euler: c.iter().enumerate().map(|(d, &m)| if d % 2 == 0 { m as i64 } else { -(m as i64) }).sum(),
        })
        .collect();
    out.sort_by(|a, b| a.representative.cmp(&b.representative));
    out
}

/// Number of connected components of the boundary of a pure complex: the
/// codimension-one faces lying in exactly one top cell.
pub fn boundary_components(x: &DeltaComplex) -> usize {
    let Some(d) = x.dim().filter(|&d| d >= 1) else {
        return 0;
    };
    let mut incidence: HashMap<Vec<usize>, usize> = HashMap::new();
    for s in x.simplices(d) {
        for skip in 0..s.len() {
            let face: Vec<usize> = s.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &v)| v).collect();
            *incidence.entry(face).or_default() += 1;
        }
    }
    let mut uf = UnionFind::new(x.vertex_count());
    let mut on_boundary = vec![false; x.vertex_count()];
    for (face, _) in incidence.iter().filter(|(_, &c)| c == 1) {
        for &v in face {
            on_boundary[v] = true;
            uf.union(face[0], v);
        }
    }
    let mut roots: Vec<usize> = (0..x.vertex_count()).filter(|&v| on_boundary[v]).map(|v| uf.find(v)).collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}

/// A point of the `(k, n)`-dilated column: `x_1 < … < x_k < x_1 + n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DilatedColumnPoint {
    pub k: usize,
    pub n: usize,
    pub coords: Vec<i64>,
}

impl DilatedColumnPoint {
    pub fn new(k: usize, n: usize, coords: Vec<i64>) -> Result<Self> {
        if coords.len() != k {
            return Err(Error::NotInColumn(format!("{coords:?} does not have {k} coordinates")));
        }
        if !in_column(n, &coords) {
            return Err(Error::NotInColumn(format!("{coords:?} violates x_1 < ... < x_k < x_1 + {n}")));
        }
        Ok(DilatedColumnPoint { k, n, coords })
    }

    /// `⟨x, 1⟩`.
    pub fn level(&self) -> i64 {
        self.coords.iter().sum()
    }
}

fn in_column(n: usize, xs: &[i64]) -> bool {
    xs.windows(2).all(|w| w[0] < w[1]) && xs.first().zip(xs.last()).is_some_and(|(f, l)| *l < f + n as i64)
}

/// Euclidean distance inside the column, which is convex.
pub fn column_distance(k: usize, n: usize, x: &DilatedColumnPoint, y: &DilatedColumnPoint) -> Result<f64> {
    for p in [x, y] {
        if p.k != k || p.n != n {
            return Err(Error::NotInColumn(format!("point built for (k, n) = ({}, {}), expected ({k}, {n})", p.k, p.n)));
        }
    }
    let sq: i64 = x.coords.iter().zip(&y.coords).map(|(a, b)| (a - b) * (a - b)).sum();
    Ok((sq as f64).sqrt())
}

/// A finite piece of a dilated column.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColumnBall {
    pub k: usize,
    pub n: usize,
    #[serde(flatten)]
    pub complex: DeltaComplex,
    /// Coordinates of every vertex, aligned with the complex's vertex list.
    #[serde(skip)]
    pub points: Vec<Vec<i64>>,
}

/// The full subcomplex of the orthoscheme tiling of `ℝ^k` on the column
/// points with level in `lo..=hi`.
pub fn dilated_column_ball(k: usize, n: usize, lo: i64, hi: i64) -> Result<ColumnBall> {
    if k == 0 || k > 8 {
        return Err(Error::OutOfRange { what: "k", value: k as i64, min: 1, max: 8 });
    }
    if n == 0 {
        return Err(Error::OutOfRange { what: "n", value: 0, min: 1, max: i64::MAX });
    }
    if lo > hi {
        return Err(Error::OutOfRange { what: "level range start", value: lo, min: i64::MIN, max: hi });
    }
    let mut points = Vec::new();
    if k <= n {
        // The level of a column point lies within k(n-1) of k·x_1.
        let (ki, ni) = (k as i64, n as i64);
        let first = lo.div_euclid(ki) - ni;
        let last = hi.div_euclid(ki) + 1;
        fn rec(k: usize, limit: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            let start = cur.last().unwrap() + 1;
            for x in start..limit {
                cur.push(x);
                rec(k, limit, cur, out);
                cur.pop();
            }
        }
        for x1 in first..=last {
            rec(k, x1 + ni, &mut vec![x1], &mut points);
        }
        points.retain(|p| (lo..=hi).contains(&p.iter().sum::<i64>()));
        points.sort_by_key(|p| (p.iter().sum::<i64>(), p.clone()));
    }
    let mut complex = DeltaComplex::new();
    let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
    for p in &points {
        index.insert(p.clone(), complex.add_vertex(tuple_key(p)));
    }
    let admit = |xs: &[i64]| index.contains_key(xs);
    for p in &points {
        let mut chains = Vec::new();
        chains_from(p, &admit, &mut chains);
        for chain in chains {
            let ids: Vec<usize> = chain.iter().map(|v| index[v]).collect();
            for i in 0..ids.len() {
                for j in i + 1..ids.len() {
                    let steps: i64 = chain[j].iter().zip(&chain[i]).map(|(a, b)| a - b).sum();
                    complex.set_norm(ids[i], ids[j], Rational::from_integer(steps));
                }
            }
            complex.insert_raw_simplex(ids);
        }
    }
    Ok(ColumnBall { k, n, complex, points })
}

/// Ordinary column containing a top cell of the tiling, given by its
/// vertices: the floors of pairwise coordinate differences at the
/// barycenter.
pub fn column_id(cell: &[Vec<i64>]) -> Vec<i64> {
    let k = cell[0].len();
    let m = cell.len() as i64;
    let sums: Vec<i64> = (0..k).map(|i| cell.iter().map(|v| v[i]).sum()).collect();
    let mut id = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            id.push((sums[j] - sums[i]).div_euclid(m));
        }
    }
    id
}

/// One ordinary column met by a ball.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Column {
    pub id: Vec<i64>,
    #[serde(rename = "topCells")]
    pub top_cells: usize,
    /// Vertices of the column's top cells, sorted by level.
    pub vertices: Vec<Vec<i64>>,
}

/// Groups the top cells of a ball by ordinary column.
pub fn columns(ball: &ColumnBall) -> Vec<Column> {
    let mut by_id: BTreeMap<Vec<i64>, (usize, Vec<Vec<i64>>)> = BTreeMap::new();
    if ball.complex.dim() != Some(ball.k) {
        return Vec::new();
    }
    for cell in ball.complex.simplices(ball.k) {
        let pts: Vec<Vec<i64>> = cell.iter().map(|&v| ball.points[v].clone()).collect();
        let entry = by_id.entry(column_id(&pts)).or_default();
        entry.0 += 1;
        entry.1.extend(pts);
    }
    by_id
        .into_iter()
        .map(|(id, (top_cells, mut vertices))| {
            vertices.sort_by_key(|p| (p.iter().sum::<i64>(), p.clone()));
            vertices.dedup();
            Column { id, top_cells, vertices }
        })
        .collect()
}

/// Whether a column's vertices form a spiral: one vertex per level, each
/// step a unit coordinate vector, directions repeating with period `k`.
pub fn is_spiral(column: &Column) -> bool {
    let vs = &column.vertices;
    let Some(k) = vs.first().map(|v| v.len()) else {
        return true;
    };
    let mut dirs = Vec::new();
    for w in vs.windows(2) {
        let diff: Vec<i64> = w[1].iter().zip(&w[0]).map(|(a, b)| a - b).collect();
        let ones: Vec<usize> = (0..k).filter(|&i| diff[i] == 1).collect();
        if ones.len() != 1 || diff.iter().filter(|&&d| d != 0).count() != 1 {
            return false;
        }
        dirs.push(ones[0]);
    }
    dirs.iter().zip(dirs.iter().skip(k)).all(|(a, b)| a == b)
        && dirs.iter().take(k).collect::<std::collections::BTreeSet<_>>().len() == dirs.len().min(k)
}

/// Outcome of comparing a column ball with the labeled configuration space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoveringReport {
    /// Ball simplices whose reduction mod `n` is not a simplex.
    #[serde(rename = "unmappedSimplices")]
    pub unmapped_simplices: usize,
    /// Vertices of the target component missed by the reduction.
    #[serde(rename = "missedVertices")]
    pub missed_vertices: usize,
    #[serde(rename = "componentVertices")]
    pub component_vertices: usize,
}

impl CoveringReport {
    pub fn holds(&self) -> bool {
        self.unmapped_simplices == 0 && self.missed_vertices == 0
    }
}

/// Reduces a ball mod `n` onto the component of `Conf_k` containing
/// `(1, …, k)`. Surjectivity needs at least `k·n + k` levels.
pub fn covering_check(ball: &ColumnBall, conf: &CycleConfigComplex) -> Result<CoveringReport> {
    if !conf.labeled || conf.k != ball.k || conf.n != ball.n {
        return Err(Error::InvalidComplex("covering check needs the labeled space with matching (k, n)".into()));
    }
    let n = ball.n;
    let target = &conf.complex;
    let reduce = |p: &[i64]| -> Option<usize> {
        let r: Vec<i64> = p.iter().map(|&x| cyclic(n, x) as i64).collect();
        target.vertex_index(&tuple_key(&r))
    };
    let images: Vec<Option<usize>> = ball.points.iter().map(|p| reduce(p)).collect();
    let mut unmapped = images.iter().filter(|i| i.is_none()).count();
    for d in 1..=ball.complex.dim().unwrap_or(0) {
        for s in ball.complex.simplices(d) {
            let img: Option<Vec<usize>> = s.iter().map(|&v| images[v]).collect();
            if !img.is_some_and(|t| target.contains_simplex(&t)) {
                unmapped += 1;
            }
        }
    }
    let base: Vec<i64> = (1..=ball.k as i64).collect();
    let Some(base) = target.vertex_index(&tuple_key(&base)) else {
        return Ok(CoveringReport { unmapped_simplices: unmapped, missed_vertices: 0, component_vertices: 0 });
    };
    let mut uf = UnionFind::new(target.vertex_count());
    for (a, b) in target.edges() {
        uf.union(a, b);
    }
    let root = uf.find(base);
    let mut hit = vec![false; target.vertex_count()];
    for v in images.into_iter().flatten() {
        hit[v] = true;
    }
    let component: Vec<usize> = (0..target.vertex_count()).filter(|&v| uf.find(v) == root).collect();
    let missed = component.iter().filter(|&&v| !hit[v]).count();
    Ok(CoveringReport { unmapped_simplices: unmapped, missed_vertices: missed, component_vertices: component.len() })
}
