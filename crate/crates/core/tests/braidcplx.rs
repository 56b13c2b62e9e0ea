mod common;

use boundary_braids::boundary::{decompose, fix_part, move_part, move_simple_advancing, BoundarySet};
use boundary_braids::braidcplx::{build_ball, build_boundary_ball, product_check, split_lift};
use boundary_braids::orthoscheme::check_complex;
use boundary_braids::{multiply, GarsideElement};
use common::proper_simples;
use std::collections::{BTreeSet, HashMap};

/// Breadth-first closure of the identity under right multiplication.
fn brute_ball(n: usize, radius: usize) -> BTreeSet<String> {
    let simples = proper_simples(n);
    let mut seen: HashMap<String, GarsideElement> = HashMap::new();
    let id = GarsideElement::identity(n);
    seen.insert(id.key(), id.clone());
    let mut frontier = vec![id];
    for _ in 0..radius {
        let mut next = Vec::new();
        for g in &frontier {
            for s in &simples {
                let h = multiply(g, &GarsideElement::simple(s)).unwrap();
                if let std::collections::hash_map::Entry::Vacant(slot) = seen.entry(h.key()) {
                    slot.insert(h.clone());
                    next.push(h);
                }
            }
        }
        frontier = next;
    }
    seen.into_keys().collect()
}

#[test]
fn balls_match_breadth_first_closure() {
    for (n, radius) in [(2, 3), (3, 1), (3, 3), (4, 2), (5, 1)] {
        let ball = build_ball(n, radius, 1).unwrap();
        let keys: BTreeSet<String> = ball.vertices.iter().map(|g| g.key()).collect();
        assert_eq!(keys, brute_ball(n, radius), "n={n} r={radius}");
        assert_eq!(ball.index_of(&GarsideElement::identity(n)), Some(0));
    }
    assert_eq!(build_ball(3, 1, 1).unwrap().vertices.len(), 5);
}

#[test]
fn edges_are_right_multiplications() {
    let ball = build_ball(4, 2, 1).unwrap();
    let inner: Vec<usize> = ball.vertices.iter().enumerate().filter(|(_, g)| g.sup() < 2).map(|(i, _)| i).collect();
    let mut out_degree = vec![0; ball.vertices.len()];
    for e in &ball.edges {
        let g = &ball.vertices[e.source];
        assert_eq!(multiply(g, &GarsideElement::simple(&e.label)).unwrap(), ball.vertices[e.target]);
        out_degree[e.source] += 1;
    }
    for i in inner {
        assert_eq!(out_degree[i], proper_simples(4).len());
    }
}

#[test]
fn chain_simplices_have_additive_ranks() {
    for (n, radius) in [(3, 2), (4, 2), (5, 1)] {
        let ball = build_ball(n, radius, n - 1).unwrap();
        let cx = ball.to_complex();
        assert!(check_complex(&cx).is_empty(), "n={n}");
        assert_eq!(cx.dim(), Some(n - 1));
        for e in &ball.edges {
            assert!(cx.norm(e.source, e.target).is_some());
        }
    }
}

#[test]
fn empty_base_gives_the_ordinary_ball() {
    for n in 3..=4 {
        let plain = build_ball(n, 2, 1).unwrap();
        let bb = build_boundary_ball(&BoundarySet::empty(n), 2, 1).unwrap();
        assert_eq!(bb.ball.vertices, plain.vertices);
        assert_eq!(bb.ball.edges, plain.edges);
        assert!(bb.bits.iter().all(|b| b.is_empty()));
    }
}

#[test]
fn zero_bits_mark_fix_edges() {
    for members in [vec![1], vec![1, 2], vec![2, 4], vec![1, 2, 3]] {
        let base = BoundarySet::new(4, &members).unwrap();
        let bb = build_boundary_ball(&base, 2, 1).unwrap();
        for (e, bits) in bb.ball.edges.iter().zip(&bb.bits) {
            let set = &bb.data[e.source].bdry;
            assert_eq!(bits.len(), set.len());
            let is_fix = fix_part(&e.label, set).unwrap() == e.label;
            assert_eq!(bits.iter().all(|&b| b == 0), is_fix, "{} at {:?}", e.label, set.members());
        }
    }
}

#[test]
fn vertex_words_reach_their_vertices() {
    let base = BoundarySet::new(5, &[1, 3]).unwrap();
    let bb = build_boundary_ball(&base, 2, 1).unwrap();
    for (g, v) in bb.ball.vertices.iter().zip(&bb.data) {
        assert_eq!(boundary_braids::normal_form(&v.word), *g);
        let sigma = g.perm();
        let image: Vec<usize> = base.members().iter().map(|&b| sigma.apply(b)).collect();
        assert_eq!(v.bdry, BoundarySet::new(5, &image).unwrap());
    }
}

#[test]
fn split_lifts_follow_move_parts() {
    let base = BoundarySet::new(4, &[1, 2]).unwrap();
    let bb = build_boundary_ball(&base, 3, 1).unwrap();
    let mut paths: HashMap<usize, Vec<BoundarySet>> = HashMap::from([(0, Vec::new())]);
    for (e, bits) in bb.ball.edges.iter().zip(&bb.bits) {
        let Some(prefix) = paths.get(&e.source).cloned() else { continue };
        let set = &bb.data[e.source].bdry;
        let advancing: Vec<usize> =
            set.members().iter().zip(bits).filter(|(_, &b)| b == 1).map(|(&x, _)| x).collect();
        let adv = BoundarySet::new(4, &advancing).unwrap();
        let mov = move_part(&e.label, set).unwrap();
        if advancing.is_empty() {
            assert!(mov.is_discrete());
        } else {
            assert_eq!(move_simple_advancing(set, &adv).unwrap(), Some(mov));
        }
        let mut path = prefix;
        if !advancing.is_empty() {
            path.push(adv);
        }
        let lift = split_lift(&base, &path).unwrap();
        let d = decompose(&bb.data[e.target].word, &base).unwrap();
        assert_eq!(lift, d.mov, "edge {} -> {}", e.source, e.target);
        paths.entry(e.target).or_insert(path);
    }
    assert!(paths.len() > 1);
}

#[test]
fn split_lift_squares_commute() {
    let base = BoundarySet::new(4, &[1, 2]).unwrap();
    let s = |m: &[usize]| BoundarySet::new(4, m).unwrap();
    let diagonal = split_lift(&base, &[s(&[1, 2])]).unwrap();
    assert_eq!(split_lift(&base, &[s(&[2]), s(&[1])]).unwrap(), diagonal);
    let apart = BoundarySet::new(5, &[1, 3]).unwrap();
    let t = |m: &[usize]| BoundarySet::new(5, m).unwrap();
    let square = split_lift(&apart, &[t(&[1]), t(&[3])]).unwrap();
    assert_eq!(split_lift(&apart, &[t(&[3]), t(&[1])]).unwrap(), square);
    assert_eq!(split_lift(&apart, &[t(&[1, 3])]).unwrap(), square);
    assert_eq!(square.sup(), 1);
    assert!(split_lift(&base, &[s(&[1])]).is_err());
}

#[test]
fn product_decomposition_holds() {
    for (n, members, radius) in [(4, vec![1], 2), (4, vec![1, 2, 3, 4], 2), (5, vec![1, 3], 1), (4, vec![2, 3], 2)] {
        let base = BoundarySet::new(n, &members).unwrap();
        let report = product_check(&base, radius).unwrap();
        assert!(report.violations.is_empty(), "{:?}", report.violations);
        assert!(report.vertices > 1 && report.boundary_sets >= 1);
    }
}
