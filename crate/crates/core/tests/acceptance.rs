//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! fails if any criterion fails.

mod common;

use boundary_braids::boundary::{
    boundary_partitions, decompose, fix_part, move_part, realize_wrapping, validate_wrapping, wrapping_of_word,
    BoundarySet, WrappingProfile,
};
use boundary_braids::braidcplx::{poset_product_violations, product_check};
use boundary_braids::confspace::{
    boundary_components, build_conf_cycle, columns, components, covering_check, dilated_column_ball,
};
use boundary_braids::orthoscheme::{product_complex, standard_simplex, subdivide_cube};
use boundary_braids::{
    complements, enumerate_nc, invert, multiply, normal_form, simple_product, DualSimpleWord, GarsideElement,
    NoncrossingPartition, Permutation,
};
use common::{all_set_partitions, crosses, nc, random_boundary_word, random_set, random_word, BoundaryCache};
use num_rational::Ratio;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

const SEED: u64 = 0x5eed_b0a1;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn catalan_counts() -> Outcome {
    let expected = [1, 2, 5, 14, 42, 132, 429, 1430];
    for n in 1..=8 {
        let brute = all_set_partitions(n).iter().filter(|b| !crosses(b)).count();
        let got = enumerate_nc(n).map_err(|e| e.to_string())?.len();
        ensure(got == brute && got == expected[n - 1], || format!("n={n}: enumerated {got}, brute force {brute}"))?;
    }
    Ok(format!("{expected:?}"))
}

fn fix_move_example() -> Outcome {
    let pi = nc(9, &[&[1, 2, 3, 4, 5, 6], &[7, 8, 9]]);
    let b = BoundarySet::new(9, &[2, 4, 5, 7]).map_err(|e| e.to_string())?;
    let fix = fix_part(&pi, &b).map_err(|e| e.to_string())?;
    let mov = move_part(&pi, &b).map_err(|e| e.to_string())?;
    let want_fix = nc(9, &[&[1, 3, 6], &[8, 9]]);
    let want_move = nc(9, &[&[2, 3], &[4, 5, 6], &[7, 8]]);
    ensure(fix == want_fix, || format!("fix {fix}"))?;
    ensure(mov == want_move, || format!("move {mov}"))?;
    Ok(format!("fix {fix}, move {mov}"))
}

fn rotation_example() -> Outcome {
    let a = nc(6, &[&[1, 5, 6]]);
    let b = nc(6, &[&[2, 3, 4, 5]]);
    let product = simple_product(&a, &b).map_err(|e| e.to_string())?;
    ensure(product == Some(NoncrossingPartition::maximum(6)), || format!("product {product:?}"))?;
    let word = DualSimpleWord::new(6, vec![a, b]).map_err(|e| e.to_string())?;
    let g = normal_form(&word);
    ensure(g.inf() == 1 && g.factors().is_empty(), || format!("normal form {g}"))?;
    Ok(format!("normal form {g}"))
}

fn boundary_poset_product() -> Outcome {
    let b = BoundarySet::new(5, &[2, 4, 5]).map_err(|e| e.to_string())?;
    let count = boundary_partitions(&b).map_err(|e| e.to_string())?.len();
    ensure(count == 12, || format!("{count} boundary partitions"))?;
    let mut violations = Vec::new();
    let mut sets = 0;
    for n in 1..=6 {
        for mask in 0..1u64 << n {
            poset_product_violations(&BoundarySet::from_mask(n, mask), &mut violations).map_err(|e| e.to_string())?;
            sets += 1;
        }
    }
    ensure(violations.is_empty(), || format!("{} violations, first: {}", violations.len(), violations[0]))?;
    Ok(format!("12 partitions; {sets} boundary sets checked"))
}

/// Rewrites a word by merging an adjacent pair with a simple product, or by
/// splitting a factor through a complement.
fn rewrite(rng: &mut ChaCha8Rng, word: &DualSimpleWord) -> DualSimpleWord {
    let mut factors = word.factors.clone();
    let n = word.n;
    if factors.len() >= 2 && rng.gen_bool(0.5) {
        let i = rng.gen_range(0..factors.len() - 1);
        if let Some(c) = simple_product(&factors[i], &factors[i + 1]).unwrap() {
            factors.splice(i..i + 2, [c]);
        }
    } else if !factors.is_empty() {
        let i = rng.gen_range(0..factors.len());
        let below: Vec<NoncrossingPartition> =
            enumerate_nc(n).unwrap().into_iter().filter(|p| p.leq(&factors[i]).unwrap()).collect();
        let a = below[rng.gen_range(0..below.len())].clone();
        let right = complements(&a, &factors[i]).unwrap().right;
        factors.splice(i..i + 1, [a, right]);
    }
    DualSimpleWord::with_delta(n, word.delta_exp, factors).unwrap()
}

fn garside_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut failures = Vec::new();
    for trial in 0..1000 {
        let n = rng.gen_range(2..=6);
        let len = rng.gen_range(0..=6);
        let w = random_word(&mut rng, n, len);
        let g = normal_form(&w);
        let mut r = w.clone();
        for _ in 0..3 {
            r = rewrite(&mut rng, &r);
        }
        if normal_form(&r) != g {
            failures.push(format!("trial {trial}: rewriting changed the normal form"));
        }
        let len_h = rng.gen_range(0..=6);
        let h = normal_form(&random_word(&mut rng, n, len_h));
        let len_k = rng.gen_range(0..=6);
        let k = normal_form(&random_word(&mut rng, n, len_k));
        let left = multiply(&multiply(&g, &h).unwrap(), &k).unwrap();
        let right = multiply(&g, &multiply(&h, &k).unwrap()).unwrap();
        if left != right {
            failures.push(format!("trial {trial}: multiplication not associative"));
        }
        let inv = invert(&g);
        if !multiply(&g, &inv).unwrap().is_identity() || !multiply(&inv, &g).unwrap().is_identity() || invert(&inv) != g {
            failures.push(format!("trial {trial}: inverse does not round-trip"));
        }
        let perm: Permutation = w.factors.iter().fold(
            GarsideElement::delta_power(n, w.delta_exp).perm(),
            |acc, f| acc.then(&f.perm()),
        );
        if g.perm() != perm {
            failures.push(format!("trial {trial}: normal form changes the permutation"));
        }
    }
    ensure(failures.is_empty(), || format!("{} failures, first: {}", failures.len(), failures[0]))?;
    Ok("1000 words, 0 failures".into())
}

/// A valid profile built directly: an increasing target sequence within one
/// turn, anchored at a random offset.
fn constructed_profile(rng: &mut ChaCha8Rng) -> Option<(BoundarySet, WrappingProfile)> {
    let n = rng.gen_range(1..=9);
    let b = random_set(rng, n);
    let k = b.len();
    if k == 0 {
        return None;
    }
    let n2 = 2 * n as i64;
    let first = b.members()[0] as i64 + rng.gen_range(-n2..=n2);
    let mut gaps: Vec<i64> = sample(rng, n - 1, k - 1).into_iter().map(|g| g as i64 + 1).collect();
    gaps.sort();
    let targets: Vec<i64> = std::iter::once(first).chain(gaps.iter().map(|g| first + g)).collect();
    let w: Vec<i64> = b.members().iter().zip(&targets).map(|(&m, &t)| t - m as i64).collect();
    if w.iter().any(|x| x.abs() > n2) {
        return None;
    }
    Some((b.clone(), WrappingProfile::new(b, w).ok()?))
}

fn wrapping_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    let mut failures = Vec::new();
    let mut done = 0;
    while done < 500 {
        let Some((b, profile)) = constructed_profile(&mut rng) else { continue };
        done += 1;
        if !validate_wrapping(&b, &profile).unwrap() {
            failures.push(format!("{:?} {:?} rejected", b.members(), profile.w));
            continue;
        }
        let word = realize_wrapping(&b, &profile).unwrap();
        let (got, _) = wrapping_of_word(&word, &b).unwrap();
        if got.w != profile.w {
            failures.push(format!("{:?} {:?} realized as {:?}", b.members(), profile.w, got.w));
        }
    }
    let mut cache = BoundaryCache::default();
    for _ in 0..200 {
        let n = rng.gen_range(2..=7);
        let b = random_set(&mut rng, n);
        let word = random_boundary_word(&mut rng, &mut cache, &b, 0..=6, -2..=2);
        let d = decompose(&word, &b).unwrap();
        if multiply(&d.fix, &d.mov).unwrap() != normal_form(&word) {
            failures.push(format!("decomposition of a word over {:?} does not recompose", b.members()));
        }
    }
    ensure(failures.is_empty(), || format!("{} failures, first: {}", failures.len(), failures[0]))?;
    Ok("500 profiles, 200 decompositions, 0 failures".into())
}

fn configuration_spaces() -> Outcome {
    for n in 3..=6 {
        let comps = components(&build_conf_cycle(n, n, true).unwrap().complex);
        let factorial: usize = (1..n).product();
        ensure(comps.len() == factorial, || format!("n={n}: {} components", comps.len()))?;
        ensure(comps.iter().all(|c| c.vertices == n && c.edges == n), || format!("n={n}: component sizes"))?;
        let unl = build_conf_cycle(n, n, false).unwrap().complex;
        ensure(unl.count(0) == 1 && unl.count(1) == 1, || format!("n={n}: unlabeled {:?}", unl.f_vector()))?;
    }
    let lab = build_conf_cycle(2, 6, true).unwrap().complex;
    let lab_comps = components(&lab).len();
    let (lab_chi, lab_bd) = (lab.euler_characteristic(), boundary_components(&lab));
    ensure(lab_comps == 1 && lab_chi == 0 && lab_bd == 2, || {
        format!("labeled (2,6): {lab_comps} components, chi {lab_chi}, {lab_bd} boundary circles")
    })?;
    let unl = build_conf_cycle(2, 6, false).unwrap().complex;
    let (unl_chi, unl_bd) = (unl.euler_characteristic(), boundary_components(&unl));
    ensure(unl_chi == 0 && unl_bd == 1, || format!("unlabeled (2,6): chi {unl_chi}, {unl_bd} boundary circles"))?;
    Ok("annulus and Moebius band for (2,6)".into())
}

fn multinomial(parts: &[usize]) -> usize {
    let total: usize = parts.iter().sum();
    let fact = |m: usize| (1..=m).product::<usize>();
    fact(total) / parts.iter().map(|&p| fact(p)).product::<usize>()
}

fn cube_and_product_counts() -> Outcome {
    for k in 1..=5 {
        let top = subdivide_cube(k).unwrap().top_cells().len();
        let want: usize = (1..=k).product();
        ensure(top == want, || format!("cube {k}: {top} top cells"))?;
    }
    let simplex = |d: usize| standard_simplex(&vec![Ratio::from_integer(1); d]);
    let mut checked = 0;
    for dims in [vec![1, 1], vec![1, 2], vec![2, 2], vec![1, 1, 1], vec![2, 3], vec![1, 2, 3], vec![3, 3], vec![2, 2, 2]] {
        let product = dims[1..].iter().fold(simplex(dims[0]), |acc, &d| product_complex(&acc, &simplex(d)));
        let top = product.top_cells().len();
        ensure(top == multinomial(&dims), || format!("product {dims:?}: {top} top cells"))?;
        checked += 1;
    }
    Ok(format!("cubes k<=5, {checked} simplex products"))
}

fn dilated_columns() -> Outcome {
    let ball = dilated_column_ball(2, 6, 0, 30).unwrap();
    let count = columns(&ball).len();
    ensure(count == 4, || format!("{count} columns"))?;
    for n in 1..=6 {
        for k in 1..=3.min(n) {
            let conf = build_conf_cycle(k, n, true).unwrap();
            let span = (k * n + k) as i64;
            let report = covering_check(&dilated_column_ball(k, n, -3, span).unwrap(), &conf).unwrap();
            ensure(report.holds(), || format!("k={k} n={n}: {report:?}"))?;
        }
    }
    Ok("4 columns; coverings hold for k<=3, n<=6".into())
}

fn boundary_product() -> Outcome {
    let cases: [(usize, &[usize], usize); 3] = [(4, &[1], 2), (5, &[2, 4, 5], 1), (6, &[1, 2, 3, 4, 6], 1)];
    let mut summary = Vec::new();
    for (n, members, radius) in cases {
        let start = Instant::now();
        let b = BoundarySet::new(n, members).unwrap();
        let report = product_check(&b, radius).unwrap();
        let elapsed = start.elapsed();
        ensure(report.violations.is_empty(), || {
            format!("{members:?}: {} violations, first: {}", report.violations.len(), report.violations[0])
        })?;
        ensure(elapsed < Duration::from_secs(120), || format!("{members:?} took {elapsed:.1?}"))?;
        summary.push(format!("n={n} {} vertices in {elapsed:.1?}", report.vertices));
    }
    Ok(summary.join("; "))
}

#[test]
fn acceptance() {
    type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);
    let criteria: [Criterion; 10] = [
        ("noncrossing counts are Catalan numbers, n <= 8", catalan_counts, Some(Duration::from_secs(5))),
        ("fix/move example on nine points", fix_move_example, None),
        ("two simples multiply to the Garside element", rotation_example, None),
        ("boundary posets split as products, n <= 6", boundary_poset_product, Some(Duration::from_secs(60))),
        ("normal forms, products and inverses are sound", garside_soundness, None),
        ("wrapping profiles round-trip and decompositions recompose", wrapping_round_trip, None),
        ("configuration spaces on the cycle", configuration_spaces, None),
        ("cube and simplex-product top-cell counts", cube_and_product_counts, None),
        ("dilated columns and covering maps", dilated_columns, None),
        ("boundary balls split as products", boundary_product, Some(Duration::from_secs(360))),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(limit)) if elapsed > *limit => Err(format!("exceeded {limit:?}")),
            (o, _) => o,
        };
        let limit = limit.map(|l| format!(", limit {l:?}")).unwrap_or_default();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({elapsed:.2?}{limit})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} ({elapsed:.2?}{limit})", i + 1);
            }
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
