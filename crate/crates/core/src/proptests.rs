//! Property tests across modules.

use proptest::prelude::*;

use crate::bigraph::{
    alternating_paths_from, contract_matching, count_perfect_matchings, peel_unique_matching, BipartiteGraph, Matching,
    Sign,
};
use crate::graph::SimpleGraph;
use crate::matrix::Matrix;
use crate::par::Execution;
use crate::pathinv::{path_inverse, path_inverse_with, PathInverseOptions};
use crate::pattern::is_isomorphic;
use crate::random::{random_lower_triangular, random_permuted_triangular, rng_from_seed};
use crate::ring::{Block, Rational, RingSpec, RingValue};
use crate::treegen::{certify_tree, enumerate_matchings, outer_inverse_check, path_matrix, tree_biadjacency};

fn rational() -> impl Strategy<Value = Rational> {
    prop_oneof![
        4 => (-20i64..=20, 1i64..=20).prop_map(|(n, d)| Rational::new(n, d).unwrap()),
        1 => (any::<i64>(), 1i64..=i64::MAX).prop_map(|(n, d)| Rational::new(n, d).unwrap()),
    ]
}

fn block() -> impl Strategy<Value = Block> {
    prop::collection::vec(rational(), 4).prop_map(|v| Block::from_rows(vec![v[..2].to_vec(), v[2..].to_vec()]).unwrap())
}

fn value(spec: RingSpec) -> BoxedStrategy<RingValue> {
    match spec {
        RingSpec::Rational => rational().prop_map(RingValue::Rational).boxed(),
        RingSpec::Gf2 => any::<bool>().prop_map(RingValue::Gf2).boxed(),
        RingSpec::Block(_) => block().prop_map(RingValue::Block).boxed(),
    }
}

fn specs() -> [RingSpec; 3] {
    [RingSpec::Rational, RingSpec::Gf2, RingSpec::block(2).unwrap()]
}

fn ring_axioms(a: &RingValue, b: &RingValue, c: &RingValue) -> Result<(), TestCaseError> {
    let spec = a.spec();
    let (zero, one) = (RingValue::zero(spec), RingValue::one(spec));
    let add = |x: &RingValue, y: &RingValue| x.add(y).unwrap();
    let mul = |x: &RingValue, y: &RingValue| x.mul(y).unwrap();
    prop_assert_eq!(add(&add(a, b), c), add(a, &add(b, c)));
    prop_assert_eq!(mul(&mul(a, b), c), mul(a, &mul(b, c)));
    prop_assert_eq!(add(a, b), add(b, a));
    prop_assert_eq!(mul(a, &add(b, c)), add(&mul(a, b), &mul(a, c)));
    prop_assert_eq!(mul(&add(a, b), c), add(&mul(a, c), &mul(b, c)));
    prop_assert_eq!(add(a, &zero), a.clone());
    prop_assert_eq!(mul(a, &one), a.clone());
    prop_assert_eq!(mul(&one, a), a.clone());
    prop_assert!(add(a, &a.neg()).is_zero());
    prop_assert_eq!(a.sub(b).unwrap(), add(a, &b.neg()));
    if spec.is_commutative() {
        prop_assert_eq!(mul(a, b), mul(b, a));
    }
    match a.inv() {
        Ok(inv) => {
            prop_assert!(mul(a, &inv).is_one());
            prop_assert!(mul(&inv, a).is_one());
        }
        Err(_) => prop_assert!(spec.block_dim().is_some() || a.is_zero()),
    }
    Ok(())
}

/// Tree on `seq.len() + 2` vertices from a Prüfer sequence.
fn prufer_tree(seq: &[usize]) -> SimpleGraph {
    let n = seq.len() + 2;
    let mut degree = vec![1; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut g = SimpleGraph::empty(n);
    for &v in seq {
        let leaf = (0..n).find(|&u| degree[u] == 1).unwrap();
        g.add_edge(leaf, v).unwrap();
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&u| degree[u] == 1).collect();
    g.add_edge(rest[0], rest[1]).unwrap();
    g
}

fn tree_strategy(max_vertices: usize) -> impl Strategy<Value = SimpleGraph> {
    (2..=max_vertices).prop_flat_map(|n| prop::collection::vec(0..n, n - 2)).prop_map(|seq| prufer_tree(&seq))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rational_ring_axioms(a in value(RingSpec::Rational), b in value(RingSpec::Rational), c in value(RingSpec::Rational)) {
        ring_axioms(&a, &b, &c)?;
    }

    #[test]
    fn gf2_ring_axioms(a in value(RingSpec::Gf2), b in value(RingSpec::Gf2), c in value(RingSpec::Gf2)) {
        ring_axioms(&a, &b, &c)?;
    }

    #[test]
    fn block_ring_axioms(a in block(), b in block(), c in block()) {
        ring_axioms(&RingValue::Block(a), &RingValue::Block(b), &RingValue::Block(c))?;
    }

    #[test]
    fn rational_text_round_trip(a in rational()) {
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn matmul_is_associative(spec in prop::sample::select(specs().to_vec()), dims in (1usize..4, 1usize..4, 1usize..4, 1usize..4), seed in any::<u64>()) {
        let (p, q, r, s) = dims;
        let mut rng = rng_from_seed(seed);
        let mut rand_matrix = |rows: usize, cols: usize| {
            let big = random_lower_triangular(&mut rng, spec, rows.max(cols), 0.7);
            let flipped = big.transpose();
            Matrix::from_fn(spec, rows, cols, |i, j| big.get(i, j).add(flipped.get(i, j)).unwrap()).unwrap()
        };
        let (a, b, c) = (rand_matrix(p, q), rand_matrix(q, r), rand_matrix(r, s));
        prop_assert_eq!(a.matmul(&b).unwrap().matmul(&c).unwrap(), a.matmul(&b.matmul(&c).unwrap()).unwrap());
        if spec.is_commutative() {
            prop_assert_eq!(a.matmul(&b).unwrap().transpose(), b.transpose().matmul(&a.transpose()).unwrap());
        }
    }

    #[test]
    fn forward_substitution_is_two_sided(spec in prop::sample::select(specs().to_vec()), n in 0usize..8, density in 0.0f64..=1.0, seed in any::<u64>()) {
        let a = random_lower_triangular(&mut rng_from_seed(seed), spec, n, density);
        let b = a.forward_substitution_inverse().unwrap();
        prop_assert!(b.is_lower_triangular().unwrap());
        prop_assert_eq!(a.matmul(&b).unwrap(), Matrix::identity(spec, n));
        prop_assert_eq!(b.matmul(&a).unwrap(), Matrix::identity(spec, n));
    }

    #[test]
    fn path_inverse_matches_oracle(spec in prop::sample::select(specs().to_vec()), n in 0usize..9, density in 0.0f64..=1.0, seed in any::<u64>()) {
        let a = random_lower_triangular(&mut rng_from_seed(seed), spec, n, density);
        let seq = PathInverseOptions { execution: Execution::Sequential, ..Default::default() };
        let b = path_inverse(&a).unwrap();
        prop_assert_eq!(&b, &a.forward_substitution_inverse().unwrap());
        prop_assert_eq!(&b, &path_inverse_with(&a, &seq).unwrap());
    }

    #[test]
    fn symmetric_embedding_inverse(n in 1usize..6, density in 0.0f64..=1.0, seed in any::<u64>()) {
        let a = random_lower_triangular(&mut rng_from_seed(seed), RingSpec::Rational, n, density);
        let inv = a.forward_substitution_inverse().unwrap();
        let e = a.symmetric_embed();
        let mut candidate = Matrix::zeros(RingSpec::Rational, 2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                candidate.set(i, n + j, inv.get(j, i).clone()).unwrap();
                candidate.set(n + i, j, inv.get(i, j).clone()).unwrap();
            }
        }
        prop_assert_eq!(e.matmul(&candidate).unwrap(), Matrix::identity(RingSpec::Rational, 2 * n));
    }

    #[test]
    fn inverse_pattern_ignores_positive_rescaling(n in 1usize..7, density in 0.0f64..=1.0, seed in any::<u64>(), scales in prop::collection::vec((1i64..9, 1i64..9), 14)) {
        // D1 A D2 with positive diagonals has the same pattern, and so does its
        // inverse D2^-1 A^-1 D1^-1.
        let mut a = random_lower_triangular(&mut rng_from_seed(seed), RingSpec::Rational, n, density);
        for i in 0..n {
            for j in 0..n {
                let v = a.get(i, j).as_rational().unwrap().clone();
                let abs = if v.is_negative() { v.neg() } else { v };
                a.set(i, j, RingValue::Rational(abs)).unwrap();
            }
        }
        let d = |k: usize| RingValue::rational(scales[k].0, scales[k].1).unwrap();
        let scaled = Matrix::from_fn(RingSpec::Rational, n, n, |i, j| d(i).mul(a.get(i, j)).unwrap().mul(&d(7 + j)).unwrap()).unwrap();
        prop_assert_eq!(scaled.pattern(), a.pattern());
        prop_assert_eq!(
            scaled.forward_substitution_inverse().unwrap().pattern(),
            a.forward_substitution_inverse().unwrap().pattern()
        );
    }

    #[test]
    fn alternating_paths_are_well_formed(n in 1usize..7, density in 0.0f64..=1.0, seed in any::<u64>()) {
        let a = random_lower_triangular(&mut rng_from_seed(seed), RingSpec::Rational, n, density);
        let g = BipartiteGraph::from_matrix(&a);
        let mm = Matching::diagonal(&g).unwrap();
        for c in 0..n {
            for p in alternating_paths_from(&g, &mm, c) {
                prop_assert_eq!(p.len() % 2, 1);
                prop_assert!(p.edges().first().unwrap().matched && p.edges().last().unwrap().matched);
                for (k, e) in p.edges().iter().enumerate() {
                    prop_assert_eq!(e.matched, k % 2 == 0);
                    prop_assert_eq!(e.matched, mm.contains(e.row, e.col));
                }
                prop_assert_eq!(p.sign(), Sign::of_length(p.len()));
                prop_assert!(p.end_row() <= c);
            }
        }
    }

    #[test]
    fn peeling_is_sound(n in 1usize..8, density in 0.0f64..=1.0, extra in prop::collection::vec((0usize..8, 0usize..8), 0..3), seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let g = random_permuted_triangular(&mut rng, n, density);
        let peel = peel_unique_matching(&g).unwrap();
        prop_assert!(peel.permute(&g.to_matrix()).is_lower_triangular().unwrap());
        let mut a = g.to_matrix();
        for (i, j) in extra {
            a.set(i % n, j % n, RingValue::one(g.spec())).unwrap();
        }
        let h = BipartiteGraph::from_matrix(&a);
        let unique = count_perfect_matchings(&h).unwrap() == 1;
        prop_assert_eq!(peel_unique_matching(&h).is_ok(), unique);
    }

    #[test]
    fn tree_contractions_are_bipartite(tree in tree_strategy(9), pick in any::<u64>()) {
        let layout = tree_biadjacency(&tree, RingSpec::Rational, || RingValue::one(RingSpec::Rational)).unwrap();
        let t = certify_tree(&layout.matrix);
        prop_assert!(t.certified_tree);
        let matchings = enumerate_matchings(&t.graph).unwrap();
        let mm = &matchings[(pick % matchings.len() as u64) as usize];
        prop_assert!(contract_matching(&t.graph, mm).is_bipartite());
        let b = path_matrix(&t, mm).unwrap();
        prop_assert!(outer_inverse_check(&layout.matrix, &b).unwrap());
    }

    #[test]
    fn nested_matching_products(tree in tree_strategy(9), pick in any::<u64>(), keep in any::<u16>(), weights in prop::collection::vec((1i64..9, 1i64..9), 8)) {
        let mut w = weights.into_iter().cycle().map(|(n, d)| RingValue::rational(n, d).unwrap());
        let layout = tree_biadjacency(&tree, RingSpec::Rational, || w.next().unwrap()).unwrap();
        let a = &layout.matrix;
        let t = certify_tree(a);
        let matchings = enumerate_matchings(&t.graph).unwrap();
        let m1 = &matchings[(pick % matchings.len() as u64) as usize];
        let sub = m1.pairs().iter().enumerate().filter(|(k, _)| keep >> k & 1 == 1).map(|(_, &p)| p);
        let m2 = Matching::new(&t.graph, sub).unwrap();
        let (b1, b2) = (path_matrix(&t, m1).unwrap(), path_matrix(&t, &m2).unwrap());
        prop_assert_eq!(b1.matmul(a).unwrap().matmul(&b2).unwrap(), b2.clone());
        prop_assert_eq!(b2.matmul(a).unwrap().matmul(&b1).unwrap(), b2);
    }

    #[test]
    fn relabelled_graphs_are_isomorphic(n in 1usize..10, edges in prop::collection::vec((0usize..10, 0usize..10), 0..20), perm_seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut g = SimpleGraph::empty(n);
        for (u, v) in edges {
            if u % n != v % n {
                g.add_edge(u % n, v % n).unwrap();
            }
        }
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng_from_seed(perm_seed));
        let h = SimpleGraph::from_edges(n, g.edges().into_iter().map(|(u, v)| (perm[u], perm[v]))).unwrap();
        prop_assert!(is_isomorphic(&g, &h).unwrap());
        let missing = (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).find(|&(u, v)| u < v && !h.has_edge(u, v));
        if let Some((u, v)) = missing {
            let mut more = h.clone();
            more.add_edge(u, v).unwrap();
            prop_assert!(!is_isomorphic(&g, &more).unwrap());
        }
    }
}
