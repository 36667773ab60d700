mod common;

use common::{random_doc, random_expr, GraphSpec};
use fg_algorithms::{lfmis_greedy, lfmis_greedy_indices, lfmis_implicit, lfmis_member, Engine};
use fg_core::{ExplicitGraph, Vertex};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn graph(n: usize, edges: &[(usize, usize)]) -> ExplicitGraph {
    let vs = (0..n as u32).map(|i| Vertex::new(vec![i])).collect();
    ExplicitGraph::from_sorted(
        vs,
        edges.iter().map(|&(a, b)| (a as u32, b as u32)).collect(),
    )
}

/// Lexicographically least maximal independent set, by trying every subset.
fn least_mis(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut adj = vec![0u32; n];
    for &(a, b) in edges {
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    let mut best: Option<Vec<usize>> = None;
    for set in 0u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|&i| set >> i & 1 == 1).collect();
        let independent = members.iter().all(|&i| adj[i] & set == 0);
        let maximal = (0..n).all(|i| set >> i & 1 == 1 || adj[i] & set != 0);
        if independent && maximal && best.as_ref().is_none_or(|b| members < *b) {
            best = Some(members);
        }
    }
    best.unwrap()
}

fn loopless_edges(max_n: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1..=max_n).prop_flat_map(|n| {
        (Just(n), prop::collection::vec((0..n, 0..n), 0..=n * 2))
            .prop_map(|(n, es)| (n, es.into_iter().filter(|(a, b)| a != b).collect()))
    })
}

#[test]
fn greedy_matches_exhaustive_oracle() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..300 {
        let n = rng.gen_range(1..=12);
        let p = rng.gen_range(0.05..0.6);
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|(a, b)| a != b && rng.gen_bool(p))
            .collect();
        assert_eq!(
            lfmis_greedy_indices(&graph(n, &edges)).unwrap(),
            least_mis(n, &edges)
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn independent_and_maximal((n, edges) in loopless_edges(14)) {
        let g = graph(n, &edges);
        let set = lfmis_greedy_indices(&g).unwrap();
        let inside = |i: usize| set.binary_search(&i).is_ok();
        for &(a, b) in &edges {
            prop_assert!(!(inside(a) && inside(b)));
        }
        for v in 0..n {
            prop_assert!(inside(v) || edges.iter().any(|&(a, b)| (a == v && inside(b)) || (b == v && inside(a))));
        }
    }

    #[test]
    fn prefix_stability((n, edges) in loopless_edges(12), q in 0usize..12, w in 0usize..12) {
        let (q, w) = (q % n, w % n);
        let g = graph(n, &edges);
        let set = lfmis_greedy_indices(&g).unwrap();
        prop_assume!(w > q && set.binary_search(&w).is_err());
        let kept: Vec<usize> = (0..n).filter(|&i| i != w).collect();
        let renum = |i: usize| kept.iter().position(|&k| k == i).unwrap();
        let rest: Vec<(usize, usize)> =
            edges.iter().filter(|(a, b)| *a != w && *b != w).map(|&(a, b)| (renum(a), renum(b))).collect();
        let smaller = lfmis_greedy_indices(&graph(n - 1, &rest)).unwrap();
        prop_assert_eq!(set.binary_search(&q).is_ok(), smaller.binary_search(&renum(q)).is_ok());
    }
}

#[test]
fn engines_agree_on_random_formulas() {
    let mut rng = StdRng::seed_from_u64(5);
    let spec = GraphSpec {
        max_n: 4,
        label_range: 6,
        symmetric: false,
        loops: false,
        density: 0.3,
    };
    let mut checked = 0;
    while checked < 150 {
        let doc = random_doc(&mut rng, 3, &spec);
        let ops = rng.gen_range(0..=3);
        let fg = doc.factored_expr(&random_expr(&mut rng, 3, ops)).unwrap();
        let g = fg.materialize(100_000).unwrap();
        if g.has_self_loop() || g.len() > 300 {
            continue;
        }
        checked += 1;
        let full = lfmis_greedy(&g).unwrap();
        assert_eq!(lfmis_implicit(&fg, 100_000).unwrap(), full);
        for v in g.vertices().iter().step_by(3) {
            let want = full.members.binary_search(v).is_ok();
            assert_eq!(
                lfmis_member(&fg, v, Engine::Implicit, 100_000).unwrap(),
                want
            );
            assert_eq!(
                lfmis_member(&fg, v, Engine::Materialize, 100_000).unwrap(),
                want
            );
        }
    }
}
