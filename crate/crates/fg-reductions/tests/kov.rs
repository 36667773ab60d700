mod common;

use fg_algorithms::{reach, ReachMethod, ReachOptions};
use fg_core::Label;
use fg_reductions::{compile_kov_reach, solve_kov_brute, KovInstance, KovLabels, KovVertex, Query};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_instance(rng: &mut impl Rng, k: usize, n: usize, d: usize) -> KovInstance {
    let density = rng.gen_range(0.3..0.9);
    let sets = (0..k)
        .map(|_| {
            (0..n)
                .map(|_| (0..d).map(|_| rng.gen_bool(density)).collect())
                .collect()
        })
        .collect();
    KovInstance::new(d, sets).unwrap()
}

fn ends(q: &Query) -> (&fg_core::Vertex, &fg_core::Vertex) {
    match q {
        Query::Reach { src, dst } => (src, dst),
        _ => panic!("not a reach query"),
    }
}

#[test]
fn brute_force_cases() {
    let with_zero = common::kov("sample.kov");
    assert!(solve_kov_brute(&with_zero));
    let z: KovInstance = "kov { k: 3; d: 4; set: 1111 0000; set: 1111 1111; set: 1011 1111; }"
        .parse()
        .unwrap();
    assert!(solve_kov_brute(&z));
    let none: KovInstance = "kov { k: 2; d: 2; set: 10; set: 11; }".parse().unwrap();
    assert!(!solve_kov_brute(&none));
}

#[test]
fn reachability_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let opts = ReachOptions::default();
    let mut seen = [0usize; 2];
    for k in [2, 3] {
        for _ in 0..60 {
            let (n, d) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
            let inst = random_instance(&mut rng, k, n, d);
            let c = compile_kov_reach(&inst).unwrap();
            let fg = c.doc.factored(&c.formula).unwrap();
            let (s, t) = ends(&c.query);
            let want = solve_kov_brute(&inst);
            seen[want as usize] += 1;
            assert_eq!(
                reach(&fg, s, t, ReachMethod::Implicit, &opts).unwrap(),
                want,
                "{inst}"
            );
            assert_eq!(
                reach(&fg, s, t, ReachMethod::Explicit, &opts).unwrap(),
                want,
                "{inst}"
            );
        }
    }
    assert!(seen[0] > 10 && seen[1] > 10, "{seen:?}");
}

#[test]
fn edges_keep_vectors_and_diagonals_advance_together() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in [2, 3] {
        for _ in 0..5 {
            let inst = random_instance(&mut rng, k, 3, 3);
            let c = compile_kov_reach(&inst).unwrap();
            let g = c
                .doc
                .factored(&c.formula)
                .unwrap()
                .materialize(1 << 20)
                .unwrap();
            let lab = KovLabels {
                n: inst.n(),
                d: inst.d(),
            };
            let decode = |v: &[Label]| -> Option<Vec<(usize, usize, usize, u8)>> {
                v.iter()
                    .map(|&l| match lab.decode(l) {
                        KovVertex::Vec { i, j, l, b } => Some((i, j, l, b)),
                        _ => None,
                    })
                    .collect()
            };
            let mut diagonals = 0;
            for (u, v) in g.edges() {
                let (Some(a), Some(b)) = (decode(g.vertex(u)), decode(g.vertex(v))) else {
                    continue;
                };
                for (x, y) in a.iter().zip(&b) {
                    assert_eq!((x.0, x.1), (y.0, y.1), "vector changed");
                }
                if a.iter().zip(&b).any(|(x, y)| x.2 != y.2) {
                    diagonals += 1;
                    for (x, y) in a.iter().zip(&b) {
                        assert_eq!(y.2, x.2 + 1);
                        assert_eq!((x.3, y.3), (1, 0));
                    }
                }
            }
            assert_eq!(diagonals, (inst.n() * (inst.d() - 1)).pow(k as u32));
        }
    }
}

#[test]
fn size_and_operation_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for k in 2..=5 {
        let (n, d) = (4, 3);
        let inst = random_instance(&mut rng, k, n, d);
        let c = compile_kov_reach(&inst).unwrap();
        let total: usize = c
            .doc
            .graphs()
            .iter()
            .map(|g| g.len() + g.edge_count())
            .sum();
        assert!(total <= 20 * k * n * d, "size {total}");
        let ops = c.doc.formula(&c.formula).unwrap().operation_count();
        assert!(ops <= k * k * k + 4 * k, "ops {ops}");
        assert!(c.unnamed_labels().is_empty());
        assert_eq!(c.legend.len(), k * (2 + 2 * n * d));
    }
}

#[test]
fn legend_names() {
    let inst = common::kov("sample.kov");
    let c = compile_kov_reach(&inst).unwrap();
    assert_eq!(c.legend[&0], "s_1");
    assert_eq!(c.legend[&1], "v_{1,1,1,0}");
    assert_eq!(c.legend[&2], "v_{1,1,1,1}");
    let block = (2 + 2 * 3 * 3) as Label;
    assert_eq!(c.legend[&(block - 1)], "t_1");
    assert_eq!(c.legend[&block], "s_2");
    let (s, t) = ends(&c.query);
    assert_eq!(s.labels(), &[0, block]);
    assert_eq!(t.labels(), &[block - 1, 2 * block - 1]);
}

mod props {
    use super::*;
    use proptest::prelude::*;

    fn instance() -> impl Strategy<Value = KovInstance> {
        (2usize..=3, 1usize..=3, 1usize..=3).prop_flat_map(|(k, n, d)| {
            proptest::collection::vec(
                proptest::collection::vec(proptest::collection::vec(any::<bool>(), d), n),
                k,
            )
            .prop_map(move |sets| KovInstance::new(d, sets).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

        #[test]
        fn reach_decides_orthogonality(inst in instance()) {
            let c = compile_kov_reach(&inst).unwrap();
            let fg = c.doc.factored(&c.formula).unwrap();
            let (s, t) = ends(&c.query);
            let got = reach(&fg, s, t, ReachMethod::Auto, &ReachOptions::default()).unwrap();
            prop_assert_eq!(got, solve_kov_brute(&inst));
        }
    }
}
