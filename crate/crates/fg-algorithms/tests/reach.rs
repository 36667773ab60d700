mod common;

use common::{random_doc, random_expr, GraphSpec};
use fg_algorithms::{reach, reach_detailed, ReachMethod, ReachOptions, Strategy};
use fg_core::{Expr, Op};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[test]
fn methods_agree_on_random_formulas() {
    let mut rng = StdRng::seed_from_u64(41);
    let spec = GraphSpec {
        max_n: 4,
        label_range: 6,
        symmetric: false,
        loops: true,
        density: 0.3,
    };
    let o = ReachOptions::default();
    for _ in 0..150 {
        let doc = random_doc(&mut rng, 3, &spec);
        let ops = rng.gen_range(0..=3);
        let fg = doc.factored_expr(&random_expr(&mut rng, 3, ops)).unwrap();
        let vs: Vec<_> = fg.vertices().collect();
        for _ in 0..10 {
            let s = &vs[rng.gen_range(0..vs.len())];
            let t = &vs[rng.gen_range(0..vs.len())];
            let a = reach(&fg, s, t, ReachMethod::Implicit, &o).unwrap();
            assert_eq!(reach(&fg, s, t, ReachMethod::Explicit, &o).unwrap(), a);
            assert_eq!(reach(&fg, s, t, ReachMethod::Auto, &o).unwrap(), a);
        }
    }
}

#[test]
fn fast_paths_agree_with_search() {
    let mut rng = StdRng::seed_from_u64(43);
    let spec = GraphSpec {
        max_n: 5,
        label_range: 7,
        symmetric: false,
        loops: false,
        density: 0.25,
    };
    let o = ReachOptions::default();
    for round in 0..200 {
        let doc = random_doc(&mut rng, 4, &spec);
        let m = rng.gen_range(2..=4);
        let op = if round % 2 == 0 { Op::Cart } else { Op::Union };
        let e = Expr::op(
            op,
            (0..m).map(|_| Expr::leaf(rng.gen_range(0..4))).collect(),
        );
        let fg = doc.factored_expr(&e).unwrap();
        let want = if op == Op::Cart {
            Strategy::CartesianFastPath
        } else {
            Strategy::UnionFastPath
        };
        let vs: Vec<_> = fg.vertices().collect();
        for _ in 0..10 {
            let s = &vs[rng.gen_range(0..vs.len())];
            let t = &vs[rng.gen_range(0..vs.len())];
            let fast = reach_detailed(&fg, s, t, ReachMethod::Auto, &o).unwrap();
            if s != t {
                assert_eq!(fast.strategy, want);
            }
            assert_eq!(
                fast.reachable,
                reach(&fg, s, t, ReachMethod::Implicit, &o).unwrap()
            );
        }
    }
}
