#![allow(dead_code)]

use fg_core::{BaseGraph, Expr, FormulaDoc, Op};
use rand::rngs::StdRng;
use rand::Rng;

pub struct GraphSpec {
    pub max_n: u32,
    pub label_range: u32,
    pub symmetric: bool,
    pub loops: bool,
    pub density: f64,
}

/// A document with `count` random base graphs named G0, G1, ...
pub fn random_doc(rng: &mut StdRng, count: usize, spec: &GraphSpec) -> FormulaDoc {
    let mut doc = FormulaDoc::new();
    for i in 0..count {
        let n = rng.gen_range(1..=spec.max_n);
        let mut labels: Vec<u32> = (0..spec.label_range).collect();
        for j in 0..labels.len() {
            let k = rng.gen_range(j..labels.len());
            labels.swap(j, k);
        }
        labels.truncate(n as usize);
        let mut edges = Vec::new();
        for (a, &u) in labels.iter().enumerate() {
            for (b, &v) in labels.iter().enumerate() {
                if (a == b && !spec.loops) || (spec.symmetric && b < a) {
                    continue;
                }
                if rng.gen_bool(spec.density) {
                    edges.push((u, v));
                    if spec.symmetric {
                        edges.push((v, u));
                    }
                }
            }
        }
        doc.add_graph(BaseGraph::simple(format!("G{i}"), labels, edges).unwrap())
            .unwrap();
    }
    doc
}

pub fn random_op(rng: &mut StdRng) -> Op {
    [Op::Union, Op::Cart, Op::Tensor][rng.gen_range(0..3)]
}

/// A random binary tree with exactly `ops` operations over graphs `0..m`.
pub fn random_expr(rng: &mut StdRng, m: usize, ops: usize) -> Expr {
    if ops == 0 {
        return Expr::leaf(rng.gen_range(0..m));
    }
    let left = rng.gen_range(0..ops);
    let o = random_op(rng);
    let a = random_expr(rng, m, left);
    let b = random_expr(rng, m, ops - 1 - left);
    Expr::bin(o, a, b)
}
