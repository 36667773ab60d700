//! Direct set-based evaluation of formulas, used as an oracle.

#![allow(dead_code)]

use std::collections::BTreeSet;

use fg_core::{Expr, FormulaDoc, Label, Op};

pub type Tuple = Vec<Label>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SetGraph {
    pub vertices: BTreeSet<Tuple>,
    pub edges: BTreeSet<(Tuple, Tuple)>,
}

fn concat(a: &[Label], b: &[Label]) -> Tuple {
    let mut v = a.to_vec();
    v.extend_from_slice(b);
    v
}

fn cart(g: &SetGraph, h: &SetGraph) -> SetGraph {
    let mut out = SetGraph::default();
    for a in &g.vertices {
        for b in &h.vertices {
            out.vertices.insert(concat(a, b));
        }
    }
    for (a, a2) in &g.edges {
        for b in &h.vertices {
            out.edges.insert((concat(a, b), concat(a2, b)));
        }
    }
    for a in &g.vertices {
        for (b, b2) in &h.edges {
            out.edges.insert((concat(a, b), concat(a, b2)));
        }
    }
    out
}

fn tensor(g: &SetGraph, h: &SetGraph) -> SetGraph {
    let mut out = SetGraph::default();
    for a in &g.vertices {
        for b in &h.vertices {
            out.vertices.insert(concat(a, b));
        }
    }
    for (a, a2) in &g.edges {
        for (b, b2) in &h.edges {
            out.edges.insert((concat(a, b), concat(a2, b2)));
        }
    }
    out
}

/// Evaluates `e` by applying the product and union definitions to explicit sets.
pub fn eval(doc: &FormulaDoc, e: &Expr) -> SetGraph {
    match e {
        Expr::Leaf(g) => {
            let g = doc.graph(*g);
            SetGraph {
                vertices: g.vertices().map(|v| v.to_vec()).collect(),
                edges: g
                    .edges()
                    .map(|(i, j)| (g.vertex(i).to_vec(), g.vertex(j).to_vec()))
                    .collect(),
            }
        }
        Expr::Node(op, cs) => {
            let mut parts = cs.iter().map(|c| eval(doc, c));
            let first = parts.next().unwrap();
            parts.fold(first, |acc, p| match op {
                Op::Union => SetGraph {
                    vertices: acc.vertices.union(&p.vertices).cloned().collect(),
                    edges: acc.edges.union(&p.edges).cloned().collect(),
                },
                Op::Cart => cart(&acc, &p),
                Op::Tensor => tensor(&acc, &p),
            })
        }
    }
}
