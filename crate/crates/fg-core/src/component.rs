//! Union-free components of a formula.

use std::sync::Arc;

use crate::{BaseGraph, Label, Op};

/// Node of a component tree. `lo..hi` is the coordinate range it covers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CNode {
    pub lo: usize,
    pub hi: usize,
    pub kind: CKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CKind {
    /// Position of the leaf in [`ComponentTree::leaves`].
    Leaf(usize),
    /// Only `Op::Cart` or `Op::Tensor`.
    Op(Op, Vec<CNode>),
}

/// Structural key used to deduplicate components.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Shape {
    Leaf(usize),
    Prod(Op, Vec<Shape>),
}

/// A component: the formula with every union resolved to one of its operands.
#[derive(Clone, Debug)]
pub struct ComponentTree {
    root: CNode,
    leaves: Vec<Arc<BaseGraph>>,
    leaf_ids: Vec<usize>,
    offsets: Vec<usize>,
    dim: usize,
}

impl ComponentTree {
    pub(crate) fn from_shape(shape: &Shape, graphs: &[Arc<BaseGraph>]) -> Self {
        let mut leaves = Vec::new();
        let mut leaf_ids = Vec::new();
        let mut offsets = Vec::new();
        let mut next = 0usize;
        let root = build(
            shape,
            graphs,
            &mut leaves,
            &mut leaf_ids,
            &mut offsets,
            &mut next,
        );
        ComponentTree {
            root,
            leaves,
            leaf_ids,
            offsets,
            dim: next,
        }
    }

    /// Number of label coordinates. Equals the leaf count when every base
    /// graph has single-label vertices.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn root(&self) -> &CNode {
        &self.root
    }

    pub fn leaves(&self) -> &[Arc<BaseGraph>] {
        &self.leaves
    }

    /// Graph indices of the leaves within the owning [`FactoredGraph`](crate::FactoredGraph).
    pub fn leaf_ids(&self) -> &[usize] {
        &self.leaf_ids
    }

    /// First coordinate of each leaf.
    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    fn leaf_slice<'v>(&self, i: usize, v: &'v [Label]) -> &'v [Label] {
        &v[self.offsets[i]..self.offsets[i] + self.leaves[i].arity()]
    }

    pub fn contains(&self, v: &[Label]) -> bool {
        v.len() == self.dim
            && (0..self.leaves.len()).all(|i| self.leaves[i].contains(self.leaf_slice(i, v)))
    }

    /// Per-leaf vertex positions of `v`, or `None` if `v` is not in the component.
    pub fn leaf_positions(&self, v: &[Label]) -> Option<Vec<usize>> {
        if v.len() != self.dim {
            return None;
        }
        (0..self.leaves.len())
            .map(|i| self.leaves[i].index_of(self.leaf_slice(i, v)))
            .collect()
    }

    /// Product of leaf sizes, saturating.
    pub fn vertex_count(&self) -> u128 {
        self.leaves
            .iter()
            .fold(1u128, |acc, g| acc.saturating_mul(g.len() as u128))
    }

    /// Appends every out-neighbor of `v` inside this component to `out`,
    /// flattened `dim` labels at a time. Appends nothing when `v` is not a member.
    pub fn out_neighbors_into(&self, v: &[Label], out: &mut Vec<Label>) {
        let Some(pos) = self.leaf_positions(v) else {
            return;
        };
        out.extend(self.neighbors(&self.root, v, &pos));
    }

    fn neighbors(&self, node: &CNode, v: &[Label], pos: &[usize]) -> Vec<Label> {
        match &node.kind {
            CKind::Leaf(i) => {
                let g = &self.leaves[*i];
                let mut out = Vec::with_capacity(g.out(pos[*i]).len() * g.arity());
                for &j in g.out(pos[*i]) {
                    out.extend_from_slice(g.vertex(j as usize));
                }
                out
            }
            CKind::Op(Op::Cart, cs) => {
                let width = node.hi - node.lo;
                let mut out = Vec::new();
                for c in cs {
                    let sub = self.neighbors(c, v, pos);
                    let cw = c.hi - c.lo;
                    for chunk in sub.chunks_exact(cw) {
                        let start = out.len();
                        out.extend_from_slice(&v[node.lo..node.hi]);
                        out[start + c.lo - node.lo..start + c.hi - node.lo].copy_from_slice(chunk);
                    }
                    debug_assert_eq!(out.len() % width, 0);
                }
                out
            }
            CKind::Op(_, cs) => {
                let mut acc: Vec<Label> = Vec::new();
                let mut acc_w = 0usize;
                let mut first = true;
                for c in cs {
                    let sub = self.neighbors(c, v, pos);
                    if sub.is_empty() {
                        return Vec::new();
                    }
                    let cw = c.hi - c.lo;
                    if first {
                        acc = sub;
                        acc_w = cw;
                        first = false;
                        continue;
                    }
                    let mut next =
                        Vec::with_capacity(acc.len() / acc_w * sub.len() / cw * (acc_w + cw));
                    for a in acc.chunks_exact(acc_w) {
                        for b in sub.chunks_exact(cw) {
                            next.extend_from_slice(a);
                            next.extend_from_slice(b);
                        }
                    }
                    acc = next;
                    acc_w += cw;
                }
                acc
            }
        }
    }

    /// Whether some vertex of the component has a self-loop.
    pub fn has_self_loop(&self) -> bool {
        self.loops(&self.root)
    }

    fn loops(&self, node: &CNode) -> bool {
        match &node.kind {
            CKind::Leaf(i) => self.leaves[*i].has_self_loop(),
            CKind::Op(Op::Cart, cs) => cs.iter().any(|c| self.loops(c)),
            CKind::Op(_, cs) => cs.iter().all(|c| self.loops(c)),
        }
    }

    /// Renders the component with graph names.
    pub fn describe(&self) -> String {
        let mut s = String::new();
        self.describe_node(&self.root, &mut s);
        s
    }

    fn describe_node(&self, node: &CNode, s: &mut String) {
        match &node.kind {
            CKind::Leaf(i) => s.push_str(self.leaves[*i].name()),
            CKind::Op(op, cs) => {
                s.push('(');
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        s.push(' ');
                        s.push(op.symbol());
                        s.push(' ');
                    }
                    self.describe_node(c, s);
                }
                s.push(')');
            }
        }
    }
}

fn build(
    shape: &Shape,
    graphs: &[Arc<BaseGraph>],
    leaves: &mut Vec<Arc<BaseGraph>>,
    leaf_ids: &mut Vec<usize>,
    offsets: &mut Vec<usize>,
    next: &mut usize,
) -> CNode {
    let lo = *next;
    match shape {
        Shape::Leaf(g) => {
            let i = leaves.len();
            leaves.push(graphs[*g].clone());
            leaf_ids.push(*g);
            offsets.push(lo);
            *next += graphs[*g].arity();
            CNode {
                lo,
                hi: *next,
                kind: CKind::Leaf(i),
            }
        }
        Shape::Prod(op, cs) => {
            let children = cs
                .iter()
                .map(|c| build(c, graphs, leaves, leaf_ids, offsets, next))
                .collect();
            CNode {
                lo,
                hi: *next,
                kind: CKind::Op(*op, children),
            }
        }
    }
}
