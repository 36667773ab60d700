//! A formula bound to its base graphs, with implicit queries.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rustc_hash::{FxHashMap, FxHashSet};

use crate::component::Shape;
use crate::{BaseGraph, ComponentTree, CoreError, Expr, Label, Op, Vertex};

pub const DEFAULT_COMPONENT_CAP: usize = 1 << 20;

/// Size parameters of a formula: largest base graph and one plus the
/// number of operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Complexity {
    pub n: usize,
    pub k: usize,
}

impl fmt::Display for Complexity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, k={})", self.n, self.k)
    }
}

#[derive(Clone, Debug)]
enum NodeKind {
    Leaf(usize),
    Op(Op, Vec<usize>),
}

#[derive(Clone, Debug)]
struct Node {
    kind: NodeKind,
    /// Possible vertex dimensions of the subformula, ascending.
    dims: Vec<usize>,
}

/// A canonical formula together with the base graphs it references.
///
/// Components are computed once at construction.
#[derive(Clone, Debug)]
pub struct FactoredGraph {
    graphs: Vec<Arc<BaseGraph>>,
    nodes: Vec<Node>,
    root: usize,
    expr: Expr,
    components: Vec<ComponentTree>,
    by_dim: BTreeMap<usize, Vec<usize>>,
}

impl FactoredGraph {
    pub fn new(graphs: &[Arc<BaseGraph>], e: &Expr) -> Result<Self, CoreError> {
        Self::with_component_cap(graphs, e, DEFAULT_COMPONENT_CAP)
    }

    pub fn with_component_cap(
        graphs: &[Arc<BaseGraph>],
        e: &Expr,
        cap: usize,
    ) -> Result<Self, CoreError> {
        let mut local: FxHashMap<usize, usize> = FxHashMap::default();
        let mut used = Vec::new();
        let expr = e.clone().canonical().map_leaves(&mut |g| {
            *local.entry(g).or_insert_with(|| {
                used.push(graphs[g].clone());
                used.len() - 1
            })
        });
        let mut fg = FactoredGraph {
            graphs: used,
            nodes: Vec::new(),
            root: 0,
            expr: expr.clone(),
            components: Vec::new(),
            by_dim: BTreeMap::new(),
        };
        fg.root = fg.add_node(&expr);
        let shapes = fg.shapes(fg.root, cap)?;
        fg.components = shapes
            .iter()
            .map(|s| ComponentTree::from_shape(s, &fg.graphs))
            .collect();
        for (i, c) in fg.components.iter().enumerate() {
            fg.by_dim.entry(c.dim()).or_default().push(i);
        }
        Ok(fg)
    }

    fn add_node(&mut self, e: &Expr) -> usize {
        let node = match e {
            Expr::Leaf(g) => Node {
                kind: NodeKind::Leaf(*g),
                dims: vec![self.graphs[*g].arity()],
            },
            Expr::Node(op, cs) => {
                let ids: Vec<usize> = cs.iter().map(|c| self.add_node(c)).collect();
                let dims = match op {
                    Op::Union => {
                        let mut d: Vec<usize> = ids
                            .iter()
                            .flat_map(|&c| self.nodes[c].dims.clone())
                            .collect();
                        d.sort_unstable();
                        d.dedup();
                        d
                    }
                    _ => ids.iter().fold(vec![0usize], |acc, &c| {
                        let mut d: Vec<usize> = acc
                            .iter()
                            .flat_map(|a| self.nodes[c].dims.iter().map(move |b| a + b))
                            .collect();
                        d.sort_unstable();
                        d.dedup();
                        d
                    }),
                };
                Node {
                    kind: NodeKind::Op(*op, ids),
                    dims,
                }
            }
        };
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    fn shapes(&self, n: usize, cap: usize) -> Result<Vec<Shape>, CoreError> {
        match &self.nodes[n].kind {
            NodeKind::Leaf(g) => Ok(vec![Shape::Leaf(*g)]),
            NodeKind::Op(Op::Union, cs) => {
                let mut seen = FxHashSet::default();
                let mut out = Vec::new();
                for &c in cs {
                    for s in self.shapes(c, cap)? {
                        if seen.insert(s.clone()) {
                            out.push(s);
                            if out.len() > cap {
                                return Err(CoreError::ComponentCap { cap });
                            }
                        }
                    }
                }
                Ok(out)
            }
            NodeKind::Op(op, cs) => {
                let parts = cs
                    .iter()
                    .map(|&c| self.shapes(c, cap))
                    .collect::<Result<Vec<_>, _>>()?;
                let total = parts.iter().fold(1usize, |a, p| a.saturating_mul(p.len()));
                if total > cap {
                    return Err(CoreError::ComponentCap { cap });
                }
                let mut out: Vec<Vec<Shape>> = vec![Vec::new()];
                for p in &parts {
                    out = out
                        .into_iter()
                        .flat_map(|prefix| {
                            p.iter().map(move |s| {
                                let mut v = prefix.clone();
                                match s {
                                    Shape::Prod(o, inner) if o == op => {
                                        v.extend(inner.iter().cloned())
                                    }
                                    other => v.push(other.clone()),
                                }
                                v
                            })
                        })
                        .collect();
                }
                Ok(out.into_iter().map(|v| Shape::Prod(*op, v)).collect())
            }
        }
    }

    /// Base graphs referenced by the formula, indexed as in [`Self::expr`].
    pub fn graphs(&self) -> &[Arc<BaseGraph>] {
        &self.graphs
    }

    /// The canonical formula, with leaves indexing [`Self::graphs`].
    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn complexity(&self) -> Complexity {
        Complexity {
            n: self.graphs.iter().map(|g| g.len()).max().unwrap_or(0),
            k: 1 + self.expr.operation_count(),
        }
    }

    pub fn components(&self) -> &[ComponentTree] {
        &self.components
    }

    /// Component dimensions, ascending, one entry per component.
    pub fn component_dims(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.components.iter().map(|c| c.dim()).collect();
        d.sort_unstable();
        d
    }

    /// Distinct vertex dimensions, ascending.
    pub fn dims(&self) -> Vec<usize> {
        self.by_dim.keys().copied().collect()
    }

    pub fn components_of_dim(&self, d: usize) -> impl Iterator<Item = &ComponentTree> + '_ {
        self.by_dim
            .get(&d)
            .into_iter()
            .flatten()
            .map(move |&i| &self.components[i])
    }

    /// If the root is one operation applied directly to base graphs, returns
    /// that operation and the graph indices of its operands.
    pub fn flat_root(&self) -> Option<(Op, Vec<usize>)> {
        match &self.expr {
            Expr::Node(op, cs) => cs
                .iter()
                .map(|c| match c {
                    Expr::Leaf(g) => Some(*g),
                    _ => None,
                })
                .collect::<Option<Vec<_>>>()
                .map(|gs| (*op, gs)),
            Expr::Leaf(_) => None,
        }
    }

    pub fn contains(&self, v: &[Label]) -> bool {
        self.components_of_dim(v.len()).any(|c| c.contains(v))
    }

    pub fn dimension_of(&self, v: &[Label]) -> Result<usize, CoreError> {
        if self.contains(v) {
            Ok(v.len())
        } else {
            Err(CoreError::NotAVertex(Vertex::from(v)))
        }
    }

    /// Edge test evaluated on the formula tree; false for non-vertices.
    pub fn adjacent(&self, u: &[Label], v: &[Label]) -> bool {
        u.len() == v.len() && self.edge(self.root, u, v)
    }

    fn member(&self, n: usize, u: &[Label]) -> bool {
        let node = &self.nodes[n];
        if node.dims.binary_search(&u.len()).is_err() {
            return false;
        }
        match &node.kind {
            NodeKind::Leaf(g) => self.graphs[*g].contains(u),
            NodeKind::Op(Op::Union, cs) => cs.iter().any(|&c| self.member(c, u)),
            NodeKind::Op(_, cs) => self.any_split(cs, u.len(), &mut |w| {
                parts(w, u).zip(cs).all(|(p, &c)| self.member(c, p))
            }),
        }
    }

    fn edge(&self, n: usize, u: &[Label], v: &[Label]) -> bool {
        let node = &self.nodes[n];
        if node.dims.binary_search(&u.len()).is_err() {
            return false;
        }
        match &node.kind {
            NodeKind::Leaf(g) => self.graphs[*g].has_edge(u, v),
            NodeKind::Op(Op::Union, cs) => cs.iter().any(|&c| self.edge(c, u, v)),
            NodeKind::Op(Op::Tensor, cs) => self.any_split(cs, u.len(), &mut |w| {
                parts(w, u)
                    .zip(parts(w, v))
                    .zip(cs)
                    .all(|((a, b), &c)| self.edge(c, a, b))
            }),
            NodeKind::Op(Op::Cart, cs) => self.any_split(cs, u.len(), &mut |w| {
                let us: Vec<&[Label]> = parts(w, u).collect();
                let vs: Vec<&[Label]> = parts(w, v).collect();
                let changed: Vec<usize> = (0..cs.len()).filter(|&i| us[i] != vs[i]).collect();
                let fixed_ok =
                    |skip: usize| (0..cs.len()).all(|j| j == skip || self.member(cs[j], us[j]));
                match changed.as_slice() {
                    [] => (0..cs.len()).any(|i| self.edge(cs[i], us[i], vs[i]) && fixed_ok(i)),
                    [i] => self.edge(cs[*i], us[*i], vs[*i]) && fixed_ok(*i),
                    _ => false,
                }
            }),
        }
    }

    /// Tries every way to split `total` coordinates among `cs` by their
    /// possible dimensions; stops at the first split accepted by `f`.
    fn any_split(&self, cs: &[usize], total: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        fn go(
            fg: &FactoredGraph,
            cs: &[usize],
            left: usize,
            widths: &mut Vec<usize>,
            f: &mut dyn FnMut(&[usize]) -> bool,
        ) -> bool {
            let i = widths.len();
            if i == cs.len() {
                return left == 0 && f(widths);
            }
            for &w in &fg.nodes[cs[i]].dims {
                if w > left {
                    break;
                }
                widths.push(w);
                let hit = go(fg, cs, left - w, widths, f);
                widths.pop();
                if hit {
                    return true;
                }
            }
            false
        }
        go(self, cs, total, &mut Vec::with_capacity(cs.len()), f)
    }

    /// Out-neighbors of `v`, sorted and deduplicated. Empty for non-vertices.
    pub fn out_neighbors(&self, v: &[Label]) -> Vec<Vertex> {
        let mut buf = Vec::new();
        self.out_neighbors_raw(v, &mut buf);
        let mut out: Vec<Vertex> = buf.chunks_exact(v.len().max(1)).map(Vertex::from).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Appends out-neighbors of `v` to `buf`, flattened, possibly with
    /// repeats when several components contain `v`.
    pub fn out_neighbors_raw(&self, v: &[Label], buf: &mut Vec<Label>) {
        for c in self.components_of_dim(v.len()) {
            c.out_neighbors_into(v, buf);
        }
    }

    /// Upper bound on the vertex count: sum of component product sizes.
    pub fn estimated_vertex_count(&self) -> u128 {
        self.components
            .iter()
            .fold(0u128, |a, c| a.saturating_add(c.vertex_count()))
    }

    /// All vertices in vertex order, guarded by `cap` on the estimated count.
    pub fn enumerate_vertices(&self, cap: usize) -> Result<VertexStream<'_>, CoreError> {
        if self.estimated_vertex_count() > cap as u128 {
            return Err(CoreError::SizeCap { cap });
        }
        Ok(self.vertices())
    }

    /// All vertices in vertex order, without a size guard.
    pub fn vertices(&self) -> VertexStream<'_> {
        VertexStream::new(self, self.dims())
    }

    /// Vertices of one dimension in vertex order.
    pub fn vertices_of_dim(&self, d: usize) -> VertexStream<'_> {
        VertexStream::new(self, vec![d])
    }
}

fn parts<'a>(widths: &'a [usize], v: &'a [Label]) -> impl Iterator<Item = &'a [Label]> + 'a {
    let mut at = 0;
    widths.iter().map(move |&w| {
        let p = &v[at..at + w];
        at += w;
        p
    })
}

struct Cursor<'a> {
    comp: &'a ComponentTree,
    idx: Vec<usize>,
    cur: Option<Vec<Label>>,
}

impl<'a> Cursor<'a> {
    fn new(comp: &'a ComponentTree) -> Self {
        let idx = vec![0; comp.leaves().len()];
        let cur = comp
            .leaves()
            .iter()
            .flat_map(|g| g.vertex(0).iter().copied())
            .collect();
        Cursor {
            comp,
            idx,
            cur: Some(cur),
        }
    }

    fn advance(&mut self) {
        let Some(cur) = self.cur.as_mut() else { return };
        let leaves = self.comp.leaves();
        for i in (0..leaves.len()).rev() {
            let g = &leaves[i];
            let off = self.comp.offsets()[i];
            self.idx[i] += 1;
            if self.idx[i] < g.len() {
                cur[off..off + g.arity()].copy_from_slice(g.vertex(self.idx[i]));
                return;
            }
            self.idx[i] = 0;
            cur[off..off + g.arity()].copy_from_slice(g.vertex(0));
        }
        self.cur = None;
    }
}

/// Merges per-component product enumerations into one ordered,
/// duplicate-free stream.
pub struct VertexStream<'a> {
    fg: &'a FactoredGraph,
    dims: std::vec::IntoIter<usize>,
    cursors: Vec<Cursor<'a>>,
}

impl<'a> VertexStream<'a> {
    fn new(fg: &'a FactoredGraph, dims: Vec<usize>) -> Self {
        VertexStream {
            fg,
            dims: dims.into_iter(),
            cursors: Vec::new(),
        }
    }
}

impl Iterator for VertexStream<'_> {
    type Item = Vertex;

    fn next(&mut self) -> Option<Vertex> {
        loop {
            let best = self
                .cursors
                .iter()
                .filter_map(|c| c.cur.as_ref())
                .min()
                .cloned();
            match best {
                Some(v) => {
                    for c in &mut self.cursors {
                        if c.cur.as_ref() == Some(&v) {
                            c.advance();
                        }
                    }
                    return Some(Vertex::new(v));
                }
                None => {
                    let d = self.dims.next()?;
                    self.cursors = self.fg.components_of_dim(d).map(Cursor::new).collect();
                }
            }
        }
    }
}
