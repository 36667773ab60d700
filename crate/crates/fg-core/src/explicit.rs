//! Explicit graphs and materialization of factored graphs.

use std::fmt::Write as _;

use crate::component::{CKind, CNode};
use crate::{ComponentTree, CoreError, FactoredGraph, Label, Op, Vertex};

/// An explicit directed graph over factored vertices, stored as CSR.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitGraph {
    vertices: Vec<Vertex>,
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl ExplicitGraph {
    /// `vertices` must be strictly increasing in vertex order; edges index into it.
    pub fn from_sorted(vertices: Vec<Vertex>, mut edges: Vec<(u32, u32)>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        edges.sort_unstable();
        edges.dedup();
        let n = vertices.len();
        let mut offsets = vec![0usize; n + 1];
        for &(u, _) in &edges {
            offsets[u as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let targets = edges.into_iter().map(|(_, v)| v).collect();
        ExplicitGraph {
            vertices,
            offsets,
            targets,
        }
    }

    /// Builds from arbitrary vertices and labeled edges. Edge endpoints are
    /// added as vertices; duplicates collapse.
    pub fn from_labeled(vertices: Vec<Vertex>, edges: Vec<(Vertex, Vertex)>) -> Self {
        let mut all = vertices;
        for (u, v) in &edges {
            all.push(u.clone());
            all.push(v.clone());
        }
        all.sort();
        all.dedup();
        let idx = |v: &Vertex| all.binary_search(v).unwrap() as u32;
        let pairs = edges.iter().map(|(u, v)| (idx(u), idx(v))).collect();
        ExplicitGraph::from_sorted(all, pairs)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Vertex {
        &self.vertices[i]
    }

    pub fn index_of(&self, v: &[Label]) -> Option<usize> {
        self.vertices
            .binary_search_by(|x| crate::vertex_order(x, v))
            .ok()
    }

    /// Sorted out-neighbor indices.
    pub fn out(&self, i: usize) -> &[u32] {
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.out(i).binary_search(&(j as u32)).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |i| self.out(i).iter().map(move |&j| (i, j as usize)))
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len()
    }

    pub fn has_self_loop(&self) -> bool {
        (0..self.len()).any(|i| self.has_edge(i, i))
    }

    /// One line per vertex (`[u]`), then one per edge (`[u] -> [v]`).
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        for v in &self.vertices {
            writeln!(s, "{v}").unwrap();
        }
        for (i, j) in self.edges() {
            writeln!(s, "{} -> {}", self.vertices[i], self.vertices[j]).unwrap();
        }
        s
    }

    /// Parses the format written by [`Self::to_edge_list`]. Blank lines and
    /// `#` comments are skipped.
    pub fn from_edge_list(text: &str) -> Result<Self, CoreError> {
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |msg: &str| CoreError::BadEdgeList {
                line: n + 1,
                msg: msg.to_string(),
            };
            match line.split_once("->") {
                Some((a, b)) => {
                    let u: Vertex = a.trim().parse().map_err(|_| bad("bad source tuple"))?;
                    let v: Vertex = b.trim().parse().map_err(|_| bad("bad target tuple"))?;
                    edges.push((u, v));
                }
                None => vertices.push(line.parse().map_err(|_| bad("bad vertex tuple"))?),
            }
        }
        Ok(ExplicitGraph::from_labeled(vertices, edges))
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph G {\n");
        for v in &self.vertices {
            writeln!(s, "  \"{v}\";").unwrap();
        }
        for (i, j) in self.edges() {
            writeln!(s, "  \"{}\" -> \"{}\";", self.vertices[i], self.vertices[j]).unwrap();
        }
        s.push_str("}\n");
        s
    }
}

impl FactoredGraph {
    /// Builds the explicit graph. Edges come from explicit products of the
    /// base edge lists, one component at a time.
    pub fn materialize(&self, max_vertices: usize) -> Result<ExplicitGraph, CoreError> {
        let cap = max_vertices.min(u32::MAX as usize);
        let mut vertices = Vec::new();
        for v in self.vertices() {
            if vertices.len() == cap {
                return Err(CoreError::SizeCap { cap: max_vertices });
            }
            vertices.push(v);
        }
        let mut edges: Vec<(u32, u32)> = Vec::new();
        for c in self.components() {
            let map = global_index(c, &vertices);
            let (_, local) = local_edges(c, c.root());
            edges.extend(local.into_iter().map(|(a, b)| {
                let (u, v) = (map[a], map[b]);
                debug_assert_eq!(vertices[u as usize].dim(), vertices[v as usize].dim());
                (u, v)
            }));
        }
        Ok(ExplicitGraph::from_sorted(vertices, edges))
    }
}

/// Global index of each vertex of `c`, in the component's mixed-radix order.
/// That order is lexicographic, so a single forward scan suffices.
fn global_index(c: &ComponentTree, vertices: &[Vertex]) -> Vec<u32> {
    let leaves = c.leaves();
    let total: usize = leaves.iter().map(|g| g.len()).product();
    let mut out = Vec::with_capacity(total);
    let start = vertices.partition_point(|v| v.dim() < c.dim());
    let mut at = start;
    let mut idx = vec![0usize; leaves.len()];
    let mut cur: Vec<Label> = leaves
        .iter()
        .flat_map(|g| g.vertex(0).iter().copied())
        .collect();
    for _ in 0..total {
        while vertices[at].labels() != cur.as_slice() {
            at += 1;
        }
        out.push(at as u32);
        for i in (0..leaves.len()).rev() {
            let off = c.offsets()[i];
            let ar = leaves[i].arity();
            idx[i] += 1;
            if idx[i] < leaves[i].len() {
                cur[off..off + ar].copy_from_slice(leaves[i].vertex(idx[i]));
                break;
            }
            idx[i] = 0;
            cur[off..off + ar].copy_from_slice(leaves[i].vertex(0));
        }
    }
    out
}

/// Vertex count and edge list of a component subtree, indexed in mixed
/// radix over its leaves.
fn local_edges(c: &ComponentTree, node: &CNode) -> (usize, Vec<(usize, usize)>) {
    match &node.kind {
        CKind::Leaf(i) => {
            let g = &c.leaves()[*i];
            (g.len(), g.edges().collect())
        }
        CKind::Op(Op::Cart, cs) => {
            let subs: Vec<_> = cs.iter().map(|ch| local_edges(c, ch)).collect();
            let total: usize = subs.iter().map(|s| s.0).product();
            let mut out = Vec::new();
            for (k, (size, es)) in subs.iter().enumerate() {
                let prefix: usize = subs[..k].iter().map(|s| s.0).product();
                let suffix: usize = subs[k + 1..].iter().map(|s| s.0).product();
                for hi in 0..prefix {
                    for &(a, b) in es {
                        for lo in 0..suffix {
                            out.push((
                                (hi * size + a) * suffix + lo,
                                (hi * size + b) * suffix + lo,
                            ));
                        }
                    }
                }
            }
            (total, out)
        }
        CKind::Op(_, cs) => {
            let mut size = 1usize;
            let mut acc = vec![(0usize, 0usize)];
            for ch in cs {
                let (s, es) = local_edges(c, ch);
                let mut next = Vec::with_capacity(acc.len() * es.len());
                for &(x, y) in &acc {
                    for &(a, b) in &es {
                        next.push((x * s + a, y * s + b));
                    }
                }
                acc = next;
                size *= s;
            }
            (size, acc)
        }
    }
}
