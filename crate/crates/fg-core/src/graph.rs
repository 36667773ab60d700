//! Explicit base graphs, the leaves of every formula.

use rustc_hash::FxHashMap;

use crate::vertex::tuple_string;
use crate::{CoreError, Label};

/// A small explicit directed graph.
///
/// Vertices are fixed-width label tuples (width = `arity`, usually 1) kept in
/// lexicographic order. Self-loops are allowed; duplicate edges collapse.
#[derive(Clone, Debug)]
pub struct BaseGraph {
    name: String,
    arity: usize,
    labels: Vec<Label>,
    index: Index,
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

#[derive(Clone, Debug)]
enum Index {
    Dense { min: Label, table: Vec<u32> },
    Map(FxHashMap<Box<[Label]>, u32>),
}

const ABSENT: u32 = u32::MAX;

impl BaseGraph {
    /// Builds a graph whose vertices are label tuples of width `arity`.
    pub fn new(
        name: impl Into<String>,
        arity: usize,
        vertices: Vec<Vec<Label>>,
        edges: Vec<(Vec<Label>, Vec<Label>)>,
    ) -> Result<Self, CoreError> {
        let name = name.into();
        assert!(arity >= 1, "arity must be positive");
        if vertices.is_empty() {
            return Err(CoreError::EmptyGraph(name));
        }
        for v in &vertices {
            if v.len() != arity {
                return Err(CoreError::MixedArity {
                    graph: name,
                    vertex: tuple_string(v),
                    expected: arity,
                    found: v.len(),
                });
            }
        }
        let mut vertices = vertices;
        vertices.sort();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(CoreError::DuplicateVertex {
                graph: name,
                vertex: tuple_string(&w[0]),
            });
        }
        let labels: Vec<Label> = vertices.concat();
        let index = build_index(arity, &vertices);
        let mut g = BaseGraph {
            name,
            arity,
            labels,
            index,
            offsets: Vec::new(),
            targets: Vec::new(),
        };

        let mut pairs = Vec::with_capacity(edges.len());
        for (u, v) in &edges {
            let ui = g.endpoint(u)?;
            let vi = g.endpoint(v)?;
            pairs.push((ui, vi));
        }
        pairs.sort_unstable();
        pairs.dedup();
        let n = vertices.len();
        let mut offsets = vec![0usize; n + 1];
        for &(u, _) in &pairs {
            offsets[u as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        g.targets = pairs.iter().map(|&(_, v)| v).collect();
        g.offsets = offsets;
        Ok(g)
    }

    /// Builds a graph with single-label vertices.
    pub fn simple(
        name: impl Into<String>,
        vertices: impl IntoIterator<Item = Label>,
        edges: impl IntoIterator<Item = (Label, Label)>,
    ) -> Result<Self, CoreError> {
        BaseGraph::new(
            name,
            1,
            vertices.into_iter().map(|v| vec![v]).collect(),
            edges.into_iter().map(|(u, v)| (vec![u], vec![v])).collect(),
        )
    }

    fn endpoint(&self, v: &[Label]) -> Result<u32, CoreError> {
        self.index_of(v)
            .map(|i| i as u32)
            .ok_or_else(|| CoreError::UndeclaredEndpoint {
                graph: self.name.clone(),
                vertex: tuple_string(v),
            })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of vertices.
    pub fn len(&self) -> usize {
        self.labels.len() / self.arity
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Labels of the vertex at position `i` in sorted order.
    pub fn vertex(&self, i: usize) -> &[Label] {
        &self.labels[i * self.arity..(i + 1) * self.arity]
    }

    pub fn vertices(&self) -> impl Iterator<Item = &[Label]> + '_ {
        self.labels.chunks_exact(self.arity)
    }

    pub fn index_of(&self, v: &[Label]) -> Option<usize> {
        if v.len() != self.arity {
            return None;
        }
        match &self.index {
            Index::Dense { min, table } => {
                let off = v[0].checked_sub(*min)? as usize;
                match table.get(off) {
                    Some(&i) if i != ABSENT => Some(i as usize),
                    _ => None,
                }
            }
            Index::Map(m) => m.get(v).map(|&i| i as usize),
        }
    }

    pub fn contains(&self, v: &[Label]) -> bool {
        self.index_of(v).is_some()
    }

    /// Sorted out-neighbor positions of vertex position `i`.
    pub fn out(&self, i: usize) -> &[u32] {
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn has_edge_idx(&self, i: usize, j: usize) -> bool {
        self.out(i).binary_search(&(j as u32)).is_ok()
    }

    pub fn has_edge(&self, u: &[Label], v: &[Label]) -> bool {
        match (self.index_of(u), self.index_of(v)) {
            (Some(i), Some(j)) => self.has_edge_idx(i, j),
            _ => false,
        }
    }

    /// All edges as position pairs, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |i| self.out(i).iter().map(move |&j| (i, j as usize)))
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len()
    }

    /// True when every edge has its reverse.
    pub fn is_symmetric(&self) -> bool {
        self.edges().all(|(i, j)| self.has_edge_idx(j, i))
    }

    pub fn has_self_loop(&self) -> bool {
        (0..self.len()).any(|i| self.has_edge_idx(i, i))
    }

    pub fn max_label(&self) -> Label {
        self.labels.iter().copied().max().unwrap_or(0)
    }
}

fn build_index(arity: usize, vertices: &[Vec<Label>]) -> Index {
    if arity == 1 {
        let min = vertices[0][0];
        let span = (vertices[vertices.len() - 1][0] - min) as usize + 1;
        if span <= 4 * vertices.len() + 1024 {
            let mut table = vec![ABSENT; span];
            for (i, v) in vertices.iter().enumerate() {
                table[(v[0] - min) as usize] = i as u32;
            }
            return Index::Dense { min, table };
        }
    }
    Index::Map(
        vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone().into_boxed_slice(), i as u32))
            .collect(),
    )
}
