//! Counting s-cliques: naive enumeration and the per-dimension FPT counter.
//!
//! The FPT counter handles one dimension class at a time. A clique is an
//! ordered tuple of distinct vertices in which every pair is adjacent in some
//! component of the class. Inclusion-exclusion over decompositions (maps from
//! pairs to components) turns this into a signed sum of "every pair adjacent
//! in its assigned component" counts. Those factor over coordinates, so we
//! classify per-coordinate s-tuples by signature and combine signature counts.

use std::collections::BTreeMap;
use std::sync::Arc;

use fg_core::{BaseGraph, CKind, CNode, ComponentTree, FactoredGraph, Label, Op};
use rustc_hash::FxHashMap;

use crate::AlgoError;

pub const DEFAULT_MAX_DECOMPOSITIONS: usize = 4096;
const MAX_S: usize = 11;

/// How the inclusion-exclusion weight of a row is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IeStrategy {
    /// Collections for tiny decomposition spaces, per-pair otherwise.
    Auto,
    /// Literal sum over every nonempty collection of decompositions.
    Collections,
    /// Per-pair expansion: product over pairs of sums over nonempty component subsets.
    PerPair,
}

#[derive(Clone, Copy, Debug)]
pub struct CliqueOptions {
    /// Guard on M^C(s,2) per dimension class.
    pub max_decompositions: usize,
    pub strategy: IeStrategy,
}

impl Default for CliqueOptions {
    fn default() -> Self {
        CliqueOptions {
            max_decompositions: DEFAULT_MAX_DECOMPOSITIONS,
            strategy: IeStrategy::Auto,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueCount {
    pub s: usize,
    /// Unordered clique counts keyed by vertex dimension.
    pub per_dimension: BTreeMap<usize, u128>,
    pub total: u128,
}

impl CliqueCount {
    /// Number of ordered tuples of distinct vertices forming a clique.
    pub fn ordered(&self) -> u128 {
        self.total * factorial(self.s)
    }
}

/// Assignment of every vertex pair, in [`pairs`] order, to a component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub assignment: Vec<usize>,
}

impl Decomposition {
    /// All `m^pairs` decompositions, in lexicographic order.
    pub fn all(m: usize, pairs: usize) -> Vec<Decomposition> {
        let total = m.pow(pairs as u32);
        (0..total)
            .map(|mut code| {
                let mut assignment = vec![0; pairs];
                for slot in assignment.iter_mut().rev() {
                    *slot = code % m;
                    code /= m;
                }
                Decomposition { assignment }
            })
            .collect()
    }
}

/// Vertex pairs (i, j), i < j, in lexicographic order.
pub fn pairs(s: usize) -> Vec<(usize, usize)> {
    (0..s)
        .flat_map(|i| (i + 1..s).map(move |j| (i, j)))
        .collect()
}

fn factorial(s: usize) -> u128 {
    (1..=s as u128).product()
}

fn check_input(fg: &FactoredGraph, s: usize) -> Result<(), AlgoError> {
    if s == 0 || s > MAX_S {
        return Err(AlgoError::CliqueSize(s));
    }
    if let Some(g) = fg.graphs().iter().find(|g| !g.is_symmetric()) {
        return Err(AlgoError::NotSymmetric(g.name().to_string()));
    }
    Ok(())
}

/// Materializes `fg` and counts s-cliques by backtracking.
pub fn count_cliques_naive(
    fg: &FactoredGraph,
    s: usize,
    max_vertices: usize,
) -> Result<CliqueCount, AlgoError> {
    check_input(fg, s)?;
    let g = fg.materialize(max_vertices)?;
    let later: Vec<Vec<u32>> = (0..g.len())
        .map(|i| {
            g.out(i)
                .iter()
                .copied()
                .filter(|&j| j as usize > i)
                .collect()
        })
        .collect();
    let mut per_dimension = BTreeMap::new();
    for i in 0..g.len() {
        let mut n = 0u128;
        extend(&g, &later, &mut vec![i as u32], s, &mut n);
        if n > 0 {
            *per_dimension.entry(g.vertex(i).dim()).or_insert(0) += n;
        }
    }
    let total = per_dimension.values().sum();
    Ok(CliqueCount {
        s,
        per_dimension,
        total,
    })
}

fn extend(
    g: &fg_core::ExplicitGraph,
    later: &[Vec<u32>],
    clique: &mut Vec<u32>,
    s: usize,
    n: &mut u128,
) {
    if clique.len() == s {
        *n += 1;
        return;
    }
    let last = *clique.last().unwrap() as usize;
    for &c in &later[last] {
        if clique.iter().all(|&m| g.has_edge(m as usize, c as usize)) {
            clique.push(c);
            extend(g, later, clique, s, n);
            clique.pop();
        }
    }
}

/// FPT clique counter.
pub fn count_cliques_fpt(
    fg: &FactoredGraph,
    s: usize,
    opts: &CliqueOptions,
) -> Result<CliqueCount, AlgoError> {
    check_input(fg, s)?;
    if let Some(g) = fg.graphs().iter().find(|g| g.arity() != 1) {
        return Err(AlgoError::WideLeaf(g.name().to_string()));
    }
    let ps = pairs(s);
    let mut per_dimension = BTreeMap::new();
    for d in fg.dims() {
        let comps: Vec<&ComponentTree> = fg.components_of_dim(d).collect();
        let count = (comps.len() as u128).saturating_pow(ps.len() as u32);
        if count > opts.max_decompositions as u128 {
            return Err(AlgoError::DecompositionCap {
                count,
                cap: opts.max_decompositions,
            });
        }
        let class = Class::new(comps, d, s, &ps, opts.strategy);
        let ordered = class.count();
        debug_assert_eq!(ordered % factorial(s), 0);
        let n = ordered / factorial(s);
        if n > 0 {
            per_dimension.insert(d, n);
        }
    }
    let total = per_dimension.values().sum();
    Ok(CliqueCount {
        s,
        per_dimension,
        total,
    })
}

/// Per-coordinate signature of an s-tuple of labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Sig {
    /// Bit p: the two labels of pair p are equal.
    eq: u64,
    /// Per distinct graph at this coordinate, bit p: pair p is an edge.
    edge: Vec<u64>,
    /// Per distinct graph, bit i: label i is a vertex.
    mem: Vec<u64>,
}

struct Class<'a> {
    comps: Vec<&'a ComponentTree>,
    s: usize,
    pairs: &'a [(usize, usize)],
    /// `gmap[f][l]`: index of component f's leaf graph among the distinct graphs at coordinate l.
    gmap: Vec<Vec<usize>>,
    /// Realized signatures and their tuple counts, per coordinate.
    sigs: Vec<Vec<(Sig, u128)>>,
    collections: bool,
}

impl<'a> Class<'a> {
    fn new(
        comps: Vec<&'a ComponentTree>,
        d: usize,
        s: usize,
        pairs: &'a [(usize, usize)],
        strategy: IeStrategy,
    ) -> Self {
        let mut gmap = vec![vec![0; d]; comps.len()];
        let mut sigs = Vec::with_capacity(d);
        for l in 0..d {
            let mut distinct: Vec<(usize, Arc<BaseGraph>)> = Vec::new();
            for (f, c) in comps.iter().enumerate() {
                let id = c.leaf_ids()[l];
                let at = match distinct.iter().position(|(g, _)| *g == id) {
                    Some(p) => p,
                    None => {
                        distinct.push((id, c.leaves()[l].clone()));
                        distinct.len() - 1
                    }
                };
                gmap[f][l] = at;
            }
            let graphs: Vec<Arc<BaseGraph>> = distinct.into_iter().map(|(_, g)| g).collect();
            sigs.push(coordinate_signatures(&graphs, s, pairs));
        }
        let m = comps.len();
        let collections = match strategy {
            IeStrategy::Collections => true,
            IeStrategy::PerPair => false,
            IeStrategy::Auto => (m as u128).pow(pairs.len() as u32) <= 12,
        };
        Class {
            comps,
            s,
            pairs,
            gmap,
            sigs,
            collections,
        }
    }

    /// Ordered count of distinct-vertex cliques in this class.
    fn count(&self) -> u128 {
        let full = (1u64 << self.s) - 1;
        let mut chosen = Vec::with_capacity(self.sigs.len());
        let mut cache = FxHashMap::default();
        let mut total: i128 = 0;
        let mem = vec![full; self.comps.len()];
        self.walk(0, &mut chosen, &mem, u64::MAX, 1, &mut cache, &mut total);
        assert!(total >= 0, "inclusion-exclusion produced a negative count");
        total as u128
    }

    #[allow(clippy::too_many_arguments)]
    fn walk(
        &self,
        l: usize,
        chosen: &mut Vec<usize>,
        mem: &[u64],
        eq: u64,
        mult: u128,
        cache: &mut FxHashMap<Vec<u64>, i128>,
        total: &mut i128,
    ) {
        let full = (1u64 << self.s) - 1;
        if l == self.sigs.len() {
            let pair_mask = if self.pairs.is_empty() {
                0
            } else {
                (1u64 << self.pairs.len()) - 1
            };
            if eq & pair_mask != 0 {
                return;
            }
            let adj = self.adjacency(chosen, mem);
            let w = match cache.get(&adj) {
                Some(&w) => w,
                None => {
                    let w = if self.collections {
                        self.weight_collections(&adj)
                    } else {
                        weight_per_pair(&adj)
                    };
                    cache.insert(adj, w);
                    w
                }
            };
            *total += w * mult as i128;
            return;
        }
        for (i, (sig, n)) in self.sigs[l].iter().enumerate() {
            let next: Vec<u64> = mem
                .iter()
                .enumerate()
                .map(|(f, &m)| m & sig.mem[self.gmap[f][l]])
                .collect();
            if next.iter().fold(0, |a, &m| a | m) != full {
                continue;
            }
            chosen.push(i);
            self.walk(l + 1, chosen, &next, eq & sig.eq, mult * n, cache, total);
            chosen.pop();
        }
    }

    /// For each pair, the set of components (bitmask) in which it is an edge.
    fn adjacency(&self, chosen: &[usize], mem: &[u64]) -> Vec<u64> {
        self.pairs
            .iter()
            .enumerate()
            .map(|(p, &(i, j))| {
                let mut a = 0u64;
                for (f, c) in self.comps.iter().enumerate() {
                    let both = (1u64 << i) | (1u64 << j);
                    if mem[f] & both == both && self.tree_edge(f, c.root(), p, chosen) {
                        a |= 1 << f;
                    }
                }
                a
            })
            .collect()
    }

    fn sig(&self, l: usize, chosen: &[usize]) -> &Sig {
        &self.sigs[l][chosen[l]].0
    }

    fn tree_edge(&self, f: usize, node: &CNode, p: usize, chosen: &[usize]) -> bool {
        match &node.kind {
            CKind::Leaf(l) => self.sig(*l, chosen).edge[self.gmap[f][*l]] >> p & 1 == 1,
            CKind::Op(Op::Cart, cs) => cs.iter().enumerate().any(|(k, c)| {
                self.tree_edge(f, c, p, chosen)
                    && cs.iter().enumerate().all(|(k2, c2)| {
                        k2 == k || (c2.lo..c2.hi).all(|l| self.sig(l, chosen).eq >> p & 1 == 1)
                    })
            }),
            CKind::Op(_, cs) => cs.iter().all(|c| self.tree_edge(f, c, p, chosen)),
        }
    }

    /// Sum over nonempty collections C of decompositions of
    /// (-1)^(|C|+1) [every decomposition in C is satisfied].
    fn weight_collections(&self, adj: &[u64]) -> i128 {
        let m = self.comps.len();
        let sat: Vec<bool> = Decomposition::all(m, self.pairs.len())
            .iter()
            .map(|d| d.assignment.iter().zip(adj).all(|(&f, &a)| a >> f & 1 == 1))
            .collect();
        let mut w = 0i128;
        for c in 1u64..(1u64 << sat.len()) {
            if (0..sat.len()).all(|i| c >> i & 1 == 0 || sat[i]) {
                w += if c.count_ones() % 2 == 1 { 1 } else { -1 };
            }
        }
        w
    }
}

/// Product over pairs of the sum over nonempty U ⊆ A_p of (-1)^(|U|+1).
fn weight_per_pair(adj: &[u64]) -> i128 {
    adj.iter()
        .map(|&a| {
            let mut sum = 0i128;
            let mut u = a;
            while u != 0 {
                sum += if u.count_ones() % 2 == 1 { 1 } else { -1 };
                u = (u - 1) & a;
            }
            sum
        })
        .product()
}

/// Counts s-tuples over the union of the coordinate's vertex sets, grouped by signature.
fn coordinate_signatures(
    graphs: &[Arc<BaseGraph>],
    s: usize,
    pairs: &[(usize, usize)],
) -> Vec<(Sig, u128)> {
    let mut universe: Vec<Label> = graphs
        .iter()
        .flat_map(|g| g.vertices().map(|v| v[0]))
        .collect();
    universe.sort_unstable();
    universe.dedup();
    let mut counts: FxHashMap<Sig, u128> = FxHashMap::default();
    let mut idx = vec![0usize; s];
    loop {
        let tuple: Vec<Label> = idx.iter().map(|&i| universe[i]).collect();
        let mut eq = 0u64;
        for (p, &(i, j)) in pairs.iter().enumerate() {
            if tuple[i] == tuple[j] {
                eq |= 1 << p;
            }
        }
        let mut edge = Vec::with_capacity(graphs.len());
        let mut mem = Vec::with_capacity(graphs.len());
        for g in graphs {
            let pos: Vec<Option<usize>> = tuple.iter().map(|&t| g.index_of(&[t])).collect();
            mem.push(
                pos.iter()
                    .enumerate()
                    .fold(0u64, |m, (i, p)| if p.is_some() { m | 1 << i } else { m }),
            );
            let mut e = 0u64;
            for (p, &(i, j)) in pairs.iter().enumerate() {
                if let (Some(a), Some(b)) = (pos[i], pos[j]) {
                    if g.has_edge_idx(a, b) {
                        e |= 1 << p;
                    }
                }
            }
            edge.push(e);
        }
        *counts.entry(Sig { eq, edge, mem }).or_insert(0) += 1;

        let mut k = s;
        loop {
            if k == 0 {
                let mut out: Vec<(Sig, u128)> = counts.into_iter().collect();
                out.sort_by(|a, b| {
                    (a.0.eq, &a.0.edge, &a.0.mem).cmp(&(b.0.eq, &b.0.edge, &b.0.mem))
                });
                return out;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < universe.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}
