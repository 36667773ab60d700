//! Reachability: implicit BFS, explicit search and single-operation fast paths.

use std::collections::VecDeque;
use std::hash::Hash;

use fg_core::{BaseGraph, ExplicitGraph, FactoredGraph, Label, Op, Vertex};
use rustc_hash::FxHashSet;

use crate::AlgoError;

pub const DEFAULT_MAX_STATES: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReachMethod {
    Implicit,
    Explicit,
    Auto,
}

#[derive(Clone, Copy, Debug)]
pub struct ReachOptions {
    /// Visited-state cap for the implicit search.
    pub max_states: usize,
    /// Vertex cap for materialization.
    pub max_vertices: usize,
}

impl Default for ReachOptions {
    fn default() -> Self {
        ReachOptions {
            max_states: DEFAULT_MAX_STATES,
            max_vertices: fg_core::DEFAULT_MAX_VERTICES,
        }
    }
}

/// How a query was answered.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Trivial,
    Implicit,
    Explicit,
    CartesianFastPath,
    UnionFastPath,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReachOutcome {
    pub reachable: bool,
    pub strategy: Strategy,
    /// Distinct states discovered by the search that ran.
    pub states: usize,
}

/// Is there a directed path from `src` to `dst`?
pub fn reach(
    fg: &FactoredGraph,
    src: &[Label],
    dst: &[Label],
    method: ReachMethod,
    opts: &ReachOptions,
) -> Result<bool, AlgoError> {
    reach_detailed(fg, src, dst, method, opts).map(|o| o.reachable)
}

pub fn reach_detailed(
    fg: &FactoredGraph,
    src: &[Label],
    dst: &[Label],
    method: ReachMethod,
    opts: &ReachOptions,
) -> Result<ReachOutcome, AlgoError> {
    for v in [src, dst] {
        if !fg.contains(v) {
            return Err(AlgoError::NotAVertex(Vertex::from(v)));
        }
    }
    let done = |reachable, strategy, states| {
        Ok(ReachOutcome {
            reachable,
            strategy,
            states,
        })
    };
    if src.len() != dst.len() {
        return done(false, Strategy::Trivial, 0);
    }
    if src == dst {
        return done(true, Strategy::Trivial, 1);
    }
    match method {
        ReachMethod::Implicit => implicit(fg, src, dst, opts.max_states),
        ReachMethod::Explicit => {
            let g = fg.materialize(opts.max_vertices)?;
            let (r, n) = explicit(&g, src, dst);
            done(r, Strategy::Explicit, n)
        }
        ReachMethod::Auto => match fg.flat_root() {
            Some((Op::Cart, gs)) => {
                let mut at = 0;
                let mut states = 0;
                let mut all = true;
                for g in gs {
                    let base = &fg.graphs()[g];
                    let w = base.arity();
                    let (r, n) = base_reach(base, &src[at..at + w], &dst[at..at + w]);
                    states += n;
                    at += w;
                    if !r {
                        all = false;
                        break;
                    }
                }
                done(all, Strategy::CartesianFastPath, states)
            }
            Some((Op::Union, _)) => {
                let g = fg.materialize(opts.max_vertices)?;
                let (r, n) = explicit(&g, src, dst);
                done(r, Strategy::UnionFastPath, n)
            }
            _ => implicit(fg, src, dst, opts.max_states),
        },
    }
}

fn base_reach(g: &BaseGraph, src: &[Label], dst: &[Label]) -> (bool, usize) {
    index_bfs(
        g.len(),
        g.index_of(src).unwrap(),
        g.index_of(dst).unwrap(),
        |u| g.out(u),
    )
}

fn explicit(g: &ExplicitGraph, src: &[Label], dst: &[Label]) -> (bool, usize) {
    index_bfs(
        g.len(),
        g.index_of(src).unwrap(),
        g.index_of(dst).unwrap(),
        |u| g.out(u),
    )
}

fn index_bfs<'a>(n: usize, s: usize, t: usize, out: impl Fn(usize) -> &'a [u32]) -> (bool, usize) {
    let mut seen = vec![false; n];
    seen[s] = true;
    let mut queue = VecDeque::from([s]);
    let mut count = 1;
    while let Some(u) = queue.pop_front() {
        if u == t {
            return (true, count);
        }
        for &w in out(u) {
            if !std::mem::replace(&mut seen[w as usize], true) {
                count += 1;
                queue.push_back(w as usize);
            }
        }
    }
    (false, count)
}

fn implicit(
    fg: &FactoredGraph,
    src: &[Label],
    dst: &[Label],
    cap: usize,
) -> Result<ReachOutcome, AlgoError> {
    let max = fg.graphs().iter().map(|g| g.max_label()).max().unwrap_or(0);
    let bits = (32 - max.leading_zeros()).max(1) as usize;
    let dim = src.len();
    let (reachable, states) = if bits * dim <= 128 {
        let pack = |v: &[Label]| v.iter().fold(0u128, |acc, &l| (acc << bits) | l as u128);
        let mask = (1u128 << bits) - 1;
        let unpack = |k: &u128, out: &mut Vec<Label>| {
            out.clear();
            out.extend((0..dim).rev().map(|i| ((k >> (i * bits)) & mask) as Label));
        };
        bfs(fg, src, dst, cap, pack, unpack)?
    } else {
        let pack = |v: &[Label]| -> Box<[Label]> { v.into() };
        #[allow(clippy::borrowed_box)]
        let unpack = |k: &Box<[Label]>, out: &mut Vec<Label>| {
            out.clear();
            out.extend_from_slice(k);
        };
        bfs(fg, src, dst, cap, pack, unpack)?
    };
    Ok(ReachOutcome {
        reachable,
        strategy: Strategy::Implicit,
        states,
    })
}

fn bfs<K: Hash + Eq + Clone>(
    fg: &FactoredGraph,
    src: &[Label],
    dst: &[Label],
    cap: usize,
    pack: impl Fn(&[Label]) -> K,
    unpack: impl Fn(&K, &mut Vec<Label>),
) -> Result<(bool, usize), AlgoError> {
    let target = pack(dst);
    let start = pack(src);
    let mut seen: FxHashSet<K> = FxHashSet::default();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start]);
    let mut cur = Vec::with_capacity(src.len());
    let mut buf = Vec::new();
    while let Some(k) = queue.pop_front() {
        unpack(&k, &mut cur);
        buf.clear();
        fg.out_neighbors_raw(&cur, &mut buf);
        for w in buf.chunks_exact(cur.len()) {
            let key = pack(w);
            if key == target {
                return Ok((true, seen.len() + 1));
            }
            if seen.insert(key.clone()) {
                if seen.len() > cap {
                    return Err(AlgoError::StateCap { cap });
                }
                queue.push_back(key);
            }
        }
    }
    Ok((false, seen.len()))
}
