//! Compiles a machine run into an LFMIS query on a factored graph.
//!
//! Vertices are `(row digits, column digits, tile)`. Each grid position holds
//! a clique over all tiles; edges between neighbouring positions forbid
//! inconsistent tile pairs. The greedy independent set then picks, row by row,
//! the tiles of the run.

use std::collections::BTreeMap;

use fg_core::{BaseGraph, Expr, FormulaDoc, Label, Vertex};

use crate::consistency::{
    consistency, tile_name, ConsistencyTable, Direction, Tile, TileState, TileSymbol,
};
use crate::path::{digits_of, Digits};
use crate::tm::{simulate_tm, TmSpec, DEFAULT_MAX_STEPS};
use crate::{CompiledInstance, Query, ReductionError};

pub const FORMULA: &str = "G";

#[derive(Debug, Clone, Copy)]
pub struct TmCompileOptions {
    pub max_steps: usize,
    /// Largest grid side accepted.
    pub max_side: u64,
}

impl Default for TmCompileOptions {
    fn default() -> Self {
        TmCompileOptions {
            max_steps: DEFAULT_MAX_STEPS,
            max_side: 1 << 20,
        }
    }
}

/// Grid geometry: side `T = n^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridShape {
    pub base: usize,
    pub k: usize,
    pub side: u64,
}

impl GridShape {
    /// Smallest power of `base` (exponent at least 1) that is at least `rows`.
    pub fn covering(base: usize, rows: u64) -> GridShape {
        let (mut k, mut side) = (1, base as u64);
        while side < rows {
            k += 1;
            side *= base as u64;
        }
        GridShape { base, k, side }
    }
}

/// Label layout of a compiled instance.
#[derive(Debug, Clone)]
pub struct TileLabels {
    pub shape: GridShape,
    pub table: ConsistencyTable,
}

impl TileLabels {
    pub fn label(&self, t: Tile) -> Label {
        (self.shape.base + self.table.index_of(t).expect("known tile")) as Label
    }

    pub fn tile(&self, l: Label) -> Option<Tile> {
        (l as usize)
            .checked_sub(self.shape.base)
            .and_then(|i| self.table.tiles().get(i).copied())
    }

    /// Vertex for grid position `(row, col)` (0-based) holding `t`.
    pub fn vertex(&self, row: u64, col: u64, t: Tile) -> Vertex {
        let mut v = digits_of(row, self.shape.base, self.shape.k);
        v.extend(digits_of(col, self.shape.base, self.shape.k));
        v.push(self.label(t));
        Vertex::new(v)
    }

    /// Inverse of [`TileLabels::vertex`].
    pub fn decode(&self, v: &[Label]) -> Option<(u64, u64, Tile)> {
        let k = self.shape.k;
        if v.len() != 2 * k + 1 {
            return None;
        }
        let num = |ds: &[Label]| {
            ds.iter()
                .fold(0u64, |acc, &d| acc * self.shape.base as u64 + d as u64)
        };
        Some((num(&v[..k]), num(&v[k..2 * k]), self.tile(v[2 * k])?))
    }
}

/// Compiles `tm` on `x`. The target vertex is in the LFMIS iff the machine accepts.
pub fn compile_tm_lfmis(tm: &TmSpec, x: &[usize]) -> Result<CompiledInstance, ReductionError> {
    compile_tm_lfmis_with(tm, x, &TmCompileOptions::default()).map(|(c, _)| c)
}

pub fn compile_tm_lfmis_with(
    tm: &TmSpec,
    x: &[usize],
    opts: &TmCompileOptions,
) -> Result<(CompiledInstance, TileLabels), ReductionError> {
    if x.len() < 2 {
        return Err(ReductionError::BadInput(
            "input must have at least 2 symbols".into(),
        ));
    }
    let trace = simulate_tm(tm, x, opts.max_steps)?;
    let shape = GridShape::covering(x.len(), trace.rows.len() as u64);
    if shape.side > opts.max_side {
        return Err(ReductionError::SideCap {
            side: shape.side,
            cap: opts.max_side,
        });
    }
    let table = consistency(tm, x);
    let labels = TileLabels { shape, table };
    let n = x.len();

    let mut doc = FormulaDoc::new();
    let mut digits = Digits::new(&mut doc, n, shape.k);
    let tile_ids: Vec<Label> = (0..labels.table.tiles().len())
        .map(|i| (n + i) as Label)
        .collect();

    let clique: Vec<(Label, Label)> = tile_ids
        .iter()
        .flat_map(|&u| {
            tile_ids
                .iter()
                .filter(move |&&v| v != u)
                .map(move |&v| (u, v))
        })
        .collect();
    let k_id = doc.add_graph(BaseGraph::simple("K", tile_ids.iter().copied(), clique)?)?;
    let mut terms = vec![Expr::cart(vec![
        digits.empty(),
        digits.empty(),
        Expr::leaf(k_id),
    ])];
    for d in Direction::ALL {
        let m = tile_ids.len();
        let forbidden = (0..m)
            .flat_map(|i| (0..m).map(move |j| (i, j)))
            .filter(|&(i, j)| !labels.table.allows(d, i, j))
            .map(|(i, j)| (tile_ids[i], tile_ids[j]));
        let r = doc.add_graph(BaseGraph::simple(
            format!("R{d}"),
            tile_ids.iter().copied(),
            forbidden.collect::<Vec<_>>(),
        )?)?;
        let grid = digits.grid(&mut doc, d);
        terms.push(Expr::tensor(vec![grid, Expr::leaf(r)]));
    }
    doc.add_formula(FORMULA, Expr::union(terms))?;

    let mut legend = BTreeMap::new();
    for dgt in 0..n {
        legend.insert(dgt as Label, format!("digit {dgt}"));
    }
    for &t in labels.table.tiles() {
        legend.insert(labels.label(t), tile_name(tm, t));
    }
    let accept = Tile::new(TileState::State(tm.accept()), TileSymbol::Sym(0));
    let target = labels.vertex(shape.side - 1, 0, accept);
    let inst = CompiledInstance {
        doc,
        formula: FORMULA.into(),
        query: Query::Lfmis { target },
        legend,
    };
    Ok((inst, labels))
}
