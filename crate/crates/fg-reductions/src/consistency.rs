//! Tile alphabet and the four consistency relations between neighbouring tiles.

use std::fmt;

use crate::tm::{Move, TmSpec};

/// State part of a tile. The derived order is the priority order used by the
/// compiler: the marked start state, then the head-absent marker, then states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TileState {
    Start,
    Star,
    State(usize),
}

/// Symbol part of a tile: a marked input position (1-based) or a tape symbol.
/// Input markers sort first, then the blank (tape index 0), then the rest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TileSymbol {
    Input(usize),
    Sym(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tile {
    pub state: TileState,
    pub symbol: TileSymbol,
}

impl Tile {
    pub fn new(state: TileState, symbol: TileSymbol) -> Self {
        Tile { state, symbol }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    V,
    H,
    R,
    L,
}

impl Direction {
    pub const ALL: [Direction; 4] = [Direction::V, Direction::H, Direction::R, Direction::L];

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Every tile over `tm` and an input of length `n`, in priority order.
pub fn tiles(tm: &TmSpec, n: usize) -> Vec<Tile> {
    let states = std::iter::once(TileState::Start)
        .chain(std::iter::once(TileState::Star))
        .chain((0..tm.states().len()).map(TileState::State));
    let symbols: Vec<TileSymbol> = (1..=n)
        .map(TileSymbol::Input)
        .chain((0..tm.tape().len()).map(TileSymbol::Sym))
        .collect();
    states
        .flat_map(|q| symbols.iter().map(move |&a| Tile::new(q, a)))
        .collect()
}

pub fn tile_name(tm: &TmSpec, t: Tile) -> String {
    let q = match t.state {
        TileState::Start => format!("{}^", tm.states()[tm.start()]),
        TileState::Star => "*".to_string(),
        TileState::State(q) => tm.states()[q].clone(),
    };
    let a = match t.symbol {
        TileSymbol::Input(i) => format!("x{i}^"),
        TileSymbol::Sym(a) => tm.tape()[a].clone(),
    };
    format!("({q}, {a})")
}

/// Allowed-successor relation per direction over the full tile alphabet.
#[derive(Debug, Clone)]
pub struct ConsistencyTable {
    tiles: Vec<Tile>,
    allowed: [Vec<bool>; 4],
}

impl ConsistencyTable {
    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn index_of(&self, t: Tile) -> Option<usize> {
        self.tiles.binary_search(&t).ok()
    }

    /// Whether `to` may sit next to `from` in direction `d`.
    pub fn allows(&self, d: Direction, from: usize, to: usize) -> bool {
        self.allowed[d.index()][from * self.tiles.len() + to]
    }

    pub fn allowed_set(&self, d: Direction, from: Tile) -> Vec<Tile> {
        let i = self.index_of(from).expect("tile of this table");
        (0..self.tiles.len())
            .filter(|&j| self.allows(d, i, j))
            .map(|j| self.tiles[j])
            .collect()
    }
}

/// Builds the table for `tm` on inputs of length `n`.
pub fn consistency(tm: &TmSpec, x: &[usize]) -> ConsistencyTable {
    let tiles = tiles(tm, x.len());
    let m = tiles.len();
    let mut allowed = [
        vec![false; m * m],
        vec![false; m * m],
        vec![false; m * m],
        vec![false; m * m],
    ];
    for (i, &u) in tiles.iter().enumerate() {
        for (j, &v) in tiles.iter().enumerate() {
            for d in Direction::ALL {
                allowed[d.index()][i * m + j] = allows(tm, x, d, u, v);
            }
        }
    }
    ConsistencyTable { tiles, allowed }
}

fn normal_state(tm: &TmSpec, q: TileState) -> TileState {
    match q {
        TileState::Start => TileState::State(tm.start()),
        other => other,
    }
}

fn normal_symbol(x: &[usize], a: TileSymbol) -> usize {
    match a {
        TileSymbol::Input(i) => x[i - 1],
        TileSymbol::Sym(a) => a,
    }
}

fn allows(tm: &TmSpec, x: &[usize], d: Direction, u: Tile, v: Tile) -> bool {
    // Every output set is drawn from the unmarked states and symbols, except
    // for the next input marker in the horizontal direction.
    let star_state = !matches!(v.state, TileState::Start);
    if d == Direction::H {
        return star_state
            && match v.symbol {
                TileSymbol::Sym(_) => true,
                TileSymbol::Input(j) => {
                    matches!(u.symbol, TileSymbol::Input(i) if j == i + 1 && i < x.len())
                }
            };
    }
    let TileSymbol::Sym(va) = v.symbol else {
        return false;
    };
    if !star_state {
        return false;
    }
    let q = normal_state(tm, u.state);
    let a = normal_symbol(x, u.symbol);
    match q {
        TileState::Star => d != Direction::V || va == a,
        TileState::State(q) if tm.is_halting(q) => {
            d != Direction::V || (v.state == TileState::State(q) && va == a)
        }
        TileState::State(q) => {
            let t = tm.delta(q, a).expect("delta is total");
            match d {
                Direction::V => v.state == TileState::Star && va == t.write,
                Direction::R | Direction::L => {
                    let toward = (d == Direction::R) == (t.dir == Move::R);
                    if toward {
                        v.state == TileState::State(t.next)
                    } else {
                        v.state == TileState::Star
                    }
                }
                Direction::H => unreachable!(),
            }
        }
        TileState::Start => unreachable!(),
    }
}
