mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::{binary_strings, tm};
use fg_algorithms::{lfmis_greedy, lfmis_member, Engine};
use fg_core::DEFAULT_MAX_VERTICES;
use fg_reductions::{
    compile_tm_lfmis, compile_tm_lfmis_with, simulate_tm, Direction, Query, ReductionError, Tile,
    TileState, TileSymbol, TmCompileOptions, TmSpec,
};

fn target(q: &Query) -> &fg_core::Vertex {
    match q {
        Query::Lfmis { target } => target,
        _ => panic!("not an LFMIS query"),
    }
}

/// Expected tile at every grid position: the marked first row, then the run.
fn expected(m: &TmSpec, x: &[usize], side: u64) -> BTreeMap<(u64, u64), Tile> {
    let trace = simulate_tm(m, x, 10_000).unwrap();
    let mut out = BTreeMap::new();
    for r in 0..side {
        for c in 0..side {
            let cell = trace.cell(r as usize, c as usize);
            let mut state = cell.state.map_or(TileState::Star, TileState::State);
            let mut symbol = TileSymbol::Sym(cell.symbol);
            if r == 0 {
                if c == 0 {
                    state = TileState::Start;
                }
                if (c as usize) < x.len() {
                    symbol = TileSymbol::Input(c as usize + 1);
                }
            }
            out.insert((r, c), Tile::new(state, symbol));
        }
    }
    out
}

fn check_run(m: &TmSpec, input: &str) {
    let x = m.parse_input(input).unwrap();
    let (inst, labels) = compile_tm_lfmis_with(m, &x, &TmCompileOptions::default()).unwrap();
    let fg = inst.doc.factored(&inst.formula).unwrap();
    let g = fg.materialize(DEFAULT_MAX_VERTICES).unwrap();
    let members = lfmis_greedy(&g).unwrap().members;

    let mut chosen = BTreeMap::new();
    for v in &members {
        let (r, c, t) = labels.decode(v).unwrap();
        assert!(chosen.insert((r, c), t).is_none(), "two tiles at ({r},{c})");
    }
    let side = labels.shape.side;
    assert_eq!(chosen.len() as u64, side * side);
    assert_eq!(chosen, expected(m, &x, side), "{input}");

    let accepted = simulate_tm(m, &x, 10_000).unwrap().accepted;
    let t = target(&inst.query);
    assert_eq!(members.contains(t), accepted);
    assert_eq!(
        lfmis_member(&fg, t, Engine::Implicit, DEFAULT_MAX_VERTICES).unwrap(),
        accepted,
        "{input}"
    );
}

#[test]
fn lfmis_reproduces_runs() {
    let ends = tm("ends_in_1.tm");
    for x in ["01", "10", "11", "00", "011", "110"] {
        check_run(&ends, x);
    }
    let first = tm("first_is_1.tm");
    for x in ["10", "01", "100", "011"] {
        check_run(&first, x);
    }
    let two = tm("first_two_equal.tm");
    for x in ["00", "01", "110", "101"] {
        check_run(&two, x);
    }
}

#[test]
fn membership_tracks_acceptance_on_all_short_inputs() {
    let m = tm("first_two_equal.tm");
    for len in 2..=3 {
        for x in binary_strings(len) {
            let inst = compile_tm_lfmis(&m, &m.parse_input(&x).unwrap()).unwrap();
            let fg = inst.doc.factored(&inst.formula).unwrap();
            let got = lfmis_member(
                &fg,
                target(&inst.query),
                Engine::Implicit,
                DEFAULT_MAX_VERTICES,
            )
            .unwrap();
            assert_eq!(got, x.as_bytes()[0] == x.as_bytes()[1], "{x}");
        }
    }
}

#[test]
fn edges_are_cliques_plus_forbidden_parent_pairs() {
    let m = tm("first_is_1.tm");
    let x = m.parse_input("10").unwrap();
    let (inst, labels) = compile_tm_lfmis_with(&m, &x, &TmCompileOptions::default()).unwrap();
    assert_eq!(labels.shape.side, 4);
    let g = inst
        .doc
        .factored(&inst.formula)
        .unwrap()
        .materialize(DEFAULT_MAX_VERTICES)
        .unwrap();
    let tiles = labels.table.tiles();
    let side = labels.shape.side as i64;

    let mut want = BTreeSet::new();
    for r in 0..side {
        for c in 0..side {
            for (i, &t) in tiles.iter().enumerate() {
                let u = labels.vertex(r as u64, c as u64, t);
                for (j, &t2) in tiles.iter().enumerate() {
                    if i != j {
                        want.insert((u.clone(), labels.vertex(r as u64, c as u64, t2)));
                    }
                    for (d, dr, dc) in [
                        (Direction::V, 1, 0),
                        (Direction::H, 0, 1),
                        (Direction::R, 1, 1),
                        (Direction::L, 1, -1),
                    ] {
                        let (r2, c2) = (r + dr, c + dc);
                        if (0..side).contains(&r2)
                            && (0..side).contains(&c2)
                            && !labels.table.allows(d, i, j)
                        {
                            want.insert((u.clone(), labels.vertex(r2 as u64, c2 as u64, t2)));
                        }
                    }
                }
            }
        }
    }
    let got: BTreeSet<_> = g
        .edges()
        .map(|(u, v)| (g.vertex(u).clone(), g.vertex(v).clone()))
        .collect();
    assert_eq!(g.len() as i64, side * side * tiles.len() as i64);
    assert_eq!(got.len(), want.len());
    assert!(got == want);
    assert!(!g.has_self_loop());
}

#[test]
fn complexity_and_legend() {
    let m = tm("ends_in_1.tm");
    for (x, k) in [("01", 3usize), ("011", 2)] {
        let input = m.parse_input(x).unwrap();
        let (inst, labels) =
            compile_tm_lfmis_with(&m, &input, &TmCompileOptions::default()).unwrap();
        assert_eq!(labels.shape.k, k);
        let c = inst.doc.factored(&inst.formula).unwrap().complexity();
        // the largest base graph is the tile alphabet, linear in the input length
        assert_eq!(c.n, (m.states().len() + 2) * (input.len() + m.tape().len()));
        assert!(c.k <= 12 * k * k, "{c}");
        assert!(inst.unnamed_labels().is_empty());
        let reparsed = fg_core::FormulaDoc::parse(&inst.doc.to_string()).unwrap();
        assert_eq!(
            reparsed.formula(&inst.formula),
            inst.doc.formula(&inst.formula)
        );
    }
}

#[test]
fn compile_errors() {
    let m = tm("ends_in_1.tm");
    let e = compile_tm_lfmis(&m, &m.parse_input("1").unwrap()).unwrap_err();
    assert!(matches!(e, ReductionError::BadInput(_)));
    let mid = tm("halts_mid_tape.tm");
    let e = compile_tm_lfmis(&mid, &mid.parse_input("01").unwrap()).unwrap_err();
    assert!(matches!(e, ReductionError::Convention(_)));
    let opts = TmCompileOptions {
        max_side: 4,
        ..Default::default()
    };
    let e = compile_tm_lfmis_with(&m, &m.parse_input("0101").unwrap(), &opts).unwrap_err();
    assert_eq!(e, ReductionError::SideCap { side: 16, cap: 4 });
}
