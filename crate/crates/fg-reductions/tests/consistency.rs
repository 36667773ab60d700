mod common;

use common::tm;
use fg_reductions::{consistency, Direction, Tile, TileState, TileSymbol, TmSpec};

fn plain(tm: &TmSpec) -> Vec<Tile> {
    let states =
        std::iter::once(TileState::Star).chain((0..tm.states().len()).map(TileState::State));
    states
        .flat_map(|q| (0..tm.tape().len()).map(move |a| Tile::new(q, TileSymbol::Sym(a))))
        .collect()
}

#[test]
fn vertical_outputs_are_plain_and_horizontal_outputs_cover_plain() {
    for name in ["ends_in_1.tm", "first_is_1.tm", "first_two_equal.tm"] {
        let m = tm(name);
        let x = m.parse_input("0110").unwrap();
        let table = consistency(&m, &x);
        let plain = plain(&m);
        for &t in table.tiles() {
            let v = table.allowed_set(Direction::V, t);
            assert!(!v.is_empty());
            assert!(v.iter().all(|u| plain.contains(u)), "{name} {t:?}");
            let h = table.allowed_set(Direction::H, t);
            assert!(plain.iter().all(|u| h.contains(u)), "{name} {t:?}");
        }
    }
}

#[test]
fn stated_cases() {
    let m = tm("ends_in_1.tm");
    let x = m.parse_input("10").unwrap();
    let table = consistency(&m, &x);
    let st = |s: &str| TileState::State(m.states().iter().position(|q| q == s).unwrap());
    let q_star: Vec<TileState> = std::iter::once(TileState::Star)
        .chain((0..m.states().len()).map(TileState::State))
        .collect();
    let gamma: Vec<TileSymbol> = (0..m.tape().len()).map(TileSymbol::Sym).collect();

    for a in 0..m.tape().len() {
        let a = TileSymbol::Sym(a);
        // head absent: the symbol stays and any state may arrive
        let want: Vec<Tile> = q_star.iter().map(|&q| Tile::new(q, a)).collect();
        assert_eq!(
            table.allowed_set(Direction::V, Tile::new(TileState::Star, a)),
            want
        );
        // halting states repeat downward
        let acc = Tile::new(st("qa"), a);
        assert_eq!(table.allowed_set(Direction::V, acc), vec![acc]);
    }
    // ret1 moves left on 1, so nothing arrives diagonally to the right
    let ret = Tile::new(st("ret1"), TileSymbol::Sym(2));
    let want: Vec<Tile> = gamma
        .iter()
        .map(|&a| Tile::new(TileState::Star, a))
        .collect();
    assert_eq!(table.allowed_set(Direction::R, ret), want);
    let want: Vec<Tile> = gamma.iter().map(|&a| Tile::new(st("ret1"), a)).collect();
    assert_eq!(table.allowed_set(Direction::L, ret), want);
    // a non-halting head writes and leaves
    assert_eq!(
        table.allowed_set(Direction::V, ret),
        vec![Tile::new(TileState::Star, TileSymbol::Sym(2))]
    );
}

#[test]
fn marked_symbols_use_their_plain_meaning() {
    let m = tm("ends_in_1.tm");
    let x = m.parse_input("101").unwrap();
    let table = consistency(&m, &x);
    for &t in table.tiles() {
        let plain_state = match t.state {
            TileState::Start => TileState::State(m.start()),
            s => s,
        };
        let plain_sym = match t.symbol {
            TileSymbol::Input(i) => TileSymbol::Sym(x[i - 1]),
            s => s,
        };
        let p = Tile::new(plain_state, plain_sym);
        for d in [Direction::V, Direction::R, Direction::L] {
            assert_eq!(
                table.allowed_set(d, t),
                table.allowed_set(d, p),
                "{d} {t:?}"
            );
        }
    }
    // the next input marker is allowed only to the right of its predecessor
    let after = |i: usize| {
        table.allowed_set(
            Direction::H,
            Tile::new(TileState::Star, TileSymbol::Input(i)),
        )
    };
    assert!(after(1).contains(&Tile::new(TileState::Star, TileSymbol::Input(2))));
    assert!(!after(1).contains(&Tile::new(TileState::Star, TileSymbol::Input(3))));
    assert!(after(3)
        .iter()
        .all(|t| matches!(t.symbol, TileSymbol::Sym(_))));
    assert!(after(2).iter().all(|t| t.state != TileState::Start));
}

#[test]
fn tile_order_is_priority_order() {
    let m = tm("first_is_1.tm");
    let table = consistency(&m, &m.parse_input("01").unwrap());
    let t = table.tiles();
    assert_eq!(t[0], Tile::new(TileState::Start, TileSymbol::Input(1)));
    assert_eq!(t[1], Tile::new(TileState::Start, TileSymbol::Input(2)));
    assert_eq!(t[2], Tile::new(TileState::Start, TileSymbol::Sym(0)));
    assert!(t.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(t.len(), (m.states().len() + 2) * (2 + m.tape().len()));
}
