//! Factored increasing/decreasing paths over base-b digit strings and the
//! four directed grids built from them.

use fg_core::{BaseGraph, Expr, FormulaDoc, Label, Op};

use crate::consistency::Direction;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathDirection {
    Inc,
    Dec,
}

/// Digit graphs over labels `0..b`, added to a document on demand.
pub(crate) struct Digits {
    b: Label,
    k: usize,
    a: usize,
    inc: Option<(usize, usize)>,
    dec: Option<(usize, usize)>,
}

impl Digits {
    pub(crate) fn new(doc: &mut FormulaDoc, b: usize, k: usize) -> Self {
        assert!(b >= 2 && k >= 1, "need b >= 2 and k >= 1");
        let b = b as Label;
        let a = doc
            .add_graph(BaseGraph::simple("A", 0..b, []).unwrap())
            .unwrap();
        Digits {
            b,
            k,
            a,
            inc: None,
            dec: None,
        }
    }

    fn steps(&mut self, doc: &mut FormulaDoc, dir: PathDirection) -> (usize, usize) {
        let b = self.b;
        let slot = match dir {
            PathDirection::Inc => &mut self.inc,
            PathDirection::Dec => &mut self.dec,
        };
        *slot.get_or_insert_with(|| {
            let step: Vec<(Label, Label)> = (0..b - 1).map(|i| (i, i + 1)).collect();
            let wrap = [(b - 1, 0)];
            let (names, step, wrap): (_, Vec<_>, Vec<_>) = match dir {
                PathDirection::Inc => (("B", "C"), step, wrap.to_vec()),
                PathDirection::Dec => (
                    ("Brev", "Crev"),
                    step.iter().map(|&(u, v)| (v, u)).collect(),
                    wrap.iter().map(|&(u, v)| (v, u)).collect(),
                ),
            };
            let bi = doc
                .add_graph(BaseGraph::simple(names.0, 0..b, step).unwrap())
                .unwrap();
            let ci = doc
                .add_graph(BaseGraph::simple(names.1, 0..b, wrap).unwrap())
                .unwrap();
            (bi, ci)
        })
    }

    /// Union over the position of the incremented digit: higher digits fixed,
    /// one digit stepped, lower digits wrapping.
    pub(crate) fn path(&mut self, doc: &mut FormulaDoc, dir: PathDirection) -> Expr {
        let (bi, ci) = self.steps(doc, dir);
        let terms = (0..self.k)
            .map(|i| {
                let low = Expr::tensor(
                    std::iter::once(Expr::leaf(bi))
                        .chain((0..i).map(|_| Expr::leaf(ci)))
                        .collect(),
                );
                let mut parts: Vec<Expr> =
                    (0..self.k - i - 1).map(|_| Expr::leaf(self.a)).collect();
                parts.push(low);
                Expr::cart(parts)
            })
            .collect();
        Expr::union(terms)
    }

    /// Edgeless graph on all `b^k` digit strings.
    pub(crate) fn empty(&self) -> Expr {
        Expr::cart((0..self.k).map(|_| Expr::leaf(self.a)).collect())
    }

    pub(crate) fn grid(&mut self, doc: &mut FormulaDoc, d: Direction) -> Expr {
        match d {
            Direction::V => Expr::bin(Op::Cart, self.path(doc, PathDirection::Inc), self.empty()),
            Direction::H => Expr::bin(Op::Cart, self.empty(), self.path(doc, PathDirection::Inc)),
            Direction::R => Expr::bin(
                Op::Tensor,
                self.path(doc, PathDirection::Inc),
                self.path(doc, PathDirection::Inc),
            ),
            Direction::L => Expr::bin(
                Op::Tensor,
                self.path(doc, PathDirection::Inc),
                self.path(doc, PathDirection::Dec),
            ),
        }
    }
}

/// Document with digit graphs over `0..b` and formula `PATH`, the path
/// through all `b^k` digit strings in increasing (or decreasing) order.
pub fn build_factored_path(b: usize, k: usize, dir: PathDirection) -> FormulaDoc {
    let mut doc = FormulaDoc::new();
    let mut digits = Digits::new(&mut doc, b, k);
    let e = digits.path(&mut doc, dir);
    doc.add_formula("PATH", e).unwrap();
    doc
}

/// Document with formula `GRID`: the `b^k x b^k` grid whose edges point from
/// each cell to its neighbour below (`V`), to the right (`H`), below-right
/// (`R`) or below-left (`L`). Vertices are row digits followed by column digits.
pub fn build_grid(b: usize, k: usize, d: Direction) -> FormulaDoc {
    let mut doc = FormulaDoc::new();
    let mut digits = Digits::new(&mut doc, b, k);
    let e = digits.grid(&mut doc, d);
    doc.add_formula("GRID", e).unwrap();
    doc
}

/// Digits of `value` in base `b`, most significant first, padded to `k`.
pub fn digits_of(value: u64, b: usize, k: usize) -> Vec<Label> {
    let mut out = vec![0; k];
    let mut v = value;
    for slot in out.iter_mut().rev() {
        *slot = (v % b as u64) as Label;
        v /= b as u64;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digits() {
        assert_eq!(digits_of(5, 2, 3), vec![1, 0, 1]);
        assert_eq!(digits_of(0, 3, 2), vec![0, 0]);
        assert_eq!(digits_of(8, 3, 2), vec![2, 2]);
    }

    #[test]
    fn one_digit_path_is_an_edge() {
        let doc = build_factored_path(2, 1, PathDirection::Inc);
        let g = doc.factored("PATH").unwrap().materialize(100).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }
}
