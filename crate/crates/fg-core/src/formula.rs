//! Operator trees over base graphs.

/// A graph operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    Union,
    Cart,
    Tensor,
}

impl Op {
    /// DSL symbol: `+`, `#` or `*`.
    pub fn symbol(self) -> char {
        match self {
            Op::Union => '+',
            Op::Cart => '#',
            Op::Tensor => '*',
        }
    }
}

/// A formula. Leaves refer to base graphs by their index in a [`FormulaDoc`](crate::FormulaDoc).
///
/// Values built through [`Expr::op`] are canonical: no node has a child
/// carrying the same operation, and every node has at least two children.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Expr {
    Leaf(usize),
    Node(Op, Vec<Expr>),
}

impl Expr {
    pub fn leaf(graph: usize) -> Expr {
        Expr::Leaf(graph)
    }

    /// Applies `op` to `children`, flattening same-op children.
    /// A single child is returned unchanged. Panics on an empty list.
    pub fn op(op: Op, children: Vec<Expr>) -> Expr {
        assert!(!children.is_empty(), "operation without operands");
        let mut flat = Vec::with_capacity(children.len());
        for c in children {
            match c {
                Expr::Node(o, cs) if o == op => flat.extend(cs),
                other => flat.push(other),
            }
        }
        if flat.len() == 1 {
            flat.pop().unwrap()
        } else {
            Expr::Node(op, flat)
        }
    }

    pub fn union(children: Vec<Expr>) -> Expr {
        Expr::op(Op::Union, children)
    }

    pub fn cart(children: Vec<Expr>) -> Expr {
        Expr::op(Op::Cart, children)
    }

    pub fn tensor(children: Vec<Expr>) -> Expr {
        Expr::op(Op::Tensor, children)
    }

    /// Binary application, convenient for building nested test formulas.
    pub fn bin(op: Op, a: Expr, b: Expr) -> Expr {
        Expr::op(op, vec![a, b])
    }

    /// Rebuilds the tree bottom-up in canonical form.
    pub fn canonical(self) -> Expr {
        match self {
            Expr::Leaf(g) => Expr::Leaf(g),
            Expr::Node(op, cs) => Expr::op(op, cs.into_iter().map(Expr::canonical).collect()),
        }
    }

    pub fn is_canonical(&self) -> bool {
        match self {
            Expr::Leaf(_) => true,
            Expr::Node(op, cs) => {
                cs.len() >= 2
                    && cs
                        .iter()
                        .all(|c| !matches!(c, Expr::Node(o, _) if o == op) && c.is_canonical())
            }
        }
    }

    /// Sum over operation nodes of (arity - 1).
    pub fn operation_count(&self) -> usize {
        match self {
            Expr::Leaf(_) => 0,
            Expr::Node(_, cs) => cs.len() - 1 + cs.iter().map(Expr::operation_count).sum::<usize>(),
        }
    }

    /// Graph indices of the leaves, left to right.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            Expr::Leaf(g) => out.push(*g),
            Expr::Node(_, cs) => cs.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    pub fn map_leaves(&self, f: &mut impl FnMut(usize) -> usize) -> Expr {
        match self {
            Expr::Leaf(g) => Expr::Leaf(f(*g)),
            Expr::Node(op, cs) => Expr::Node(*op, cs.iter().map(|c| c.map_leaves(f)).collect()),
        }
    }
}
