//! k-Orthogonal-Vectors instances and their reduction to reachability.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use fg_core::{BaseGraph, Expr, FormulaDoc, Label, Vertex};

use crate::syntax::{parse_block, single, words};
use crate::{CompiledInstance, Query, ReductionError};

pub const FORMULA: &str = "G";

/// `k` sets of `n` binary vectors of length `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KovInstance {
    d: usize,
    sets: Vec<Vec<Vec<bool>>>,
}

impl KovInstance {
    pub fn new(d: usize, sets: Vec<Vec<Vec<bool>>>) -> Result<Self, ReductionError> {
        let bad = |m: String| Err(ReductionError::Invalid(m));
        if sets.is_empty() {
            return bad("no vector sets".into());
        }
        let n = sets[0].len();
        for (i, s) in sets.iter().enumerate() {
            if s.len() != n {
                return bad(format!(
                    "set {} has {} vectors, expected {n}",
                    i + 1,
                    s.len()
                ));
            }
            if let Some(v) = s.iter().find(|v| v.len() != d) {
                return bad(format!(
                    "set {} has a vector of length {}, expected {d}",
                    i + 1,
                    v.len()
                ));
            }
        }
        Ok(KovInstance { d, sets })
    }

    pub fn k(&self) -> usize {
        self.sets.len()
    }

    pub fn n(&self) -> usize {
        self.sets[0].len()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Vector `j` of set `i`, both 0-based.
    pub fn vector(&self, i: usize, j: usize) -> &[bool] {
        &self.sets[i][j]
    }
}

impl FromStr for KovInstance {
    type Err = ReductionError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let fields = parse_block(text, "kov")?;
        let (mut k, mut d, mut sets) = (None, None, Vec::new());
        for f in &fields {
            let num = || {
                single(f)?
                    .parse::<usize>()
                    .map_err(|_| ReductionError::Parse {
                        line: f.line,
                        msg: "expected a number".into(),
                    })
            };
            match f.key.as_str() {
                "k" => k = Some(num()?),
                "d" => d = Some(num()?),
                "set" => {
                    let vs = words(&f.value)
                        .iter()
                        .map(|w| {
                            w.chars()
                                .map(|c| match c {
                                    '0' => Ok(false),
                                    '1' => Ok(true),
                                    _ => Err(ReductionError::Parse {
                                        line: f.line,
                                        msg: format!("bad vector `{w}`"),
                                    }),
                                })
                                .collect::<Result<Vec<_>, _>>()
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    sets.push(vs);
                }
                other => {
                    return Err(ReductionError::Parse {
                        line: f.line,
                        msg: format!("unknown field `{other}`"),
                    })
                }
            }
        }
        let d = d.ok_or_else(|| ReductionError::Parse {
            line: 1,
            msg: "missing `d`".into(),
        })?;
        if let Some(k) = k {
            if k != sets.len() {
                return Err(ReductionError::Invalid(format!(
                    "k is {k} but {} sets given",
                    sets.len()
                )));
            }
        }
        KovInstance::new(d, sets)
    }
}

impl fmt::Display for KovInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "kov {{\n  k: {};\n  d: {};", self.k(), self.d)?;
        for s in &self.sets {
            let vs: Vec<String> = s
                .iter()
                .map(|v| v.iter().map(|&b| if b { '1' } else { '0' }).collect())
                .collect();
            writeln!(f, "  set: {};", vs.join(" "))?;
        }
        writeln!(f, "}}")
    }
}

/// Exhaustive check over all `n^k` tuples.
pub fn solve_kov_brute(inst: &KovInstance) -> bool {
    let (k, n) = (inst.k(), inst.n());
    if n == 0 {
        return false;
    }
    let mut pick = vec![0usize; k];
    loop {
        if (0..inst.d).all(|l| (0..k).any(|i| !inst.sets[i][pick[i]][l])) {
            return true;
        }
        let mut p = k;
        loop {
            if p == 0 {
                return false;
            }
            p -= 1;
            pick[p] += 1;
            if pick[p] < n {
                break;
            }
            pick[p] = 0;
        }
    }
}

/// Label layout: per set `i` a block holding `s_i`, the vector vertices in
/// `(j, l, b)` order, then `t_i`.
#[derive(Debug, Clone, Copy)]
pub struct KovLabels {
    pub n: usize,
    pub d: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KovVertex {
    Source {
        i: usize,
    },
    Target {
        i: usize,
    },
    /// Set `i`, vector `j`, coordinate `l` in `1..=d`, side `b`.
    Vec {
        i: usize,
        j: usize,
        l: usize,
        b: u8,
    },
}

impl KovLabels {
    fn block(&self) -> usize {
        2 + 2 * self.n * self.d
    }

    pub fn source(&self, i: usize) -> Label {
        (i * self.block()) as Label
    }

    pub fn target(&self, i: usize) -> Label {
        (i * self.block() + self.block() - 1) as Label
    }

    pub fn vec(&self, i: usize, j: usize, l: usize, b: u8) -> Label {
        (i * self.block() + 1 + (j * self.d + l - 1) * 2 + b as usize) as Label
    }

    pub fn decode(&self, label: Label) -> KovVertex {
        let (i, r) = (label as usize / self.block(), label as usize % self.block());
        if r == 0 {
            KovVertex::Source { i }
        } else if r == self.block() - 1 {
            KovVertex::Target { i }
        } else {
            let r = r - 1;
            KovVertex::Vec {
                i,
                j: r / (2 * self.d),
                l: (r / 2) % self.d + 1,
                b: (r % 2) as u8,
            }
        }
    }

    fn name(&self, label: Label) -> String {
        match self.decode(label) {
            KovVertex::Source { i } => format!("s_{}", i + 1),
            KovVertex::Target { i } => format!("t_{}", i + 1),
            KovVertex::Vec { i, j, l, b } => format!("v_{{{},{},{},{}}}", i + 1, j + 1, l, b),
        }
    }
}

/// Builds the gadget stack; `src` reaches `dst` iff some tuple is orthogonal.
pub fn compile_kov_reach(inst: &KovInstance) -> Result<CompiledInstance, ReductionError> {
    let (k, n, d) = (inst.k(), inst.n(), inst.d());
    if k < 2 || n < 1 || d < 1 {
        return Err(ReductionError::Invalid(
            "need k >= 2, n >= 1 and d >= 1".into(),
        ));
    }
    let lab = KovLabels { n, d };
    let mut doc = FormulaDoc::new();
    let mut add =
        |name: String, vs: Vec<Label>, es: Vec<(Label, Label)>| -> Result<usize, ReductionError> {
            Ok(doc.add_graph(BaseGraph::simple(name, vs, es)?)?)
        };

    let (mut g, mut h, mut l0, mut l1, mut dg, mut s, mut t) =
        (vec![], vec![], vec![], vec![], vec![], vec![], vec![]);
    for i in 0..k {
        let id = i + 1;
        let cells: Vec<(usize, usize)> =
            (0..n).flat_map(|j| (1..=d).map(move |l| (j, l))).collect();
        let verts: Vec<Label> = cells
            .iter()
            .flat_map(|&(j, l)| [lab.vec(i, j, l, 0), lab.vec(i, j, l, 1)])
            .collect();
        let rung = |&(j, l): &(usize, usize)| (lab.vec(i, j, l, 0), lab.vec(i, j, l, 1));
        let zero_rungs = cells
            .iter()
            .filter(|&&(j, l)| !inst.vector(i, j)[l - 1])
            .map(rung)
            .collect();
        g.push(add(format!("G{id}"), verts.clone(), zero_rungs)?);
        h.push(add(
            format!("H{id}"),
            verts.clone(),
            cells.iter().map(rung).collect(),
        )?);
        l0.push(add(
            format!("L0_{id}"),
            verts.clone(),
            verts.iter().map(|&v| (v, v)).collect(),
        )?);
        let ones = cells
            .iter()
            .map(|&(j, l)| lab.vec(i, j, l, 1))
            .map(|v| (v, v))
            .collect();
        l1.push(add(format!("L1_{id}"), verts.clone(), ones)?);
        let diag = cells
            .iter()
            .filter(|&&(_, l)| l >= 2)
            .map(|&(j, l)| (lab.vec(i, j, l - 1, 1), lab.vec(i, j, l, 0)));
        dg.push(add(format!("D{id}"), verts, diag.collect())?);
        let firsts: Vec<Label> = (0..n).map(|j| lab.vec(i, j, 1, 0)).collect();
        let mut sv = vec![lab.source(i)];
        sv.extend(&firsts);
        s.push(add(
            format!("S{id}"),
            sv,
            firsts.iter().map(|&v| (lab.source(i), v)).collect(),
        )?);
        let lasts: Vec<Label> = (0..n).map(|j| lab.vec(i, j, d, 1)).collect();
        let mut tv = vec![lab.target(i)];
        tv.extend(&lasts);
        t.push(add(
            format!("T{id}"),
            tv,
            lasts.iter().map(|&v| (v, lab.target(i))).collect(),
        )?);
    }

    let leaves = |ids: &[usize]| ids.iter().map(|&x| Expr::leaf(x)).collect::<Vec<_>>();
    let mut terms = vec![Expr::cart(leaves(&g)), Expr::tensor(leaves(&dg))];
    for i in 0..k {
        for j in (0..k).filter(|&j| j != i) {
            let factors = (0..k)
                .map(|p| {
                    Expr::leaf(if p == i {
                        h[p]
                    } else if p == j {
                        l1[p]
                    } else {
                        l0[p]
                    })
                })
                .collect();
            terms.push(Expr::tensor(factors));
        }
    }
    terms.push(Expr::tensor(leaves(&s)));
    terms.push(Expr::tensor(leaves(&t)));
    doc.add_formula(FORMULA, Expr::union(terms))?;

    let legend: BTreeMap<Label, String> = (0..(k * lab.block()) as Label)
        .map(|l| (l, lab.name(l)))
        .collect();
    let src = Vertex::new((0..k).map(|i| lab.source(i)).collect());
    let dst = Vertex::new((0..k).map(|i| lab.target(i)).collect());
    Ok(CompiledInstance {
        doc,
        formula: FORMULA.into(),
        query: Query::Reach { src, dst },
        legend,
    })
}
