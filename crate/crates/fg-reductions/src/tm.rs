//! Deterministic single-tape machines and their execution traces.

use std::fmt;
use std::str::FromStr;

use crate::syntax::{arrows, parse_block, single, words, Field};
use crate::{ConventionViolation, ReductionError};

pub const BLANK: &str = "_";
pub const DEFAULT_MAX_STEPS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    L,
    R,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Transition {
    pub next: usize,
    pub write: usize,
    pub dir: Move,
}

/// A deterministic machine. Symbols and states are referred to by index;
/// tape symbol 0 is always the blank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TmSpec {
    states: Vec<String>,
    tape: Vec<String>,
    input: Vec<usize>,
    start: usize,
    accept: usize,
    reject: usize,
    delta: Vec<Option<Transition>>,
}

impl TmSpec {
    /// Builds and validates a machine. `tape` may omit the blank and the
    /// input symbols; both are added.
    pub fn new(
        states: Vec<String>,
        input: Vec<String>,
        tape: Vec<String>,
        start: &str,
        accept: &str,
        reject: &str,
        delta: Vec<((String, String), (String, String, Move))>,
    ) -> Result<Self, ReductionError> {
        let bad = |m: String| ReductionError::Invalid(m);
        let mut all_tape = vec![BLANK.to_string()];
        for s in tape.iter().chain(&input) {
            if !all_tape.contains(s) {
                all_tape.push(s.clone());
            }
        }
        let mut seen = std::collections::HashSet::new();
        for q in &states {
            if !seen.insert(q) {
                return Err(bad(format!("duplicate state `{q}`")));
            }
        }
        let state = |q: &str| {
            states
                .iter()
                .position(|s| s == q)
                .ok_or_else(|| bad(format!("unknown state `{q}`")))
        };
        let sym = |a: &str| {
            all_tape
                .iter()
                .position(|s| s == a)
                .ok_or_else(|| bad(format!("unknown symbol `{a}`")))
        };
        let input_idx = input
            .iter()
            .map(|a| {
                if a == BLANK {
                    Err(bad("the blank cannot be an input symbol".into()))
                } else {
                    sym(a)
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        let (start, accept, reject) = (state(start)?, state(accept)?, state(reject)?);
        if accept == reject {
            return Err(bad("accept and reject must differ".into()));
        }
        let g = all_tape.len();
        let mut table = vec![None; states.len() * g];
        for ((q, a), (q2, a2, d)) in &delta {
            let (qi, ai) = (state(q)?, sym(a)?);
            if qi == accept || qi == reject {
                return Err(bad(format!("halting state `{q}` has a transition")));
            }
            let t = Transition {
                next: state(q2)?,
                write: sym(a2)?,
                dir: *d,
            };
            if table[qi * g + ai].replace(t).is_some() {
                return Err(bad(format!("two transitions for ({q},{a})")));
            }
        }
        for qi in 0..states.len() {
            if qi == accept || qi == reject {
                continue;
            }
            for ai in 0..g {
                if table[qi * g + ai].is_none() {
                    return Err(bad(format!(
                        "no transition for ({},{})",
                        states[qi], all_tape[ai]
                    )));
                }
            }
        }
        Ok(TmSpec {
            states,
            tape: all_tape,
            input: input_idx,
            start,
            accept,
            reject,
            delta: table,
        })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    /// Tape alphabet with the blank at index 0.
    pub fn tape(&self) -> &[String] {
        &self.tape
    }

    pub fn input_symbols(&self) -> &[usize] {
        &self.input
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn accept(&self) -> usize {
        self.accept
    }

    pub fn reject(&self) -> usize {
        self.reject
    }

    pub fn is_halting(&self, q: usize) -> bool {
        q == self.accept || q == self.reject
    }

    /// Transition on a non-halting state.
    pub fn delta(&self, q: usize, a: usize) -> Option<Transition> {
        self.delta[q * self.tape.len() + a]
    }

    /// Reads an input string. Without commas or spaces every character is one
    /// symbol; otherwise symbols are separated by them.
    pub fn parse_input(&self, x: &str) -> Result<Vec<usize>, ReductionError> {
        input_symbols(&self.tape, &self.input, x)
    }

    pub fn input_string(&self, x: &[usize]) -> String {
        join_symbols(&self.tape, x)
    }
}

pub(crate) fn input_symbols(
    alphabet: &[String],
    allowed: &[usize],
    x: &str,
) -> Result<Vec<usize>, ReductionError> {
    let tokens: Vec<String> = if x.contains(',') || x.trim().contains(' ') {
        words(x)
    } else {
        x.trim().chars().map(|c| c.to_string()).collect()
    };
    tokens
        .iter()
        .map(|t| {
            alphabet
                .iter()
                .position(|s| s == t)
                .filter(|i| allowed.contains(i))
                .ok_or_else(|| ReductionError::BadInput(format!("`{t}` is not an input symbol")))
        })
        .collect()
}

pub(crate) fn join_symbols(alphabet: &[String], x: &[usize]) -> String {
    let sep = if x.iter().all(|&a| alphabet[a].chars().count() == 1) {
        ""
    } else {
        ","
    };
    x.iter()
        .map(|&a| alphabet[a].as_str())
        .collect::<Vec<_>>()
        .join(sep)
}

pub(crate) fn parse_move(s: &str, allow_stay: bool, line: usize) -> Result<char, ReductionError> {
    match s {
        "L" | "R" => Ok(s.chars().next().unwrap()),
        "S" if allow_stay => Ok('S'),
        _ => Err(ReductionError::Parse {
            line,
            msg: format!("bad move `{s}`"),
        }),
    }
}

pub(crate) fn need<'a>(fields: &'a [Field], key: &str) -> Result<&'a Field, ReductionError> {
    fields
        .iter()
        .find(|f| f.key == key)
        .ok_or_else(|| ReductionError::Parse {
            line: 1,
            msg: format!("missing `{key}`"),
        })
}

impl FromStr for TmSpec {
    type Err = ReductionError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let fields = parse_block(text, "tm")?;
        for f in &fields {
            if ![
                "states", "input", "tape", "start", "accept", "reject", "delta",
            ]
            .contains(&f.key.as_str())
            {
                return Err(ReductionError::Parse {
                    line: f.line,
                    msg: format!("unknown field `{}`", f.key),
                });
            }
        }
        let mut delta = Vec::new();
        for f in fields.iter().filter(|f| f.key == "delta") {
            for (lhs, rhs) in arrows(f)? {
                if lhs.len() != 2 || rhs.len() != 3 {
                    return Err(ReductionError::Parse {
                        line: f.line,
                        msg: "expected (q,a)->(q',a',D)".into(),
                    });
                }
                let d = if parse_move(&rhs[2], false, f.line)? == 'L' {
                    Move::L
                } else {
                    Move::R
                };
                delta.push((
                    (lhs[0].clone(), lhs[1].clone()),
                    (rhs[0].clone(), rhs[1].clone(), d),
                ));
            }
        }
        let tape = fields
            .iter()
            .find(|f| f.key == "tape")
            .map(|f| words(&f.value))
            .unwrap_or_default();
        TmSpec::new(
            words(&need(&fields, "states")?.value),
            words(&need(&fields, "input")?.value),
            tape,
            &single(need(&fields, "start")?)?,
            &single(need(&fields, "accept")?)?,
            &single(need(&fields, "reject")?)?,
            delta,
        )
    }
}

impl fmt::Display for TmSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "tm {{")?;
        writeln!(f, "  states: {};", self.states.join(" "))?;
        let input: Vec<&str> = self.input.iter().map(|&a| self.tape[a].as_str()).collect();
        writeln!(f, "  input: {};", input.join(" "))?;
        writeln!(f, "  tape: {};", self.tape.join(" "))?;
        writeln!(f, "  start: {};", self.states[self.start])?;
        writeln!(f, "  accept: {};", self.states[self.accept])?;
        writeln!(f, "  reject: {};", self.states[self.reject])?;
        writeln!(f, "  delta:")?;
        for q in 0..self.states.len() {
            for a in 0..self.tape.len() {
                if let Some(t) = self.delta(q, a) {
                    writeln!(
                        f,
                        "    ({},{})->({},{},{:?})",
                        self.states[q],
                        self.tape[a],
                        self.states[t.next],
                        self.tape[t.write],
                        t.dir
                    )?;
                }
            }
        }
        writeln!(f, "  ;\n}}")
    }
}

/// One cell of a trace row: the head state if the head is here, and the symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceCell {
    pub state: Option<usize>,
    pub symbol: usize,
}

/// Rows of a run. Row 0 is the initial configuration and row `steps` the
/// halting one. All rows have the same width, which covers every cell the
/// head visited plus one trailing blank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExecutionTrace {
    pub steps: usize,
    pub accepted: bool,
    pub halt_state: usize,
    pub halt_cell: usize,
    pub rows: Vec<Vec<TraceCell>>,
}

impl ExecutionTrace {
    /// Cell `col` (0-based) of row `row`; rows past the end repeat the last one
    /// and columns past the width are blank.
    pub fn cell(&self, row: usize, col: usize) -> TraceCell {
        let r = &self.rows[row.min(self.rows.len() - 1)];
        r.get(col).copied().unwrap_or(TraceCell {
            state: None,
            symbol: 0,
        })
    }

    pub fn width(&self) -> usize {
        self.rows[0].len()
    }

    pub fn render(&self, tm: &TmSpec) -> String {
        let mut out = String::new();
        for (i, row) in self.rows.iter().enumerate() {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c.state {
                    Some(q) => format!("[{}:{}]", tm.states[q], tm.tape[c.symbol]),
                    None => tm.tape[c.symbol].clone(),
                })
                .collect();
            out.push_str(&format!("{i}: {}\n", cells.join(" ")));
        }
        out
    }
}

/// Raw run without the halting convention checks, except falling off the left end.
fn run(
    tm: &TmSpec,
    x: &[usize],
    max_steps: usize,
) -> Result<(Vec<Vec<TraceCell>>, usize, usize), ReductionError> {
    for &a in x {
        if !tm.input.contains(&a) {
            return Err(ReductionError::BadInput(format!(
                "`{}` is not an input symbol",
                tm.tape[a]
            )));
        }
    }
    let mut tape: Vec<usize> = x.to_vec();
    let (mut q, mut head) = (tm.start, 0usize);
    let snapshot = |tape: &[usize], q: usize, head: usize| -> Vec<TraceCell> {
        tape.iter()
            .enumerate()
            .map(|(i, &a)| TraceCell {
                state: (i == head).then_some(q),
                symbol: a,
            })
            .collect()
    };
    if tape.is_empty() {
        tape.push(0);
    }
    let mut rows = vec![snapshot(&tape, q, head)];
    let mut steps = 0;
    while !tm.is_halting(q) {
        if steps == max_steps {
            return Err(ReductionError::StepBudget { max_steps });
        }
        let t = tm.delta(q, tape[head]).expect("delta is total");
        tape[head] = t.write;
        q = t.next;
        steps += 1;
        match t.dir {
            Move::L if head == 0 => {
                return Err(ReductionError::Convention(
                    ConventionViolation::FellOffLeft { step: steps },
                ))
            }
            Move::L => head -= 1,
            Move::R => {
                head += 1;
                if head == tape.len() {
                    tape.push(0);
                }
            }
        }
        rows.push(snapshot(&tape, q, head));
    }
    let width = tape.len() + 1;
    for r in &mut rows {
        r.resize(
            width,
            TraceCell {
                state: None,
                symbol: 0,
            },
        );
    }
    Ok((rows, q, head))
}

/// Runs the machine and checks the halting convention: the run must end in
/// cell 1 over a blank.
pub fn simulate_tm(
    tm: &TmSpec,
    x: &[usize],
    max_steps: usize,
) -> Result<ExecutionTrace, ReductionError> {
    let (rows, q, head) = run(tm, x, max_steps)?;
    if head != 0 {
        return Err(ReductionError::Convention(
            ConventionViolation::HeadNotLeftmost { cell: head + 1 },
        ));
    }
    let first = rows[rows.len() - 1][0].symbol;
    if first != 0 {
        return Err(ReductionError::Convention(
            ConventionViolation::LeftmostNotBlank {
                symbol: tm.tape[first].clone(),
            },
        ));
    }
    Ok(ExecutionTrace {
        steps: rows.len() - 1,
        accepted: q == tm.accept,
        halt_state: q,
        halt_cell: head + 1,
        rows,
    })
}

/// `Ok` when the run on `x` satisfies the halting convention, otherwise the
/// first violated assumption (or a budget error).
pub fn validate_tm_convention(
    tm: &TmSpec,
    x: &[usize],
    max_steps: usize,
) -> Result<(), ReductionError> {
    simulate_tm(tm, x, max_steps).map(|_| ())
}
