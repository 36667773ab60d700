//! Nondeterministic log-space machines with a read-only input tape and one
//! work tape, and their reduction to reachability over segmented
//! configurations.
//!
//! Machine model: the input tape holds the input in cells `1..=n` with blank
//! end markers in cells `0` and `n+1`; the input head starts at cell 1. The
//! work tape has `S * max(1, ceil(log2 n))` cells and starts blank with the
//! head on cell 0. Both heads move `L`, `R` or `S` and are clamped at the
//! ends of their tapes.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use fg_core::{BaseGraph, Expr, FormulaDoc, Label, Vertex};

use crate::syntax::{arrows, parse_block, single, words};
use crate::tm::{input_symbols, join_symbols, need, parse_move, BLANK};
use crate::{CompiledInstance, Query, ReductionError};

pub const FORMULA: &str = "G";
pub const DEFAULT_MAX_CONFIGS: usize = 1_000_000;
pub const DEFAULT_MAX_FACTOR: usize = 1 << 21;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HeadMove {
    L,
    R,
    S,
}

impl HeadMove {
    fn apply(self, pos: usize, last: usize) -> usize {
        match self {
            HeadMove::L => pos.saturating_sub(1),
            HeadMove::R => (pos + 1).min(last),
            HeadMove::S => pos,
        }
    }

    fn parse(s: &str, line: usize) -> Result<Self, ReductionError> {
        Ok(match parse_move(s, true, line)? {
            'L' => HeadMove::L,
            'R' => HeadMove::R,
            _ => HeadMove::S,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NtmTransition {
    pub next: usize,
    pub write: usize,
    pub input_move: HeadMove,
    pub work_move: HeadMove,
}

/// Input symbols are indexed into `input_tape()` (blank at 0), work symbols
/// into `work()` (blank at 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NtmSpec {
    states: Vec<String>,
    input_tape: Vec<String>,
    work: Vec<String>,
    start: usize,
    accept: usize,
    reject: usize,
    space: usize,
    delta: Vec<Vec<NtmTransition>>,
}

type RawArrow = (
    (String, String, String),
    (String, String, HeadMove, HeadMove),
);

impl NtmSpec {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        states: Vec<String>,
        input: Vec<String>,
        work: Vec<String>,
        start: &str,
        accept: &str,
        reject: &str,
        space: usize,
        delta: Vec<RawArrow>,
    ) -> Result<Self, ReductionError> {
        let bad = |m: String| ReductionError::Invalid(m);
        if space == 0 {
            return Err(bad("space factor must be positive".into()));
        }
        let with_blank = |syms: Vec<String>| {
            let mut all = vec![BLANK.to_string()];
            for s in syms {
                if !all.contains(&s) {
                    all.push(s);
                }
            }
            all
        };
        let (input_tape, work) = (with_blank(input), with_blank(work));
        let mut seen = HashSet::new();
        if let Some(q) = states.iter().find(|q| !seen.insert(*q)) {
            return Err(bad(format!("duplicate state `{q}`")));
        }
        let find = |list: &[String], s: &str, what: &str| {
            list.iter()
                .position(|x| x == s)
                .ok_or_else(|| bad(format!("unknown {what} `{s}`")))
        };
        let state = |q: &str| find(&states, q, "state");
        let (start, accept, reject) = (state(start)?, state(accept)?, state(reject)?);
        if accept == reject {
            return Err(bad("accept and reject must differ".into()));
        }
        let (ni, nw) = (input_tape.len(), work.len());
        let mut table = vec![Vec::new(); states.len() * ni * nw];
        for ((q, a, w), (q2, w2, di, dw)) in &delta {
            let qi = state(q)?;
            if qi == accept || qi == reject {
                return Err(bad(format!("halting state `{q}` has a transition")));
            }
            let key = (qi * ni + find(&input_tape, a, "input symbol")?) * nw
                + find(&work, w, "work symbol")?;
            let t = NtmTransition {
                next: state(q2)?,
                write: find(&work, w2, "work symbol")?,
                input_move: *di,
                work_move: *dw,
            };
            if !table[key].contains(&t) {
                table[key].push(t);
            }
        }
        Ok(NtmSpec {
            states,
            input_tape,
            work,
            start,
            accept,
            reject,
            space,
            delta: table,
        })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn input_tape(&self) -> &[String] {
        &self.input_tape
    }

    pub fn work(&self) -> &[String] {
        &self.work
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

    pub fn space(&self) -> usize {
        self.space
    }

    pub fn moves(&self, q: usize, a_in: usize, a_work: usize) -> &[NtmTransition] {
        &self.delta[(q * self.input_tape.len() + a_in) * self.work.len() + a_work]
    }

    pub fn parse_input(&self, x: &str) -> Result<Vec<usize>, ReductionError> {
        let allowed: Vec<usize> = (1..self.input_tape.len()).collect();
        input_symbols(&self.input_tape, &allowed, x)
    }

    pub fn input_string(&self, x: &[usize]) -> String {
        join_symbols(&self.input_tape, x)
    }

    /// Same machine plus cleanup states: from `accept` it blanks the work tape,
    /// parks both heads on cell 0 and enters a new final state.
    fn with_cleanup(&self) -> Result<(NtmSpec, usize), ReductionError> {
        let names = ["@clean_r", "@clean_l", "@final"];
        if let Some(n) = names.iter().find(|n| self.states.iter().any(|q| q == *n)) {
            return Err(ReductionError::Invalid(format!(
                "state name `{n}` is reserved"
            )));
        }
        let mut m = self.clone();
        let (cr, cl, fin) = (m.states.len(), m.states.len() + 1, m.states.len() + 2);
        m.states.extend(names.iter().map(|s| s.to_string()));
        let (ni, nw) = (m.input_tape.len(), m.work.len());
        let mut table = vec![Vec::new(); m.states.len() * ni * nw];
        table[..self.delta.len()].clone_from_slice(&self.delta);
        let t = |next, im, wm| NtmTransition {
            next,
            write: 0,
            input_move: im,
            work_move: wm,
        };
        for a in 0..ni {
            for w in 0..nw {
                table[(self.accept * ni + a) * nw + w] = vec![t(cr, HeadMove::L, HeadMove::R)];
                table[(cr * ni + a) * nw + w] = vec![
                    t(cr, HeadMove::L, HeadMove::R),
                    t(cl, HeadMove::L, HeadMove::L),
                ];
                table[(cl * ni + a) * nw + w] = vec![
                    t(cl, HeadMove::L, HeadMove::L),
                    t(fin, HeadMove::S, HeadMove::S),
                ];
            }
        }
        m.delta = table;
        m.accept = fin;
        Ok((m, fin))
    }
}

impl FromStr for NtmSpec {
    type Err = ReductionError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let fields = parse_block(text, "ntm")?;
        for f in &fields {
            if ![
                "states", "input", "work", "start", "accept", "reject", "space", "delta",
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
                if lhs.len() != 3 || rhs.len() != 4 {
                    return Err(ReductionError::Parse {
                        line: f.line,
                        msg: "expected (q,a,w)->(q',w',Din,Dw)".into(),
                    });
                }
                delta.push((
                    (lhs[0].clone(), lhs[1].clone(), lhs[2].clone()),
                    (
                        rhs[0].clone(),
                        rhs[1].clone(),
                        HeadMove::parse(&rhs[2], f.line)?,
                        HeadMove::parse(&rhs[3], f.line)?,
                    ),
                ));
            }
        }
        let space_f = need(&fields, "space")?;
        let space = single(space_f)?
            .parse()
            .map_err(|_| ReductionError::Parse {
                line: space_f.line,
                msg: "expected a number".into(),
            })?;
        let work = fields
            .iter()
            .find(|f| f.key == "work")
            .map(|f| words(&f.value))
            .unwrap_or_default();
        NtmSpec::new(
            words(&need(&fields, "states")?.value),
            words(&need(&fields, "input")?.value),
            work,
            &single(need(&fields, "start")?)?,
            &single(need(&fields, "accept")?)?,
            &single(need(&fields, "reject")?)?,
            space,
            delta,
        )
    }
}

impl fmt::Display for NtmSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ntm {{")?;
        writeln!(f, "  states: {};", self.states.join(" "))?;
        writeln!(f, "  input: {};", self.input_tape[1..].join(" "))?;
        writeln!(f, "  work: {};", self.work[1..].join(" "))?;
        writeln!(f, "  start: {};", self.states[self.start])?;
        writeln!(f, "  accept: {};", self.states[self.accept])?;
        writeln!(f, "  reject: {};", self.states[self.reject])?;
        writeln!(f, "  space: {};", self.space)?;
        writeln!(f, "  delta:")?;
        for q in 0..self.states.len() {
            for a in 0..self.input_tape.len() {
                for w in 0..self.work.len() {
                    for t in self.moves(q, a, w) {
                        writeln!(
                            f,
                            "    ({},{},{})->({},{},{:?},{:?})",
                            self.states[q],
                            self.input_tape[a],
                            self.work[w],
                            self.states[t.next],
                            self.work[t.write],
                            t.input_move,
                            t.work_move
                        )?;
                    }
                }
            }
        }
        writeln!(f, "  ;\n}}")
    }
}

/// Cells per work-tape segment for inputs of length `n`.
pub fn segment_len(n: usize) -> usize {
    let mut bits = 0;
    while (1usize << bits) < n {
        bits += 1;
    }
    bits.max(1)
}

/// Full configuration of the machine.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Config {
    pub state: usize,
    pub input_pos: usize,
    pub work_pos: usize,
    pub work: Vec<usize>,
}

struct Tapes<'a> {
    x: &'a [usize],
    cells: usize,
}

impl Tapes<'_> {
    fn input_at(&self, pos: usize) -> usize {
        if pos == 0 || pos > self.x.len() {
            0
        } else {
            self.x[pos - 1]
        }
    }

    fn successors<'m>(
        &'m self,
        m: &'m NtmSpec,
        c: &'m Config,
    ) -> impl Iterator<Item = Config> + 'm {
        m.moves(c.state, self.input_at(c.input_pos), c.work[c.work_pos])
            .iter()
            .map(move |t| {
                let mut work = c.work.clone();
                work[c.work_pos] = t.write;
                Config {
                    state: t.next,
                    input_pos: t.input_move.apply(c.input_pos, self.x.len() + 1),
                    work_pos: t.work_move.apply(c.work_pos, self.cells - 1),
                    work,
                }
            })
    }
}

fn initial(m: &NtmSpec, cells: usize) -> Config {
    Config {
        state: m.start,
        input_pos: 1,
        work_pos: 0,
        work: vec![0; cells],
    }
}

/// Whether some run of `ntm` on `x` reaches the accept state, found by
/// breadth-first search over explicit configurations.
pub fn simulate_ntm_config_graph(
    ntm: &NtmSpec,
    x: &[usize],
    max_configs: usize,
) -> Result<bool, ReductionError> {
    let cells = ntm.space * segment_len(x.len());
    let tapes = Tapes { x, cells };
    let start = initial(ntm, cells);
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(c) = queue.pop_front() {
        if c.state == ntm.accept {
            return Ok(true);
        }
        for next in tapes.successors(ntm, &c) {
            if !seen.contains(&next) {
                if seen.len() == max_configs {
                    return Err(ReductionError::ConfigCap { cap: max_configs });
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(false)
}

/// Sub-configuration of one segment.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SubConfig {
    Inactive {
        work: Vec<usize>,
    },
    Active {
        state: usize,
        input_pos: usize,
        offset: usize,
        work: Vec<usize>,
    },
}

/// Label layout shared by every segment: inactive contents first, then active
/// sub-configurations ordered by state, input position, offset and contents.
#[derive(Debug, Clone)]
pub struct NtmLabels {
    pub states: usize,
    pub input_cells: usize,
    pub seg: usize,
    pub work_symbols: usize,
    contents: usize,
}

impl NtmLabels {
    fn new(states: usize, n: usize, seg: usize, work_symbols: usize) -> Option<Self> {
        let contents = work_symbols.checked_pow(seg as u32)?;
        Some(NtmLabels {
            states,
            input_cells: n + 2,
            seg,
            work_symbols,
            contents,
        })
    }

    pub fn inactive_count(&self) -> usize {
        self.contents
    }

    pub fn active_count(&self) -> usize {
        self.states * self.input_cells * self.seg * self.contents
    }

    fn pack(&self, w: &[usize]) -> usize {
        w.iter().fold(0, |acc, &a| acc * self.work_symbols + a)
    }

    fn unpack(&self, mut c: usize) -> Vec<usize> {
        let mut w = vec![0; self.seg];
        for slot in w.iter_mut().rev() {
            *slot = c % self.work_symbols;
            c /= self.work_symbols;
        }
        w
    }

    pub fn encode(&self, s: &SubConfig) -> Label {
        let v = match s {
            SubConfig::Inactive { work } => self.pack(work),
            SubConfig::Active {
                state,
                input_pos,
                offset,
                work,
            } => {
                self.contents
                    + ((state * self.input_cells + input_pos) * self.seg + offset) * self.contents
                    + self.pack(work)
            }
        };
        v as Label
    }

    pub fn decode(&self, l: Label) -> Option<SubConfig> {
        let l = l as usize;
        if l < self.contents {
            return Some(SubConfig::Inactive {
                work: self.unpack(l),
            });
        }
        let r = l - self.contents;
        if r >= self.active_count() {
            return None;
        }
        let (rest, c) = (r / self.contents, r % self.contents);
        let (rest, offset) = (rest / self.seg, rest % self.seg);
        Some(SubConfig::Active {
            state: rest / self.input_cells,
            input_pos: rest % self.input_cells,
            offset,
            work: self.unpack(c),
        })
    }

    /// Splits a full configuration into per-segment labels.
    pub fn segment(&self, c: &Config) -> Vertex {
        let segs = c.work.len() / self.seg;
        Vertex::new(
            (0..segs)
                .map(|i| {
                    let work = c.work[i * self.seg..(i + 1) * self.seg].to_vec();
                    let s = if c.work_pos / self.seg == i {
                        SubConfig::Active {
                            state: c.state,
                            input_pos: c.input_pos,
                            offset: c.work_pos % self.seg,
                            work,
                        }
                    } else {
                        SubConfig::Inactive { work }
                    };
                    self.encode(&s)
                })
                .collect(),
        )
    }

    /// Inverse of [`NtmLabels::segment`]; `None` unless exactly one segment is active.
    pub fn join(&self, v: &[Label]) -> Option<Config> {
        let mut work = Vec::with_capacity(v.len() * self.seg);
        let mut active = None;
        for (i, &l) in v.iter().enumerate() {
            match self.decode(l)? {
                SubConfig::Inactive { work: w } => work.extend(w),
                SubConfig::Active {
                    state,
                    input_pos,
                    offset,
                    work: w,
                } => {
                    if active
                        .replace((state, input_pos, i * self.seg + offset))
                        .is_some()
                    {
                        return None;
                    }
                    work.extend(w);
                }
            }
        }
        let (state, input_pos, work_pos) = active?;
        Some(Config {
            state,
            input_pos,
            work_pos,
            work,
        })
    }

    fn name(&self, m: &NtmSpec, l: Label) -> String {
        let w = |work: &[usize]| {
            work.iter()
                .map(|&a| m.work[a].as_str())
                .collect::<Vec<_>>()
                .join("")
        };
        match self.decode(l).expect("label in range") {
            SubConfig::Inactive { work } => format!("inactive w={}", w(&work)),
            SubConfig::Active {
                state,
                input_pos,
                offset,
                work,
            } => {
                format!(
                    "active q={} in={} off={} w={}",
                    m.states[state],
                    input_pos,
                    offset,
                    w(&work)
                )
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct NtmCompileOptions {
    /// Largest base graph (in vertices) the compiler will build.
    pub max_factor: usize,
}

impl Default for NtmCompileOptions {
    fn default() -> Self {
        NtmCompileOptions {
            max_factor: DEFAULT_MAX_FACTOR,
        }
    }
}

pub fn compile_ntm_reach(ntm: &NtmSpec, x: &[usize]) -> Result<CompiledInstance, ReductionError> {
    compile_ntm_reach_with(ntm, x, &NtmCompileOptions::default()).map(|(c, _)| c)
}

/// Compiles the machine (wrapped with cleanup states) on `x`; `src` reaches
/// `dst` iff some run accepts.
pub fn compile_ntm_reach_with(
    ntm: &NtmSpec,
    x: &[usize],
    opts: &NtmCompileOptions,
) -> Result<(CompiledInstance, NtmLabels), ReductionError> {
    let (m, fin) = ntm.with_cleanup()?;
    let seg = segment_len(x.len());
    let segs = m.space;
    let cells = segs * seg;
    let cap = |size: usize| ReductionError::FactorCap {
        size,
        cap: opts.max_factor,
    };
    let lab = NtmLabels::new(m.states.len(), x.len(), seg, m.work.len())
        .ok_or_else(|| cap(usize::MAX))?;
    let pair_size = lab
        .active_count()
        .checked_mul(lab.inactive_count())
        .and_then(|p| p.checked_mul(2));
    match pair_size {
        Some(p) if segs < 2 || p <= opts.max_factor => {}
        Some(p) => return Err(cap(p)),
        None => return Err(cap(usize::MAX)),
    }
    if lab.active_count() > opts.max_factor {
        return Err(cap(lab.active_count()));
    }
    let tapes = Tapes { x, cells };

    let inactive: Vec<Label> = (0..lab.inactive_count() as Label).collect();
    let active: Vec<Label> = (lab.inactive_count() as Label
        ..(lab.inactive_count() + lab.active_count()) as Label)
        .collect();
    // Successors of an active sub-configuration of segment `i`, seen as a full
    // configuration whose other cells are blank.
    let steps = |i: usize, l: Label| -> Vec<Config> {
        let Some(SubConfig::Active {
            state,
            input_pos,
            offset,
            work,
        }) = lab.decode(l)
        else {
            unreachable!()
        };
        let mut full = vec![0; cells];
        full[i * seg..(i + 1) * seg].copy_from_slice(&work);
        let c = Config {
            state,
            input_pos,
            work_pos: i * seg + offset,
            work: full,
        };
        tapes.successors(&m, &c).collect()
    };
    let local = |c: &Config, i: usize| c.work[i * seg..(i + 1) * seg].to_vec();

    let mut doc = FormulaDoc::new();
    let mut a_ids = Vec::new();
    let mut i_ids = Vec::new();
    for i in 0..segs {
        let mut edges = Vec::new();
        for &l in &active {
            for c in steps(i, l) {
                if c.work_pos / seg == i {
                    let to = SubConfig::Active {
                        state: c.state,
                        input_pos: c.input_pos,
                        offset: c.work_pos % seg,
                        work: local(&c, i),
                    };
                    edges.push((l, lab.encode(&to)));
                }
            }
        }
        a_ids.push(doc.add_graph(BaseGraph::simple(
            format!("A{}", i + 1),
            active.iter().copied(),
            edges,
        )?)?);
        let loops = inactive.iter().map(|&l| (l, l));
        i_ids.push(doc.add_graph(BaseGraph::simple(
            format!("I{}", i + 1),
            inactive.iter().copied(),
            loops,
        )?)?);
    }
    let mut t_ids = Vec::new();
    for i in 1..segs {
        let mut verts = Vec::with_capacity(2 * active.len() * inactive.len());
        let mut edges = Vec::new();
        for &a in &active {
            for &c in &inactive {
                verts.push(vec![a, c]);
                verts.push(vec![c, a]);
            }
        }
        // Head leaves segment i-1 to the right.
        for &a in &active {
            let Some(SubConfig::Active { offset, .. }) = lab.decode(a) else {
                unreachable!()
            };
            if offset != seg - 1 {
                continue;
            }
            for c in steps(i - 1, a)
                .into_iter()
                .filter(|c| c.work_pos / seg == i)
            {
                for &other in &inactive {
                    let Some(SubConfig::Inactive { work: right }) = lab.decode(other) else {
                        unreachable!()
                    };
                    let left = SubConfig::Inactive {
                        work: local(&c, i - 1),
                    };
                    let now = SubConfig::Active {
                        state: c.state,
                        input_pos: c.input_pos,
                        offset: 0,
                        work: right,
                    };
                    edges.push((vec![a, other], vec![lab.encode(&left), lab.encode(&now)]));
                }
            }
        }
        // Head leaves segment i to the left.
        for &a in &active {
            let Some(SubConfig::Active { offset, .. }) = lab.decode(a) else {
                unreachable!()
            };
            if offset != 0 {
                continue;
            }
            for c in steps(i, a)
                .into_iter()
                .filter(|c| c.work_pos / seg == i - 1)
            {
                for &other in &inactive {
                    let Some(SubConfig::Inactive { work: left }) = lab.decode(other) else {
                        unreachable!()
                    };
                    let now = SubConfig::Active {
                        state: c.state,
                        input_pos: c.input_pos,
                        offset: seg - 1,
                        work: left,
                    };
                    let right = SubConfig::Inactive { work: local(&c, i) };
                    edges.push((vec![other, a], vec![lab.encode(&now), lab.encode(&right)]));
                }
            }
        }
        t_ids.push(doc.add_graph(BaseGraph::new(
            format!("T{}_{}", i, i + 1),
            2,
            verts,
            edges,
        )?)?);
    }

    let mut terms = Vec::new();
    for i in 0..segs {
        terms.push(Expr::tensor(
            (0..segs)
                .map(|p| Expr::leaf(if p == i { a_ids[p] } else { i_ids[p] }))
                .collect(),
        ));
    }
    for i in 1..segs {
        let mut factors: Vec<Expr> = (0..i - 1).map(|p| Expr::leaf(i_ids[p])).collect();
        factors.push(Expr::leaf(t_ids[i - 1]));
        factors.extend((i + 1..segs).map(|p| Expr::leaf(i_ids[p])));
        terms.push(Expr::tensor(factors));
    }
    doc.add_formula(FORMULA, Expr::union(terms))?;

    let legend: BTreeMap<Label, String> = inactive
        .iter()
        .chain(&active)
        .map(|&l| (l, lab.name(&m, l)))
        .collect();
    let src = lab.segment(&initial(&m, cells));
    let dst = lab.segment(&Config {
        state: fin,
        input_pos: 0,
        work_pos: 0,
        work: vec![0; cells],
    });
    let inst = CompiledInstance {
        doc,
        formula: FORMULA.into(),
        query: Query::Reach { src, dst },
        legend,
    };
    Ok((inst, lab))
}
