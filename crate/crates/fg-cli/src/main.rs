use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fg_algorithms::{
    count_cliques_fpt, count_cliques_naive, lfmis_implicit, lfmis_member, reach, AlgoError,
    CliqueOptions, Engine, IeStrategy, ReachMethod, ReachOptions, DEFAULT_MAX_DECOMPOSITIONS,
    DEFAULT_MAX_STATES,
};
use fg_core::{CoreError, FactoredGraph, FormulaDoc, Vertex, DEFAULT_MAX_VERTICES};
use fg_reductions::{
    compile_kov_reach, compile_ntm_reach_with, compile_tm_lfmis_with, simulate_tm, solve_kov_brute,
    CompiledInstance, KovInstance, NtmCompileOptions, NtmSpec, Query, ReductionError,
    TmCompileOptions, TmSpec, DEFAULT_MAX_FACTOR, DEFAULT_MAX_STEPS,
};
use thiserror::Error;

/// Factored graph toolkit: inspect, query and compile factored graphs.
#[derive(Parser, Debug)]
#[command(name = "fg", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args, Debug)]
struct Source {
    /// Formula document (.fg)
    file: PathBuf,
    /// Formula to use; may be omitted when the document has exactly one
    #[arg(long, short)]
    formula: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Print complexity, component count and component dimensions
    Check {
        file: PathBuf,
        #[arg(long, short)]
        formula: Option<String>,
    },
    /// Build the explicit graph
    Materialize {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_enum, default_value_t = Format::Edges)]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
        max_vertices: usize,
        /// Write here instead of stdout
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Is there an edge from U to V?
    Adjacent {
        #[command(flatten)]
        src: Source,
        u: Vertex,
        v: Vertex,
    },
    /// List the out-neighbours of V
    Neighbors {
        #[command(flatten)]
        src: Source,
        v: Vertex,
    },
    /// Lexicographically first maximal independent set, or membership of one vertex
    Lfmis {
        /// Formula document; optional when --query is given
        file: Option<PathBuf>,
        #[arg(long, short)]
        formula: Option<String>,
        #[arg(long)]
        member: Option<Vertex>,
        /// Query file written by compile-tm-lfmis
        #[arg(long)]
        query: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = EngineArg::Implicit)]
        engine: EngineArg,
        #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
        max_vertices: usize,
    },
    /// Count s-cliques
    Cliques {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        s: usize,
        #[arg(long, value_enum, default_value_t = CliqueMethod::Fpt)]
        method: CliqueMethod,
        #[arg(long, default_value_t = DEFAULT_MAX_DECOMPOSITIONS)]
        max_decompositions: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
        max_vertices: usize,
    },
    /// Is DST reachable from SRC?
    Reach {
        /// Formula document; optional when --query is given
        file: Option<PathBuf>,
        #[arg(long, short)]
        formula: Option<String>,
        #[arg(long)]
        src: Option<Vertex>,
        #[arg(long)]
        dst: Option<Vertex>,
        /// Query file written by compile-kov or compile-ntm-reach
        #[arg(long)]
        query: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
        max_states: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
        max_vertices: usize,
    },
    /// Compile a .kov instance to a reachability query
    CompileKov {
        file: PathBuf,
        /// Output prefix; writes PREFIX.fg, PREFIX.legend and PREFIX.query
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Compile a .tm machine and input to an LFMIS membership query
    CompileTmLfmis {
        file: PathBuf,
        #[arg(long, short)]
        input: String,
        #[arg(long, short)]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: usize,
    },
    /// Compile a .ntm machine and input to a reachability query
    CompileNtmReach {
        file: PathBuf,
        #[arg(long, short)]
        input: String,
        #[arg(long, short)]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_FACTOR)]
        max_factor: usize,
    },
    /// Run a .tm machine and print its trace
    SimulateTm {
        file: PathBuf,
        #[arg(long, short)]
        input: String,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: usize,
    },
    /// Decide a .kov instance by exhaustive search
    SolveKov { file: PathBuf },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Edges,
    Dot,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EngineArg {
    Implicit,
    Materialize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CliqueMethod {
    Fpt,
    Naive,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Implicit,
    Explicit,
    Auto,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Cap(String),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        if e.is_cap() {
            CliError::Cap(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

impl From<AlgoError> for CliError {
    fn from(e: AlgoError) -> Self {
        if e.is_cap() {
            CliError::Cap(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

impl From<ReductionError> for CliError {
    fn from(e: ReductionError) -> Self {
        if e.is_cap() {
            CliError::Cap(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

/// Result of a subcommand: plain output, or a yes/no answer.
enum Outcome {
    Done,
    Answer(bool),
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_doc(path: &Path) -> Result<FormulaDoc, CliError> {
    FormulaDoc::parse(&read(path)?).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn pick_formula(doc: &FormulaDoc, name: Option<&str>) -> Result<String, CliError> {
    if let Some(n) = name {
        return Ok(n.to_string());
    }
    let names: Vec<&str> = doc.formulas().map(|(n, _)| n).collect();
    match names.as_slice() {
        [one] => Ok(one.to_string()),
        [] => Err(CliError::Usage("document has no formulas".into())),
        _ => Err(CliError::Usage(format!(
            "several formulas ({}); choose one with --formula",
            names.join(", ")
        ))),
    }
}

fn bind(doc: &FormulaDoc, name: Option<&str>) -> Result<FactoredGraph, CliError> {
    let name = pick_formula(doc, name)?;
    Ok(doc.factored(&name)?)
}

/// Document, formula name and query, from a query file and/or explicit arguments.
fn with_query(
    file: Option<PathBuf>,
    formula: Option<String>,
    query: Option<PathBuf>,
) -> Result<(FormulaDoc, String, Option<Query>), CliError> {
    let (qformula, q) = match &query {
        Some(p) => {
            let (f, q) = Query::parse(&read(p)?)?;
            (Some(f), Some(q))
        }
        None => (None, None),
    };
    let file = match (file, &query) {
        (Some(f), _) => f,
        (None, Some(p)) => p.with_extension("fg"),
        (None, None) => return Err(CliError::Usage("missing formula document".into())),
    };
    let doc = load_doc(&file)?;
    let name = pick_formula(&doc, formula.or(qformula).as_deref())?;
    Ok((doc, name, q))
}

fn describe(fg: &FactoredGraph) -> String {
    let dims: Vec<String> = fg.component_dims().iter().map(|d| d.to_string()).collect();
    format!(
        "{}, components={}, dims=[{}]",
        fg.complexity(),
        fg.components().len(),
        dims.join(",")
    )
}

fn write_compiled(c: &CompiledInstance, out: &Path) -> Result<(), CliError> {
    let paths = c
        .write_files(out)
        .map_err(|e| CliError::Usage(format!("{}: {e}", out.display())))?;
    for p in paths {
        println!("{}", p.display());
    }
    Ok(())
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.cmd {
        Cmd::Check { file, formula } => {
            let doc = load_doc(&file)?;
            let names: Vec<String> = doc.formulas().map(|(n, _)| n.to_string()).collect();
            if formula.is_some() || names.len() == 1 {
                let fg = bind(&doc, formula.as_deref())?;
                println!("{}", describe(&fg));
            } else {
                for n in names {
                    println!("{n}: {}", describe(&doc.factored(&n)?));
                }
            }
            Ok(Outcome::Done)
        }
        Cmd::Materialize {
            src,
            format,
            max_vertices,
            output,
        } => {
            let fg = bind(&load_doc(&src.file)?, src.formula.as_deref())?;
            let g = fg.materialize(max_vertices)?;
            let text = match format {
                Format::Edges => g.to_edge_list(),
                Format::Dot => g.to_dot(),
            };
            write_out(output.as_deref(), &text)?;
            Ok(Outcome::Done)
        }
        Cmd::Adjacent { src, u, v } => {
            let fg = bind(&load_doc(&src.file)?, src.formula.as_deref())?;
            for w in [&u, &v] {
                if !fg.contains(w) {
                    return Err(CoreError::NotAVertex(w.clone()).into());
                }
            }
            Ok(Outcome::Answer(fg.adjacent(&u, &v)))
        }
        Cmd::Neighbors { src, v } => {
            let fg = bind(&load_doc(&src.file)?, src.formula.as_deref())?;
            if !fg.contains(&v) {
                return Err(CoreError::NotAVertex(v).into());
            }
            for w in fg.out_neighbors(&v) {
                println!("{w}");
            }
            Ok(Outcome::Done)
        }
        Cmd::Lfmis {
            file,
            formula,
            member,
            query,
            engine,
            max_vertices,
        } => {
            let (doc, name, q) = with_query(file, formula, query)?;
            let fg = doc.factored(&name)?;
            let target = match (member, q) {
                (Some(m), _) => Some(m),
                (None, Some(Query::Lfmis { target })) => Some(target),
                (None, Some(_)) => {
                    return Err(CliError::Usage("query file is not an LFMIS query".into()))
                }
                (None, None) => None,
            };
            let engine = match engine {
                EngineArg::Implicit => Engine::Implicit,
                EngineArg::Materialize => Engine::Materialize,
            };
            match target {
                Some(t) => Ok(Outcome::Answer(lfmis_member(
                    &fg,
                    &t,
                    engine,
                    max_vertices,
                )?)),
                None => {
                    let members = match engine {
                        Engine::Implicit => lfmis_implicit(&fg, max_vertices)?.members,
                        Engine::Materialize => {
                            fg_algorithms::lfmis_greedy(&fg.materialize(max_vertices)?)?.members
                        }
                    };
                    for m in members {
                        println!("{m}");
                    }
                    Ok(Outcome::Done)
                }
            }
        }
        Cmd::Cliques {
            src,
            s,
            method,
            max_decompositions,
            max_vertices,
        } => {
            let fg = bind(&load_doc(&src.file)?, src.formula.as_deref())?;
            let count = match method {
                CliqueMethod::Fpt => {
                    let opts = CliqueOptions {
                        max_decompositions,
                        strategy: IeStrategy::Auto,
                    };
                    count_cliques_fpt(&fg, s, &opts)?
                }
                CliqueMethod::Naive => count_cliques_naive(&fg, s, max_vertices)?,
            };
            println!("{}", count.total);
            for (d, c) in &count.per_dimension {
                println!("dim {d}: {c}");
            }
            Ok(Outcome::Done)
        }
        Cmd::Reach {
            file,
            formula,
            src,
            dst,
            query,
            method,
            max_states,
            max_vertices,
        } => {
            let (doc, name, q) = with_query(file, formula, query)?;
            let fg = doc.factored(&name)?;
            let (qs, qd) = match q {
                Some(Query::Reach { src, dst }) => (Some(src), Some(dst)),
                Some(_) => {
                    return Err(CliError::Usage(
                        "query file is not a reachability query".into(),
                    ))
                }
                None => (None, None),
            };
            let s = src
                .or(qs)
                .ok_or_else(|| CliError::Usage("missing --src".into()))?;
            let d = dst
                .or(qd)
                .ok_or_else(|| CliError::Usage("missing --dst".into()))?;
            let method = match method {
                MethodArg::Implicit => ReachMethod::Implicit,
                MethodArg::Explicit => ReachMethod::Explicit,
                MethodArg::Auto => ReachMethod::Auto,
            };
            let opts = ReachOptions {
                max_states,
                max_vertices,
            };
            Ok(Outcome::Answer(reach(&fg, &s, &d, method, &opts)?))
        }
        Cmd::CompileKov { file, out } => {
            let inst: KovInstance = read(&file)?.parse()?;
            write_compiled(&compile_kov_reach(&inst)?, &out)?;
            Ok(Outcome::Done)
        }
        Cmd::CompileTmLfmis {
            file,
            input,
            out,
            max_steps,
        } => {
            let tm: TmSpec = read(&file)?.parse()?;
            let x = tm.parse_input(&input)?;
            let opts = TmCompileOptions {
                max_steps,
                ..TmCompileOptions::default()
            };
            write_compiled(&compile_tm_lfmis_with(&tm, &x, &opts)?.0, &out)?;
            Ok(Outcome::Done)
        }
        Cmd::CompileNtmReach {
            file,
            input,
            out,
            max_factor,
        } => {
            let m: NtmSpec = read(&file)?.parse()?;
            let x = m.parse_input(&input)?;
            write_compiled(
                &compile_ntm_reach_with(&m, &x, &NtmCompileOptions { max_factor })?.0,
                &out,
            )?;
            Ok(Outcome::Done)
        }
        Cmd::SimulateTm {
            file,
            input,
            max_steps,
        } => {
            let tm: TmSpec = read(&file)?.parse()?;
            let x = tm.parse_input(&input)?;
            let trace = simulate_tm(&tm, &x, max_steps)?;
            print!("{}", trace.render(&tm));
            println!(
                "{} after {} steps",
                if trace.accepted { "accept" } else { "reject" },
                trace.steps
            );
            Ok(Outcome::Done)
        }
        Cmd::SolveKov { file } => {
            let inst: KovInstance = read(&file)?.parse()?;
            Ok(Outcome::Answer(solve_kov_brute(&inst)))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Answer(yes)) => {
            println!("{}", if yes { "yes" } else { "no" });
            ExitCode::from(if yes { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("fg: {e}");
            ExitCode::from(match e {
                CliError::Usage(_) => 2,
                CliError::Cap(_) => 3,
            })
        }
    }
}
