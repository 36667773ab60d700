//! Output of the compilers: a document, a query and a label legend.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use fg_core::{FormulaDoc, Label, Vertex};

use crate::ReductionError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Query {
    /// Is `target` in the lexicographically first maximal independent set?
    Lfmis { target: Vertex },
    /// Does `src` reach `dst`?
    Reach { src: Vertex, dst: Vertex },
}

impl Query {
    /// Parses the `.query` format written by [`Query::to_text`].
    pub fn parse(text: &str) -> Result<(String, Query), ReductionError> {
        let mut kind = None;
        let mut formula = None;
        let mut tuples: BTreeMap<String, Vertex> = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with("//") {
                continue;
            }
            let bad = |msg: &str| ReductionError::Parse {
                line: n + 1,
                msg: msg.to_string(),
            };
            let (key, value) = line
                .split_once(char::is_whitespace)
                .ok_or_else(|| bad("expected `key value`"))?;
            let value = value.trim();
            match key {
                "query" => kind = Some(value.to_string()),
                "formula" => formula = Some(value.to_string()),
                "target" | "src" | "dst" => {
                    let v: Vertex = value.parse().map_err(|_| bad("bad vertex tuple"))?;
                    tuples.insert(key.to_string(), v);
                }
                _ => return Err(bad("unknown key")),
            }
        }
        let missing = |k: &str| ReductionError::Parse {
            line: 0,
            msg: format!("query file lacks `{k}`"),
        };
        let formula = formula.ok_or_else(|| missing("formula"))?;
        let q = match kind.as_deref() {
            Some("lfmis") => Query::Lfmis {
                target: tuples.remove("target").ok_or_else(|| missing("target"))?,
            },
            Some("reach") => Query::Reach {
                src: tuples.remove("src").ok_or_else(|| missing("src"))?,
                dst: tuples.remove("dst").ok_or_else(|| missing("dst"))?,
            },
            Some(other) => {
                return Err(ReductionError::Parse {
                    line: 0,
                    msg: format!("unknown query kind `{other}`"),
                })
            }
            None => return Err(missing("query")),
        };
        Ok((formula, q))
    }

    pub fn to_text(&self, formula: &str) -> String {
        match self {
            Query::Lfmis { target } => format!("query lfmis\nformula {formula}\ntarget {target}\n"),
            Query::Reach { src, dst } => {
                format!("query reach\nformula {formula}\nsrc {src}\ndst {dst}\n")
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct CompiledInstance {
    pub doc: FormulaDoc,
    pub formula: String,
    pub query: Query,
    pub legend: BTreeMap<Label, String>,
}

impl CompiledInstance {
    pub fn legend_text(&self) -> String {
        let mut out = String::new();
        for (l, name) in &self.legend {
            let _ = writeln!(out, "{l}\t{name}");
        }
        out
    }

    pub fn query_text(&self) -> String {
        self.query.to_text(&self.formula)
    }

    /// Writes `<prefix>.fg`, `<prefix>.legend` and `<prefix>.query`, returning the paths.
    pub fn write_files(&self, prefix: &Path) -> std::io::Result<[PathBuf; 3]> {
        let with = |ext: &str| {
            let mut p = prefix.as_os_str().to_owned();
            p.push(ext);
            PathBuf::from(p)
        };
        let paths = [with(".fg"), with(".legend"), with(".query")];
        std::fs::write(&paths[0], self.doc.to_string())?;
        std::fs::write(&paths[1], self.legend_text())?;
        std::fs::write(&paths[2], self.query_text())?;
        Ok(paths)
    }

    /// Labels used by any base graph of the document that have no legend entry.
    pub fn unnamed_labels(&self) -> Vec<Label> {
        let mut missing: Vec<Label> = self
            .doc
            .graphs()
            .iter()
            .flat_map(|g| {
                g.vertices()
                    .flat_map(|v| v.iter().copied())
                    .collect::<Vec<_>>()
            })
            .filter(|l| !self.legend.contains_key(l))
            .collect();
        missing.sort_unstable();
        missing.dedup();
        missing
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn query_round_trip() {
        let q = Query::Reach {
            src: Vertex::new(vec![1, 2]),
            dst: Vertex::new(vec![3, 4]),
        };
        let (f, back) = Query::parse(&q.to_text("G")).unwrap();
        assert_eq!((f.as_str(), back), ("G", q));
        let q = Query::Lfmis {
            target: Vertex::new(vec![0, 9]),
        };
        assert_eq!(Query::parse(&q.to_text("X")).unwrap().1, q);
        assert!(Query::parse("query reach\nformula G\nsrc [1]\n").is_err());
    }
}
