//! Documents: named base graphs plus named formulas.

use std::fmt::{self, Write as _};
use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::vertex::write_tuple;
use crate::{BaseGraph, CoreError, Expr, FactoredGraph};

/// A parsed or programmatically built `.fg` document.
#[derive(Clone, Debug, Default)]
pub struct FormulaDoc {
    graphs: Vec<Arc<BaseGraph>>,
    names: FxHashMap<String, usize>,
    formulas: Vec<(String, Expr)>,
    formula_names: FxHashMap<String, usize>,
}

impl FormulaDoc {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn parse(text: &str) -> Result<Self, CoreError> {
        crate::parse::parse(text)
    }

    fn name_taken(&self, name: &str) -> bool {
        self.names.contains_key(name) || self.formula_names.contains_key(name)
    }

    /// Adds a graph and returns its index for use in [`Expr::Leaf`].
    pub fn add_graph(&mut self, g: BaseGraph) -> Result<usize, CoreError> {
        if self.name_taken(g.name()) {
            return Err(CoreError::DuplicateName(g.name().to_string()));
        }
        let id = self.graphs.len();
        self.names.insert(g.name().to_string(), id);
        self.graphs.push(Arc::new(g));
        Ok(id)
    }

    /// Adds a named formula; the expression is stored in canonical form.
    pub fn add_formula(&mut self, name: impl Into<String>, expr: Expr) -> Result<(), CoreError> {
        let name = name.into();
        if self.name_taken(&name) {
            return Err(CoreError::DuplicateName(name));
        }
        if let Some(bad) = expr.leaves().into_iter().find(|&g| g >= self.graphs.len()) {
            panic!("formula `{name}` refers to graph index {bad} outside the document");
        }
        self.formula_names.insert(name.clone(), self.formulas.len());
        self.formulas.push((name, expr.canonical()));
        Ok(())
    }

    pub fn graphs(&self) -> &[Arc<BaseGraph>] {
        &self.graphs
    }

    pub fn graph(&self, id: usize) -> &BaseGraph {
        &self.graphs[id]
    }

    pub fn graph_id(&self, name: &str) -> Option<usize> {
        self.names.get(name).copied()
    }

    pub fn formulas(&self) -> impl Iterator<Item = (&str, &Expr)> {
        self.formulas.iter().map(|(n, e)| (n.as_str(), e))
    }

    pub fn formula(&self, name: &str) -> Option<&Expr> {
        self.formula_names.get(name).map(|&i| &self.formulas[i].1)
    }

    /// Binds the named formula to its graphs.
    pub fn factored(&self, name: &str) -> Result<FactoredGraph, CoreError> {
        let e = self
            .formula(name)
            .ok_or_else(|| CoreError::UnknownFormula(name.to_string()))?;
        self.factored_expr(e)
    }

    pub fn factored_expr(&self, e: &Expr) -> Result<FactoredGraph, CoreError> {
        FactoredGraph::new(&self.graphs, e)
    }

    pub fn factored_with_cap(
        &self,
        name: &str,
        component_cap: usize,
    ) -> Result<FactoredGraph, CoreError> {
        let e = self
            .formula(name)
            .ok_or_else(|| CoreError::UnknownFormula(name.to_string()))?;
        FactoredGraph::with_component_cap(&self.graphs, e, component_cap)
    }

    /// Renders an expression with graph names, every operation parenthesized.
    pub fn expr_string(&self, e: &Expr) -> String {
        let mut s = String::new();
        self.write_expr(&mut s, e).unwrap();
        s
    }

    fn write_expr(&self, f: &mut impl fmt::Write, e: &Expr) -> fmt::Result {
        match e {
            Expr::Leaf(g) => f.write_str(self.graphs[*g].name()),
            Expr::Node(op, cs) => {
                f.write_char('(')?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " {} ", op.symbol())?;
                    }
                    self.write_expr(f, c)?;
                }
                f.write_char(')')
            }
        }
    }
}

fn write_endpoint(f: &mut impl fmt::Write, arity: usize, v: &[u32]) -> fmt::Result {
    if arity == 1 {
        write!(f, "{}", v[0])
    } else {
        write_tuple(f, v)
    }
}

impl fmt::Display for FormulaDoc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.graphs {
            writeln!(f, "graph {} {{", g.name())?;
            f.write_str("  vertices:")?;
            for v in g.vertices() {
                f.write_char(' ')?;
                write_endpoint(f, g.arity(), v)?;
            }
            f.write_str(";\n  edges:")?;
            for (i, j) in g.edges() {
                f.write_str(" (")?;
                write_endpoint(f, g.arity(), g.vertex(i))?;
                f.write_char(',')?;
                write_endpoint(f, g.arity(), g.vertex(j))?;
                f.write_char(')')?;
            }
            f.write_str(";\n}\n")?;
        }
        for (name, e) in &self.formulas {
            write!(f, "formula {name} = ")?;
            self.write_expr(f, e)?;
            f.write_str(";\n")?;
        }
        Ok(())
    }
}
