//! Factored graphs: graphs given as formulas of Cartesian products, tensor
//! products and unions over small explicit base graphs.
//!
//! Parse a document with [`FormulaDoc::parse`], bind a formula with
//! [`FormulaDoc::factored`], then query the resulting [`FactoredGraph`]
//! without building the full graph.

mod component;
mod doc;
mod error;
mod explicit;
mod factored;
mod formula;
mod graph;
mod parse;
mod vertex;

pub use component::{CKind, CNode, ComponentTree};
pub use doc::FormulaDoc;
pub use error::CoreError;
pub use explicit::ExplicitGraph;
pub use factored::{Complexity, FactoredGraph, VertexStream, DEFAULT_COMPONENT_CAP};
pub use formula::{Expr, Op};
pub use graph::BaseGraph;
pub use vertex::{tuple_string, vertex_order, Label, Vertex};

/// Default cap on materialized vertices.
pub const DEFAULT_MAX_VERTICES: usize = 1_000_000;
