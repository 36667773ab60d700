//! Lexicographically first maximal independent set.

use fg_core::{ExplicitGraph, FactoredGraph, Label, Vertex};

use crate::AlgoError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LfmisResult {
    /// Members in vertex order.
    pub members: Vec<Vertex>,
    /// Membership of the query vertex, when one was given.
    pub query: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    /// Streams vertices and tests candidates with implicit adjacency.
    Implicit,
    /// Materializes the graph and runs the greedy algorithm.
    Materialize,
}

/// Greedy LFMIS: scan vertices in order, keep a vertex when it has no edge
/// in either direction to an earlier member.
pub fn lfmis_greedy(g: &ExplicitGraph) -> Result<LfmisResult, AlgoError> {
    let idx = lfmis_greedy_indices(g)?;
    Ok(LfmisResult {
        members: idx.into_iter().map(|i| g.vertex(i).clone()).collect(),
        query: None,
    })
}

/// Indices of the greedy LFMIS members.
pub fn lfmis_greedy_indices(g: &ExplicitGraph) -> Result<Vec<usize>, AlgoError> {
    if let Some(i) = (0..g.len()).find(|&i| g.has_edge(i, i)) {
        return Err(AlgoError::SelfLoop(g.vertex(i).clone()));
    }
    let mut member = vec![false; g.len()];
    let mut blocked = vec![false; g.len()];
    let mut out = Vec::new();
    for i in 0..g.len() {
        if blocked[i] || g.out(i).iter().any(|&j| member[j as usize]) {
            continue;
        }
        member[i] = true;
        out.push(i);
        for &j in g.out(i) {
            blocked[j as usize] = true;
        }
    }
    Ok(out)
}

/// Decides whether `v` belongs to the LFMIS of `fg`.
///
/// `max_vertices` caps materialization, or the number of streamed
/// candidates for the implicit engine. Non-vertices are never members.
pub fn lfmis_member(
    fg: &FactoredGraph,
    v: &[Label],
    engine: Engine,
    max_vertices: usize,
) -> Result<bool, AlgoError> {
    if !fg.contains(v) {
        return Ok(false);
    }
    match engine {
        Engine::Materialize => {
            let g = fg.materialize(max_vertices)?;
            let target = g.index_of(v).expect("vertex of f is materialized");
            Ok(lfmis_greedy_indices(&g)?.binary_search(&target).is_ok())
        }
        Engine::Implicit => {
            let members = implicit_scan(fg, v.len(), Some(v), max_vertices)?;
            Ok(members.last().map(|m| m.labels() == v).unwrap_or(false))
        }
    }
}

/// Full LFMIS computed by the implicit engine, one dimension class at a time.
pub fn lfmis_implicit(fg: &FactoredGraph, max_vertices: usize) -> Result<LfmisResult, AlgoError> {
    let mut members = Vec::new();
    for d in fg.dims() {
        members.extend(implicit_scan(fg, d, None, max_vertices)?);
    }
    Ok(LfmisResult {
        members,
        query: None,
    })
}

/// Greedy scan over the vertices of dimension `d`, stopping after `stop`.
/// Vertices of other dimensions are never adjacent, so classes are independent.
fn implicit_scan(
    fg: &FactoredGraph,
    d: usize,
    stop: Option<&[Label]>,
    cap: usize,
) -> Result<Vec<Vertex>, AlgoError> {
    if let Some(c) = fg.components_of_dim(d).find(|c| c.has_self_loop()) {
        let w = fg
            .vertices_of_dim(d)
            .find(|w| c.contains(w) && fg.adjacent(w, w))
            .expect("component with a self-loop has a looped vertex");
        return Err(AlgoError::SelfLoop(w));
    }
    let mut members: Vec<Vertex> = Vec::new();
    for (seen, cand) in fg.vertices_of_dim(d).enumerate() {
        if seen >= cap {
            return Err(AlgoError::Core(fg_core::CoreError::SizeCap { cap }));
        }
        let free = members
            .iter()
            .all(|m| !fg.adjacent(m, &cand) && !fg.adjacent(&cand, m));
        let done = stop.map(|s| s == cand.labels()).unwrap_or(false);
        if free {
            members.push(cand);
        }
        if done {
            break;
        }
    }
    Ok(members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use fg_core::{BaseGraph, Expr, FormulaDoc};

    fn explicit(n: u32, edges: &[(u32, u32)]) -> ExplicitGraph {
        let vs: Vec<Vertex> = (0..n).map(|i| Vertex::new(vec![i])).collect();
        ExplicitGraph::from_sorted(vs, edges.to_vec())
    }

    #[test]
    fn empty_graph_takes_everything() {
        let r = lfmis_greedy(&explicit(4, &[])).unwrap();
        assert_eq!(r.members.len(), 4);
    }

    #[test]
    fn path_skips_middle() {
        let r = lfmis_greedy(&explicit(3, &[(0, 1), (1, 0), (1, 2), (2, 1)])).unwrap();
        let got: Vec<String> = r.members.iter().map(|v| v.to_string()).collect();
        assert_eq!(got, ["[0]", "[2]"]);
    }

    #[test]
    fn direction_does_not_matter() {
        let r = lfmis_greedy(&explicit(3, &[(2, 0)])).unwrap();
        assert_eq!(r.members.len(), 2);
        assert_eq!(r.members[1].labels(), &[1]);
    }

    #[test]
    fn self_loop_is_an_error() {
        assert!(matches!(
            lfmis_greedy(&explicit(2, &[(1, 1)])),
            Err(AlgoError::SelfLoop(_))
        ));
    }

    #[test]
    fn leaf_empty_graph_members() {
        let mut doc = FormulaDoc::new();
        let a = doc
            .add_graph(BaseGraph::simple("A", 0..5, []).unwrap())
            .unwrap();
        let fg = doc.factored_expr(&Expr::leaf(a)).unwrap();
        for v in 0..5 {
            assert!(lfmis_member(&fg, &[v], Engine::Implicit, 100).unwrap());
            assert!(lfmis_member(&fg, &[v], Engine::Materialize, 100).unwrap());
        }
        assert!(!lfmis_member(&fg, &[9], Engine::Implicit, 100).unwrap());
    }

    #[test]
    fn grid_engines_agree() {
        let doc = FormulaDoc::parse(
            "graph P { vertices: 0 1 2; edges: (0,1) (1,2); } formula G = P # P; formula L = P # (P + Q);
             graph Q { vertices: 2 3; edges: (3,3); }",
        );
        assert!(doc.is_err());
        let doc = FormulaDoc::parse(
            "graph P { vertices: 0 1 2; edges: (0,1) (1,2); } graph Q { vertices: 2 3; edges: (3,3); }
             formula G = P # P; formula L = P # (P + Q);",
        )
        .unwrap();
        let g = doc.factored("G").unwrap();
        let full = lfmis_greedy(&g.materialize(100).unwrap()).unwrap();
        assert_eq!(lfmis_implicit(&g, 100).unwrap(), full);
        for v in g.vertices() {
            let m = full.members.contains(&v);
            assert_eq!(lfmis_member(&g, &v, Engine::Implicit, 100).unwrap(), m);
            assert_eq!(lfmis_member(&g, &v, Engine::Materialize, 100).unwrap(), m);
        }
        let l = doc.factored("L").unwrap();
        assert!(matches!(
            lfmis_member(&l, &[0, 0], Engine::Implicit, 100),
            Err(AlgoError::SelfLoop(_))
        ));
        assert!(matches!(
            lfmis_member(&l, &[0, 0], Engine::Materialize, 100),
            Err(AlgoError::SelfLoop(_))
        ));
    }
}
