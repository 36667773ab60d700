mod common;

use fg_core::{BaseGraph, CoreError, ExplicitGraph, Expr, FormulaDoc, Op, Vertex};

const RUNNING: &str = "
graph A { vertices: 0 1 2; edges: (0,1) (1,2); }
graph B { vertices: 3 4 5; edges: (3,4); }
graph C { vertices: 6 7 8; edges: (6,8) (8,6); }
graph D { vertices: 9 10 11; edges: (9,10) (10,11) (11,9); }
graph E { vertices: 12 13 14; edges: (12,13); }
graph F { vertices: 13 14 15; edges: (14,15) (15,13); }
formula G = ((A*B)+C) # (D*(E+F));
";

const GRID: &str = "graph P { vertices: 0 1; edges: (0,1); }
formula G = P # P;
formula T = P * P;";

fn v(s: &str) -> Vertex {
    s.parse().unwrap()
}

#[test]
fn running_example_components() {
    let doc = FormulaDoc::parse(RUNNING).unwrap();
    let g = doc.factored("G").unwrap();
    assert_eq!(g.complexity().to_string(), "(n=3, k=6)");
    let names: Vec<(String, usize)> = g
        .components()
        .iter()
        .map(|c| (c.describe(), c.dim()))
        .collect();
    assert_eq!(
        names,
        vec![
            ("((A * B) # (D * E))".to_string(), 4),
            ("((A * B) # (D * F))".to_string(), 4),
            ("(C # (D * E))".to_string(), 3),
            ("(C # (D * F))".to_string(), 3),
        ]
    );
    assert_eq!(g.component_dims(), vec![3, 3, 4, 4]);
    assert!(g.components().len() <= 1 << g.complexity().k);
}

#[test]
fn shared_label_lies_in_two_components() {
    let doc = FormulaDoc::parse(RUNNING).unwrap();
    let g = doc.factored("G").unwrap();
    let x = [6, 9, 13];
    let holders: Vec<String> = g
        .components()
        .iter()
        .filter(|c| c.contains(&x))
        .map(|c| c.describe())
        .collect();
    assert_eq!(holders, vec!["(C # (D * E))", "(C # (D * F))"]);
    assert_eq!(g.dimension_of(&x), Ok(3));
    assert!(!g.components()[2].contains(&[6, 9, 13, 0]));
    assert!(matches!(
        g.dimension_of(&[6, 9, 99]),
        Err(CoreError::NotAVertex(_))
    ));
}

#[test]
fn leaf_and_union_components() {
    let doc = FormulaDoc::parse(
        "graph A { vertices: 0; edges: ; } graph B { vertices: 1; edges: ; } graph C { vertices: 2; edges: ; }
         formula L = A; formula U = A + B + C; formula P = A # B;",
    )
    .unwrap();
    let l = doc.factored("L").unwrap();
    assert_eq!(l.complexity().to_string(), "(n=1, k=1)");
    assert_eq!(l.dimension_of(&[0]), Ok(1));
    assert_eq!(doc.factored("U").unwrap().components().len(), 3);
    let p = doc.factored("P").unwrap();
    assert_eq!(p.components().len(), 1);
    assert_eq!(p.components()[0].describe(), "(A # B)");
}

#[test]
fn empty_power_complexity() {
    let mut doc = FormulaDoc::new();
    let id = doc
        .add_graph(BaseGraph::simple("K", 0..4, []).unwrap())
        .unwrap();
    for k in 1..6 {
        let e = Expr::cart(vec![Expr::leaf(id); k]);
        let c = doc.factored_expr(&e).unwrap().complexity();
        assert_eq!((c.n, c.k), (4, k));
    }
}

#[test]
fn grid_adjacency_and_neighbors() {
    let doc = FormulaDoc::parse(GRID).unwrap();
    let g = doc.factored("G").unwrap();
    assert!(g.adjacent(&[0, 0], &[0, 1]));
    assert!(!g.adjacent(&[0, 0], &[1, 1]));
    assert!(!g.adjacent(&[0, 0], &[0, 0]));
    assert!(!g.adjacent(&[0, 0], &[0, 0, 1]));
    assert!(!g.adjacent(&[0, 7], &[0, 1]));
    assert_eq!(g.out_neighbors(&[0, 0]), vec![v("[0,1]"), v("[1,0]")]);
    assert!(g.out_neighbors(&[5, 5]).is_empty());
    let t = doc.factored("T").unwrap();
    assert_eq!(t.out_neighbors(&[0, 0]), vec![v("[1,1]")]);
}

#[test]
fn enumerate_examples() {
    let doc = FormulaDoc::parse(
        "graph K { vertices: 0 1; edges: ; } graph L { vertices: 4 2 9; edges: ; }
         graph M { vertices: 1 2; edges: ; }
         formula G = K # K; formula H = L; formula U = (K # M) + (M # K);",
    )
    .unwrap();
    let got: Vec<String> = doc
        .factored("G")
        .unwrap()
        .vertices()
        .map(|v| v.to_string())
        .collect();
    assert_eq!(got, ["[0,0]", "[0,1]", "[1,0]", "[1,1]"]);
    let got: Vec<String> = doc
        .factored("H")
        .unwrap()
        .vertices()
        .map(|v| v.to_string())
        .collect();
    assert_eq!(got, ["[2]", "[4]", "[9]"]);
    let u = doc.factored("U").unwrap();
    let got: Vec<String> = u.vertices().map(|v| v.to_string()).collect();
    assert_eq!(
        got,
        ["[0,1]", "[0,2]", "[1,0]", "[1,1]", "[1,2]", "[2,0]", "[2,1]"]
    );
    assert_eq!(u.estimated_vertex_count(), 8);
    assert!(matches!(
        u.enumerate_vertices(7),
        Err(CoreError::SizeCap { cap: 7 })
    ));
    assert_eq!(u.enumerate_vertices(8).unwrap().count(), 7);
}

#[test]
fn mixed_dimensions_order_dimension_major() {
    let doc = FormulaDoc::parse(
        "graph A { vertices: 5; edges: ; } graph B { vertices: 0; edges: ; } formula F = A + (B # B);",
    )
    .unwrap();
    let got: Vec<String> = doc
        .factored("F")
        .unwrap()
        .vertices()
        .map(|v| v.to_string())
        .collect();
    assert_eq!(got, ["[5]", "[0,0]"]);
}

#[test]
fn empty_product_is_empty_graph() {
    for n in 1..=8u32 {
        for m in 1..=8u32 {
            let mut doc = FormulaDoc::new();
            let a = doc
                .add_graph(BaseGraph::simple("A", 0..n, []).unwrap())
                .unwrap();
            let b = doc
                .add_graph(BaseGraph::simple("B", 100..100 + m, []).unwrap())
                .unwrap();
            let g = doc
                .factored_expr(&Expr::cart(vec![Expr::leaf(a), Expr::leaf(b)]))
                .unwrap();
            let x = g.materialize(1000).unwrap();
            assert_eq!(x.len(), (n * m) as usize);
            assert_eq!(x.edge_count(), 0);
        }
    }
}

#[test]
fn chains_flatten_identically() {
    let doc = FormulaDoc::parse(
        "graph G1 { vertices: 0 1 2; edges: (0,1) (1,2) (2,2); }
         graph G2 { vertices: 1 3; edges: (3,1) (1,3); }
         graph G3 { vertices: 0 4; edges: (0,4); }
         formula LC = (G1 # G2) # G3; formula RC = G1 # (G2 # G3);
         formula LT = (G1 * G2) * G3; formula RT = G1 * (G2 * G3);
         formula LU = (G1 + G2) + G3; formula RU = G1 + (G2 + G3);",
    )
    .unwrap();
    for (l, r) in [("LC", "RC"), ("LT", "RT"), ("LU", "RU")] {
        let a = doc.factored(l).unwrap().materialize(1000).unwrap();
        let b = doc.factored(r).unwrap().materialize(1000).unwrap();
        assert_eq!(a, b, "{l} vs {r}");
    }
}

#[test]
fn mixed_ops_do_not_associate() {
    let doc = FormulaDoc::parse(
        "graph G1 { vertices: 0 1; edges: (0,1); }
         graph G2 { vertices: 0 1; edges: (0,1); }
         graph G3 { vertices: 0 1; edges: (0,1); }
         formula X = (G1 * G2) # G3; formula Y = G1 * (G2 # G3);",
    )
    .unwrap();
    let x = doc.factored("X").unwrap().materialize(100).unwrap();
    let y = doc.factored("Y").unwrap().materialize(100).unwrap();
    assert_eq!(x.vertices(), y.vertices());
    assert_ne!(x, y);
    let xi = x.index_of(&[0, 0, 0]).unwrap();
    let to = x.index_of(&[0, 0, 1]).unwrap();
    assert!(x.has_edge(xi, to));
    assert!(!y.has_edge(xi, to));
}

#[test]
fn edge_list_and_dot_round_trip() {
    let doc = FormulaDoc::parse(RUNNING).unwrap();
    let g = doc.factored("G").unwrap().materialize(10_000).unwrap();
    let text = g.to_edge_list();
    assert_eq!(ExplicitGraph::from_edge_list(&text).unwrap(), g);
    let dot = g.to_dot();
    assert!(dot.starts_with("digraph G {\n"));
    assert_eq!(dot.matches(" -> ").count(), g.edge_count());
    assert!(ExplicitGraph::from_edge_list("[0] -> x").is_err());
}

#[test]
fn materialize_cap() {
    let doc = FormulaDoc::parse(RUNNING).unwrap();
    let g = doc.factored("G").unwrap();
    let n = g.materialize(10_000).unwrap().len();
    assert!(matches!(
        g.materialize(n - 1),
        Err(CoreError::SizeCap { .. })
    ));
    assert_eq!(g.materialize(n).unwrap().len(), n);
}

#[test]
fn component_cap_guard() {
    let mut text = String::from(
        "graph A { vertices: 0; edges: ; } graph B { vertices: 1; edges: ; }\nformula F = ",
    );
    text.push_str(&["(A + B)"; 12].join(" # "));
    text.push(';');
    let doc = FormulaDoc::parse(&text).unwrap();
    assert_eq!(doc.factored("F").unwrap().components().len(), 4096);
    assert!(matches!(
        doc.factored_with_cap("F", 4095),
        Err(CoreError::ComponentCap { cap: 4095 })
    ));
}

#[test]
fn wide_leaves_behave_like_tuples() {
    let doc = FormulaDoc::parse(
        "graph W { vertices: [0,1] [0,2]; edges: ([0,1],[0,2]); }
         graph P { vertices: 7 8; edges: (7,8); }
         formula F = W # P; formula T = W * P;",
    )
    .unwrap();
    let f = doc.factored("F").unwrap();
    assert_eq!(f.component_dims(), vec![3]);
    assert!(f.adjacent(&[0, 1, 7], &[0, 2, 7]));
    assert!(f.adjacent(&[0, 1, 7], &[0, 1, 8]));
    assert_eq!(f.out_neighbors(&[0, 1, 7]).len(), 2);
    let t = doc.factored("T").unwrap();
    assert_eq!(t.out_neighbors(&[0, 1, 7]), vec![v("[0,2,8]")]);
    let m = t.materialize(100).unwrap();
    let o = common::eval(&doc, doc.formula("T").unwrap());
    assert_eq!(m.len(), o.vertices.len());
    assert_eq!(m.edge_count(), o.edges.len());
}

#[test]
fn programmatic_doc_prints_and_reparses() {
    let mut doc = FormulaDoc::new();
    let a = doc
        .add_graph(BaseGraph::simple("A", [0, 1], [(0, 1)]).unwrap())
        .unwrap();
    let b = doc
        .add_graph(BaseGraph::simple("B", [1, 2], [(2, 2)]).unwrap())
        .unwrap();
    doc.add_formula(
        "F",
        Expr::bin(
            Op::Union,
            Expr::leaf(a),
            Expr::bin(Op::Tensor, Expr::leaf(b), Expr::leaf(a)),
        ),
    )
    .unwrap();
    assert!(doc
        .add_graph(BaseGraph::simple("F", [0], []).unwrap())
        .is_err());
    let again = FormulaDoc::parse(&doc.to_string()).unwrap();
    assert_eq!(again.to_string(), doc.to_string());
}
