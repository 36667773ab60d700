//! Recursive-descent parser for the `.fg` DSL.
//!
//! Precedence, loosest first: `+` (union), `#` (Cartesian), `*` (tensor).
//! A vertex is an integer or, for wide base graphs, a bracketed tuple.

use crate::{BaseGraph, CoreError, Expr, FormulaDoc, Label, Op};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(Label),
    Sym(char),
    Eof,
}

struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, CoreError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let (start_line, start_col) = (line, col);
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let v = s.parse::<Label>().map_err(|_| CoreError::Syntax {
                line: start_line,
                col: start_col,
                msg: format!("integer `{s}` out of range"),
            })?;
            Tok::Int(v)
        } else if c.is_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if "{}()[],;:=+#*".contains(c) {
            i += 1;
            Tok::Sym(c)
        } else {
            return Err(CoreError::Syntax {
                line,
                col,
                msg: format!("unexpected character `{c}`"),
            });
        };
        col += i - start;
        out.push(Token {
            tok,
            line: start_line,
            col: start_col,
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    doc: FormulaDoc,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Int(v) => format!("`{v}`"),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::Eof => "end of input".to_string(),
    }
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, CoreError> {
        let t = &self.toks[self.pos];
        Err(CoreError::Syntax {
            line: t.line,
            col: t.col,
            msg: msg.into(),
        })
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<(), CoreError> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`, found {}", describe(self.peek())))
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), CoreError> {
        match self.peek() {
            Tok::Ident(s) if s == kw => {
                self.bump();
                Ok(())
            }
            t => {
                let d = describe(t);
                self.err(format!("expected `{kw}`, found {d}"))
            }
        }
    }

    fn ident(&mut self) -> Result<String, CoreError> {
        match self.bump() {
            Tok::Ident(s) => Ok(s),
            t => {
                self.pos -= 1;
                self.err(format!("expected a name, found {}", describe(&t)))
            }
        }
    }

    fn int(&mut self) -> Result<Label, CoreError> {
        match self.peek().clone() {
            Tok::Int(v) => {
                self.bump();
                Ok(v)
            }
            t => self.err(format!("expected an integer, found {}", describe(&t))),
        }
    }

    fn vertex(&mut self) -> Result<Vec<Label>, CoreError> {
        if self.eat_sym('[') {
            let mut v = vec![self.int()?];
            while self.eat_sym(',') {
                v.push(self.int()?);
            }
            self.expect_sym(']')?;
            Ok(v)
        } else {
            Ok(vec![self.int()?])
        }
    }

    fn starts_vertex(&self) -> bool {
        matches!(self.peek(), Tok::Int(_) | Tok::Sym('['))
    }

    fn doc(mut self) -> Result<FormulaDoc, CoreError> {
        loop {
            match self.peek().clone() {
                Tok::Eof => return Ok(self.doc),
                Tok::Ident(s) if s == "graph" => self.graph()?,
                Tok::Ident(s) if s == "formula" => self.formula()?,
                t => {
                    return self.err(format!(
                        "expected `graph` or `formula`, found {}",
                        describe(&t)
                    ))
                }
            }
        }
    }

    fn graph(&mut self) -> Result<(), CoreError> {
        self.bump();
        let name = self.ident()?;
        self.expect_sym('{')?;
        self.expect_keyword("vertices")?;
        self.expect_sym(':')?;
        let mut vertices = Vec::new();
        while self.starts_vertex() {
            vertices.push(self.vertex()?);
        }
        if vertices.is_empty() {
            return self.err("a graph needs at least one vertex");
        }
        self.expect_sym(';')?;
        self.expect_keyword("edges")?;
        self.expect_sym(':')?;
        let mut edges = Vec::new();
        while self.eat_sym('(') {
            let u = self.vertex()?;
            self.expect_sym(',')?;
            let v = self.vertex()?;
            self.expect_sym(')')?;
            edges.push((u, v));
        }
        self.expect_sym(';')?;
        self.expect_sym('}')?;
        let arity = vertices[0].len();
        let g = BaseGraph::new(name, arity, vertices, edges)?;
        self.doc.add_graph(g)?;
        Ok(())
    }

    fn formula(&mut self) -> Result<(), CoreError> {
        self.bump();
        let name = self.ident()?;
        self.expect_sym('=')?;
        let e = self.expr()?;
        self.expect_sym(';')?;
        self.doc.add_formula(name, e)
    }

    fn chain(
        &mut self,
        op: Op,
        next: fn(&mut Self) -> Result<Expr, CoreError>,
    ) -> Result<Expr, CoreError> {
        let mut parts = vec![next(self)?];
        while self.eat_sym(op.symbol()) {
            parts.push(next(self)?);
        }
        Ok(Expr::op(op, parts))
    }

    fn expr(&mut self) -> Result<Expr, CoreError> {
        self.chain(Op::Union, Self::term)
    }

    fn term(&mut self) -> Result<Expr, CoreError> {
        self.chain(Op::Cart, Self::factor)
    }

    fn factor(&mut self) -> Result<Expr, CoreError> {
        self.chain(Op::Tensor, Self::atom)
    }

    fn atom(&mut self) -> Result<Expr, CoreError> {
        if self.eat_sym('(') {
            let e = self.expr()?;
            self.expect_sym(')')?;
            return Ok(e);
        }
        let (line, col) = (self.toks[self.pos].line, self.toks[self.pos].col);
        let name = self.ident()?;
        match self.doc.graph_id(&name) {
            Some(id) => Ok(Expr::leaf(id)),
            None => Err(CoreError::UnknownGraph { name, line, col }),
        }
    }
}

pub(crate) fn parse(text: &str) -> Result<FormulaDoc, CoreError> {
    let toks = lex(text)?;
    Parser {
        toks,
        pos: 0,
        doc: FormulaDoc::new(),
    }
    .doc()
}
