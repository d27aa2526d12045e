//! Concrete syntax: the term DSL, JSON and Graphviz export.
//!
//! ```text
//! term := "z" | "n" | "s"
//!       | "pi[" INT "," INT "]" | "id[" INT "]" | "mpi[" INT ";" INT-LIST "]"
//!       | "diag[" INT "]" | "tw[" INT "," INT "]"
//!       | "comp(" term "," term ")" | "rec(" term "," term ")" | "br(" term "," term ")"
//!       | "prod(" term "," term ")" | "bprod(" term "," term ")" | "bcomp(" term "," term ")"
//! ```
//!
//! `comp(f,g)` reads "f then g", which is `g ∘ f` in the usual notation.
//! Whitespace is ignored everywhere between tokens.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::term::{arity_of, Op, Term};

pub const GRAMMAR: &str = "\
term := \"z\" | \"n\" | \"s\"
      | \"pi[\" INT \",\" INT \"]\" | \"id[\" INT \"]\" | \"mpi[\" INT \";\" INT-LIST \"]\"
      | \"diag[\" INT \"]\" | \"tw[\" INT \",\" INT \"]\"
      | \"comp(\" term \",\" term \")\" | \"rec(\" term \",\" term \")\" | \"br(\" term \",\" term \")\"
      | \"prod(\" term \",\" term \")\" | \"bprod(\" term \",\" term \")\" | \"bcomp(\" term \",\" term \")\"
comp(f,g) is f then g; INT-LIST may be empty";

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, at: usize, message: impl Into<String>) -> Error {
        let before = &self.src[..at.min(self.src.len())];
        let line = before.iter().filter(|&&c| c == b'\n').count() + 1;
        let column = match before.iter().rposition(|&c| c == b'\n') {
            Some(nl) => at - nl,
            None => at + 1,
        };
        Error::Syntax { line, column, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => Err(self.error(self.pos, format!("expected `{}`, found `{}`", c as char, d as char))),
            None => Err(self.error(self.pos, format!("expected `{}`, found end of input", c as char))),
        }
    }

    fn ident(&mut self) -> Result<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(match self.src.get(start) {
                Some(c) => self.error(start, format!("expected a term, found `{}`", *c as char)),
                None => self.error(start, "expected a term, found end of input"),
            });
        }
        Ok((start, std::str::from_utf8(&self.src[start..self.pos]).expect("ascii")))
    }

    fn int(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(start, "expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii")
            .parse()
            .map_err(|_| self.error(start, "integer out of range"))
    }

    fn int_list(&mut self) -> Result<Vec<usize>> {
        let mut xs = Vec::new();
        if self.peek() == Some(b']') {
            return Ok(xs);
        }
        loop {
            xs.push(self.int()?);
            if self.peek() == Some(b',') {
                self.pos += 1;
            } else {
                return Ok(xs);
            }
        }
    }

    fn pair(&mut self) -> Result<(Term, Term)> {
        self.expect(b'(')?;
        let l = self.term()?;
        self.expect(b',')?;
        let r = self.term()?;
        self.expect(b')')?;
        Ok((l, r))
    }

    fn term(&mut self) -> Result<Term> {
        let (at, name) = self.ident()?;
        let t = match name {
            "z" => Term::zero(),
            "n" => Term::null(),
            "s" => Term::succ(),
            "pi" | "tw" => {
                self.expect(b'[')?;
                let a = self.int()?;
                self.expect(b',')?;
                let b = self.int()?;
                self.expect(b']')?;
                if name == "pi" {
                    Term::proj(a, b)
                } else {
                    Term::twist(a, b)
                }
            }
            "id" | "diag" => {
                self.expect(b'[')?;
                let k = self.int()?;
                self.expect(b']')?;
                if name == "id" {
                    Term::id(k)
                } else {
                    Term::diag(k)
                }
            }
            "mpi" => {
                self.expect(b'[')?;
                let k = self.int()?;
                self.expect(b';')?;
                let xs = self.int_list()?;
                self.expect(b']')?;
                Term::mproj(k, xs)
            }
            "comp" | "rec" | "br" | "prod" | "bprod" | "bcomp" => {
                let (l, r) = self.pair()?;
                match name {
                    "comp" => Term::comp(l, r),
                    "rec" => Term::rec(l, r),
                    "br" => Term::brack(l, r),
                    "prod" => Term::prod(l, r),
                    "bprod" => Term::boxtimes(l, r),
                    _ => Term::circt(l, r),
                }
            }
            other => return Err(self.error(at, format!("unknown constructor `{other}`"))),
        };
        Ok(t)
    }
}

/// Parses and type-checks a term.
pub fn parse(src: &str) -> Result<Term> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let t = p.term()?;
    if p.peek().is_some() {
        return Err(p.error(p.pos, "trailing input after term"));
    }
    arity_of(&t)?;
    Ok(t)
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn node_keyword(op: &Op) -> &'static str {
    match op {
        Op::Comp(..) => "comp",
        Op::Rec(..) => "rec",
        Op::Brack(..) => "br",
        Op::Prod(..) => "prod",
        Op::BoxTimes(..) => "bprod",
        Op::CircT(..) => "bcomp",
        Op::Zero => "z",
        Op::Null => "n",
        Op::Succ => "s",
        Op::Proj { .. } => "pi",
        Op::MultiProj { .. } => "mpi",
        Op::Id(_) => "id",
        Op::Diag(_) => "diag",
        Op::Twist(..) => "tw",
    }
}

fn print_into(t: &Term, out: &mut String) {
    let kw = node_keyword(t.op());
    match t.op() {
        Op::Zero | Op::Null | Op::Succ => out.push_str(kw),
        Op::Proj { k, i } => write!(out, "pi[{k},{i}]").unwrap(),
        Op::MultiProj { k, xs } => write!(out, "mpi[{k};{}]", join(xs)).unwrap(),
        Op::Id(k) => write!(out, "id[{k}]").unwrap(),
        Op::Diag(k) => write!(out, "diag[{k}]").unwrap(),
        Op::Twist(a, b) => write!(out, "tw[{a},{b}]").unwrap(),
        op => {
            let (l, r) = op.children().expect("node");
            out.push_str(kw);
            out.push('(');
            print_into(l, out);
            out.push(',');
            print_into(r, out);
            out.push(')');
        }
    }
}

/// Canonical text: no whitespace, so `parse(print(t)) == t`.
pub fn print(t: &Term) -> String {
    let mut s = String::new();
    print_into(t, &mut s);
    s
}

pub fn to_json_value(t: &Term) -> Value {
    let kw = node_keyword(t.op());
    match t.op() {
        Op::Zero | Op::Null | Op::Succ => json!({ "op": kw }),
        Op::Proj { k, i } => json!({ "op": kw, "k": k, "i": i }),
        Op::MultiProj { k, xs } => json!({ "op": kw, "k": k, "xs": xs }),
        Op::Id(k) | Op::Diag(k) => json!({ "op": kw, "k": k }),
        Op::Twist(a, b) => json!({ "op": kw, "a": a, "b": b }),
        op => {
            let (l, r) = op.children().expect("node");
            json!({ "op": kw, "l": to_json_value(l), "r": to_json_value(r) })
        }
    }
}

pub fn to_json(t: &Term) -> String {
    to_json_value(t).to_string()
}

fn json_err(path: &str, message: impl Into<String>) -> Error {
    Error::Json { path: path.to_string(), message: message.into() }
}

fn field<'v>(obj: &'v Map<String, Value>, key: &str, path: &str) -> Result<&'v Value> {
    obj.get(key).ok_or_else(|| json_err(path, format!("missing field `{key}`")))
}

fn int_field(obj: &Map<String, Value>, key: &str, path: &str) -> Result<usize> {
    let v = field(obj, key, path)?;
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| json_err(&format!("{path}.{key}"), "expected a non-negative integer"))
}

fn term_from_value(v: &Value, path: &str) -> Result<Term> {
    let obj = v.as_object().ok_or_else(|| json_err(path, "expected an object"))?;
    let op = field(obj, "op", path)?
        .as_str()
        .ok_or_else(|| json_err(&format!("{path}.op"), "expected a string"))?;
    let child = |key: &str| term_from_value(field(obj, key, path)?, &format!("{path}.{key}"));
    Ok(match op {
        "z" => Term::zero(),
        "n" => Term::null(),
        "s" => Term::succ(),
        "pi" => Term::proj(int_field(obj, "k", path)?, int_field(obj, "i", path)?),
        "mpi" => {
            let xs = field(obj, "xs", path)?
                .as_array()
                .ok_or_else(|| json_err(&format!("{path}.xs"), "expected an array"))?
                .iter()
                .enumerate()
                .map(|(n, x)| {
                    x.as_u64()
                        .and_then(|x| usize::try_from(x).ok())
                        .ok_or_else(|| json_err(&format!("{path}.xs[{n}]"), "expected a non-negative integer"))
                })
                .collect::<Result<Vec<_>>>()?;
            Term::mproj(int_field(obj, "k", path)?, xs)
        }
        "id" => Term::id(int_field(obj, "k", path)?),
        "diag" => Term::diag(int_field(obj, "k", path)?),
        "tw" => Term::twist(int_field(obj, "a", path)?, int_field(obj, "b", path)?),
        "comp" => Term::comp(child("l")?, child("r")?),
        "rec" => Term::rec(child("l")?, child("r")?),
        "br" => Term::brack(child("l")?, child("r")?),
        "prod" => Term::prod(child("l")?, child("r")?),
        "bprod" => Term::boxtimes(child("l")?, child("r")?),
        "bcomp" => Term::circt(child("l")?, child("r")?),
        other => return Err(json_err(&format!("{path}.op"), format!("unknown op `{other}`"))),
    })
}

/// Loads a term from JSON; arities are recomputed, never read from the file.
pub fn from_json(text: &str) -> Result<Term> {
    let v: Value = serde_json::from_str(text).map_err(|e| json_err("$", e.to_string()))?;
    from_json_value(&v)
}

pub fn from_json_value(v: &Value) -> Result<Term> {
    let t = term_from_value(v, "$")?;
    arity_of(&t)?;
    Ok(t)
}

fn dot_symbol(op: &Op) -> &'static str {
    match op {
        Op::Comp(..) => "C",
        Op::Rec(..) => "R",
        Op::Brack(..) => "B",
        Op::Prod(..) => "×",
        Op::BoxTimes(..) => "⊠",
        Op::CircT(..) => "∘₂",
        _ => unreachable!("leaves are labeled by their text"),
    }
}

/// Graphviz rendering of the tree. Internal nodes are circles labeled with
/// their constructor and signature; leaves are boxes labeled with their DSL
/// text. Nodes are numbered in pre-order.
pub fn to_dot(t: &Term) -> String {
    fn walk(t: &Term, next: &mut usize, nodes: &mut String, edges: &mut String) -> usize {
        let me = *next;
        *next += 1;
        match t.children() {
            None => {
                writeln!(nodes, "  n{me} [label=\"{}\", shape=box];", print(t)).unwrap();
            }
            Some((l, r)) => {
                let sig = t.sig().map(|s| s.to_string()).unwrap_or_else(|| "?".into());
                writeln!(nodes, "  n{me} [label=\"{} : {sig}\", shape=circle];", dot_symbol(t.op())).unwrap();
                // children are numbered in pre-order: left at me+1, right after it
                let (a, b) = (me + 1, me + 1 + l.size());
                writeln!(edges, "  n{me} -> n{a};").unwrap();
                writeln!(edges, "  n{me} -> n{b};").unwrap();
                walk(l, next, nodes, edges);
                walk(r, next, nodes, edges);
            }
        }
        me
    }
    let (mut nodes, mut edges) = (String::new(), String::new());
    walk(t, &mut 0, &mut nodes, &mut edges);
    format!("digraph term {{\n  ordering=out;\n{nodes}{edges}}}\n")
}
