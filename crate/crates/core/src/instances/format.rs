//! Line-oriented text formats for instances and certificates.
//!
//! ```text
//! domw 1
//! kind <interval|tree-edges|split|subtree-intersection|explicit>
//! # interval:             n, then n lines: id x y w
//! # tree-edges:           nv, then nv-1 lines: u v in_F(0|1) [w]
//! # split:                nv, then nv lines: id side(A|B) w, then m, then m lines: u v
//! # subtree-intersection: nv, then nv-1 lines: u v 1 0, then k, then k lines: w size v1..vsize
//! # explicit:             nv, then nv lines: id w, then m, then m lines: u v
//! ```
//!
//! Certificates: `domw-cert 1`, one `f id value` line per nonzero value, one
//! `I id...` line, one `value n` line. Blank lines and `#` comments are
//! ignored everywhere.

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{
    build_intersection_graph, Certificate, DominationFunction, HostTree, Vertex, WeightedGraph,
};
use crate::interval::{Interval, IntervalFamily};
use crate::split::{validate_split, Side};
use crate::tree_edge::{line_graph, EdgeWeights};

use super::Instance;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: syntax error: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("line {line}: {reason}")]
    Semantic { line: usize, reason: String },
}

fn syntax(line: usize, reason: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        reason: reason.into(),
    }
}

fn semantic(line: usize, reason: impl Into<String>) -> FormatError {
    FormatError::Semantic {
        line,
        reason: reason.into(),
    }
}

struct Records<'a> {
    records: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
    last_line: usize,
}

impl<'a> Records<'a> {
    fn new(text: &'a str) -> Self {
        let mut last_line = 0;
        let records = text
            .lines()
            .enumerate()
            .filter_map(|(i, raw)| {
                last_line = i + 1;
                let body = raw.split('#').next().unwrap_or("");
                let tokens: Vec<&str> = body.split_whitespace().collect();
                (!tokens.is_empty()).then_some((i + 1, tokens))
            })
            .collect();
        Records {
            records,
            pos: 0,
            last_line,
        }
    }

    fn next(&mut self, what: &str) -> Result<(usize, Vec<&'a str>), FormatError> {
        match self.records.get(self.pos) {
            Some(r) => {
                self.pos += 1;
                Ok(r.clone())
            }
            None => Err(syntax(
                self.last_line + 1,
                format!("unexpected end of input, expected {what}"),
            )),
        }
    }

    fn peek_keyword(&self) -> Option<&'a str> {
        self.records.get(self.pos).map(|r| r.1[0])
    }

    /// A record of exactly `arity` tokens.
    fn fixed(&mut self, what: &str, arity: usize) -> Result<(usize, Vec<&'a str>), FormatError> {
        let (line, tokens) = self.next(what)?;
        if tokens.len() != arity {
            return Err(syntax(
                line,
                format!(
                    "expected {what} ({arity} fields), found {} fields",
                    tokens.len()
                ),
            ));
        }
        Ok((line, tokens))
    }

    fn count(&mut self, what: &str) -> Result<(usize, usize), FormatError> {
        let (line, tokens) = self.fixed(what, 1)?;
        Ok((line, number(line, tokens[0], what)?))
    }

    fn finish(&self) -> Result<(), FormatError> {
        match self.records.get(self.pos) {
            Some((line, _)) => Err(syntax(*line, "trailing data")),
            None => Ok(()),
        }
    }
}

fn number<T: FromStr>(line: usize, token: &str, what: &str) -> Result<T, FormatError> {
    token
        .parse()
        .map_err(|_| syntax(line, format!("{what}: cannot parse {token:?}")))
}

fn dense_id(line: usize, token: &str, expected: usize) -> Result<(), FormatError> {
    let id: usize = number(line, token, "id")?;
    if id != expected {
        return Err(semantic(
            line,
            format!("expected id {expected}, found {id}"),
        ));
    }
    Ok(())
}

fn vertex(line: usize, token: &str, nv: usize) -> Result<Vertex, FormatError> {
    let v: Vertex = number(line, token, "vertex")?;
    if v >= nv {
        return Err(semantic(line, format!("unknown vertex {v}")));
    }
    Ok(v)
}

pub fn parse_instance(text: &str) -> Result<Instance, FormatError> {
    let mut rec = Records::new(text);
    let (line, header) = rec.next("header")?;
    if header != ["domw", "1"] {
        return Err(syntax(line, "expected header `domw 1`"));
    }
    let (line, kind) = rec.fixed("kind line", 2)?;
    if kind[0] != "kind" {
        return Err(syntax(line, "expected `kind <name>`"));
    }
    let inst = match kind[1] {
        "interval" => parse_interval(&mut rec)?,
        "tree-edges" => {
            let (tree, weights) = parse_tree(&mut rec, false)?;
            Instance::TreeEdges { tree, weights }
        }
        "split" => parse_split(&mut rec)?,
        "subtree-intersection" => parse_subtrees(&mut rec)?,
        "explicit" => parse_explicit(&mut rec)?,
        other => return Err(syntax(line, format!("unknown kind {other:?}"))),
    };
    rec.finish()?;
    Ok(inst)
}

fn parse_interval(rec: &mut Records) -> Result<Instance, FormatError> {
    let (_, n) = rec.count("interval count")?;
    let mut intervals = Vec::with_capacity(n);
    for i in 0..n {
        let (line, t) = rec.fixed("interval `id x y w`", 4)?;
        dense_id(line, t[0], i)?;
        let x: i64 = number(line, t[1], "x")?;
        let y: i64 = number(line, t[2], "y")?;
        let w: u64 = number(line, t[3], "w")?;
        if x > y {
            return Err(semantic(line, format!("interval [{x},{y}] has x > y")));
        }
        if w == 0 {
            return Err(semantic(line, "weight must be positive"));
        }
        intervals.push(Interval::new(x, y, w));
    }
    let fam = IntervalFamily::new(intervals).map_err(|e| semantic(0, e.to_string()))?;
    Ok(Instance::Interval(fam))
}

/// Host tree records; with `host_only` every edge must read `u v 1 0`.
fn parse_tree(rec: &mut Records, host_only: bool) -> Result<(HostTree, EdgeWeights), FormatError> {
    let (count_line, nv) = rec.count("vertex count")?;
    if nv == 0 {
        return Err(semantic(count_line, "a tree needs at least one vertex"));
    }
    let mut edges = Vec::with_capacity(nv - 1);
    let mut weights = Vec::with_capacity(nv - 1);
    for _ in 0..nv - 1 {
        let (line, t) = rec.next("tree edge `u v in_F [w]`")?;
        if t.len() < 3 {
            return Err(syntax(line, "expected `u v in_F [w]`"));
        }
        let u = vertex(line, t[0], nv)?;
        let v = vertex(line, t[1], nv)?;
        match (t[2], t.len()) {
            ("0", 3) if !host_only => weights.push(None),
            ("1", 4) if host_only => {
                if t[3] != "0" {
                    return Err(semantic(line, "host tree edges carry weight 0"));
                }
                weights.push(None);
            }
            ("1", 4) => {
                let w: u64 = number(line, t[3], "w")?;
                if w == 0 {
                    return Err(semantic(line, "weight must be positive"));
                }
                weights.push(Some(w));
            }
            ("0", _) | ("1", _) => return Err(syntax(line, "wrong field count for in_F")),
            (flag, _) => return Err(syntax(line, format!("in_F must be 0 or 1, found {flag:?}"))),
        }
        if host_only && t[2] != "1" {
            return Err(semantic(line, "host tree edges must have in_F = 1"));
        }
        edges.push((u, v));
    }
    let tree = HostTree::new(nv, edges).map_err(|e| semantic(count_line, e.to_string()))?;
    let weights = EdgeWeights(weights);
    if !host_only && weights.members().is_empty() {
        return Err(semantic(count_line, "F must contain at least one edge"));
    }
    Ok((tree, weights))
}

fn parse_edges(
    rec: &mut Records,
    nv: usize,
) -> Result<(usize, Vec<(Vertex, Vertex)>), FormatError> {
    let (m_line, m) = rec.count("edge count")?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, t) = rec.fixed("edge `u v`", 2)?;
        let u = vertex(line, t[0], nv)?;
        let v = vertex(line, t[1], nv)?;
        if u == v {
            return Err(semantic(line, format!("self-loop at {u}")));
        }
        edges.push((u, v));
    }
    Ok((m_line, edges))
}

fn parse_split(rec: &mut Records) -> Result<Instance, FormatError> {
    let (_, nv) = rec.count("vertex count")?;
    let mut weights = Vec::with_capacity(nv);
    let mut a = Vec::new();
    let mut b = Vec::new();
    for i in 0..nv {
        let (line, t) = rec.fixed("vertex `id side w`", 3)?;
        dense_id(line, t[0], i)?;
        match t[1] {
            "A" => a.push(i),
            "B" => b.push(i),
            s => return Err(syntax(line, format!("side must be A or B, found {s:?}"))),
        }
        let w: u64 = number(line, t[2], "w")?;
        if w == 0 {
            return Err(semantic(line, "weight must be positive"));
        }
        weights.push(w);
    }
    let (m_line, edges) = parse_edges(rec, nv)?;
    let g = WeightedGraph::new(weights, &edges).map_err(|e| semantic(m_line, e.to_string()))?;
    let inst = validate_split(g, &a, &b).map_err(|e| semantic(m_line, e.to_string()))?;
    Ok(Instance::Split(inst))
}

fn parse_subtrees(rec: &mut Records) -> Result<Instance, FormatError> {
    let (tree, _) = parse_tree(rec, true)?;
    let (k_line, k) = rec.count("subtree count")?;
    let mut subtrees = Vec::with_capacity(k);
    let mut weights = Vec::with_capacity(k);
    for _ in 0..k {
        let (line, t) = rec.next("subtree `w size v1..vsize`")?;
        if t.len() < 2 {
            return Err(syntax(line, "expected `w size v1..vsize`"));
        }
        let w: u64 = number(line, t[0], "w")?;
        let size: usize = number(line, t[1], "size")?;
        if t.len() != 2 + size {
            return Err(syntax(
                line,
                format!("size {size} but {} vertices listed", t.len() - 2),
            ));
        }
        let members = t[2..]
            .iter()
            .map(|tok| vertex(line, tok, tree.vertex_count()))
            .collect::<Result<Vec<_>, _>>()?;
        if w == 0 {
            return Err(semantic(line, "weight must be positive"));
        }
        subtrees.push(members);
        weights.push(w);
    }
    build_intersection_graph(&tree, &subtrees, &weights)
        .map_err(|e| semantic(k_line, e.to_string()))?;
    Ok(Instance::SubtreeIntersection {
        tree,
        subtrees,
        weights,
    })
}

fn parse_explicit(rec: &mut Records) -> Result<Instance, FormatError> {
    let (_, nv) = rec.count("vertex count")?;
    let mut weights = Vec::with_capacity(nv);
    for i in 0..nv {
        let (line, t) = rec.fixed("vertex `id w`", 2)?;
        dense_id(line, t[0], i)?;
        let w: u64 = number(line, t[1], "w")?;
        if w == 0 {
            return Err(semantic(line, "weight must be positive"));
        }
        weights.push(w);
    }
    let (m_line, edges) = parse_edges(rec, nv)?;
    let g = WeightedGraph::new(weights, &edges).map_err(|e| semantic(m_line, e.to_string()))?;
    Ok(Instance::Explicit(g))
}

fn write_tree(out: &mut String, tree: &HostTree, weights: &[Option<u64>], host_only: bool) {
    writeln!(out, "{}", tree.vertex_count()).unwrap();
    for (&(u, v), w) in tree.edges().iter().zip(weights) {
        match (host_only, w) {
            (true, _) => writeln!(out, "{u} {v} 1 0"),
            (false, Some(w)) => writeln!(out, "{u} {v} 1 {w}"),
            (false, None) => writeln!(out, "{u} {v} 0"),
        }
        .unwrap();
    }
}

pub fn write_instance(inst: &Instance) -> String {
    let mut out = String::from("domw 1\n");
    writeln!(out, "kind {}", inst.kind_name()).unwrap();
    match inst {
        Instance::Interval(fam) => {
            writeln!(out, "{}", fam.len()).unwrap();
            for (i, iv) in fam.intervals().iter().enumerate() {
                writeln!(out, "{i} {} {} {}", iv.left, iv.right, iv.weight).unwrap();
            }
        }
        Instance::TreeEdges { tree, weights } => write_tree(&mut out, tree, &weights.0, false),
        Instance::Split(s) => {
            let g = s.graph();
            writeln!(out, "{}", g.len()).unwrap();
            for v in 0..g.len() {
                let side = match s.side(v) {
                    Side::Clique => "A",
                    Side::Independent => "B",
                };
                writeln!(out, "{v} {side} {}", g.weight(v)).unwrap();
            }
            write_edges(&mut out, g);
        }
        Instance::SubtreeIntersection {
            tree,
            subtrees,
            weights,
        } => {
            write_tree(&mut out, tree, &vec![None; tree.edges().len()], true);
            writeln!(out, "{}", subtrees.len()).unwrap();
            for (s, w) in subtrees.iter().zip(weights) {
                write!(out, "{w} {}", s.len()).unwrap();
                for v in s {
                    write!(out, " {v}").unwrap();
                }
                out.push('\n');
            }
        }
        Instance::Explicit(g) => {
            writeln!(out, "{}", g.len()).unwrap();
            for v in 0..g.len() {
                writeln!(out, "{v} {}", g.weight(v)).unwrap();
            }
            write_edges(&mut out, g);
        }
    }
    out
}

fn write_edges(out: &mut String, g: &WeightedGraph) {
    let edges = g.edges();
    writeln!(out, "{}", edges.len()).unwrap();
    for (u, v) in edges {
        writeln!(out, "{u} {v}").unwrap();
    }
}

pub fn write_certificate(c: &Certificate) -> String {
    let mut out = String::from("domw-cert 1\n");
    for (v, x) in c.dominating.support() {
        writeln!(out, "f {v} {x}").unwrap();
    }
    out.push('I');
    for v in &c.dispersed {
        write!(out, " {v}").unwrap();
    }
    out.push('\n');
    writeln!(out, "value {}", c.value).unwrap();
    out
}

pub fn parse_certificate(text: &str) -> Result<Certificate, FormatError> {
    let mut rec = Records::new(text);
    let (line, header) = rec.next("header")?;
    if header != ["domw-cert", "1"] {
        return Err(syntax(line, "expected header `domw-cert 1`"));
    }
    let mut f = DominationFunction::zeros(0);
    while rec.peek_keyword() == Some("f") {
        let (line, t) = rec.fixed("`f id value`", 3)?;
        let v: Vertex = number(line, t[1], "id")?;
        let x: u64 = number(line, t[2], "value")?;
        if f.get(v) != 0 {
            return Err(semantic(line, format!("duplicate f entry for {v}")));
        }
        f.set(v, x);
    }
    let (line, t) = rec.next("`I id...` line")?;
    if t[0] != "I" {
        return Err(syntax(line, "expected `I id...`"));
    }
    let dispersed = t[1..]
        .iter()
        .map(|tok| number(line, tok, "id"))
        .collect::<Result<Vec<Vertex>, _>>()?;
    let (line, t) = rec.fixed("`value n`", 2)?;
    if t[0] != "value" {
        return Err(syntax(line, "expected `value n`"));
    }
    let value: u64 = number(line, t[1], "value")?;
    rec.finish()?;
    Ok(Certificate::new(f, dispersed, value))
}

impl Instance {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Instance::Interval(_) => "interval",
            Instance::TreeEdges { .. } => "tree-edges",
            Instance::Split(_) => "split",
            Instance::SubtreeIntersection { .. } => "subtree-intersection",
            Instance::Explicit(_) => "explicit",
        }
    }

    /// The graph the instance stands for: the interval graph, the line graph
    /// of `F`, the split graph, the subtree intersection graph, or the graph
    /// itself.
    pub fn graph(&self) -> Result<WeightedGraph, String> {
        match self {
            Instance::Interval(fam) => Ok(fam.graph()),
            Instance::TreeEdges { tree, weights } => {
                line_graph(tree, weights).map_err(|e| e.to_string())
            }
            Instance::Split(s) => Ok(s.graph().clone()),
            Instance::SubtreeIntersection {
                tree,
                subtrees,
                weights,
            } => build_intersection_graph(tree, subtrees, weights).map_err(|e| e.to_string()),
            Instance::Explicit(g) => Ok(g.clone()),
        }
    }
}
