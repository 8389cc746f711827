//! Plain-text graph, arc and dominating-set files.
//!
//! ```text
//! c optional comments
//! p <n> <m>
//! e <u> <v>      undirected edge, u < v        (graph files)
//! a <tail> <head>                              (arc files)
//! d <v>          one dominator per line        (dominating-set files)
//! ```
//!
//! Ids are 0-based. Fields are separated by single spaces and lines end in
//! LF. Blank lines are ignored; any other unknown line type is an error.
//! `m` counts the `e` or `a` lines; dominating-set files need no header.

use crate::error::{Error, Result};
use crate::graph::{UndirectedGraph, VertexId};
use crate::orientation::Orientation;
use std::fmt::Write as _;

/// The parsed contents of one file. Edge and arc lists keep file order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphFile {
    pub header: Option<(usize, usize)>,
    pub edges: Vec<(VertexId, VertexId)>,
    pub arcs: Vec<(VertexId, VertexId)>,
    pub dset: Vec<VertexId>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn fields<const K: usize>(line: usize, rest: &[&str]) -> Result<[usize; K]> {
    if rest.len() != K {
        return Err(parse_err(line, format!("expected {K} fields, found {}", rest.len())));
    }
    let mut out = [0; K];
    for (slot, tok) in out.iter_mut().zip(rest) {
        *slot = tok.parse().map_err(|_| parse_err(line, format!("not a non-negative integer: {tok:?}")))?;
    }
    Ok(out)
}

impl GraphFile {
    /// Tokenizes a file without semantic checks beyond field syntax.
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = GraphFile::default();
        for (idx, raw) in text.split('\n').enumerate() {
            let line = idx + 1;
            if raw.is_empty() {
                continue;
            }
            let toks: Vec<&str> = raw.split(' ').collect();
            match toks[0] {
                "c" => {}
                "p" => {
                    if out.header.is_some() {
                        return Err(parse_err(line, "duplicate header"));
                    }
                    if !out.edges.is_empty() || !out.arcs.is_empty() {
                        return Err(parse_err(line, "header after data lines"));
                    }
                    let [n, m] = fields::<2>(line, &toks[1..])?;
                    out.header = Some((n, m));
                }
                "e" => {
                    let [u, v] = fields::<2>(line, &toks[1..])?;
                    if u >= v {
                        return Err(parse_err(line, format!("edge {u} {v} must satisfy u < v")));
                    }
                    out.edges.push((u, v));
                }
                "a" => {
                    let [t, h] = fields::<2>(line, &toks[1..])?;
                    out.arcs.push((t, h));
                }
                "d" => {
                    let [v] = fields::<1>(line, &toks[1..])?;
                    out.dset.push(v);
                }
                other => return Err(parse_err(line, format!("unknown line type {other:?}"))),
            }
        }
        Ok(out)
    }

    fn checked_header(&self, count: usize, what: &str) -> Result<usize> {
        let (n, m) = self.header.ok_or_else(|| parse_err(0, "missing header line `p <n> <m>`"))?;
        if m != count {
            return Err(parse_err(0, format!("header announces {m} {what} but file has {count}")));
        }
        Ok(n)
    }
}

/// Parses a graph file.
pub fn parse_graph(text: &str) -> Result<UndirectedGraph> {
    let f = GraphFile::parse(text)?;
    if !f.arcs.is_empty() || !f.dset.is_empty() {
        return Err(parse_err(0, "graph file may only contain `e` lines"));
    }
    let n = f.checked_header(f.edges.len(), "edges")?;
    UndirectedGraph::new(n, f.edges)
}

/// Serializes a graph; edges in ascending order.
pub fn write_graph(g: &UndirectedGraph) -> String {
    let mut s = format!("p {} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        writeln!(s, "e {u} {v}").unwrap();
    }
    s
}

/// Parses an arc file as an orientation of `base`.
pub fn parse_arcs(text: &str, base: &UndirectedGraph) -> Result<Orientation> {
    let f = GraphFile::parse(text)?;
    if !f.edges.is_empty() || !f.dset.is_empty() {
        return Err(parse_err(0, "arc file may only contain `a` lines"));
    }
    let n = f.checked_header(f.arcs.len(), "arcs")?;
    if n != base.n() {
        return Err(parse_err(0, format!("arc file has {n} vertices, graph has {}", base.n())));
    }
    Orientation::from_arcs(base.clone(), &f.arcs)
}

/// Serializes an orientation; arcs in the base graph's edge order.
pub fn write_arcs(h: &Orientation) -> String {
    let mut s = format!("p {} {}\n", h.base().n(), h.base().m());
    for (t, hd) in h.arcs() {
        writeln!(s, "a {t} {hd}").unwrap();
    }
    s
}

/// Parses a dominating-set file (`d` lines, optional comments).
pub fn parse_dset(text: &str) -> Result<Vec<VertexId>> {
    let f = GraphFile::parse(text)?;
    if f.header.is_some() || !f.edges.is_empty() || !f.arcs.is_empty() {
        return Err(parse_err(0, "dominating-set file may only contain `d` lines"));
    }
    let mut d = f.dset;
    d.sort_unstable();
    d.dedup();
    Ok(d)
}

pub fn write_dset(dset: &[VertexId]) -> String {
    dset.iter().map(|v| format!("d {v}\n")).collect()
}
