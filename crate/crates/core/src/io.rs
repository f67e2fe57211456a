//! Plain-text graph, colouring and process formats.
//!
//! Graph: header `n m`, then one `u v` line per edge with `u < v`.
//! Colouring: header `n m k`, then one `u v c` line per coloured edge.
//! Process: one `u v weight` line per potential edge, ascending by weight,
//! weights printed with 17 significant digits.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::coloring::{Colour, EdgeColoring};
use crate::error::{Error, Result};
use crate::graph::{pair_count, Graph, Pair};
use crate::process::{EdgeWeights, ProcessSequence};

pub fn graph_to_string(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.m());
    for e in g.edges() {
        let _ = writeln!(s, "{} {}", e.lo(), e.hi());
    }
    s
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = Lines::new(text);
    let (line, header) = lines.next_fields()?.ok_or_else(|| parse_err(1, "missing header"))?;
    let [n, m] = numbers::<2>(line, &header)?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, fields) = lines
            .next_fields()?
            .ok_or_else(|| parse_err(line + edges.len() + 1, "fewer edge lines than declared"))?;
        let [u, v] = numbers::<2>(line, &fields)?;
        if u >= v {
            return Err(parse_err(line, "edge must be written with u < v"));
        }
        edges.push((u, v));
    }
    lines.expect_end()?;
    let g = Graph::from_edges(n, edges)?;
    if g.m() != m {
        return Err(parse_err(1, "duplicate edges"));
    }
    Ok(g)
}

pub fn coloring_to_string(col: &EdgeColoring) -> String {
    let assigned: Vec<_> = col.assignments().collect();
    let mut s = format!("{} {} {}\n", col.n(), assigned.len(), col.k());
    for (e, c) in assigned {
        let _ = writeln!(s, "{} {} {}", e.lo(), e.hi(), c);
    }
    s
}

/// Parses a colouring and checks that every coloured pair is an edge of `g`.
pub fn parse_coloring(text: &str, g: &Graph) -> Result<EdgeColoring> {
    let mut lines = Lines::new(text);
    let (line, header) = lines.next_fields()?.ok_or_else(|| parse_err(1, "missing header"))?;
    let [n, m, k] = numbers::<3>(line, &header)?;
    if n != g.n() {
        return Err(Error::SizeMismatch(n, g.n()));
    }
    let mut col = EdgeColoring::new(n, k)?;
    for i in 0..m {
        let (line, fields) = lines
            .next_fields()?
            .ok_or_else(|| parse_err(line + i + 1, "fewer colour lines than declared"))?;
        let [u, v, c] = numbers::<3>(line, &fields)?;
        if u >= v {
            return Err(parse_err(line, "edge must be written with u < v"));
        }
        if v >= n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n,
                edge: (u, v),
            });
        }
        let e = Pair::new(u, v);
        if !g.has_edge(u, v) {
            return Err(Error::ColourOutsideGraph(e));
        }
        if col.colour(e).is_some() {
            return Err(parse_err(line, "edge coloured twice"));
        }
        let c = Colour::try_from(c).map_err(|_| Error::ColourOutOfRange { colour: c, k })?;
        col.set(e, c)?;
    }
    lines.expect_end()?;
    Ok(col)
}

pub fn process_to_string(seq: &ProcessSequence) -> String {
    let mut s = String::new();
    for &e in seq.order() {
        let _ = writeln!(s, "{} {} {}", e.lo(), e.hi(), format_weight(seq.weights().weight(e)));
    }
    s
}

/// Reads a process export; weights must be distinct and every pair present.
pub fn parse_process(text: &str) -> Result<ProcessSequence> {
    let mut lines = Lines::new(text);
    let mut rows = Vec::new();
    while let Some((line, fields)) = lines.next_fields()? {
        if fields.len() != 3 {
            return Err(parse_err(line, "expected `u v weight`"));
        }
        let u = parse_usize(line, fields[0])?;
        let v = parse_usize(line, fields[1])?;
        let w: f64 = fields[2]
            .parse()
            .map_err(|_| parse_err(line, "bad weight"))?;
        if u >= v {
            return Err(parse_err(line, "edge must be written with u < v"));
        }
        rows.push((line, u, v, w));
    }
    let pairs = rows.len();
    let mut n = 1usize;
    while pair_count(n) < pairs {
        n += 1;
    }
    if pair_count(n) != pairs {
        return Err(parse_err(pairs, "line count is not C(n, 2)"));
    }
    let mut weights = vec![f64::NAN; pairs];
    for &(line, u, v, w) in &rows {
        if v >= n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n,
                edge: (u, v),
            });
        }
        let idx = crate::graph::pair_index(n, u, v);
        if !weights[idx].is_nan() {
            return Err(parse_err(line, "pair listed twice"));
        }
        weights[idx] = w;
    }
    ProcessSequence::from_distinct_weights(EdgeWeights::from_vec(n, weights)?)
}

/// Shortest plain decimal with at least 17 significant digits; parses back exactly.
pub fn format_weight(w: f64) -> String {
    if w == 0.0 {
        return "0.0000000000000000".into();
    }
    let exponent = w.abs().log10().floor() as i32;
    let decimals = (16 - exponent).max(0) as usize;
    format!("{w:.decimals$}")
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(Error::from)
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    parse_graph(&fs::read_to_string(path)?)
}

pub fn read_coloring(path: &Path, g: &Graph) -> Result<EdgeColoring> {
    parse_coloring(&fs::read_to_string(path)?, g)
}

pub fn read_process(path: &Path) -> Result<ProcessSequence> {
    parse_process(&fs::read_to_string(path)?)
}

fn parse_err(line: usize, msg: &str) -> Error {
    Error::Parse {
        line,
        msg: msg.to_string(),
    }
}

fn parse_usize(line: usize, s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| parse_err(line, &format!("`{s}` is not a non-negative integer")))
}

fn numbers<const N: usize>(line: usize, fields: &[&str]) -> Result<[usize; N]> {
    if fields.len() != N {
        return Err(parse_err(line, &format!("expected {N} fields, found {}", fields.len())));
    }
    let mut out = [0usize; N];
    for (slot, f) in out.iter_mut().zip(fields) {
        *slot = parse_usize(line, f)?;
    }
    Ok(out)
}

/// Non-blank lines split on whitespace, with 1-based line numbers.
struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
        }
    }

    fn next_fields(&mut self) -> Result<Option<(usize, Vec<&'a str>)>> {
        for (i, l) in self.inner.by_ref() {
            let fields: Vec<&str> = l.split_whitespace().collect();
            if !fields.is_empty() {
                return Ok(Some((i + 1, fields)));
            }
        }
        Ok(None)
    }

    fn expect_end(&mut self) -> Result<()> {
        match self.next_fields()? {
            None => Ok(()),
            Some((line, _)) => Err(parse_err(line, "trailing content")),
        }
    }
}
