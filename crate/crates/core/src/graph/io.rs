//! Edge-list text format.
//!
//! ```text
//! # comment lines start with '#'
//! n m
//! u v        (m lines, 0 <= u < v < n, no duplicates)
//! ```

use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::{edge, Graph};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("missing header line")]
    MissingHeader,
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("header announces {expected} edges but {found} were listed")]
    EdgeCount { expected: usize, found: usize },
}

fn malformed(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Malformed {
        line,
        msg: msg.into(),
    }
}

fn parse_pair(line_no: usize, line: &str) -> Result<(usize, usize), ParseError> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<usize, ParseError> {
        let tok = it.next().ok_or_else(|| malformed(line_no, "expected two integers"))?;
        tok.parse()
            .map_err(|_| malformed(line_no, format!("not a nonnegative integer: {tok:?}")))
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(malformed(line_no, "trailing tokens"));
    }
    Ok((a, b))
}

/// Parses the edge-list format. Pairs given as `v u` are accepted and
/// normalized; loops, out-of-range vertices and duplicates are rejected.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let (n, m) = parse_pair(hline, header)?;
    let mut seen = BTreeSet::new();
    for (line_no, l) in lines {
        let (u, v) = parse_pair(line_no, l)?;
        if u >= n || v >= n {
            return Err(malformed(line_no, format!("vertex out of range 0..{n}")));
        }
        if u == v {
            return Err(malformed(line_no, "self-loop"));
        }
        if !seen.insert(edge(u, v)) {
            return Err(malformed(line_no, format!("duplicate edge {u} {v}")));
        }
    }
    if seen.len() != m {
        return Err(ParseError::EdgeCount {
            expected: m,
            found: seen.len(),
        });
    }
    Ok(Graph::from_edges(n, seen).expect("validated above"))
}

/// Writes the canonical edge list: header, then edges in lexicographic order.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", g.n(), g.m()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}
