//! Plain-text star covers: a `cover k=<max degree>` header followed by one
//! `u v` edge per line. Lines starting with `#` are comments.

use std::fmt::Write as _;

use super::StarCover;
use crate::graph::edge;
use crate::graph::io::ParseError;

/// Writes `c` with `k` recorded in the header, edges in lexicographic order.
pub fn write_cover(c: &StarCover, k: usize) -> String {
    let mut out = format!("cover k={k}\n");
    for (u, v) in c.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Parses the format produced by [`write_cover`], returning the cover and
/// the header's `k`.
pub fn parse_cover(text: &str) -> Result<(StarCover, usize), ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let k = header
        .strip_prefix("cover k=")
        .and_then(|k| k.trim().parse().ok())
        .ok_or_else(|| ParseError::Malformed {
            line: hline,
            msg: format!("expected `cover k=<int>`, got `{header}`"),
        })?;
    let mut cover = StarCover::new();
    for (line, l) in lines {
        let nums: Vec<usize> = l
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|e| ParseError::Malformed { line, msg: format!("{e}") })?;
        let &[u, v] = nums.as_slice() else {
            return Err(ParseError::Malformed { line, msg: "expected two vertices".into() });
        };
        if u == v {
            return Err(ParseError::Malformed { line, msg: format!("self-loop at {u}") });
        }
        if !cover.insert(u, v) {
            let (a, b) = edge(u, v);
            return Err(ParseError::Malformed { line, msg: format!("duplicate edge {a} {b}") });
        }
    }
    Ok((cover, k))
}
