//! graph6 and whitespace edge-list readers and writers.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Graph6,
    Edgelist,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "graph6" | "g6" => Ok(Format::Graph6),
            "edgelist" | "el" => Ok(Format::Edgelist),
            other => Err(format!("unknown format {other:?}")),
        }
    }
}

pub fn parse_graph(text: &str, format: Format) -> Result<Graph, GraphError> {
    match format {
        Format::Graph6 => parse_graph6(text),
        Format::Edgelist => parse_edgelist(text),
    }
}

pub fn write_graph(g: &Graph, format: Format) -> String {
    match format {
        Format::Graph6 => write_graph6(g),
        Format::Edgelist => write_edgelist(g),
    }
}

fn parse_err(offset: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse { offset, message: message.into() }
}

/// Parses `u v` pairs, one per line. Blank lines and `#` comments are skipped.
///
/// The vertex count is one more than the largest endpoint, unless a line of
/// the form `# n = N` declares it.
pub fn parse_edgelist(text: &str) -> Result<Graph, GraphError> {
    let mut edges = Vec::new();
    let mut declared: Option<usize> = None;
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let start = offset;
        offset += line.len();
        let body = line.trim_end_matches(['\n', '\r']);
        let trimmed = body.trim_start();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some(rest) = comment.trim().strip_prefix("n") {
                if let Some(value) = rest.trim().strip_prefix('=') {
                    let value = value.trim();
                    declared =
                        Some(value.parse().map_err(|_| parse_err(start, format!("bad vertex count {value:?}")))?);
                }
            }
            continue;
        }
        let mut fields = Vec::with_capacity(2);
        let mut col = 0;
        for token in body.split_whitespace() {
            let at = body[col..].find(token).map(|i| col + i).unwrap_or(col);
            col = at + token.len();
            let value: usize =
                token.parse().map_err(|_| parse_err(start + at, format!("expected a vertex id, found {token:?}")))?;
            fields.push((value, start + at));
        }
        if fields.len() != 2 {
            return Err(parse_err(start, format!("expected two vertex ids, found {}", fields.len())));
        }
        edges.push((fields[0].0, fields[1].0));
    }
    let inferred = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    let n = declared.map_or(inferred, |d| d.max(inferred));
    Graph::new(n, edges)
}

pub fn write_edgelist(g: &Graph) -> String {
    let mut out = String::new();
    let inferred = g.edges().iter().map(|&(u, v)| v.max(u) + 1).max().unwrap_or(0);
    if inferred != g.vertex_count() {
        let _ = writeln!(out, "# n = {}", g.vertex_count());
    }
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Parses one graph6 string (an optional `>>graph6<<` header is accepted).
pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let mut bytes = text.as_bytes();
    let mut base = 0;
    const HEADER: &[u8] = b">>graph6<<";
    if bytes.starts_with(HEADER) {
        bytes = &bytes[HEADER.len()..];
        base = HEADER.len();
    }
    while let Some((&last, rest)) = bytes.split_last() {
        if last == b'\n' || last == b'\r' || last == b' ' {
            bytes = rest;
        } else {
            break;
        }
    }
    if bytes.is_empty() {
        return Err(parse_err(base, "empty graph6 string"));
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(parse_err(base + i, format!("byte {b:#04x} outside the graph6 range")));
        }
    }
    let (n, header_len) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, 1)
    } else if bytes.len() >= 2 && bytes[1] == 126 {
        if bytes.len() < 8 {
            return Err(parse_err(base, "truncated 8-byte vertex count"));
        }
        let n = bytes[2..8].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        (n, 8)
    } else {
        if bytes.len() < 4 {
            return Err(parse_err(base, "truncated 4-byte vertex count"));
        }
        let n = bytes[1..4].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        (n, 4)
    };
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    let body = &bytes[header_len..];
    if body.len() != need {
        return Err(parse_err(
            base + header_len + body.len().min(need),
            format!("expected {need} data bytes for {n} vertices, found {}", body.len()),
        ));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte & (1 << (5 - k % 6)) != 0 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if k % 6 != 0 {
        let byte = body[k / 6] - 63;
        if byte & ((1 << (6 - k % 6)) - 1) != 0 {
            return Err(parse_err(base + header_len + k / 6, "nonzero padding bits"));
        }
    }
    Graph::new(n, edges)
}

pub fn write_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc <<= 1;
            if g.edge_between(i, j).is_some() {
                acc |= 1;
            }
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}
