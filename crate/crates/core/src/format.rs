//! Text interchange formats: graph6, a whitespace edge list with a leading
//! vertex count, and DIMACS `.col`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Format {
    Graph6,
    EdgeList,
    Dimacs,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graph6" | "g6" => Ok(Format::Graph6),
            "edgelist" | "edge-list" => Ok(Format::EdgeList),
            "dimacs" | "dimacs-col" | "col" => Ok(Format::Dimacs),
            other => Err(Error::arg(format!("unknown graph format `{other}`"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Graph6 => "graph6",
            Format::EdgeList => "edgelist",
            Format::Dimacs => "dimacs",
        })
    }
}

/// Guesses the format from the first non-whitespace byte: digits start an
/// edge list, `p`/`c` a DIMACS file, and printable bytes `?`..`~` graph6.
pub fn detect(bytes: &[u8]) -> Option<Format> {
    let first = *bytes.iter().find(|b| !b.is_ascii_whitespace())?;
    match first {
        b'0'..=b'9' => Some(Format::EdgeList),
        b'p' | b'c' => Some(Format::Dimacs),
        b'>' | 63..=126 => Some(Format::Graph6),
        _ => None,
    }
}

pub fn parse(format: Format, bytes: &[u8]) -> Result<Graph> {
    match format {
        Format::Graph6 => parse_graph6(bytes),
        Format::EdgeList => parse_edge_list(bytes),
        Format::Dimacs => parse_dimacs(bytes),
    }
}

pub fn emit(g: &Graph, format: Format) -> Vec<u8> {
    match format {
        Format::Graph6 => {
            let mut s = to_graph6(g).into_bytes();
            s.push(b'\n');
            s
        }
        Format::EdgeList => to_edge_list(g).into_bytes(),
        Format::Dimacs => to_dimacs(g).into_bytes(),
    }
}

const GRAPH6_HEADER: &[u8] = b">>graph6<<";

/// Parses one graph6 record. A `>>graph6<<` header and trailing whitespace
/// are accepted.
pub fn parse_graph6(bytes: &[u8]) -> Result<Graph> {
    let mut start = 0;
    if bytes.starts_with(GRAPH6_HEADER) {
        start = GRAPH6_HEADER.len();
    }
    let mut end = bytes.len();
    while end > start && bytes[end - 1].is_ascii_whitespace() {
        end -= 1;
    }
    let body = &bytes[start..end];
    for (i, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::parse(
                start + i,
                format!("byte {b:#04x} is not valid graph6"),
            ));
        }
    }
    let (n, header_len) = graph6_size(body).map_err(|(off, msg)| Error::parse(start + off, msg))?;
    let data = &body[header_len..];
    let bits_needed = n * n.saturating_sub(1) / 2;
    let bytes_needed = bits_needed.div_ceil(6);
    if data.len() != bytes_needed {
        return Err(Error::parse(
            start + header_len + data.len().min(bytes_needed),
            format!(
                "expected {bytes_needed} data bytes for {n} vertices, found {}",
                data.len()
            ),
        ));
    }
    let bit = |k: usize| (data[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    for k in bits_needed..bytes_needed * 6 {
        if bit(k) {
            return Err(Error::parse(
                start + header_len + k / 6,
                "nonzero padding bits",
            ));
        }
    }
    Graph::from_edges(n, edges)
}

fn graph6_size(body: &[u8]) -> std::result::Result<(usize, usize), (usize, String)> {
    let word = |range: std::ops::Range<usize>| -> std::result::Result<usize, (usize, String)> {
        if body.len() < range.end {
            return Err((body.len(), "truncated size header".to_string()));
        }
        Ok(body[range]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize))
    };
    match body.first() {
        None => Err((0, "empty graph6 record".to_string())),
        Some(&b) if b < 126 => Ok(((b - 63) as usize, 1)),
        Some(_) if body.get(1) == Some(&126) => Ok((word(2..8)?, 8)),
        Some(_) => Ok((word(1..4)?, 4)),
    }
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258_048 {
        out.push(126);
        out.extend((0..3).rev().map(|k| ((n >> (6 * k)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|k| ((n >> (6 * k)) & 63) as u8 + 63));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
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

/// Whitespace-separated tokens with their byte offsets, skipping `#` comments.
fn tokens(bytes: &[u8]) -> impl Iterator<Item = (usize, &[u8])> {
    let mut pos = 0;
    std::iter::from_fn(move || {
        loop {
            while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            if pos < bytes.len() && bytes[pos] == b'#' {
                while pos < bytes.len() && bytes[pos] != b'\n' {
                    pos += 1;
                }
                continue;
            }
            break;
        }
        if pos >= bytes.len() {
            return None;
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        Some((start, &bytes[start..pos]))
    })
}

fn parse_number(offset: usize, tok: &[u8]) -> Result<usize> {
    std::str::from_utf8(tok)
        .ok()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| {
            Error::parse(
                offset,
                format!(
                    "expected a number, found `{}`",
                    String::from_utf8_lossy(tok)
                ),
            )
        })
}

/// `n` followed by pairs `u v` of 0-indexed endpoints.
pub fn parse_edge_list(bytes: &[u8]) -> Result<Graph> {
    let mut toks = tokens(bytes);
    let (off, tok) = toks
        .next()
        .ok_or_else(|| Error::parse(0, "missing vertex count"))?;
    let n = parse_number(off, tok)?;
    let mut edges = Vec::new();
    while let Some((off_u, tu)) = toks.next() {
        let u = parse_number(off_u, tu)?;
        let (off_v, tv) = toks
            .next()
            .ok_or_else(|| Error::parse(bytes.len(), "edge with a single endpoint"))?;
        let v = parse_number(off_v, tv)?;
        if u >= n || v >= n {
            return Err(Error::parse(
                off_u,
                format!("edge ({u}, {v}) out of range for {n} vertices"),
            ));
        }
        if u == v {
            return Err(Error::parse(off_u, format!("loop at vertex {u}")));
        }
        edges.push((u, v));
    }
    Graph::from_edges(n, edges)
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut s = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

/// DIMACS `.col`: `c` comment lines, a `p edge n m` header and 1-indexed
/// `e u v` lines. Repeated edges are merged.
pub fn parse_dimacs(bytes: &[u8]) -> Result<Graph> {
    let mut n = None;
    let mut edges = Vec::new();
    let mut line_start = 0;
    for line in bytes.split(|&b| b == b'\n') {
        let offset = line_start;
        line_start += line.len() + 1;
        let mut toks = tokens(line).map(|(o, t)| (o + offset, t));
        let Some((off, kind)) = toks.next() else {
            continue;
        };
        match kind {
            b"c" => continue,
            b"p" => {
                if n.is_some() {
                    return Err(Error::parse(off, "duplicate problem line"));
                }
                let (fo, format) = toks
                    .next()
                    .ok_or_else(|| Error::parse(off, "truncated problem line"))?;
                if format != b"edge" && format != b"col" {
                    return Err(Error::parse(fo, "problem format must be `edge`"));
                }
                let (no, nt) = toks
                    .next()
                    .ok_or_else(|| Error::parse(off, "missing vertex count"))?;
                let (mo, mt) = toks
                    .next()
                    .ok_or_else(|| Error::parse(off, "missing edge count"))?;
                n = Some(parse_number(no, nt)?);
                parse_number(mo, mt)?;
            }
            b"e" => {
                let Some(n) = n else {
                    return Err(Error::parse(off, "edge line before problem line"));
                };
                let mut endpoint = || -> Result<usize> {
                    let (o, t) = toks
                        .next()
                        .ok_or_else(|| Error::parse(off, "truncated edge line"))?;
                    let v = parse_number(o, t)?;
                    if v == 0 || v > n {
                        return Err(Error::parse(o, format!("vertex {v} out of range 1..={n}")));
                    }
                    Ok(v - 1)
                };
                let u = endpoint()?;
                let v = endpoint()?;
                if u == v {
                    return Err(Error::parse(off, format!("loop at vertex {}", u + 1)));
                }
                edges.push((u, v));
            }
            other => {
                return Err(Error::parse(
                    off,
                    format!("unknown line type `{}`", String::from_utf8_lossy(other)),
                ))
            }
        }
    }
    let n = n.ok_or_else(|| Error::parse(0, "missing `p edge n m` line"))?;
    Graph::from_edges(n, edges)
}

pub fn to_dimacs(g: &Graph) -> String {
    let mut s = format!("p edge {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        s.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    s
}
