//! Text and JSON serializations of sequences ("RTS v1") and graphs
//! ("RTG v1").
//!
//! RTS v1:
//!
//! ```text
//! RTS 1 k=2 n=3
//! 0 a=0 e=-
//! 1 a=1 e=0
//! 2 a=0 e=1
//! ```
//!
//! RTG v1 (line `j` carries the adjacency of vertex `j` to `0..j`):
//!
//! ```text
//! RTG 1 n=4
//! 0
//! 10
//! 010
//! ```
//!
//! Both formats round-trip bit-exactly, and both have JSON mirrors with
//! the same field names (`k`, `n`, `i`, `a`, `e`, `rows`).

use rtg_core::{ColorSet, ColorSymbol, Graph, RainbowSequence};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use thiserror::Error;

// desk-scale ceilings, enforced before allocating
const MAX_SEQ_LEN: usize = 1 << 20;
const MAX_GRAPH_ORDER: usize = 1 << 13;

/// Parse failure with a 1-based line and column.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> ParseError {
        ParseError { line, column, message: message.into() }
    }
}

fn core_err(line: usize, err: rtg_core::Error) -> ParseError {
    ParseError::new(line, 1, err.to_string())
}

/// JSON mirror of RTS v1.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RtsJson {
    pub format: String,
    pub version: u32,
    pub k: u32,
    pub n: usize,
    pub entries: Vec<RtsEntryJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RtsEntryJson {
    pub i: usize,
    pub a: u32,
    pub e: Vec<u32>,
}

/// JSON mirror of RTG v1.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RtgJson {
    pub format: String,
    pub version: u32,
    pub n: usize,
    pub rows: Vec<String>,
}

pub fn write_rts(seq: &RainbowSequence) -> String {
    let mut out = format!("RTS 1 k={} n={}\n", seq.k(), seq.n());
    for i in 0..seq.n() {
        let colors: Vec<String> = seq.set(i).iter().map(|c| c.to_string()).collect();
        let e = if colors.is_empty() { "-".to_string() } else { colors.join(",") };
        writeln!(out, "{} a={} e={}", i, seq.color(i), e).expect("string write");
    }
    out
}

pub fn write_rts_json(seq: &RainbowSequence) -> RtsJson {
    RtsJson {
        format: "RTS".to_string(),
        version: 1,
        k: seq.k(),
        n: seq.n(),
        entries: (0..seq.n())
            .map(|i| RtsEntryJson {
                i,
                a: seq.color(i),
                e: seq.set(i).iter().collect(),
            })
            .collect(),
    }
}

pub fn parse_rts(text: &str) -> Result<RainbowSequence, ParseError> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| ParseError::new(1, 1, "empty input"))?;
    let (k, n) = parse_header(header, "RTS", 1)?;
    let k = u32::try_from(k).map_err(|_| ParseError::new(1, 1, "palette size out of range"))?;
    if n > MAX_SEQ_LEN {
        return Err(ParseError::new(1, 1, format!("n exceeds the limit {MAX_SEQ_LEN}")));
    }
    let mut entries: Vec<ColorSymbol> = Vec::with_capacity(n);
    for (idx, line) in lines.enumerate() {
        let lineno = idx + 2;
        if idx >= n {
            if line.trim().is_empty() {
                continue;
            }
            return Err(ParseError::new(lineno, 1, format!("expected {n} entries")));
        }
        entries.push(parse_rts_entry(line, lineno, idx)?);
    }
    if entries.len() != n {
        return Err(ParseError::new(
            entries.len() + 2,
            1,
            format!("expected {n} entries, found {}", entries.len()),
        ));
    }
    RainbowSequence::new(k, entries).map_err(|e| core_err(1, e))
}

fn parse_rts_entry(line: &str, lineno: usize, expect_i: usize) -> Result<ColorSymbol, ParseError> {
    let mut fields = line.split_whitespace();
    let index: usize = fields
        .next()
        .ok_or_else(|| ParseError::new(lineno, 1, "missing entry index"))?
        .parse()
        .map_err(|_| ParseError::new(lineno, 1, "entry index must be an integer"))?;
    if index != expect_i {
        return Err(ParseError::new(lineno, 1, format!("expected index {expect_i}")));
    }
    let a_field = fields
        .next()
        .ok_or_else(|| ParseError::new(lineno, line.len() + 1, "missing a=<color>"))?;
    let column = line.find(a_field).map_or(1, |c| c + 1);
    let a: u32 = a_field
        .strip_prefix("a=")
        .ok_or_else(|| ParseError::new(lineno, column, "expected a=<color>"))?
        .parse()
        .map_err(|_| ParseError::new(lineno, column, "color must be an integer"))?;
    let e_field = fields
        .next()
        .ok_or_else(|| ParseError::new(lineno, line.len() + 1, "missing e=<colors|->"))?;
    let column = line.find(e_field).map_or(1, |c| c + 1);
    let body = e_field
        .strip_prefix("e=")
        .ok_or_else(|| ParseError::new(lineno, column, "expected e=<colors|->"))?;
    let mut set = ColorSet::EMPTY;
    if body != "-" {
        for part in body.split(',') {
            let c: u32 = part
                .parse()
                .map_err(|_| ParseError::new(lineno, column, "color set must list integers"))?;
            if c >= 64 {
                return Err(ParseError::new(lineno, column, "color out of mask range"));
            }
            set.insert(c);
        }
    }
    if let Some(extra) = fields.next() {
        let column = line.find(extra).map_or(1, |c| c + 1);
        return Err(ParseError::new(lineno, column, "unexpected trailing field"));
    }
    Ok(ColorSymbol::new(a, set))
}

pub fn write_rtg(g: &Graph) -> String {
    let mut out = format!("RTG 1 n={}\n", g.n());
    for j in 1..g.n() {
        for i in 0..j {
            out.push(if g.has_edge(i, j) { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

pub fn write_rtg_json(g: &Graph) -> RtgJson {
    RtgJson {
        format: "RTG".to_string(),
        version: 1,
        n: g.n(),
        rows: (1..g.n())
            .map(|j| (0..j).map(|i| if g.has_edge(i, j) { '1' } else { '0' }).collect())
            .collect(),
    }
}

pub fn parse_rtg(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| ParseError::new(1, 1, "empty input"))?;
    let (n, _) = parse_rtg_header(header)?;
    if n > MAX_GRAPH_ORDER {
        return Err(ParseError::new(1, 1, format!("n exceeds the limit {MAX_GRAPH_ORDER}")));
    }
    let mut g = Graph::empty(n);
    let mut rows = 0usize;
    for (idx, line) in lines.enumerate() {
        let lineno = idx + 2;
        let j = idx + 1;
        if j >= n.max(1) {
            if line.trim().is_empty() {
                continue;
            }
            return Err(ParseError::new(lineno, 1, format!("expected {} rows", n.saturating_sub(1))));
        }
        let row = line.trim_end();
        if row.len() != j {
            return Err(ParseError::new(
                lineno,
                row.len() + 1,
                format!("row {j} must have exactly {j} characters"),
            ));
        }
        for (i, ch) in row.chars().enumerate() {
            match ch {
                '1' => g.add_edge(i, j).map_err(|e| core_err(lineno, e))?,
                '0' => {}
                _ => return Err(ParseError::new(lineno, i + 1, "rows must be over {0,1}")),
            }
        }
        rows += 1;
    }
    if rows + 1 < n {
        return Err(ParseError::new(
            rows + 2,
            1,
            format!("expected {} rows, found {rows}", n - 1),
        ));
    }
    Ok(g)
}

fn parse_header(header: &str, tag: &str, lineno: usize) -> Result<(usize, usize), ParseError> {
    let mut fields = header.split_whitespace();
    match fields.next() {
        Some(t) if t == tag => {}
        _ => return Err(ParseError::new(lineno, 1, format!("expected {tag} header"))),
    }
    match fields.next() {
        Some("1") => {}
        Some(v) => {
            let column = header.find(v).map_or(1, |c| c + 1);
            return Err(ParseError::new(lineno, column, "unsupported version"));
        }
        None => return Err(ParseError::new(lineno, header.len() + 1, "missing version")),
    }
    let mut k = None;
    let mut n = None;
    for field in fields {
        let column = header.find(field).map_or(1, |c| c + 1);
        if let Some(v) = field.strip_prefix("k=") {
            k = Some(
                v.parse::<usize>()
                    .map_err(|_| ParseError::new(lineno, column, "k must be an integer"))?,
            );
        } else if let Some(v) = field.strip_prefix("n=") {
            n = Some(
                v.parse::<usize>()
                    .map_err(|_| ParseError::new(lineno, column, "n must be an integer"))?,
            );
        } else {
            return Err(ParseError::new(lineno, column, "unexpected header field"));
        }
    }
    let n = n.ok_or_else(|| ParseError::new(lineno, header.len() + 1, "missing n=<n>"))?;
    if tag == "RTS" {
        let k = k.ok_or_else(|| ParseError::new(lineno, header.len() + 1, "missing k=<k>"))?;
        Ok((k, n))
    } else {
        if k.is_some() {
            return Err(ParseError::new(lineno, 1, "unexpected k= in RTG header"));
        }
        Ok((n, 0))
    }
}

fn parse_rtg_header(header: &str) -> Result<(usize, usize), ParseError> {
    parse_header(header, "RTG", 1)
}

/// Parses a sequence from RTS text or its JSON mirror (detected by the
/// leading `{`).
pub fn parse_rts_auto(text: &str) -> Result<RainbowSequence, ParseError> {
    if text.trim_start().starts_with('{') {
        let json: RtsJson = serde_json::from_str(text)
            .map_err(|e| ParseError::new(e.line(), e.column(), e.to_string()))?;
        rts_from_json(&json)
    } else {
        parse_rts(text)
    }
}

/// Parses a graph from RTG text or its JSON mirror.
pub fn parse_rtg_auto(text: &str) -> Result<Graph, ParseError> {
    if text.trim_start().starts_with('{') {
        let json: RtgJson = serde_json::from_str(text)
            .map_err(|e| ParseError::new(e.line(), e.column(), e.to_string()))?;
        rtg_from_json(&json)
    } else {
        parse_rtg(text)
    }
}

pub fn rts_from_json(json: &RtsJson) -> Result<RainbowSequence, ParseError> {
    if json.format != "RTS" || json.version != 1 {
        return Err(ParseError::new(1, 1, "expected RTS version 1"));
    }
    if json.n > MAX_SEQ_LEN {
        return Err(ParseError::new(1, 1, format!("n exceeds the limit {MAX_SEQ_LEN}")));
    }
    if json.entries.len() != json.n {
        return Err(ParseError::new(1, 1, format!("expected {} entries", json.n)));
    }
    let mut entries = Vec::with_capacity(json.n);
    for (idx, entry) in json.entries.iter().enumerate() {
        if entry.i != idx {
            return Err(ParseError::new(1, 1, format!("expected index {idx}")));
        }
        if entry.e.iter().any(|&c| c >= 64) {
            return Err(ParseError::new(1, 1, "color out of mask range"));
        }
        entries.push(ColorSymbol::new(entry.a, ColorSet::from_colors(&entry.e)));
    }
    RainbowSequence::new(json.k, entries).map_err(|e| core_err(1, e))
}

pub fn rtg_from_json(json: &RtgJson) -> Result<Graph, ParseError> {
    if json.format != "RTG" || json.version != 1 {
        return Err(ParseError::new(1, 1, "expected RTG version 1"));
    }
    if json.n > MAX_GRAPH_ORDER {
        return Err(ParseError::new(1, 1, format!("n exceeds the limit {MAX_GRAPH_ORDER}")));
    }
    if json.rows.len() + 1 != json.n.max(1) {
        return Err(ParseError::new(1, 1, format!("expected {} rows", json.n.saturating_sub(1))));
    }
    let mut g = Graph::empty(json.n);
    for (idx, row) in json.rows.iter().enumerate() {
        let j = idx + 1;
        if row.len() != j {
            return Err(ParseError::new(1, 1, format!("row {j} must have {j} characters")));
        }
        for (i, ch) in row.chars().enumerate() {
            match ch {
                '1' => g.add_edge(i, j).map_err(|e| core_err(1, e))?,
                '0' => {}
                _ => return Err(ParseError::new(1, 1, "rows must be over {0,1}")),
            }
        }
    }
    Ok(g)
}

/// Lowercase hex of packed bytes (used for canonical forms).
pub fn to_hex(bytes: &[u8]) -> String {
    let mut out = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        write!(out, "{b:02x}").expect("string write");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rts_roundtrip_examples() {
        let seq = RainbowSequence::from_parts(2, &[0, 1, 0], &[0b00, 0b01, 0b10]).unwrap();
        let text = write_rts(&seq);
        assert_eq!(text, "RTS 1 k=2 n=3\n0 a=0 e=-\n1 a=1 e=0\n2 a=0 e=1\n");
        assert_eq!(parse_rts(&text).unwrap(), seq);
        assert_eq!(write_rts(&parse_rts(&text).unwrap()), text);

        let empty = RainbowSequence::from_parts(1, &[], &[]).unwrap();
        assert_eq!(parse_rts(&write_rts(&empty)).unwrap(), empty);
    }

    #[test]
    fn rtg_roundtrip_examples() {
        let g = Graph::path(4);
        let text = write_rtg(&g);
        assert_eq!(text, "RTG 1 n=4\n1\n01\n001\n");
        assert_eq!(parse_rtg(&text).unwrap(), g);
        assert_eq!(parse_rtg(&write_rtg(&Graph::empty(1))).unwrap(), Graph::empty(1));
        assert_eq!(parse_rtg(&write_rtg(&Graph::empty(0))).unwrap(), Graph::empty(0));
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = parse_rts("RTX 1 k=1 n=0\n").unwrap_err();
        assert_eq!((err.line, err.column), (1, 1));
        let err = parse_rts("RTS 1 k=1 n=2\n0 a=0 e=-\n").unwrap_err();
        assert_eq!(err.line, 3);
        let err = parse_rts("RTS 1 k=1 n=1\n0 a=0 e=7\n").unwrap_err();
        assert_eq!(err.line, 1); // palette violation reported at header
        let err = parse_rtg("RTG 1 n=3\n1\n0\n").unwrap_err();
        assert_eq!((err.line, err.column), (3, 2));
        let err = parse_rtg("RTG 1 n=3\n1\n0x\n").unwrap_err();
        assert_eq!((err.line, err.column), (3, 2));
    }

    #[test]
    fn json_mirrors_roundtrip() {
        let seq = RainbowSequence::from_parts(2, &[0, 1], &[0b00, 0b11]).unwrap();
        let json = serde_json::to_string(&write_rts_json(&seq)).unwrap();
        assert_eq!(parse_rts_auto(&json).unwrap(), seq);
        let g = Graph::cycle(5);
        let json = serde_json::to_string(&write_rtg_json(&g)).unwrap();
        assert_eq!(parse_rtg_auto(&json).unwrap(), g);
    }
}
