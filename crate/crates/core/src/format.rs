//! Plain-text input formats.
//!
//! Graphs:
//!
//! ```text
//! # comment
//! vertex a
//! vertex b
//! arrow 1 a b
//! ```
//!
//! Arrangements (`rank` must come before any `col`):
//!
//! ```text
//! rank 2
//! col 1 1 0
//! col 2 0 1
//! ```

use std::collections::HashSet;
use std::fmt::Write;

use num_bigint::BigInt;

use crate::arrangement::VectorArrangement;
use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::linalg::IntMatrix;

/// A whitespace-separated token and its 1-based column.
struct Token<'a> {
    column: usize,
    text: &'a str,
}

/// Tokens of one line, with everything after `#` dropped.
fn tokenize(line: &str) -> Vec<Token<'_>> {
    let content = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in content.char_indices().chain(std::iter::once((content.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token {
                    column: content[..s].chars().count() + 1,
                    text: &content[s..i],
                });
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn expect_arity(tokens: &[Token<'_>], n: usize, line: usize, usage: &str) -> Result<()> {
    if tokens.len() < n {
        let col = tokens.last().map_or(1, |t| t.column + t.text.chars().count());
        return Err(parse_error(line, col, format!("expected `{usage}`")));
    }
    if tokens.len() > n {
        return Err(parse_error(line, tokens[n].column, format!("unexpected token `{}`", tokens[n].text)));
    }
    Ok(())
}

pub fn parse_graph(text: &str) -> Result<DirectedGraph> {
    let mut vertices: Vec<String> = Vec::new();
    let mut seen_vertices = HashSet::new();
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    let mut seen_arrows = HashSet::new();
    for (k, line) in text.lines().enumerate() {
        let ln = k + 1;
        let tokens = tokenize(line);
        let Some(head) = tokens.first() else { continue };
        match head.text {
            "vertex" => {
                expect_arity(&tokens, 2, ln, "vertex <label>")?;
                let label = tokens[1].text;
                if !seen_vertices.insert(label.to_string()) {
                    return Err(parse_error(ln, tokens[1].column, format!("duplicate vertex `{label}`")));
                }
                vertices.push(label.to_string());
            }
            "arrow" => {
                expect_arity(&tokens, 4, ln, "arrow <id> <tail> <head>")?;
                let id = tokens[1].text;
                if !seen_arrows.insert(id.to_string()) {
                    return Err(parse_error(ln, tokens[1].column, format!("duplicate arrow `{id}`")));
                }
                for t in &tokens[2..4] {
                    if !seen_vertices.contains(t.text) {
                        return Err(parse_error(ln, t.column, format!("undeclared vertex `{}`", t.text)));
                    }
                }
                arrows.push((id.to_string(), tokens[2].text.to_string(), tokens[3].text.to_string()));
            }
            other => {
                return Err(parse_error(ln, head.column, format!("unknown directive `{other}`")));
            }
        }
    }
    DirectedGraph::new(vertices, arrows)
}

pub fn parse_arrangement(text: &str) -> Result<VectorArrangement> {
    let mut rank: Option<usize> = None;
    let mut labels: Vec<String> = Vec::new();
    let mut seen = HashSet::new();
    let mut columns: Vec<Vec<BigInt>> = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let ln = k + 1;
        let tokens = tokenize(line);
        let Some(head) = tokens.first() else { continue };
        match head.text {
            "rank" => {
                if rank.is_some() {
                    return Err(parse_error(ln, head.column, "rank given twice"));
                }
                expect_arity(&tokens, 2, ln, "rank <r>")?;
                let r = tokens[1]
                    .text
                    .parse::<usize>()
                    .map_err(|_| parse_error(ln, tokens[1].column, format!("invalid rank `{}`", tokens[1].text)))?;
                rank = Some(r);
            }
            "col" => {
                let Some(r) = rank else {
                    return Err(parse_error(ln, head.column, "`col` before `rank`"));
                };
                expect_arity(&tokens, r + 2, ln, "col <label> <r integers>")?;
                let label = tokens[1].text;
                if !seen.insert(label.to_string()) {
                    return Err(parse_error(ln, tokens[1].column, format!("duplicate label `{label}`")));
                }
                let mut col = Vec::with_capacity(r);
                for t in &tokens[2..] {
                    let v = t
                        .text
                        .parse::<BigInt>()
                        .map_err(|_| parse_error(ln, t.column, format!("invalid integer `{}`", t.text)))?;
                    col.push(v);
                }
                labels.push(label.to_string());
                columns.push(col);
            }
            other => {
                return Err(parse_error(ln, head.column, format!("unknown directive `{other}`")));
            }
        }
    }
    let r = rank.ok_or_else(|| parse_error(text.lines().count().max(1), 1, "missing `rank` line"))?;
    VectorArrangement::new(r, labels, IntMatrix::from_columns(r, &columns))
}

pub fn graph_to_text(g: &DirectedGraph) -> String {
    let mut out = String::new();
    for v in g.vertices() {
        writeln!(out, "vertex {v}").unwrap();
    }
    for a in g.arrows() {
        writeln!(out, "arrow {} {} {}", a.id, g.vertices()[a.tail], g.vertices()[a.head]).unwrap();
    }
    out
}

pub fn arrangement_to_text(va: &VectorArrangement) -> String {
    let mut out = format!("rank {}\n", va.rank());
    for (j, label) in va.labels().iter().enumerate() {
        let entries: Vec<String> = va.column(j).iter().map(ToString::to_string).collect();
        if entries.is_empty() {
            writeln!(out, "col {label}").unwrap();
        } else {
            writeln!(out, "col {label} {}", entries.join(" ")).unwrap();
        }
    }
    out
}
