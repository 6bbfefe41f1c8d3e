//! Text and JSON file formats.
//!
//! `.hg`: lines starting with `#` are ignored; the first data line is
//! `n m`, followed by `m` edge lines of space-separated vertex ids.
//! `.rbhg` is the same with every edge line prefixed by `r` or `b`.
//! JSON mirrors both as `{"n": .., "edges": [[..]], "colors": [..]}`.
//! Readers accept edges in any order; writers emit the sorted order.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Color, Hypergraph, HypergraphError, RedBlueHypergraph, UniformHypergraph, VertexSet};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Invalid(#[from] HypergraphError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn parse_err(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Parse { line, msg: msg.into() }
}

/// Data lines with their 1-based line numbers.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_ids<'a>(line: usize, tokens: impl Iterator<Item = &'a str>) -> Result<Vec<usize>, FormatError> {
    tokens.map(|t| t.parse::<usize>().map_err(|_| parse_err(line, format!("bad vertex id {t:?}")))).collect()
}

/// Parses header and edge lines; `colored` expects an `r`/`b` prefix.
fn parse(text: &str, colored: bool) -> Result<(usize, Vec<(Vec<usize>, Option<Color>)>), FormatError> {
    let mut lines = data_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(0, "missing `n m` header"))?;
    let nums = parse_ids(hline, header.split_whitespace())?;
    let [n, m] = nums[..] else {
        return Err(parse_err(hline, "header must be `n m`"));
    };
    let mut edges = Vec::with_capacity(m);
    for (line, text) in lines {
        let mut tokens = text.split_whitespace().peekable();
        let color = if colored {
            match tokens.next() {
                Some("r") => Some(Color::Red),
                Some("b") => Some(Color::Blue),
                other => return Err(parse_err(line, format!("expected color `r` or `b`, got {other:?}"))),
            }
        } else {
            None
        };
        edges.push((parse_ids(line, tokens)?, color));
    }
    if edges.len() != m {
        return Err(parse_err(0, format!("header announces {m} edges, found {}", edges.len())));
    }
    Ok((n, edges))
}

pub fn parse_hg(text: &str) -> Result<Hypergraph, FormatError> {
    let (n, edges) = parse(text, false)?;
    let lists: Vec<Vec<usize>> = edges.into_iter().map(|(e, _)| e).collect();
    Ok(Hypergraph::new(n, &lists)?)
}

/// Parses `.rbhg`. The uniformity is read off the edges; `r_if_empty` is
/// used when there are none.
pub fn parse_rbhg(text: &str, r_if_empty: usize) -> Result<RedBlueHypergraph, FormatError> {
    let (n, edges) = parse(text, true)?;
    let r = edges.first().map_or(r_if_empty, |(e, _)| e.len());
    let lists: Vec<Vec<usize>> = edges.iter().map(|(e, _)| e.clone()).collect();
    // validate through the plain constructor first for precise errors
    Hypergraph::new(n, &lists)?;
    let colored = edges.into_iter().map(|(e, c)| (e.into_iter().collect::<VertexSet>(), c.expect("colored parse"))).collect();
    Ok(RedBlueHypergraph::new(n, r, colored)?)
}

fn write_edge(out: &mut String, e: VertexSet) {
    let ids: Vec<String> = e.iter().map(|v| v.to_string()).collect();
    out.push_str(&ids.join(" "));
    out.push('\n');
}

pub fn write_hg(h: &Hypergraph) -> String {
    let mut out = format!("{} {}\n", h.n(), h.edge_count());
    for &e in h.edges() {
        write_edge(&mut out, e);
    }
    out
}

pub fn write_rbhg(h: &RedBlueHypergraph) -> String {
    let mut out = format!("{} {}\n", h.n(), h.base().edge_count());
    for (&e, &c) in h.base().edges().iter().zip(h.colors()) {
        let _ = write!(out, "{} ", if c == Color::Red { 'r' } else { 'b' });
        write_edge(&mut out, e);
    }
    out
}

/// JSON mirror of the text formats.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergraphJson {
    pub n: usize,
    pub edges: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colors: Option<Vec<Color>>,
}

impl From<&Hypergraph> for HypergraphJson {
    fn from(h: &Hypergraph) -> Self {
        HypergraphJson { n: h.n(), edges: h.edge_lists(), colors: None }
    }
}

impl From<&RedBlueHypergraph> for HypergraphJson {
    fn from(h: &RedBlueHypergraph) -> Self {
        HypergraphJson { n: h.n(), edges: h.base().edge_lists(), colors: Some(h.colors().to_vec()) }
    }
}

impl HypergraphJson {
    pub fn to_hypergraph(&self) -> Result<Hypergraph, HypergraphError> {
        Hypergraph::new(self.n, &self.edges)
    }

    pub fn to_red_blue(&self, r_if_empty: usize) -> Result<RedBlueHypergraph, HypergraphError> {
        let colors = self.colors.clone().unwrap_or_default();
        if colors.len() != self.edges.len() {
            return Err(HypergraphError::ColorCount { colors: colors.len(), edges: self.edges.len() });
        }
        Hypergraph::new(self.n, &self.edges)?;
        let r = self.edges.first().map_or(r_if_empty, Vec::len);
        let colored = self.edges.iter().zip(colors).map(|(e, c)| (e.iter().copied().collect(), c)).collect();
        RedBlueHypergraph::new(self.n, r, colored)
    }
}

pub fn read_text(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

/// Loads a hypergraph from `.hg` or `.json` (by extension).
pub fn load_hypergraph(path: &Path) -> Result<Hypergraph, FormatError> {
    let text = read_text(path)?;
    if path.extension().is_some_and(|e| e == "json") {
        let json: HypergraphJson = serde_json::from_str(&text)?;
        Ok(json.to_hypergraph()?)
    } else {
        parse_hg(&text)
    }
}

/// Loads a pattern and checks it is uniform. Edgeless patterns are
/// rejected since their uniformity is undefined.
pub fn load_uniform(path: &Path) -> Result<UniformHypergraph, FormatError> {
    let h = load_hypergraph(path)?;
    let r = h
        .uniformity()
        .ok_or_else(|| HypergraphError::InvalidParameters(format!("{} is not a nonempty uniform hypergraph", path.display())))?;
    Ok(UniformHypergraph::new(h, r)?)
}
