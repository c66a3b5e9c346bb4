//! Text formats for graphs and hypergraphs, JSON for certificates and golden weights.
//!
//! Graph: header `n m`, then `m` lines `u v` with `u < v`.
//! Hypergraph: header `n r m`, then `m` lines of `r` strictly increasing vertices.
//! Blank lines and lines starting with `#` are ignored.

use std::collections::BTreeMap;

use crate::cert::{FCycleCert, KrCycleCert, LooseHCCert};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hypergraph::Hypergraph;
use crate::pattern::PatternGraph;
use crate::random::{hex_double, weight};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(i, l)| (i, l.split_whitespace().collect()))
}

fn parse_fields(line: usize, fields: &[&str], expected: usize) -> Result<Vec<usize>> {
    if fields.len() != expected {
        return Err(Error::Parse { line, message: format!("expected {expected} fields, found {}", fields.len()) });
    }
    fields
        .iter()
        .map(|f| f.parse::<usize>().map_err(|e| Error::Parse { line, message: format!("{f:?}: {e}") }))
        .collect()
}

/// Returns `(n, edges)` after checking the header count and `u < v < n`.
fn parse_edge_list(text: &str) -> Result<(usize, Vec<(usize, usize)>)> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or(Error::Parse { line: 1, message: "missing header".into() })?;
    let h = parse_fields(hl, &header, 2)?;
    let (n, m) = (h[0], h[1]);
    let mut edges = Vec::with_capacity(m);
    let mut last = hl;
    for (line, fields) in lines {
        let e = parse_fields(line, &fields, 2)?;
        if e[0] >= e[1] || e[1] >= n {
            return Err(Error::Parse { line, message: format!("edge must satisfy u < v < {n}") });
        }
        edges.push((e[0], e[1]));
        last = line;
    }
    if edges.len() != m {
        return Err(Error::Parse { line: last, message: format!("header announces {m} edges, found {}", edges.len()) });
    }
    Ok((n, edges))
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let (n, edges) = parse_edge_list(text)?;
    Graph::from_edges(n, edges)
}

pub fn write_graph(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

/// Patterns use the graph format.
pub fn parse_pattern(text: &str) -> Result<PatternGraph> {
    let (n, edges) = parse_edge_list(text)?;
    PatternGraph::new(n, edges)
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or(Error::Parse { line: 1, message: "missing header".into() })?;
    let h = parse_fields(hl, &header, 3)?;
    let (n, r, m) = (h[0], h[1], h[2]);
    let mut edges = Vec::with_capacity(m);
    let mut last = hl;
    for (line, fields) in lines {
        let e = parse_fields(line, &fields, r)?;
        if e.windows(2).any(|w| w[0] >= w[1]) || e.iter().any(|&v| v >= n) {
            return Err(Error::Parse { line, message: format!("vertices must be strictly increasing and below {n}") });
        }
        edges.push(e);
        last = line;
    }
    if edges.len() != m {
        return Err(Error::Parse { line: last, message: format!("header announces {m} edges, found {}", edges.len()) });
    }
    Hypergraph::new(n, r, edges)
}

pub fn write_hypergraph(h: &Hypergraph) -> String {
    let mut s = format!("{} {} {}\n", h.n(), h.r(), h.edge_count());
    for e in h.edges() {
        let line: Vec<String> = e.iter().map(|v| v.to_string()).collect();
        s.push_str(&line.join(" "));
        s.push('\n');
    }
    s
}

pub fn kr_cert_to_json(cert: &KrCycleCert) -> String {
    serde_json::to_string(&cert.cliques).expect("vertex arrays serialize")
}

/// `r` is taken from the first clique.
pub fn kr_cert_from_json(text: &str) -> Result<KrCycleCert> {
    let cliques: Vec<Vec<usize>> = serde_json::from_str(text)?;
    let r = cliques.first().map(Vec::len).ok_or(Error::TooFewBlocks(0))?;
    Ok(KrCycleCert::new(r, cliques))
}

pub fn loose_cert_to_json(cert: &LooseHCCert) -> String {
    serde_json::to_string(&cert.edges).expect("vertex arrays serialize")
}

/// The ordering is reconstructed from the edge sequence.
pub fn loose_cert_from_json(text: &str) -> Result<LooseHCCert> {
    let edges: Vec<Vec<usize>> = serde_json::from_str(text)?;
    LooseHCCert::from_edges(edges)
}

pub fn f_cert_to_json(cert: &FCycleCert) -> String {
    serde_json::to_string(cert).expect("copies serialize")
}

pub fn f_cert_from_json(text: &str) -> Result<FCycleCert> {
    Ok(serde_json::from_str(text)?)
}

/// Golden weight table: seed → first `count` weights as hex doubles.
pub fn golden_weights(seeds: &[u64], count: u64) -> BTreeMap<String, Vec<String>> {
    seeds
        .iter()
        .map(|&s| (s.to_string(), (0..count).map(|k| hex_double(weight(s, k))).collect()))
        .collect()
}

pub fn golden_weights_json(seeds: &[u64], count: u64) -> String {
    serde_json::to_string_pretty(&golden_weights(seeds, count)).expect("strings serialize")
}
