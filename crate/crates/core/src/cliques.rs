//! `K_r` and small-pattern copies in a graph, and the clique hypergraph.

use std::collections::BTreeMap;

use crate::cert::FCopy;
use crate::error::{Error, Result};
use crate::graph::{iter_bits, Graph};
use crate::hypergraph::Hypergraph;
use crate::pattern::PatternGraph;

/// All vertex sets of size `r` that induce a complete subgraph, each sorted,
/// in lexicographic order.
///
/// Vertices are added in increasing order; the candidate set is the running
/// intersection of forward neighbourhoods, and branches with fewer candidates
/// than missing vertices are cut.
pub fn enumerate_cliques(g: &Graph, r: usize) -> Result<Vec<Vec<usize>>> {
    if r < 3 {
        return Err(Error::InvalidParameter(format!("clique size must be at least 3, got {r}")));
    }
    let mut out = Vec::new();
    if r > g.n() {
        return Ok(out);
    }
    let words = g.words();
    let mut stack = Vec::with_capacity(r);
    for v in 0..g.n() {
        let cand = forward(g.row(v), v, words);
        stack.push(v);
        extend(g, r, &mut stack, &cand, &mut out);
        stack.pop();
    }
    Ok(out)
}

fn forward(row: &[u64], v: usize, words: usize) -> Vec<u64> {
    let mut cand = row.to_vec();
    // keep only bits above v
    for (k, w) in cand.iter_mut().enumerate().take(words) {
        let lo = k * 64;
        if lo + 63 <= v {
            *w = 0;
        } else if lo <= v {
            *w &= !0u64 << (v - lo + 1);
        }
    }
    cand
}

fn popcount(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

fn extend(g: &Graph, r: usize, stack: &mut Vec<usize>, cand: &[u64], out: &mut Vec<Vec<usize>>) {
    if stack.len() == r {
        out.push(stack.clone());
        return;
    }
    if popcount(cand) < r - stack.len() {
        return;
    }
    for u in iter_bits(cand) {
        let next: Vec<u64> = forward(g.row(u), u, g.words())
            .iter()
            .zip(cand)
            .map(|(a, b)| a & b)
            .collect();
        stack.push(u);
        extend(g, r, stack, &next, out);
        stack.pop();
    }
}

/// The `r`-uniform hypergraph whose edges are the `K_r` copies of `g`.
pub fn clique_hypergraph(g: &Graph, r: usize) -> Result<Hypergraph> {
    Hypergraph::new(g.n(), r, enumerate_cliques(g, r)?)
}

/// Vertices in no `K_r` of `g`, ascending. If nonempty, `g` has no spanning `K_r`-cycle.
pub fn uncovered_vertices(g: &Graph, r: usize) -> Result<Vec<usize>> {
    Ok(clique_hypergraph(g, r)?.uncovered_vertices())
}

/// All subgraphs of `g` isomorphic to `f` (not necessarily induced), one
/// entry per distinct image edge set, sorted.
pub fn enumerate_f_copies(g: &Graph, f: &PatternGraph) -> Result<Vec<FCopy>> {
    Ok(enumerate_f_copies_with_maps(g, f)?.into_iter().map(|(c, _)| c).collect())
}

/// Like [`enumerate_f_copies`], also returning one embedding `map[a]` per copy.
pub(crate) fn enumerate_f_copies_with_maps(g: &Graph, f: &PatternGraph) -> Result<Vec<(FCopy, Vec<usize>)>> {
    let order = f.connected_order();
    let mut found: BTreeMap<FCopy, Vec<usize>> = BTreeMap::new();
    let mut map = vec![usize::MAX; f.v()];
    embed(g, f, &order, 0, &mut map, &mut found);
    Ok(found.into_iter().collect())
}

fn embed(
    g: &Graph,
    f: &PatternGraph,
    order: &[usize],
    k: usize,
    map: &mut Vec<usize>,
    found: &mut BTreeMap<FCopy, Vec<usize>>,
) {
    if k == order.len() {
        let mut vertices = map.clone();
        vertices.sort_unstable();
        let mut edges: Vec<(usize, usize)> = f
            .edges()
            .iter()
            .map(|&(a, b)| (map[a].min(map[b]), map[a].max(map[b])))
            .collect();
        edges.sort_unstable();
        found.entry(FCopy { vertices, edges }).or_insert_with(|| map.clone());
        return;
    }
    let a = order[k];
    let placed = &order[..k];
    // Restrict to neighbours of an already-placed pattern neighbour when there is one.
    let anchor = placed.iter().copied().find(|&b| f.has_edge(a, b));
    let candidates: Vec<usize> = match anchor {
        Some(b) => g.neighbors(map[b]).collect(),
        None => (0..g.n()).collect(),
    };
    for x in candidates {
        if placed.iter().any(|&b| map[b] == x) {
            continue;
        }
        if placed.iter().all(|&b| !f.has_edge(a, b) || g.has_edge(map[b], x)) {
            map[a] = x;
            embed(g, f, order, k + 1, map, found);
        }
    }
    map[a] = usize::MAX;
}
