//! Exact search for loose Hamilton cycles, spanning `K_r`-cycles and `F`-cycles.
//!
//! All three searches share one engine over "blocks" (hyperedges, cliques or
//! pattern copies). A partial solution is a path of blocks starting at a
//! fixed connector `c0`; it is extended one block at a time from the current
//! endpoint `c` with a block whose other vertices are all uncovered, choosing
//! the next connector among them in ascending order. When exactly `k - 2`
//! vertices remain, the path closes with the block `{c, c0} ∪ rest` if the
//! host has it.
//!
//! Pruning: every uncovered vertex must still lie in some block made only of
//! uncovered vertices, `c` and `c0`. This only removes subtrees without
//! solutions, so it changes node counts, never outcomes.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::cert::{lift, verify_f_cycle, verify_kr_cycle, verify_loose_hc, FCycleCert, KrCycleCert, LooseHCCert};
use crate::cliques::{clique_hypergraph, enumerate_f_copies_with_maps};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hypergraph::Hypergraph;
use crate::pattern::PatternGraph;

pub use crate::pattern::ConnectorConstraint;

/// Largest vertex count the exact solvers accept.
pub const MAX_SEARCH_VERTICES: usize = 128;

/// Largest vertex count for [`brute_force_loose_hc`].
pub const MAX_BRUTE_FORCE_VERTICES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SearchBudget {
    pub node_limit: u64,
    pub time_limit_ms: u64,
}

impl SearchBudget {
    pub fn new(node_limit: u64, time_limit_ms: u64) -> Result<Self> {
        if node_limit == 0 || time_limit_ms == 0 {
            return Err(Error::InvalidParameter("search budget limits must be positive".into()));
        }
        Ok(SearchBudget { node_limit, time_limit_ms })
    }

    pub fn unlimited() -> Self {
        SearchBudget { node_limit: u64::MAX, time_limit_ms: u64::MAX }
    }

    /// Node cap only.
    pub fn nodes(node_limit: u64) -> Result<Self> {
        Self::new(node_limit, u64::MAX)
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self::unlimited()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Found,
    None,
    BudgetExhausted,
}

impl SearchStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchStatus::Found => "found",
            SearchStatus::None => "none",
            SearchStatus::BudgetExhausted => "budget_exhausted",
        }
    }
}

impl std::fmt::Display for SearchStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub elapsed_ms: u64,
}

/// Result of a search; `certificate` is present iff `status` is `Found`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome<C> {
    pub status: SearchStatus,
    pub certificate: Option<C>,
    pub stats: SearchStats,
}

impl<C> SearchOutcome<C> {
    fn none(stats: SearchStats) -> Self {
        SearchOutcome { status: SearchStatus::None, certificate: None, stats }
    }

    pub fn is_found(&self) -> bool {
        self.status == SearchStatus::Found
    }

    pub fn map<D, F: FnOnce(C) -> D>(self, f: F) -> SearchOutcome<D> {
        SearchOutcome { status: self.status, certificate: self.certificate.map(f), stats: self.stats }
    }
}

fn bit(v: usize) -> u128 {
    1u128 << v
}

fn full_mask(n: usize) -> u128 {
    if n == 128 {
        u128::MAX
    } else {
        bit(n) - 1
    }
}

struct Block {
    mask: u128,
    verts: Vec<usize>,
}

enum Flow {
    Found,
    Dead,
    Exhausted,
}

type Admissible<'a> = &'a dyn Fn(usize, usize, usize) -> bool;

struct Engine<'a> {
    n: usize,
    k: usize,
    blocks: Vec<Block>,
    incidence: Vec<Vec<usize>>,
    admissible: Admissible<'a>,
    budget: SearchBudget,
    start: Instant,
    nodes: u64,
    c0: usize,
    path: Vec<usize>,
}

impl<'a> Engine<'a> {
    fn new(n: usize, k: usize, blocks: Vec<Vec<usize>>, admissible: Admissible<'a>, budget: SearchBudget) -> Self {
        let blocks: Vec<Block> = blocks
            .into_iter()
            .map(|verts| Block { mask: verts.iter().fold(0, |m, &v| m | bit(v)), verts })
            .collect();
        let mut incidence = vec![Vec::new(); n];
        for (b, blk) in blocks.iter().enumerate() {
            for &v in &blk.verts {
                incidence[v].push(b);
            }
        }
        Engine {
            n,
            k,
            blocks,
            incidence,
            admissible,
            budget,
            start: Instant::now(),
            nodes: 0,
            c0: 0,
            path: Vec::new(),
        }
    }

    fn stats(&self) -> SearchStats {
        SearchStats { nodes: self.nodes, elapsed_ms: self.start.elapsed().as_millis() as u64 }
    }

    fn over_budget(&mut self) -> bool {
        if self.nodes >= self.budget.node_limit {
            return true;
        }
        self.nodes += 1;
        self.nodes.is_multiple_of(1024) && self.start.elapsed().as_millis() as u64 >= self.budget.time_limit_ms
    }

    /// Returns the block sequence of a cycle, in cyclic order.
    fn run(&mut self) -> (SearchStatus, Option<Vec<usize>>) {
        if self.incidence[0].is_empty() {
            return (SearchStatus::None, None);
        }
        let first_blocks = self.incidence[0].clone();
        for b in first_blocks {
            let verts = self.blocks[b].verts.clone();
            for &c0 in &verts {
                for &c1 in &verts {
                    if c0 == c1 {
                        continue;
                    }
                    // Vertex 0 is either the starting connector or interior to the
                    // first block; in the latter case fix the orientation.
                    let canonical = c0 == 0 || (c1 != 0 && c0 < c1);
                    if !canonical || !(self.admissible)(b, c0, c1) {
                        continue;
                    }
                    self.c0 = c0;
                    self.path.clear();
                    self.path.push(b);
                    match self.dfs(c1, self.blocks[b].mask) {
                        Flow::Found => return (SearchStatus::Found, Some(self.path.clone())),
                        Flow::Exhausted => return (SearchStatus::BudgetExhausted, None),
                        Flow::Dead => {}
                    }
                }
            }
        }
        (SearchStatus::None, None)
    }

    fn dfs(&mut self, c: usize, covered: u128) -> Flow {
        if self.over_budget() {
            return Flow::Exhausted;
        }
        let uncovered = full_mask(self.n) & !covered;
        let ends = bit(c) | bit(self.c0);
        if uncovered.count_ones() as usize == self.k - 2 {
            let target = uncovered | ends;
            for &b in &self.incidence[c] {
                if self.blocks[b].mask == target && (self.admissible)(b, c, self.c0) {
                    self.path.push(b);
                    return Flow::Found;
                }
            }
            return Flow::Dead;
        }
        let avail = uncovered | ends;
        let mut rest = uncovered;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if !self.incidence[u].iter().any(|&b| self.blocks[b].mask & !avail == 0) {
                return Flow::Dead;
            }
        }
        let forward = uncovered | bit(c);
        for i in 0..self.incidence[c].len() {
            let b = self.incidence[c][i];
            let mask = self.blocks[b].mask;
            if mask & !forward != 0 {
                continue;
            }
            for j in 0..self.k {
                let exit = self.blocks[b].verts[j];
                if exit == c || !(self.admissible)(b, c, exit) {
                    continue;
                }
                self.path.push(b);
                match self.dfs(exit, covered | mask) {
                    Flow::Dead => {
                        self.path.pop();
                    }
                    other => return other,
                }
            }
        }
        Flow::Dead
    }
}

fn check_cycle_size(n: usize, k: usize) -> Result<()> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!("block size must be at least 3, got {k}")));
    }
    if !n.is_multiple_of(k - 1) {
        return Err(Error::Divisibility { n, divisor: k - 1 });
    }
    if n < 3 * (k - 1) {
        return Err(Error::InvalidParameter(format!("n = {n} is below 3(k-1) = {}", 3 * (k - 1))));
    }
    Ok(())
}

/// Exact search for a loose Hamilton cycle in `h`.
pub fn find_loose_hc(h: &Hypergraph, budget: SearchBudget) -> Result<SearchOutcome<LooseHCCert>> {
    let (n, r) = (h.n(), h.r());
    check_cycle_size(n, r)?;
    if n > MAX_SEARCH_VERTICES {
        return Err(Error::TooLarge(format!("exact search supports n <= {MAX_SEARCH_VERTICES}, got {n}")));
    }
    let always = |_: usize, _: usize, _: usize| true;
    let mut engine = Engine::new(n, r, h.edges().to_vec(), &always, budget);
    let (status, path) = engine.run();
    let stats = engine.stats();
    let certificate = path.map(|p| {
        let edges = p.iter().map(|&b| engine.blocks[b].verts.clone()).collect();
        let cert = LooseHCCert::from_edges(edges).expect("search produces a loose cycle");
        assert_eq!(verify_loose_hc(h, &cert), Ok(()), "solver produced an invalid loose Hamilton cycle");
        cert
    });
    Ok(SearchOutcome { status, certificate, stats })
}

/// Exhaustive enumeration of cyclic vertex orderings (vertex 0 first, one
/// orientation) and edge phases. Independent of [`find_loose_hc`].
pub fn brute_force_loose_hc(h: &Hypergraph) -> Result<SearchOutcome<LooseHCCert>> {
    let (n, r) = (h.n(), h.r());
    check_cycle_size(n, r)?;
    if n > MAX_BRUTE_FORCE_VERTICES {
        return Err(Error::TooLarge(format!("brute force supports n <= {MAX_BRUTE_FORCE_VERTICES}, got {n}")));
    }
    let start = Instant::now();
    let masks: std::collections::HashSet<u32> =
        h.edges().iter().map(|e| e.iter().fold(0u32, |m, &v| m | 1 << v)).collect();
    let m = n / (r - 1);
    let mut ordering: Vec<usize> = (0..n).collect();
    let mut nodes = 0u64;
    loop {
        if ordering[1] < ordering[n - 1] {
            nodes += 1;
            for phase in 0..r - 1 {
                let window = |i: usize| -> Vec<usize> {
                    (0..r).map(|d| ordering[(phase + i * (r - 1) + d) % n]).collect()
                };
                if (0..m).all(|i| masks.contains(&window(i).iter().fold(0u32, |acc, v| acc | 1 << v))) {
                    let edges = (0..m).map(window).collect();
                    let cert = LooseHCCert::new(ordering.clone(), edges);
                    assert_eq!(verify_loose_hc(h, &cert), Ok(()), "brute force produced an invalid cycle");
                    let stats = SearchStats { nodes, elapsed_ms: start.elapsed().as_millis() as u64 };
                    return Ok(SearchOutcome { status: SearchStatus::Found, certificate: Some(cert), stats });
                }
            }
        }
        if !next_permutation(&mut ordering[1..]) {
            break;
        }
    }
    Ok(SearchOutcome::none(SearchStats { nodes, elapsed_ms: start.elapsed().as_millis() as u64 }))
}

/// Lexicographic successor in place; false when already the last permutation.
fn next_permutation(xs: &mut [usize]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let Some(i) = (0..xs.len() - 1).rev().find(|&i| xs[i] < xs[i + 1]) else {
        return false;
    };
    let j = (i + 1..xs.len()).rev().find(|&j| xs[j] > xs[i]).unwrap();
    xs.swap(i, j);
    xs[i + 1..].reverse();
    true
}

/// Spanning `K_r`-cycle search: clique hypergraph, loose Hamilton cycle, lift.
/// Returns `none` without searching when some vertex lies in no `K_r`.
pub fn find_spanning_kr_cycle(g: &Graph, r: usize, budget: SearchBudget) -> Result<SearchOutcome<KrCycleCert>> {
    check_cycle_size(g.n(), r)?;
    let start = Instant::now();
    let h = clique_hypergraph(g, r)?;
    if !h.uncovered_vertices().is_empty() {
        let stats = SearchStats { nodes: 0, elapsed_ms: start.elapsed().as_millis() as u64 };
        return Ok(SearchOutcome::none(stats));
    }
    let outcome = find_loose_hc(&h, budget)?;
    let stats = SearchStats { nodes: outcome.stats.nodes, elapsed_ms: start.elapsed().as_millis() as u64 };
    let certificate = match outcome.certificate {
        Some(loose) => {
            let cert = lift(&loose)?;
            assert_eq!(verify_kr_cycle(g, &cert), Ok(()), "lifted certificate does not verify");
            Some(cert)
        }
        None => None,
    };
    Ok(SearchOutcome { status: outcome.status, certificate, stats })
}

/// Spanning `F`-cycle search: consecutive copies share exactly one vertex,
/// others are disjoint. With a constraint, each copy's pair of connectors
/// must be admitted by it.
pub fn find_f_cycle(
    g: &Graph,
    f: &PatternGraph,
    budget: SearchBudget,
    constraint: Option<&ConnectorConstraint>,
) -> Result<SearchOutcome<FCycleCert>> {
    let n = g.n();
    check_cycle_size(n, f.v())?;
    if n > MAX_SEARCH_VERTICES {
        return Err(Error::TooLarge(format!("exact search supports n <= {MAX_SEARCH_VERTICES}, got {n}")));
    }
    let copies = enumerate_f_copies_with_maps(g, f)?;
    let table = constraint.map(|c| c.table(f));
    // pattern vertex of each host vertex, per copy
    let preimage: Vec<Vec<(usize, usize)>> = copies
        .iter()
        .map(|(_, map)| map.iter().enumerate().map(|(a, &x)| (x, a)).collect())
        .collect();
    let pre = |b: usize, x: usize| preimage[b].iter().find(|&&(y, _)| y == x).map(|&(_, a)| a).unwrap();
    let admissible = |b: usize, entry: usize, exit: usize| match &table {
        None => true,
        Some(t) => t[pre(b, entry)][pre(b, exit)],
    };
    let blocks = copies.iter().map(|(c, _)| c.vertices.clone()).collect();
    let mut engine = Engine::new(n, f.v(), blocks, &admissible, budget);
    let (status, path) = engine.run();
    let stats = engine.stats();
    let certificate = path.map(|p| {
        let cert = FCycleCert { copies: p.iter().map(|&b| copies[b].0.clone()).collect() };
        assert_eq!(verify_f_cycle(g, f, &cert, constraint), Ok(()), "solver produced an invalid F-cycle");
        cert
    });
    Ok(SearchOutcome { status, certificate, stats })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_triangles() -> Hypergraph {
        Hypergraph::new(6, 3, [[0, 1, 2], [2, 3, 4], [4, 5, 0]]).unwrap()
    }

    #[test]
    fn unique_solution_found() {
        let out = find_loose_hc(&three_triangles(), SearchBudget::unlimited()).unwrap();
        assert_eq!(out.status, SearchStatus::Found);
        let mut edges = out.certificate.unwrap().edges;
        edges.sort();
        assert_eq!(edges, vec![vec![0, 1, 2], vec![0, 4, 5], vec![2, 3, 4]]);
    }

    #[test]
    fn complete_and_uncoverable() {
        let k = Hypergraph::complete(6, 3).unwrap();
        assert!(find_loose_hc(&k, SearchBudget::unlimited()).unwrap().is_found());
        let minus5 = k.without_edges(|e| e.contains(&5));
        let out = find_loose_hc(&minus5, SearchBudget::unlimited()).unwrap();
        assert_eq!(out.status, SearchStatus::None);
        assert!(out.certificate.is_none());
        assert_eq!(brute_force_loose_hc(&minus5).unwrap().status, SearchStatus::None);
    }

    #[test]
    fn brute_force_agrees_on_examples() {
        for h in [three_triangles(), Hypergraph::complete(6, 3).unwrap(), Hypergraph::empty(6, 3).unwrap()] {
            let a = find_loose_hc(&h, SearchBudget::unlimited()).unwrap();
            let b = brute_force_loose_hc(&h).unwrap();
            assert_eq!(a.status, b.status);
        }
        assert_eq!(brute_force_loose_hc(&Hypergraph::empty(6, 3).unwrap()).unwrap().status, SearchStatus::None);
    }

    #[test]
    fn preconditions() {
        assert!(matches!(
            find_loose_hc(&Hypergraph::complete(7, 3).unwrap(), SearchBudget::unlimited()),
            Err(Error::Divisibility { n: 7, divisor: 2 })
        ));
        assert!(find_loose_hc(&Hypergraph::complete(4, 3).unwrap(), SearchBudget::unlimited()).is_err());
        assert!(brute_force_loose_hc(&Hypergraph::empty(12, 3).unwrap()).is_err());
        assert!(SearchBudget::new(0, 10).is_err());
        assert!(find_spanning_kr_cycle(&Graph::complete(7).unwrap(), 3, SearchBudget::unlimited()).is_err());
    }

    #[test]
    fn budget_exhaustion_is_distinct() {
        let k = Hypergraph::complete(12, 3).unwrap().without_edges(|e| e.contains(&11) && e.contains(&10));
        let out = find_loose_hc(&k, SearchBudget::nodes(2).unwrap()).unwrap();
        assert_eq!(out.status, SearchStatus::BudgetExhausted);
        assert!(out.certificate.is_none());
        assert_eq!(out.stats.nodes, 2);
    }

    #[test]
    fn kr_cycle_examples() {
        let k6 = Graph::complete(6).unwrap();
        assert!(find_spanning_kr_cycle(&k6, 3, SearchBudget::unlimited()).unwrap().is_found());

        let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5), (0, 5), (0, 4)]).unwrap();
        let out = find_spanning_kr_cycle(&g, 3, SearchBudget::unlimited()).unwrap();
        let mut cliques = out.certificate.unwrap().cliques;
        cliques.sort();
        assert_eq!(cliques, vec![vec![0, 1, 2], vec![0, 4, 5], vec![2, 3, 4]]);

        let mut h = k6.clone();
        h.isolate(0).unwrap();
        let out = find_spanning_kr_cycle(&h, 3, SearchBudget::unlimited()).unwrap();
        assert_eq!(out.status, SearchStatus::None);
        assert_eq!(out.stats.nodes, 0);
    }

    #[test]
    fn permutation_successor() {
        let mut xs = vec![1, 2, 3];
        let mut count = 1;
        while next_permutation(&mut xs) {
            count += 1;
        }
        assert_eq!(count, 6);
        assert_eq!(xs, vec![3, 2, 1]);
    }

    fn c4_ring(opposite: bool) -> Graph {
        // Three 4-cycles; copy i uses connectors a_i and a_{i+1}.
        let conn = [0, 3, 6];
        let mut edges = Vec::new();
        let privates = [[1, 2], [4, 5], [7, 8]];
        for i in 0..3 {
            let (a, b) = (conn[i], conn[(i + 1) % 3]);
            let [x, y] = privates[i];
            if opposite {
                edges.extend([(a, x), (x, b), (b, y), (y, a)]);
            } else {
                edges.extend([(a, b), (b, x), (x, y), (y, a)]);
            }
        }
        Graph::from_edges(9, edges).unwrap()
    }

    #[test]
    fn c4_ring_with_and_without_constraint() {
        let c4 = PatternGraph::cycle(4).unwrap();
        let opposite = ConnectorConstraint::pair_orbits_of(&c4, &[(0, 2)]);
        let adjacent = c4_ring(false);
        assert!(find_f_cycle(&adjacent, &c4, SearchBudget::unlimited(), None).unwrap().is_found());
        let out = find_f_cycle(&adjacent, &c4, SearchBudget::unlimited(), Some(&opposite)).unwrap();
        assert_eq!(out.status, SearchStatus::None);

        let opp = c4_ring(true);
        let out = find_f_cycle(&opp, &c4, SearchBudget::unlimited(), Some(&opposite)).unwrap();
        assert!(out.is_found());
        assert_eq!(out.certificate.unwrap().m(), 3);
    }

    #[test]
    fn f_cycle_preconditions() {
        let c4 = PatternGraph::cycle(4).unwrap();
        assert!(find_f_cycle(&Graph::complete(8).unwrap(), &c4, SearchBudget::unlimited(), None).is_err());
        let p2 = PatternGraph::path(2).unwrap();
        assert!(find_f_cycle(&Graph::complete(6).unwrap(), &p2, SearchBudget::unlimited(), None).is_err());
    }
}
