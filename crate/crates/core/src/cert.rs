//! Certificates for spanning cyclic structures and their verifiers.
//!
//! All three certificate kinds describe a cyclic sequence of vertex blocks
//! `B_1, ..., B_m` where consecutive blocks (indices mod `m`) share exactly
//! one vertex, non-consecutive blocks are disjoint and the blocks cover every
//! vertex. They differ in what each block must be: a clique of the host
//! graph, an edge of the host hypergraph, or a copy of a pattern graph.
//!
//! Verifiers never fail; they report the first violated condition in a fixed
//! order so that tests can assert on the exact violation.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hypergraph::Hypergraph;
use crate::pattern::{ConnectorConstraint, PatternGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    OutOfRange,
    BadUniformity,
    BadM,
    NonClique,
    NotAnEdge,
    NonConsecutive,
    NotACopy,
    BadOverlap,
    BadDisjointness,
    NotSpanning,
    SharedEdge,
    BadConnector,
}

impl ViolationKind {
    pub fn name(self) -> &'static str {
        match self {
            ViolationKind::OutOfRange => "out-of-range",
            ViolationKind::BadUniformity => "bad-uniformity",
            ViolationKind::BadM => "bad-m",
            ViolationKind::NonClique => "non-clique",
            ViolationKind::NotAnEdge => "not-an-edge",
            ViolationKind::NonConsecutive => "non-consecutive",
            ViolationKind::NotACopy => "not-a-copy",
            ViolationKind::BadOverlap => "bad-overlap",
            ViolationKind::BadDisjointness => "bad-disjointness",
            ViolationKind::NotSpanning => "not-spanning",
            ViolationKind::SharedEdge => "shared-edge",
            ViolationKind::BadConnector => "bad-connector",
        }
    }
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// First failing condition of a certificate. `index` is the 0-based block
/// index the failure was detected at, when there is one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub index: Option<usize>,
    pub detail: String,
}

impl Violation {
    fn at(kind: ViolationKind, index: usize, detail: impl Into<String>) -> Self {
        Violation { kind, index: Some(index), detail: detail.into() }
    }

    fn global(kind: ViolationKind, detail: impl Into<String>) -> Self {
        Violation { kind, index: None, detail: detail.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index {
            Some(i) => write!(f, "{} at block {}: {}", self.kind, i, self.detail),
            None => write!(f, "{}: {}", self.kind, self.detail),
        }
    }
}

pub type VerifyResult = std::result::Result<(), Violation>;

/// Spanning `K_r`-cycle: cliques `H_1..H_m` in cyclic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KrCycleCert {
    pub r: usize,
    pub cliques: Vec<Vec<usize>>,
}

impl KrCycleCert {
    /// Sorts each clique; the sequence order is the cyclic order.
    pub fn new(r: usize, cliques: Vec<Vec<usize>>) -> Self {
        KrCycleCert { r, cliques: cliques.into_iter().map(sorted).collect() }
    }

    pub fn m(&self) -> usize {
        self.cliques.len()
    }

    /// Connector `v_i = H_i ∩ H_{i+1}` for each `i`, if every intersection is a singleton.
    pub fn connectors(&self) -> Option<Vec<usize>> {
        connectors(&self.cliques)
    }

    /// Whether no two cliques share an edge.
    pub fn pairwise_edge_disjoint(&self) -> bool {
        let mut seen = BTreeSet::new();
        for c in &self.cliques {
            for (a, &u) in c.iter().enumerate() {
                for &v in &c[a + 1..] {
                    if !seen.insert((u.min(v), u.max(v))) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Loose Hamilton cycle: a cyclic vertex ordering plus edges `E_1..E_m`,
/// each `r` consecutive vertices of the ordering.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LooseHCCert {
    pub ordering: Vec<usize>,
    pub edges: Vec<Vec<usize>>,
}

impl LooseHCCert {
    pub fn new(ordering: Vec<usize>, edges: Vec<Vec<usize>>) -> Self {
        LooseHCCert { ordering, edges: edges.into_iter().map(sorted).collect() }
    }

    /// Reconstructs the cyclic ordering from the edge sequence: the ordering
    /// walks `E_1, E_2, ...` entering each edge at its shared vertex with the
    /// previous edge, then its private vertices ascending.
    pub fn from_edges(edges: Vec<Vec<usize>>) -> Result<Self> {
        let edges: Vec<Vec<usize>> = edges.into_iter().map(sorted).collect();
        if edges.len() < 3 {
            return Err(Error::TooFewBlocks(edges.len()));
        }
        let conn = connectors(&edges).ok_or_else(|| {
            Error::InvalidParameter("consecutive edges must share exactly one vertex".into())
        })?;
        let m = edges.len();
        let mut ordering = Vec::new();
        for (i, e) in edges.iter().enumerate() {
            let entry = conn[(i + m - 1) % m];
            let exit = conn[i];
            ordering.push(entry);
            ordering.extend(e.iter().copied().filter(|&v| v != entry && v != exit));
        }
        Ok(LooseHCCert { ordering, edges })
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }
}

/// One copy of a pattern inside a host graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FCopy {
    /// Sorted image vertices.
    pub vertices: Vec<usize>,
    /// Sorted image edges `(u, v)` with `u < v`.
    pub edges: Vec<(usize, usize)>,
}

/// Spanning `F`-cycle: copies of `F` in cyclic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FCycleCert {
    pub copies: Vec<FCopy>,
}

impl FCycleCert {
    pub fn m(&self) -> usize {
        self.copies.len()
    }
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

fn intersection(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|v| b.contains(v)).collect()
}

fn connectors(blocks: &[Vec<usize>]) -> Option<Vec<usize>> {
    let m = blocks.len();
    (0..m)
        .map(|i| {
            let s = intersection(&blocks[i], &blocks[(i + 1) % m]);
            (s.len() == 1).then(|| s[0])
        })
        .collect()
}

fn check_range(n: usize, blocks: &[Vec<usize>]) -> VerifyResult {
    for (i, b) in blocks.iter().enumerate() {
        if let Some(&v) = b.iter().find(|&&v| v >= n) {
            return Err(Violation::at(ViolationKind::OutOfRange, i, format!("vertex {v} not below n = {n}")));
        }
    }
    Ok(())
}

fn check_uniformity(size: usize, blocks: &[Vec<usize>]) -> VerifyResult {
    for (i, b) in blocks.iter().enumerate() {
        let distinct: BTreeSet<_> = b.iter().collect();
        if b.len() != size || distinct.len() != size {
            return Err(Violation::at(
                ViolationKind::BadUniformity,
                i,
                format!("block {:?} is not a set of {size} distinct vertices", b),
            ));
        }
    }
    Ok(())
}

fn check_length(m: usize) -> VerifyResult {
    if m < 3 {
        return Err(Violation::global(ViolationKind::BadM, format!("m = {m} < 3")));
    }
    Ok(())
}

/// Overlap, disjointness and spanning, in that order.
fn check_cycle_shape(n: usize, blocks: &[Vec<usize>]) -> VerifyResult {
    let m = blocks.len();
    for i in 0..m {
        let j = (i + 1) % m;
        let s = intersection(&blocks[i], &blocks[j]);
        if s.len() != 1 {
            return Err(Violation::at(
                ViolationKind::BadOverlap,
                i,
                format!("blocks {i} and {j} share {:?}", s),
            ));
        }
    }
    for i in 0..m {
        for j in i + 2..m {
            if i == 0 && j == m - 1 {
                continue;
            }
            let s = intersection(&blocks[i], &blocks[j]);
            if !s.is_empty() {
                return Err(Violation::at(
                    ViolationKind::BadDisjointness,
                    i,
                    format!("non-adjacent blocks {i} and {j} share {:?}", s),
                ));
            }
        }
    }
    let mut covered = vec![false; n];
    for b in blocks {
        for &v in b {
            covered[v] = true;
        }
    }
    if let Some(v) = covered.iter().position(|c| !c) {
        return Err(Violation::global(ViolationKind::NotSpanning, format!("vertex {v} is not covered")));
    }
    Ok(())
}

/// Checks a `K_r`-cycle against `g`. Condition order: range, uniformity,
/// cycle length, clique-ness, overlap, disjointness, spanning.
pub fn verify_kr_cycle(g: &Graph, cert: &KrCycleCert) -> VerifyResult {
    if cert.r < 3 {
        return Err(Violation::global(ViolationKind::BadUniformity, format!("r = {} < 3", cert.r)));
    }
    check_range(g.n(), &cert.cliques)?;
    check_uniformity(cert.r, &cert.cliques)?;
    check_length(cert.m())?;
    for (i, c) in cert.cliques.iter().enumerate() {
        if let Some((u, v)) = g.missing_pair(c) {
            return Err(Violation::at(ViolationKind::NonClique, i, format!("edge {{{u},{v}}} missing")));
        }
    }
    check_cycle_shape(g.n(), &cert.cliques)
}

/// Checks a loose Hamilton cycle against `h`. Condition order: range (of the
/// ordering and the edges), uniformity, cycle length, edge membership,
/// consecutiveness, overlap, disjointness, spanning.
pub fn verify_loose_hc(h: &Hypergraph, cert: &LooseHCCert) -> VerifyResult {
    let n = h.n();
    let mut seen = vec![false; n];
    for &v in &cert.ordering {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(Violation::global(
                ViolationKind::OutOfRange,
                format!("ordering is not a permutation of 0..{n} (at vertex {v})"),
            ));
        }
    }
    if cert.ordering.len() != n {
        return Err(Violation::global(
            ViolationKind::OutOfRange,
            format!("ordering has {} vertices, expected {n}", cert.ordering.len()),
        ));
    }
    check_range(n, &cert.edges)?;
    check_uniformity(h.r(), &cert.edges)?;
    check_length(cert.m())?;
    for (i, e) in cert.edges.iter().enumerate() {
        if !h.contains(e) {
            return Err(Violation::at(ViolationKind::NotAnEdge, i, format!("{:?} is not an edge", e)));
        }
    }
    let mut pos = vec![0; n];
    for (k, &v) in cert.ordering.iter().enumerate() {
        pos[v] = k;
    }
    for (i, e) in cert.edges.iter().enumerate() {
        if !is_cyclic_window(&cert.ordering, &pos, e) {
            return Err(Violation::at(
                ViolationKind::NonConsecutive,
                i,
                format!("{:?} is not a run of consecutive vertices", e),
            ));
        }
    }
    check_cycle_shape(n, &cert.edges)
}

/// Whether `set` occupies consecutive positions of the cyclic `ordering`.
fn is_cyclic_window(ordering: &[usize], pos: &[usize], set: &[usize]) -> bool {
    let n = ordering.len();
    let k = set.len();
    if k > n {
        return false;
    }
    set.iter().any(|&start| (0..k).all(|d| set.contains(&ordering[(pos[start] + d) % n])))
}

/// Reinterprets a loose Hamilton cycle of a clique hypergraph as a `K_r`-cycle.
pub fn lift(cert: &LooseHCCert) -> Result<KrCycleCert> {
    if cert.m() < 3 {
        return Err(Error::TooFewBlocks(cert.m()));
    }
    let r = cert.edges[0].len();
    Ok(KrCycleCert::new(r, cert.edges.clone()))
}

/// Checks an `F`-cycle against `g`. Condition order: range, uniformity,
/// cycle length, copy validity, overlap, disjointness, spanning, edge
/// disjointness, connector constraint.
pub fn verify_f_cycle(
    g: &Graph,
    f: &PatternGraph,
    cert: &FCycleCert,
    constraint: Option<&ConnectorConstraint>,
) -> VerifyResult {
    let blocks: Vec<Vec<usize>> = cert.copies.iter().map(|c| c.vertices.clone()).collect();
    check_range(g.n(), &blocks)?;
    check_uniformity(f.v(), &blocks)?;
    check_length(cert.m())?;
    let mut maps = Vec::with_capacity(cert.m());
    for (i, c) in cert.copies.iter().enumerate() {
        if let Some(&(u, v)) = c.edges.iter().find(|&&(u, v)| !g.has_edge(u, v)) {
            return Err(Violation::at(ViolationKind::NotACopy, i, format!("edge {{{u},{v}}} not in host")));
        }
        match f.isomorphism_onto(&c.vertices, &c.edges) {
            Some(map) => maps.push(map),
            None => {
                return Err(Violation::at(ViolationKind::NotACopy, i, "edge set is not isomorphic to the pattern"));
            }
        }
    }
    check_cycle_shape(g.n(), &blocks)?;
    let mut seen = BTreeSet::new();
    for (i, c) in cert.copies.iter().enumerate() {
        for &e in &c.edges {
            if !seen.insert(e) {
                return Err(Violation::at(ViolationKind::SharedEdge, i, format!("edge {:?} reused", e)));
            }
        }
    }
    if let Some(constraint) = constraint {
        let conn = connectors(&blocks).expect("overlap already checked");
        let m = cert.m();
        for i in 0..m {
            let entry = conn[(i + m - 1) % m];
            let exit = conn[i];
            let pre = |x: usize| maps[i].iter().position(|&y| y == x).expect("connector in copy");
            if !constraint.admits(f, pre(entry), pre(exit)) {
                return Err(Violation::at(
                    ViolationKind::BadConnector,
                    i,
                    format!("connectors {entry} -> {exit} not allowed by constraint"),
                ));
            }
        }
    }
    Ok(())
}
