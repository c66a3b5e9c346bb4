//! Small pattern graphs `F`, their automorphisms and vertex/pair orbits.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Rational;

/// Largest pattern handled by the brute-force routines.
pub const MAX_PATTERN_VERTICES: usize = 8;

/// Connected simple graph on `2..=8` labeled vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PatternGraph {
    v: usize,
    edges: Vec<(usize, usize)>,
    adj: [u8; MAX_PATTERN_VERTICES],
}

/// Subgraph of a pattern, reported as a balancedness witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subgraph {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl Subgraph {
    pub fn d1(&self) -> Rational {
        Rational::new(self.edges.len() as i64, self.vertices.len() as i64 - 1)
    }
}

impl PatternGraph {
    pub fn new<I>(v: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if v < 2 {
            return Err(Error::Pattern(format!("need at least 2 vertices, got {v}")));
        }
        if v > MAX_PATTERN_VERTICES {
            return Err(Error::Pattern(format!("at most {MAX_PATTERN_VERTICES} vertices supported, got {v}")));
        }
        let mut adj = [0u8; MAX_PATTERN_VERTICES];
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a >= v || b >= v {
                return Err(Error::Pattern(format!("edge ({a},{b}) out of range")));
            }
            if a == b {
                return Err(Error::Pattern(format!("self-loop at {a}")));
            }
            set.insert((a.min(b), a.max(b)));
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        let f = PatternGraph { v, edges: set.into_iter().collect(), adj };
        if !f.is_connected() {
            return Err(Error::Pattern("pattern must be connected".into()));
        }
        Ok(f)
    }

    pub fn complete(r: usize) -> Result<Self> {
        Self::new(r, (0..r).flat_map(|a| (a + 1..r).map(move |b| (a, b))))
    }

    pub fn cycle(k: usize) -> Result<Self> {
        if k < 3 {
            return Err(Error::Pattern(format!("cycle needs at least 3 vertices, got {k}")));
        }
        Self::new(k, (0..k).map(|a| (a, (a + 1) % k)))
    }

    pub fn path(k: usize) -> Result<Self> {
        Self::new(k, (1..k).map(|a| (a - 1, a)))
    }

    /// `K_k` with the edge `{0, 1}` removed.
    pub fn complete_minus_edge(k: usize) -> Result<Self> {
        Self::new(k, (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).filter(|&e| e != (0, 1)))
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn e(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.v && self.adj[a] >> b & 1 == 1
    }

    pub fn degree(&self, a: usize) -> usize {
        self.adj[a].count_ones() as usize
    }

    /// Whether this is the complete graph on its vertices.
    pub fn is_complete(&self) -> bool {
        self.e() == self.v * (self.v - 1) / 2
    }

    /// 1-density `|E| / (|V| - 1)`.
    pub fn d1(&self) -> Rational {
        Rational::new(self.e() as i64, self.v as i64 - 1)
    }

    fn is_connected(&self) -> bool {
        let mut seen = 1u8;
        let mut frontier = 1u8;
        while frontier != 0 {
            let mut next = 0u8;
            for a in 0..self.v {
                if frontier >> a & 1 == 1 {
                    next |= self.adj[a];
                }
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen.count_ones() as usize == self.v
    }

    /// Vertex order in which every vertex after the first has an earlier neighbour.
    pub(crate) fn connected_order(&self) -> Vec<usize> {
        let mut order = vec![0];
        let mut placed = 1u8;
        while order.len() < self.v {
            let next = (0..self.v)
                .filter(|&a| placed >> a & 1 == 0)
                .max_by_key(|&a| ((self.adj[a] & placed).count_ones(), std::cmp::Reverse(a)))
                .expect("unplaced vertex");
            placed |= 1 << next;
            order.push(next);
        }
        order
    }

    /// All automorphisms as vertex maps `perm[a]`, including the identity.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut perm = vec![usize::MAX; self.v];
        let mut used = 0u8;
        self.extend_automorphism(0, &mut perm, &mut used, &mut out);
        out
    }

    fn extend_automorphism(&self, a: usize, perm: &mut Vec<usize>, used: &mut u8, out: &mut Vec<Vec<usize>>) {
        if a == self.v {
            out.push(perm.clone());
            return;
        }
        for img in 0..self.v {
            if *used >> img & 1 == 1 || self.degree(img) != self.degree(a) {
                continue;
            }
            let consistent = (0..a).all(|b| self.has_edge(a, b) == self.has_edge(img, perm[b]));
            if consistent {
                perm[a] = img;
                *used |= 1 << img;
                self.extend_automorphism(a + 1, perm, used, out);
                *used &= !(1 << img);
            }
        }
        perm[a] = usize::MAX;
    }

    /// Orbit label per vertex: the smallest vertex of its orbit.
    pub fn vertex_orbits(&self) -> Vec<usize> {
        let auts = self.automorphisms();
        (0..self.v).map(|a| auts.iter().map(|p| p[a]).min().unwrap()).collect()
    }

    /// Canonical label of the orbit of the unordered pair `{a, b}`: its
    /// lexicographically smallest image.
    pub fn pair_orbit(&self, a: usize, b: usize) -> (usize, usize) {
        self.automorphisms()
            .iter()
            .map(|p| (p[a].min(p[b]), p[a].max(p[b])))
            .min()
            .unwrap()
    }

    /// Finds a bijection `map[a]` from the pattern onto `vertices` carrying
    /// the pattern's edges exactly onto `edges`.
    pub fn isomorphism_onto(&self, vertices: &[usize], edges: &[(usize, usize)]) -> Option<Vec<usize>> {
        if vertices.len() != self.v || edges.len() != self.e() {
            return None;
        }
        let index = |x: usize| vertices.iter().position(|&y| y == x);
        let mut host = [0u8; MAX_PATTERN_VERTICES];
        for &(u, w) in edges {
            let (i, j) = (index(u)?, index(w)?);
            if i == j {
                return None;
            }
            host[i] |= 1 << j;
            host[j] |= 1 << i;
        }
        let mut map = vec![usize::MAX; self.v];
        let mut used = 0u8;
        let order = self.connected_order();
        if self.match_onto(&order, 0, &host, &mut map, &mut used) {
            Some(map.into_iter().map(|i| vertices[i]).collect())
        } else {
            None
        }
    }

    fn match_onto(&self, order: &[usize], k: usize, host: &[u8], map: &mut [usize], used: &mut u8) -> bool {
        if k == order.len() {
            return true;
        }
        let a = order[k];
        for img in 0..self.v {
            if *used >> img & 1 == 1 || host[img].count_ones() as usize != self.degree(a) {
                continue;
            }
            let ok = order[..k]
                .iter()
                .all(|&b| self.has_edge(a, b) == (host[img] >> map[b] & 1 == 1));
            if ok {
                map[a] = img;
                *used |= 1 << img;
                if self.match_onto(order, k + 1, host, map, used) {
                    return true;
                }
                *used &= !(1 << img);
            }
        }
        map[a] = usize::MAX;
        false
    }

    /// Induced subgraph on the vertex mask.
    pub(crate) fn induced(&self, mask: u8) -> Subgraph {
        let vertices: Vec<usize> = (0..self.v).filter(|&a| mask >> a & 1 == 1).collect();
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|&(a, b)| mask >> a & 1 == 1 && mask >> b & 1 == 1)
            .collect();
        Subgraph { vertices, edges }
    }
}

/// Restriction on where consecutive copies of `F` may meet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConnectorConstraint {
    /// Each connector must sit in one of these vertex orbits (labelled by
    /// their smallest vertex) in both copies containing it.
    VertexOrbits(BTreeSet<usize>),
    /// The two connectors of each copy must form an unordered pair in one of
    /// these pair orbits (labelled by [`PatternGraph::pair_orbit`]).
    PairOrbits(BTreeSet<(usize, usize)>),
}

impl ConnectorConstraint {
    /// Allows connectors in the orbits of the given vertices.
    pub fn vertex_orbits_of(f: &PatternGraph, vertices: &[usize]) -> Self {
        let orbits = f.vertex_orbits();
        ConnectorConstraint::VertexOrbits(vertices.iter().map(|&a| orbits[a]).collect())
    }

    /// Allows connector pairs in the orbits of the given pairs.
    pub fn pair_orbits_of(f: &PatternGraph, pairs: &[(usize, usize)]) -> Self {
        ConnectorConstraint::PairOrbits(pairs.iter().map(|&(a, b)| f.pair_orbit(a, b)).collect())
    }

    /// Whether a copy entered at pattern vertex `entry` and left at `exit` is allowed.
    pub fn admits(&self, f: &PatternGraph, entry: usize, exit: usize) -> bool {
        match self {
            ConnectorConstraint::VertexOrbits(allowed) => {
                let orbits = f.vertex_orbits();
                allowed.contains(&orbits[entry]) && allowed.contains(&orbits[exit])
            }
            ConnectorConstraint::PairOrbits(allowed) => allowed.contains(&f.pair_orbit(entry, exit)),
        }
    }

    /// Precomputed admissibility table indexed `[entry][exit]`.
    pub(crate) fn table(&self, f: &PatternGraph) -> Vec<Vec<bool>> {
        (0..f.v())
            .map(|a| (0..f.v()).map(|b| a != b && self.admits(f, a, b)).collect())
            .collect()
    }
}
