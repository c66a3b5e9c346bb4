//! Uniform hypergraphs with sorted, deduplicated edges.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// `r`-uniform hypergraph on `0..n`. Edges are sorted `r`-sets kept in
/// lexicographic order without duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    r: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn empty(n: usize, r: usize) -> Result<Self> {
        Self::new(n, r, Vec::<Vec<usize>>::new())
    }

    /// Validates every edge (exactly `r` distinct in-range vertices). Input
    /// edges may be unsorted; duplicates collapse.
    pub fn new<I, E>(n: usize, r: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        if r < 3 {
            return Err(Error::InvalidParameter(format!("uniformity must be at least 3, got {r}")));
        }
        let mut set = BTreeSet::new();
        for e in edges {
            let mut e = e.as_ref().to_vec();
            e.sort_unstable();
            e.dedup();
            if e.len() != r {
                return Err(Error::InvalidParameter(format!(
                    "edge {:?} does not have {r} distinct vertices",
                    e
                )));
            }
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            set.insert(e);
        }
        Ok(Hypergraph { n, r, edges: set.into_iter().collect() })
    }

    /// All `C(n, r)` r-subsets.
    pub fn complete(n: usize, r: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for_each_subset(n, r, |s| edges.push(s.to_vec()));
        Self::new(n, r, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Membership test; `edge` may be unsorted.
    pub fn contains(&self, edge: &[usize]) -> bool {
        let mut e = edge.to_vec();
        e.sort_unstable();
        self.edges.binary_search(&e).is_ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(&v)).count()
    }

    /// Vertices lying in no edge, ascending.
    pub fn uncovered_vertices(&self) -> Vec<usize> {
        let mut covered = vec![false; self.n];
        for e in &self.edges {
            for &v in e {
                covered[v] = true;
            }
        }
        (0..self.n).filter(|&v| !covered[v]).collect()
    }

    /// Copy without the edges for which `drop` returns true.
    pub fn without_edges<F: Fn(&[usize]) -> bool>(&self, drop: F) -> Self {
        Hypergraph {
            n: self.n,
            r: self.r,
            edges: self.edges.iter().filter(|e| !drop(e)).cloned().collect(),
        }
    }
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order.
pub(crate) fn for_each_subset<F: FnMut(&[usize])>(n: usize, k: usize, mut f: F) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
