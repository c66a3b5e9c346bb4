//! Simple undirected graphs with bitset adjacency.

use crate::error::{Error, Result};

const WORD: usize = 64;

/// Simple undirected graph on vertices `0..n`.
///
/// Each vertex owns a row of `words` 64-bit words; bit `j` of row `i` is set
/// iff `{i, j}` is an edge. Rows are kept symmetric and the diagonal clear.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n >= 1` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("graph needs at least one vertex".into()));
        }
        let words = n.div_ceil(WORD);
        Ok(Graph { n, words, rows: vec![0; n * words] })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for i in 0..n {
            for j in i + 1..n {
                g.set(i, j);
            }
        }
        Ok(g)
    }

    /// Builds a graph from an edge list. Duplicate edges collapse; loops are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::InvalidParameter(format!("self-loop at vertex {u}")));
        }
        self.set(u, v);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check(u)?;
        self.check(v)?;
        if u != v {
            self.rows[u * self.words + v / WORD] &= !(1 << (v % WORD));
            self.rows[v * self.words + u / WORD] &= !(1 << (u % WORD));
        }
        Ok(())
    }

    /// Removes every edge incident to `v`.
    pub fn isolate(&mut self, v: usize) -> Result<()> {
        self.check(v)?;
        for u in 0..self.n {
            self.remove_edge(u, v)?;
        }
        Ok(())
    }

    fn set(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / WORD] |= 1 << (v % WORD);
        self.rows[v * self.words + u / WORD] |= 1 << (u % WORD);
    }

    fn check(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of 64-bit words per adjacency row.
    pub fn words(&self) -> usize {
        self.words
    }

    /// `false` for out-of-range vertices.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u * self.words + v / WORD] >> (v % WORD) & 1 == 1
    }

    /// Adjacency row of `v` as a bitset.
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(v))
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Whether `vertices` are pairwise adjacent. Returns the first missing pair otherwise.
    pub fn missing_pair(&self, vertices: &[usize]) -> Option<(usize, usize)> {
        for (a, &u) in vertices.iter().enumerate() {
            for &v in &vertices[a + 1..] {
                if !self.has_edge(u, v) {
                    return Some((u.min(v), u.max(v)));
                }
            }
        }
        None
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        self.missing_pair(vertices).is_none()
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::InvalidParameter("permutation length differs from n".into()));
        }
        Self::from_edges(self.n, self.edges().map(|(u, v)| (perm[u], perm[v])))
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Iterates the indices of set bits in a word slice, ascending.
pub(crate) fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(k, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * WORD + b)
            }
        })
    })
}
