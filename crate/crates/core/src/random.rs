//! Counter-mode splitmix64 weights and the coupled samplers built on them.
//!
//! Every potential edge (vertex pair or `r`-set) gets a slot index and a
//! weight in `[0, 1)` that depends only on `(seed, slot)`. An instance at
//! probability `p` keeps exactly the slots with weight below `p`, so one
//! weight assignment realizes `G(n, p)` for every `p` at once and the edge
//! sets are nested in `p`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hypergraph::{for_each_subset, Hypergraph};
use crate::scalar::Real;

pub const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// One splitmix64 step from `state`: advance by the golden gamma, then mix.
pub fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Raw 64-bit output for `slot` of the stream keyed by `seed`.
pub fn stream_u64(seed: u64, slot: u64) -> u64 {
    splitmix64(seed.wrapping_add(slot.wrapping_mul(GOLDEN_GAMMA)))
}

/// Weight of `slot`: the 53 high bits of the stream output as a dyadic rational in `[0, 1)`.
pub fn weight(seed: u64, slot: u64) -> f64 {
    (stream_u64(seed, slot) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Slot of the pair `{i, j}`, `i < j < n`: `i*n - i(i+1)/2 + (j - i - 1)`.
pub fn pair_index(i: usize, j: usize, n: usize) -> Result<u64> {
    if j >= n {
        return Err(Error::VertexOutOfRange { vertex: j, n });
    }
    if i >= j {
        return Err(Error::InvalidParameter(format!("pair index needs i < j, got ({i}, {j})")));
    }
    let (i, j, n) = (i as u64, j as u64, n as u64);
    Ok(i * n - i * (i + 1) / 2 + (j - i - 1))
}

/// Colexicographic rank of a sorted set: `sum_k C(c_k, k + 1)`.
pub fn colex_rank(set: &[usize]) -> u64 {
    set.iter().enumerate().map(|(k, &c)| binomial(c as u64, k as u64 + 1)).sum()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightKind {
    /// One weight per vertex pair, slot = [`pair_index`].
    Pairs,
    /// One weight per `r`-set, slot = [`colex_rank`].
    RSets(usize),
}

/// Implicit weights for every slot of one sampling universe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightAssignment {
    pub n: usize,
    pub kind: WeightKind,
    pub seed: u64,
}

impl WeightAssignment {
    pub fn pairs(n: usize, seed: u64) -> Self {
        WeightAssignment { n, kind: WeightKind::Pairs, seed }
    }

    pub fn r_sets(n: usize, r: usize, seed: u64) -> Self {
        WeightAssignment { n, kind: WeightKind::RSets(r), seed }
    }

    pub fn weight(&self, slot: u64) -> f64 {
        weight(self.seed, slot)
    }
}

/// `G(n, p)` realized by the weights: `{i, j}` present iff its weight is below `p`.
pub fn graph_at<T: Real>(w: &WeightAssignment, p: T) -> Result<Graph> {
    if w.kind != WeightKind::Pairs {
        return Err(Error::InvalidParameter("graph_at needs pair weights".into()));
    }
    let p = p.to_f64().unwrap_or(f64::NAN);
    let n = w.n;
    let mut g = Graph::empty(n)?;
    let mut slot = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            if w.weight(slot) < p {
                g.add_edge(i, j)?;
            }
            slot += 1;
        }
    }
    Ok(g)
}

/// `H(n, pi; r)` realized by the weights: an `r`-set is an edge iff its weight is below `pi`.
pub fn hypergraph_at<T: Real>(w: &WeightAssignment, pi: T, r: usize) -> Result<Hypergraph> {
    if w.kind != WeightKind::RSets(r) {
        return Err(Error::InvalidParameter(format!("hypergraph_at needs {r}-set weights")));
    }
    let pi = pi.to_f64().unwrap_or(f64::NAN);
    let mut edges = Vec::new();
    for_each_subset(w.n, r, |s| {
        if w.weight(colex_rank(s)) < pi {
            edges.push(s.to_vec());
        }
    });
    Hypergraph::new(w.n, r, edges)
}

/// Model parameters after clamping probabilities into `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams<T> {
    pub n: usize,
    pub r: usize,
    pub p: T,
    pub pi: T,
    pub omega: T,
    /// Set when either probability had to be clamped.
    pub clamped: bool,
}

impl<T: Real> ModelParams<T> {
    pub fn new(n: usize, r: usize, p: T, pi: T, omega: T) -> Result<Self> {
        if omega.is_nan() || omega < T::zero() {
            return Err(Error::InvalidParameter(format!("omega must be non-negative, got {omega}")));
        }
        let (p, cp) = p.clamp_unit();
        let (pi, cpi) = pi.clamp_unit();
        Ok(ModelParams { n, r, p, pi, omega, clamped: cp || cpi })
    }
}

/// Formats an `f64` the way `float.hex()` does in Python, e.g. `0x1.8000000000000p-1`.
pub fn hex_double(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0x0.0p+0".into() } else { "0x0.0p+0".into() };
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { "-" } else { "" };
    let exp_bits = ((bits >> 52) & 0x7ff) as i64;
    let mantissa = bits & ((1u64 << 52) - 1);
    let (lead, exp) = if exp_bits == 0 { (0, -1022) } else { (1, exp_bits - 1023) };
    format!("{sign}0x{lead}.{mantissa:013x}p{exp:+}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_index_examples() {
        assert_eq!(pair_index(0, 1, 4).unwrap(), 0);
        assert_eq!(pair_index(2, 3, 4).unwrap(), 5);
        assert_eq!(pair_index(0, 3, 4).unwrap(), 2);
        assert!(pair_index(1, 1, 4).is_err());
        assert!(pair_index(1, 4, 4).is_err());
    }

    #[test]
    fn pair_index_is_bijective() {
        let n = 9;
        let mut slots: Vec<u64> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| pair_index(i, j, n).unwrap()))
            .collect();
        slots.sort_unstable();
        assert_eq!(slots, (0..36).collect::<Vec<_>>());
    }

    #[test]
    fn colex_rank_is_bijective() {
        let mut ranks = Vec::new();
        for_each_subset(7, 3, |s| ranks.push(colex_rank(s)));
        ranks.sort_unstable();
        assert_eq!(ranks, (0..35).collect::<Vec<_>>());
    }

    #[test]
    fn splitmix_reference_value() {
        // First output of the reference splitmix64 generator seeded with 42.
        assert_eq!(stream_u64(42, 0), 0xbdd7_3226_2feb_6e95);
    }

    #[test]
    fn hex_formatting() {
        assert_eq!(hex_double(0.5), "0x1.0000000000000p-1");
        assert_eq!(hex_double(0.75), "0x1.8000000000000p-1");
        assert_eq!(hex_double(1.0), "0x1.0000000000000p+0");
        assert_eq!(hex_double(0.0), "0x0.0p+0");
    }

    #[test]
    fn extremes() {
        let w = WeightAssignment::pairs(7, 11);
        assert_eq!(graph_at(&w, 1.0).unwrap(), Graph::complete(7).unwrap());
        assert_eq!(graph_at(&w, 0.0f32).unwrap().edge_count(), 0);
        let hw = WeightAssignment::r_sets(5, 3, 11);
        assert_eq!(hypergraph_at(&hw, 1.0, 3).unwrap().edge_count(), 10);
        assert_eq!(hypergraph_at(&hw, 0.0, 3).unwrap().edge_count(), 0);
        assert!(hypergraph_at(&hw, 0.5, 4).is_err());
        assert!(graph_at(&hw, 0.5).is_err());
    }

    #[test]
    fn params_clamp() {
        let m = ModelParams::new(6, 3, 3.5, 0.2, 1e6).unwrap();
        assert_eq!((m.p, m.pi, m.clamped), (1.0, 0.2, true));
        assert!(ModelParams::new(6, 3, 0.1, 0.1, -1.0).is_err());
    }
}
