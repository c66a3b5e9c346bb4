//! Exact-arithmetic calculators: 1-density, strict 1-balancedness, threshold
//! formulas, coupling density and first-moment exponents of `F`-cycles.
//!
//! Exponents are exact [`Rational`]s throughout; floating point enters only in
//! the final numeric evaluation, which is generic over [`Real`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pattern::{PatternGraph, Subgraph};
use crate::scalar::Real;
use crate::Rational;

/// `n^{n_exponent} * (ln n)^{log_exponent}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PowerLaw {
    pub n_exponent: Rational,
    pub log_exponent: Rational,
}

impl PowerLaw {
    pub fn new(n_exponent: Rational, log_exponent: Rational) -> Self {
        PowerLaw { n_exponent, log_exponent }
    }

    /// Raises the law to an integer power, exactly.
    pub fn powi(self, k: i64) -> Self {
        PowerLaw { n_exponent: self.n_exponent * k, log_exponent: self.log_exponent * k }
    }

    pub fn eval<T: Real>(&self, n: usize) -> T {
        let n = T::from_count(n);
        n.powf(T::from_rational(self.n_exponent)) * n.ln().powf(T::from_rational(self.log_exponent))
    }
}

/// A probability produced by a formula, clamped into `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Probability<T> {
    pub value: T,
    pub clamped: bool,
}

impl<T: Real> Probability<T> {
    pub fn clamp(raw: T) -> Self {
        let (value, clamped) = raw.clamp_unit();
        Probability { value, clamped }
    }
}

/// The `K_r`-cycle threshold `p = n^{-2/r} (ln n)^{1/C(r,2)}` and the
/// hyperedge density it induces.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdReport<T> {
    pub n: usize,
    pub r: usize,
    pub p_exponent: Rational,
    pub log_exponent: Rational,
    /// `pi = p^{C(r,2)}` as a power law: `n^{1-r} ln n`.
    pub pi_law: PowerLaw,
    pub pi_formula: String,
    /// Numeric `p` at `n` before clamping.
    pub raw_p: T,
    /// Numeric `p` at `n`, clamped to `[0, 1]`.
    pub p: T,
    pub clamped: bool,
}

impl<T: Real> ThresholdReport<T> {
    pub fn p_law(&self) -> PowerLaw {
        PowerLaw::new(self.p_exponent, self.log_exponent)
    }
}

pub fn choose2(r: usize) -> i64 {
    (r * (r - 1) / 2) as i64
}

/// 1-density `d1(F) = |E(F)| / (|V(F)| - 1)`.
pub fn d1(f: &PatternGraph) -> Rational {
    f.d1()
}

/// Whether every proper subgraph with at least two vertices has strictly
/// smaller 1-density. When not, returns a witness `F'` with `d1(F') >= d1(F)`:
/// the densest one, with fewest vertices on ties.
///
/// Only induced subgraphs on proper vertex subsets need checking: dropping
/// edges lowers `d1`, and a spanning subgraph with fewer edges than `F` is
/// strictly sparser.
pub fn is_strictly_one_balanced(f: &PatternGraph) -> (bool, Option<Subgraph>) {
    let target = f.d1();
    let full = (1u16 << f.v()) - 1;
    let mut best: Option<Subgraph> = None;
    for mask in 1..full {
        if mask.count_ones() < 2 {
            continue;
        }
        let sub = f.induced(mask as u8);
        if sub.edges.is_empty() || sub.d1() < target {
            continue;
        }
        let better = match &best {
            None => true,
            Some(b) => {
                sub.d1() > b.d1() || (sub.d1() == b.d1() && sub.vertices.len() < b.vertices.len())
            }
        };
        if better {
            best = Some(sub);
        }
    }
    (best.is_none(), best)
}

pub fn kr_threshold<T: Real>(n: usize, r: usize) -> Result<ThresholdReport<T>> {
    if n < 2 || r < 3 {
        return Err(Error::InvalidParameter(format!("threshold needs n >= 2 and r >= 3, got n = {n}, r = {r}")));
    }
    let c = choose2(r);
    let p_exponent = Rational::new(-2, r as i64);
    let log_exponent = Rational::new(1, c);
    let law = PowerLaw::new(p_exponent, log_exponent);
    let raw_p: T = law.eval(n);
    let p = Probability::clamp(raw_p);
    let pi_law = law.powi(c);
    Ok(ThresholdReport {
        n,
        r,
        p_exponent,
        log_exponent,
        pi_law,
        pi_formula: format!(
            "pi = p^{c} = n^({}) * (ln n)^({})",
            pi_law.n_exponent, pi_law.log_exponent
        ),
        raw_p,
        p: p.value,
        clamped: p.clamped,
    })
}

/// Hyperedge density `pi = a * p^{|E(F)|}` of the graph-to-hypergraph coupling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingPi<T> {
    pub pi: T,
    pub edge_exponent: usize,
    pub a: T,
    /// `a = 1` is known to be valid only when `F` is complete; otherwise it
    /// is a normalization.
    pub a_guaranteed: bool,
}

pub fn coupling_pi<T: Real>(p: T, f: &PatternGraph) -> Result<CouplingPi<T>> {
    if p.is_nan() || p < T::zero() || p > T::one() {
        return Err(Error::InvalidParameter(format!("p must lie in [0, 1], got {p}")));
    }
    let e = f.e();
    Ok(CouplingPi { pi: p.powi(e as i32), edge_exponent: e, a: T::one(), a_guaranteed: f.is_complete() })
}

/// Loose Hamilton cycle threshold `pi = omega * n^{1-r} * ln n`, clamped.
pub fn loose_hc_threshold_pi<T: Real>(n: usize, r: usize, omega: T) -> Result<Probability<T>> {
    if n < 2 || r < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2 and r >= 2, got n = {n}, r = {r}")));
    }
    let law = PowerLaw::new(Rational::from_integer(1 - r as i64), Rational::from_integer(1));
    Ok(Probability::clamp(omega * law.eval(n)))
}

/// Threshold `pi = omega * n^{-2}` for Hamilton cycles whose consecutive edges share two vertices.
pub fn overlap2_hc_threshold_pi<T: Real>(n: usize, omega: T) -> Result<Probability<T>> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2, got {n}")));
    }
    let n = T::from_count(n);
    Ok(Probability::clamp(omega / (n * n)))
}

/// Exponents of `n` from the first-moment heuristic for an `F`-cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FirstMoment {
    pub overlap: usize,
    pub shared_edges: usize,
    /// `p ≈ n^{p_exponent}`.
    pub p_exponent: Rational,
    /// `pi = p^{|E(F)|} ≈ n^{pi_exponent}`.
    pub pi_exponent: Rational,
}

/// First-moment exponents for a cyclic chain of `F` copies where consecutive
/// copies share `overlap` vertices and `shared_edges` edges.
///
/// With `m = n / (v_F - o)` copies and `m (e_F - s)` edges in total,
/// `n! p^{m (e_F - s)} ≍ 1` and `ln n! ~ n ln n` give
/// `p ≈ n^{-(v_F - o)/(e_F - s)}`.
pub fn f_cycle_first_moment(f: &PatternGraph, overlap: usize, shared_edges: usize) -> Result<FirstMoment> {
    let (v, e) = (f.v(), f.e());
    if overlap < 1 || overlap >= v {
        return Err(Error::InvalidParameter(format!("overlap must lie in 1..{v}, got {overlap}")));
    }
    if shared_edges > e {
        return Err(Error::InvalidParameter(format!("shared edges {shared_edges} exceed |E(F)| = {e}")));
    }
    if shared_edges == e {
        return Err(Error::InvalidParameter("every edge shared: degenerate chain".into()));
    }
    let p_exponent = -Rational::new((v - overlap) as i64, (e - shared_edges) as i64);
    Ok(FirstMoment { overlap, shared_edges, p_exponent, pi_exponent: p_exponent * e as i64 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ThresholdRelation {
    #[serde(rename = "below threshold")]
    Below,
    #[serde(rename = "matches threshold up to log factors")]
    Matches,
    #[serde(rename = "above threshold")]
    Above,
}

/// Heuristic `pi` against the hypergraph Hamilton-cycle threshold of the
/// matching overlap type.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HcComparison {
    pub pi_exponent: Rational,
    pub threshold_exponent: Rational,
    pub relation: ThresholdRelation,
}

/// Known thresholds: loose cycles (`o = 1`) at `n^{1 - v_F} ln n`, and
/// overlap-2 cycles at `omega n^{-2}`. Other overlaps return `None`.
pub fn compare_with_hc_threshold(f: &PatternGraph, fm: &FirstMoment) -> Option<HcComparison> {
    let threshold_exponent = match fm.overlap {
        1 => Rational::from_integer(1 - f.v() as i64),
        2 => Rational::from_integer(-2),
        _ => return None,
    };
    let relation = match fm.pi_exponent.cmp(&threshold_exponent) {
        std::cmp::Ordering::Less => ThresholdRelation::Below,
        std::cmp::Ordering::Equal => ThresholdRelation::Matches,
        std::cmp::Ordering::Greater => ThresholdRelation::Above,
    };
    Some(HcComparison { pi_exponent: fm.pi_exponent, threshold_exponent, relation })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn densities() {
        assert_eq!(d1(&PatternGraph::complete(4).unwrap()), q(2, 1));
        assert_eq!(d1(&PatternGraph::cycle(4).unwrap()), q(4, 3));
        assert_eq!(d1(&PatternGraph::complete_minus_edge(4).unwrap()), q(5, 3));
    }

    #[test]
    fn balancedness_examples() {
        assert_eq!(is_strictly_one_balanced(&PatternGraph::complete(3).unwrap()), (true, None));
        assert_eq!(is_strictly_one_balanced(&PatternGraph::cycle(4).unwrap()), (true, None));
        let (ok, w) = is_strictly_one_balanced(&PatternGraph::path(3).unwrap());
        assert!(!ok);
        let w = w.unwrap();
        assert_eq!(w.edges.len(), 1);
        assert_eq!(w.vertices.len(), 2);
        assert_eq!(w.d1(), q(1, 1));
    }

    #[test]
    fn triangle_with_pendant_is_unbalanced() {
        // d1 = 4/3 but the triangle alone has 3/2.
        let f = PatternGraph::new(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        let (ok, w) = is_strictly_one_balanced(&f);
        assert!(!ok);
        assert_eq!(w.unwrap().vertices, vec![0, 1, 2]);
    }

    #[test]
    fn threshold_exponents() {
        let t = kr_threshold::<f64>(1000, 3).unwrap();
        assert_eq!((t.p_exponent, t.log_exponent), (q(-2, 3), q(1, 3)));
        assert!((t.p - 0.019045).abs() < 5e-6, "{}", t.p);
        let t4 = kr_threshold::<f32>(100, 4).unwrap();
        assert_eq!((t4.p_exponent, t4.log_exponent), (q(-1, 2), q(1, 6)));
        assert!(kr_threshold::<f64>(1, 3).is_err());
        assert!(kr_threshold::<f64>(10, 2).is_err());
    }

    #[test]
    fn tiny_n_clamps() {
        let t = kr_threshold::<f64>(2, 3).unwrap();
        assert!(!t.clamped && t.p < 1.0);
        let pi = loose_hc_threshold_pi(6, 3, 1e6).unwrap();
        assert!(pi.clamped && pi.value == 1.0);
    }

    #[test]
    fn coupling() {
        let k3 = PatternGraph::complete(3).unwrap();
        let c = coupling_pi(0.5, &k3).unwrap();
        assert_eq!((c.pi, c.edge_exponent, c.a_guaranteed), (0.125, 3, true));
        let c4 = coupling_pi(0.1f64, &PatternGraph::cycle(4).unwrap()).unwrap();
        assert!((c4.pi - 1e-4).abs() < 1e-18);
        assert!(!c4.a_guaranteed);
        assert!(coupling_pi(1.5, &k3).is_err());
    }

    #[test]
    fn loose_threshold_values() {
        let pi = loose_hc_threshold_pi(100, 3, 2.0f64).unwrap();
        assert!((pi.value - 2e-4 * 100f64.ln()).abs() < 1e-15);
        assert!((pi.value - 9.21e-4).abs() < 1e-6);
        assert_eq!(loose_hc_threshold_pi(100, 3, 0.0f64).unwrap().value, 0.0);
        // ln e = 1 leaves n^{1-r}: check through the power law at n = 3 against 3^{-2} ln 3.
        let v = loose_hc_threshold_pi(3, 3, 1.0f64).unwrap().value;
        assert!((v - 3f64.ln() / 9.0).abs() < 1e-15);
    }

    #[test]
    fn overlap2() {
        assert!((overlap2_hc_threshold_pi(100, 1.0f64).unwrap().value - 1e-4).abs() < 1e-18);
    }

    #[test]
    fn first_moment_errors() {
        let c4 = PatternGraph::cycle(4).unwrap();
        assert!(f_cycle_first_moment(&c4, 0, 0).is_err());
        assert!(f_cycle_first_moment(&c4, 4, 0).is_err());
        assert!(f_cycle_first_moment(&c4, 2, 4).is_err());
        assert!(f_cycle_first_moment(&c4, 2, 5).is_err());
    }
}
