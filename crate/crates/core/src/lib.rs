//! Spanning K_r-cycles in random graphs.
//!
//! The crate samples coupled random graphs `G(n, p)` and random `r`-uniform
//! hypergraphs `H(n, pi; r)`, enumerates `K_r` copies to build the clique
//! hypergraph of a graph, searches for loose Hamilton cycles in it and lifts
//! them back to spanning `K_r`-cycles. Every search result carries a
//! certificate that is re-checked by an independent verifier.
//!
//! Alongside the search machinery sit exact-arithmetic calculators for the
//! 1-density `d1(F)`, strict 1-balancedness, the `K_r`-cycle threshold
//! `n^{-2/r} (ln n)^{1/C(r,2)}` and first-moment exponents of `F`-cycles, and
//! a Monte Carlo sweep harness that emits reproducible CSV/JSON.
//!
//! Numeric evaluation is generic over [`Real`] (`f32` or `f64`); exponents
//! are exact [`Rational`]s. The `*64` aliases below fix the scalar to `f64`.

pub mod balance;
pub mod cert;
pub mod cliques;
pub mod error;
pub mod graph;
pub mod hypergraph;
pub mod io;
pub mod pattern;
pub mod random;
pub mod scalar;
pub mod solver;
pub mod sweep;

pub use balance::{PowerLaw, ThresholdReport, ThresholdRelation};
pub use cert::{FCycleCert, KrCycleCert, LooseHCCert, VerifyResult, Violation, ViolationKind};
pub use error::{Error, Result};
pub use graph::Graph;
pub use hypergraph::Hypergraph;
pub use pattern::PatternGraph;
pub use random::{ModelParams, WeightAssignment, WeightKind};
pub use scalar::Real;
pub use solver::{ConnectorConstraint, SearchBudget, SearchOutcome, SearchStats, SearchStatus};
pub use sweep::{SweepConfig, SweepMode, SweepRecord, SweepSummary};

/// Exact rational used for every exponent.
pub type Rational = num_rational::Ratio<i64>;

pub type ThresholdReport64 = ThresholdReport<f64>;
pub type ThresholdReport32 = ThresholdReport<f32>;
pub type ModelParams64 = ModelParams<f64>;
pub type ModelParams32 = ModelParams<f32>;
