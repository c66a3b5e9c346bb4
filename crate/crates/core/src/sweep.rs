//! Monte Carlo sweeps over `(n, omega)` grids and their summaries.
//!
//! A trial's weight assignment depends on the base seed, the position of `n`
//! in the grid and the trial index, but not on `omega`. The same trial
//! therefore sees nested graphs as `omega` grows, which makes the per-trial
//! outcome monotone in `omega` for exact searches.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::balance::{kr_threshold, loose_hc_threshold_pi, Probability};
use crate::cliques::uncovered_vertices;
use crate::error::{Error, Result};
use crate::random::{graph_at, hypergraph_at, stream_u64, WeightAssignment};
use crate::scalar::Real;
use crate::solver::{find_loose_hc, find_spanning_kr_cycle, SearchBudget, SearchStatus};

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

pub const CSV_HEADER: &str = "n,r,omega,p,trial,seed,status,uncovered,nodes,elapsed_ms,clamped";

pub const SUMMARY_CSV_HEADER: &str =
    "n,r,omega,p,trials,found,none,unknown,probability,wilson_lo,wilson_hi,unknown_rate,clamped";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepMode {
    /// Spanning `K_r`-cycle in `G(n, omega * threshold)`.
    KrCycle,
    /// Loose Hamilton cycle in `H(n, omega * n^{1-r} ln n; r)`.
    LooseHc,
    /// Whether every vertex of `G(n, omega * threshold)` lies in a `K_r`.
    Coverage,
}

impl std::str::FromStr for SweepMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kr-cycle" => Ok(SweepMode::KrCycle),
            "loose-hc" => Ok(SweepMode::LooseHc),
            "coverage" => Ok(SweepMode::Coverage),
            other => Err(Error::InvalidParameter(format!("unknown sweep mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub n_list: Vec<usize>,
    pub r: usize,
    pub omega_list: Vec<f64>,
    pub trials: usize,
    pub base_seed: u64,
    pub budget: SearchBudget,
    pub mode: SweepMode,
    /// Wall-clock times make output run-dependent; off means `elapsed_ms` is written as 0.
    pub record_timing: bool,
}

impl SweepConfig {
    pub fn new(mode: SweepMode, n_list: Vec<usize>, r: usize, omega_list: Vec<f64>, trials: usize, base_seed: u64) -> Self {
        SweepConfig {
            n_list,
            r,
            omega_list,
            trials,
            base_seed,
            budget: SearchBudget::unlimited(),
            mode,
            record_timing: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if self.n_list.is_empty() || self.omega_list.is_empty() {
            return bad("n and omega lists must be nonempty".into());
        }
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.r < 3 {
            return bad(format!("r must be at least 3, got {}", self.r));
        }
        if let Some(w) = self.omega_list.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return bad(format!("omega must be finite and non-negative, got {w}"));
        }
        if self.n_list.len() > u32::MAX as usize || self.trials > u32::MAX as usize {
            return bad("grid too large".into());
        }
        for &n in &self.n_list {
            match self.mode {
                SweepMode::KrCycle | SweepMode::LooseHc => {
                    if n % (self.r - 1) != 0 {
                        return Err(Error::Divisibility { n, divisor: self.r - 1 });
                    }
                    if n < 3 * (self.r - 1) {
                        return bad(format!("n = {n} is below 3(r-1)"));
                    }
                }
                SweepMode::Coverage => {
                    if n < 2 {
                        return bad(format!("n must be at least 2, got {n}"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Seed of trial `trial` at the `n_index`-th grid size; shared across omega.
    pub fn trial_seed(&self, n_index: usize, trial: usize) -> u64 {
        stream_u64(self.base_seed, (n_index as u64) << 32 | trial as u64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub n: usize,
    pub r: usize,
    pub omega: f64,
    /// Edge probability (graph modes) or hyperedge probability (loose-hc), after clamping.
    pub p: f64,
    pub trial: usize,
    pub seed: u64,
    pub status: SearchStatus,
    pub uncovered: usize,
    pub nodes: u64,
    pub elapsed_ms: u64,
    pub clamped: bool,
}

impl SweepRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.n,
            self.r,
            self.omega,
            self.p,
            self.trial,
            self.seed,
            self.status,
            self.uncovered,
            self.nodes,
            self.elapsed_ms,
            self.clamped
        )
    }
}

/// Probability used at grid point `(n, omega)`, with its clamping flag.
pub fn point_probability(mode: SweepMode, n: usize, r: usize, omega: f64) -> Result<Probability<f64>> {
    match mode {
        SweepMode::KrCycle | SweepMode::Coverage => {
            Ok(Probability::clamp(omega * kr_threshold::<f64>(n, r)?.raw_p))
        }
        SweepMode::LooseHc => loose_hc_threshold_pi(n, r, omega),
    }
}

fn run_trial(cfg: &SweepConfig, n_index: usize, omega: f64, trial: usize) -> Result<SweepRecord> {
    let n = cfg.n_list[n_index];
    let r = cfg.r;
    let seed = cfg.trial_seed(n_index, trial);
    let prob = point_probability(cfg.mode, n, r, omega)?;
    let (status, uncovered, nodes, elapsed_ms) = match cfg.mode {
        SweepMode::KrCycle => {
            let g = graph_at(&WeightAssignment::pairs(n, seed), prob.value)?;
            let uncovered = uncovered_vertices(&g, r)?.len();
            let out = find_spanning_kr_cycle(&g, r, cfg.budget)?;
            (out.status, uncovered, out.stats.nodes, out.stats.elapsed_ms)
        }
        SweepMode::LooseHc => {
            let h = hypergraph_at(&WeightAssignment::r_sets(n, r, seed), prob.value, r)?;
            let uncovered = h.uncovered_vertices().len();
            if uncovered > 0 {
                (SearchStatus::None, uncovered, 0, 0)
            } else {
                let out = find_loose_hc(&h, cfg.budget)?;
                (out.status, 0, out.stats.nodes, out.stats.elapsed_ms)
            }
        }
        SweepMode::Coverage => {
            let g = graph_at(&WeightAssignment::pairs(n, seed), prob.value)?;
            let uncovered = uncovered_vertices(&g, r)?.len();
            let status = if uncovered == 0 { SearchStatus::Found } else { SearchStatus::None };
            (status, uncovered, 0, 0)
        }
    };
    Ok(SweepRecord {
        n,
        r,
        omega,
        p: prob.value,
        trial,
        seed,
        status,
        uncovered,
        nodes,
        elapsed_ms: if cfg.record_timing { elapsed_ms } else { 0 },
        clamped: prob.clamped,
    })
}

/// Runs every `(n, omega, trial)` task, in parallel, returning records sorted
/// by `n` position, then `omega` position, then trial.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRecord>> {
    cfg.validate()?;
    let tasks: Vec<(usize, f64, usize)> = (0..cfg.n_list.len())
        .flat_map(|ni| {
            cfg.omega_list
                .iter()
                .flat_map(move |&w| (0..cfg.trials).map(move |t| (ni, w, t)))
        })
        .collect();
    tasks.into_par_iter().map(|(ni, w, t)| run_trial(cfg, ni, w, t)).collect()
}

/// Wilson score interval for `k` successes out of `total`; `None` when `total = 0`.
pub fn wilson_interval<T: Real>(k: usize, total: usize, z: T) -> Option<(T, T)> {
    if total == 0 {
        return None;
    }
    let nn = T::from_count(total);
    let phat = T::from_count(k) / nn;
    let two = T::from_f64(2.0).unwrap();
    let four = T::from_f64(4.0).unwrap();
    let z2 = z * z;
    let denom = T::one() + z2 / nn;
    let center = (phat + z2 / (two * nn)) / denom;
    let half = z / denom * (phat * (T::one() - phat) / nn + z2 / (four * nn * nn)).sqrt();
    Some(((center - half).max(T::zero()), (center + half).min(T::one())))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub n: usize,
    pub r: usize,
    pub omega: f64,
    pub p: f64,
    pub trials: usize,
    pub found: usize,
    pub none: usize,
    pub unknown: usize,
    /// `found / (found + none)`; budget-exhausted trials are excluded.
    pub probability: Option<f64>,
    pub wilson_lo: Option<f64>,
    pub wilson_hi: Option<f64>,
    pub unknown_rate: f64,
    pub clamped: bool,
}

impl SweepSummary {
    pub fn csv_row(&self) -> String {
        let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.n,
            self.r,
            self.omega,
            self.p,
            self.trials,
            self.found,
            self.none,
            self.unknown,
            opt(self.probability),
            opt(self.wilson_lo),
            opt(self.wilson_hi),
            self.unknown_rate,
            self.clamped
        )
    }
}

/// Per-point summary, in order of first appearance.
pub fn summarize(records: &[SweepRecord]) -> Result<Vec<SweepSummary>> {
    let first = records.first().ok_or(Error::EmptyRecords)?;
    let mut points: Vec<SweepSummary> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for rec in records {
        if rec.r != first.r {
            return Err(Error::MixedRecords(format!("r = {} and r = {}", first.r, rec.r)));
        }
        if !seen.insert((rec.n, rec.omega.to_bits(), rec.trial)) {
            return Err(Error::MixedRecords(format!(
                "duplicate trial {} at n = {}, omega = {}",
                rec.trial, rec.n, rec.omega
            )));
        }
        let idx = match points.iter().position(|s| s.n == rec.n && s.omega.to_bits() == rec.omega.to_bits()) {
            Some(i) => {
                if points[i].p.to_bits() != rec.p.to_bits() {
                    return Err(Error::MixedRecords(format!("point (n = {}, omega = {}) has two p values", rec.n, rec.omega)));
                }
                i
            }
            None => {
                points.push(SweepSummary {
                    n: rec.n,
                    r: rec.r,
                    omega: rec.omega,
                    p: rec.p,
                    trials: 0,
                    found: 0,
                    none: 0,
                    unknown: 0,
                    probability: None,
                    wilson_lo: None,
                    wilson_hi: None,
                    unknown_rate: 0.0,
                    clamped: false,
                });
                points.len() - 1
            }
        };
        let s = &mut points[idx];
        s.trials += 1;
        s.clamped |= rec.clamped;
        match rec.status {
            SearchStatus::Found => s.found += 1,
            SearchStatus::None => s.none += 1,
            SearchStatus::BudgetExhausted => s.unknown += 1,
        }
    }
    for s in &mut points {
        let decided = s.found + s.none;
        if decided > 0 {
            s.probability = Some(s.found as f64 / decided as f64);
        }
        if let Some((lo, hi)) = wilson_interval(s.found, decided, Z95) {
            s.wilson_lo = Some(lo);
            s.wilson_hi = Some(hi);
        }
        s.unknown_rate = s.unknown as f64 / s.trials as f64;
    }
    Ok(points)
}

pub fn records_csv(records: &[SweepRecord]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in records {
        s.push_str(&r.csv_row());
        s.push('\n');
    }
    s
}

pub fn summary_csv(summary: &[SweepSummary]) -> String {
    let mut s = String::from(SUMMARY_CSV_HEADER);
    s.push('\n');
    for r in summary {
        s.push_str(&r.csv_row());
        s.push('\n');
    }
    s
}

/// A trial that was found at a smaller omega but refuted at a larger one.
#[derive(Debug, Clone, PartialEq)]
pub struct DominanceViolation {
    pub n: usize,
    pub trial: usize,
    pub found_at: f64,
    pub refuted_at: f64,
}

/// Pairs `(omega_lo < omega_hi)` of the same trial where the outcome dropped
/// from found to none. Budget-exhausted trials are ignored.
pub fn dominance_violations(records: &[SweepRecord]) -> Vec<DominanceViolation> {
    let mut out = Vec::new();
    for lo in records.iter().filter(|r| r.status == SearchStatus::Found) {
        for hi in records {
            if hi.n == lo.n && hi.trial == lo.trial && hi.omega > lo.omega && hi.status == SearchStatus::None {
                out.push(DominanceViolation { n: lo.n, trial: lo.trial, found_at: lo.omega, refuted_at: hi.omega });
            }
        }
    }
    out
}
