//! `krcycle`: sweeps, single-instance solving, oracle runs and calculator queries.
//!
//! Exit codes: 0 ok, 1 usage error, 2 I/O or input-format error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use krcycle::balance::{
    compare_with_hc_threshold, coupling_pi, f_cycle_first_moment, is_strictly_one_balanced, kr_threshold,
    loose_hc_threshold_pi, overlap2_hc_threshold_pi,
};
use krcycle::cliques::uncovered_vertices;
use krcycle::io::{kr_cert_to_json, loose_cert_to_json, parse_graph, parse_hypergraph, parse_pattern};
use krcycle::solver::{brute_force_loose_hc, find_loose_hc, find_spanning_kr_cycle};
use krcycle::sweep::{records_csv, run_sweep, summarize, summary_csv};
use krcycle::{Error, PatternGraph, Rational, SearchBudget, SweepConfig, SweepMode};

#[derive(Parser)]
#[command(name = "krcycle", version, about = "Spanning K_r-cycles in random graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Monte Carlo sweep over an (n, omega) grid.
    Sweep(SweepArgs),
    /// Search a spanning K_r-cycle in a graph file.
    Solve(SolveArgs),
    /// Run the exact loose Hamilton cycle search and the brute-force oracle on a hypergraph file.
    Oracle(OracleArgs),
    /// Density, balancedness and threshold calculators.
    Balance(BalanceArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    KrCycle,
    LooseHc,
    Coverage,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct BudgetArgs {
    /// Maximum number of search nodes per instance.
    #[arg(long)]
    node_limit: Option<u64>,
    /// Wall-clock cap per instance in milliseconds.
    #[arg(long)]
    time_limit_ms: Option<u64>,
}

impl BudgetArgs {
    fn budget(&self) -> Result<SearchBudget, Error> {
        SearchBudget::new(self.node_limit.unwrap_or(u64::MAX), self.time_limit_ms.unwrap_or(u64::MAX))
    }
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum, default_value = "kr-cycle")]
    mode: Mode,
    /// Comma-separated vertex counts.
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    #[arg(long, default_value_t = 3)]
    r: usize,
    /// Comma-separated multipliers of the threshold formula.
    #[arg(long, value_delimiter = ',', required = true)]
    omega: Vec<f64>,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(long, value_enum, default_value = "csv")]
    out: OutFormat,
    /// Write the output here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Also write the per-point summary CSV to this file.
    #[arg(long)]
    summary: Option<PathBuf>,
    /// Record wall-clock times (output is then not reproducible).
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, default_value_t = 3)]
    r: usize,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    hypergraph: PathBuf,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct BalanceArgs {
    /// Pattern graph file (graph format).
    #[arg(long, conflicts_with = "kr", required_unless_present = "kr")]
    pattern: Option<PathBuf>,
    /// Use the complete graph K_R as the pattern.
    #[arg(long)]
    kr: Option<usize>,
    /// Vertices shared by consecutive copies.
    #[arg(long, default_value_t = 1)]
    overlap: usize,
    /// Edges shared by consecutive copies.
    #[arg(long, default_value_t = 0)]
    shared_edges: usize,
    /// Vertex count for numeric evaluation.
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
}

enum Failure {
    Usage(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) | Error::Parse { .. } | Error::Json(_) => Failure::Input(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn q(x: Rational) -> String {
    x.to_string()
}

fn sweep(args: SweepArgs) -> Result<(), Failure> {
    let mode = match args.mode {
        Mode::KrCycle => SweepMode::KrCycle,
        Mode::LooseHc => SweepMode::LooseHc,
        Mode::Coverage => SweepMode::Coverage,
    };
    let mut cfg = SweepConfig::new(mode, args.n, args.r, args.omega, args.trials, args.seed);
    cfg.budget = args.budget.budget()?;
    cfg.record_timing = args.timing;
    let records = run_sweep(&cfg)?;
    let summary = summarize(&records)?;
    for s in &summary {
        let prob = s.probability.map(|p| format!("{p:.3}")).unwrap_or_else(|| "-".into());
        eprintln!(
            "n={} omega={} p={:.5} found={} none={} unknown={} prob={}",
            s.n, s.omega, s.p, s.found, s.none, s.unknown, prob
        );
    }
    let text = match args.out {
        OutFormat::Csv => records_csv(&records),
        OutFormat::Json => {
            let v = json!({ "config": cfg, "records": records, "summary": summary });
            serde_json::to_string_pretty(&v).expect("json") + "\n"
        }
    };
    write_out(args.output.as_deref(), &text)?;
    if let Some(path) = args.summary {
        write_out(Some(&path), &summary_csv(&summary))?;
    }
    Ok(())
}

fn solve(args: SolveArgs) -> Result<(), Failure> {
    let g = parse_graph(&read(&args.graph)?)?;
    let uncovered = uncovered_vertices(&g, args.r)?;
    let out = find_spanning_kr_cycle(&g, args.r, args.budget.budget()?)?;
    let cert: Value = match &out.certificate {
        Some(c) => serde_json::from_str(&kr_cert_to_json(c)).expect("json"),
        None => Value::Null,
    };
    let v = json!({
        "status": out.status,
        "nodes": out.stats.nodes,
        "elapsed_ms": out.stats.elapsed_ms,
        "uncovered": uncovered,
        "certificate": cert,
    });
    println!("{}", serde_json::to_string_pretty(&v).expect("json"));
    Ok(())
}

fn oracle(args: OracleArgs) -> Result<(), Failure> {
    let h = parse_hypergraph(&read(&args.hypergraph)?)?;
    let search = find_loose_hc(&h, args.budget.budget()?)?;
    let brute = brute_force_loose_hc(&h)?;
    let cert = |c: &Option<krcycle::LooseHCCert>| -> Value {
        c.as_ref().map(|c| serde_json::from_str(&loose_cert_to_json(c)).expect("json")).unwrap_or(Value::Null)
    };
    let v = json!({
        "search": { "status": search.status, "nodes": search.stats.nodes, "certificate": cert(&search.certificate) },
        "brute_force": { "status": brute.status, "nodes": brute.stats.nodes, "certificate": cert(&brute.certificate) },
        "agree": search.status == brute.status,
    });
    println!("{}", serde_json::to_string_pretty(&v).expect("json"));
    Ok(())
}

fn balance(args: BalanceArgs) -> Result<(), Failure> {
    let f = match (&args.pattern, args.kr) {
        (Some(path), _) => parse_pattern(&read(path)?)?,
        (None, Some(r)) => PatternGraph::complete(r)?,
        (None, None) => return Err(Failure::Usage("one of --pattern or --kr is required".into())),
    };
    let (balanced, witness) = is_strictly_one_balanced(&f);
    let fm = f_cycle_first_moment(&f, args.overlap, args.shared_edges)?;
    let p_first_moment = krcycle::PowerLaw::new(fm.p_exponent, Rational::from_integer(0)).eval::<f64>(args.n);
    let coupling = coupling_pi(p_first_moment.min(1.0), &f)?;
    let mut thresholds = json!({
        "first_moment": {
            "overlap": fm.overlap,
            "shared_edges": fm.shared_edges,
            "p_exponent": q(fm.p_exponent),
            "pi_exponent": q(fm.pi_exponent),
        },
        "coupling": {
            "edge_exponent": coupling.edge_exponent,
            "a": coupling.a,
            "a_guaranteed": coupling.a_guaranteed,
        },
    });
    if let Some(cmp) = compare_with_hc_threshold(&f, &fm) {
        let numeric = match fm.overlap {
            1 => loose_hc_threshold_pi(args.n, f.v(), args.omega)?.value,
            _ => overlap2_hc_threshold_pi(args.n, args.omega)?.value,
        };
        thresholds["hc_comparison"] = json!({
            "pi_exponent": q(cmp.pi_exponent),
            "threshold_exponent": q(cmp.threshold_exponent),
            "relation": cmp.relation,
            "threshold_pi_at_n": numeric,
        });
    }
    if f.is_complete() && f.v() >= 3 {
        let t = kr_threshold::<f64>(args.n, f.v())?;
        thresholds["kr_cycle"] = json!({
            "n": args.n,
            "p_exponent": q(t.p_exponent),
            "log_exponent": q(t.log_exponent),
            "pi_n_exponent": q(t.pi_law.n_exponent),
            "pi_log_exponent": q(t.pi_law.log_exponent),
            "pi_formula": t.pi_formula,
            "p": t.p,
            "clamped": t.clamped,
        });
    }
    let v = json!({
        "vertices": f.v(),
        "edges": f.e(),
        "d1": q(f.d1()),
        "strictly_1_balanced": balanced,
        "witness": witness.map(|w| w.edges).unwrap_or_default(),
        "thresholds": thresholds,
    });
    println!("{}", serde_json::to_string_pretty(&v).expect("json"));
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Sweep(a) => sweep(a),
        Command::Solve(a) => solve(a),
        Command::Oracle(a) => oracle(a),
        Command::Balance(a) => balance(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
