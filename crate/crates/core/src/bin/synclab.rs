//! `synclab`: command-line front end.
//!
//! Every run first prints a `#`-prefixed header with the resolved
//! parameters. Data goes to `--out` when given, otherwise to stdout after the
//! header. Exit status: 0 on success, 1 on invalid input, 2 on a numerical
//! failure.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use synclab::certify::{check_proposition, check_theorem1, deviation_bound, er_regime, rip_probe, Certificate};
use synclab::descent::{descend, random_init, DescentConfig};
use synclab::energy::PhaseState;
use synclab::graph::{self, load_edge_list, WeightedGraph};
use synclab::harness::{self, GridSpec, PRule, TrialMode};
use synclab::spectral::{classify_critical, ring_lattice_critical_k, ring_lattice_lambda2_curve};
use synclab::{Error, Result};

#[derive(Parser, Debug)]
#[command(
    name = "synclab",
    version,
    about = "Landscape experiments for the Kuramoto synchronization energy"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a graph and write it as an edge list.
    Gen(GenArgs),
    /// Run gradient descent and emit its trace.
    Descend(DescendArgs),
    /// Sweep the success fraction over an (n, p) grid.
    Phase(PhaseArgs),
    /// Smallest nontrivial Hessian eigenvalue at the twisted state of ring lattices.
    Twisted(TwistedArgs),
    /// Classify a phase vector as critical point, local-min candidate or saddle.
    Classify(ClassifyArgs),
    /// Evaluate the landscape certificates.
    Check(CheckArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum GraphKind {
    Path,
    Cycle,
    Complete,
    /// Ring lattice: each vertex joined to its k nearest neighbours per side.
    Wsg,
    /// Bipartite double cover of the ring lattice (2n vertices).
    BipartiteWsg,
    /// Erdős–Rényi G(n, p).
    Er,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long = "type", value_enum)]
    kind: GraphKind,
    #[arg(long)]
    n: usize,
    /// Neighbours per side (wsg, bipartite-wsg).
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Edge probability (er).
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = harness::DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DescentFlags {
    #[arg(long, default_value_t = 0.005)]
    step: f64,
    #[arg(long, default_value_t = 1000)]
    max_iters: usize,
    #[arg(long, default_value_t = 1e-8)]
    grad_tol: f64,
    #[arg(long, default_value_t = 1e-3)]
    align_tol: f64,
}

impl DescentFlags {
    fn config(&self, trace_every: usize) -> DescentConfig {
        DescentConfig {
            step: self.step,
            max_iters: self.max_iters,
            grad_tol: self.grad_tol,
            align_tol: self.align_tol,
            trace_every,
        }
    }
}

#[derive(Args, Debug)]
struct DescendArgs {
    /// Edge-list file.
    #[arg(long)]
    graph: PathBuf,
    /// Initial phases, one per line; random when omitted.
    #[arg(long)]
    theta: Option<PathBuf>,
    /// Seed of the random initialisation.
    #[arg(long, default_value_t = harness::DEFAULT_SEED)]
    seed: u64,
    #[command(flatten)]
    descent: DescentFlags,
    /// Trace row every this many iterations (0: initial and final rows only).
    #[arg(long, default_value_t = 1)]
    trace_every: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the final phases here.
    #[arg(long)]
    final_theta: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PhaseArgs {
    #[arg(long, default_value_t = 5)]
    n_min: usize,
    #[arg(long, default_value_t = 100)]
    n_max: usize,
    #[arg(long, default_value_t = 5)]
    n_step: usize,
    /// Absolute edge probabilities, lo:hi:step.
    #[arg(long, default_value = "0:1:0.02", conflicts_with = "c_grid")]
    p_grid: String,
    /// Multiples c of log(n)/n, lo:hi:step.
    #[arg(long)]
    c_grid: Option<String>,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[arg(long, default_value_t = harness::DEFAULT_SEED)]
    seed: u64,
    /// Worker threads (0: one per core). Results do not depend on it.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Reuse one graph per cell and vary only the initialisation.
    #[arg(long, default_value_t = false)]
    fixed_graph: bool,
    #[command(flatten)]
    descent: DescentFlags,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Where to write the log(n)/n reference curves [default: <out>.curves.csv].
    #[arg(long)]
    curves: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TwistedArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    k_min: usize,
    /// [default: (n - 1) / 2]
    #[arg(long)]
    k_max: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    theta: PathBuf,
    #[arg(long, default_value_t = synclab::spectral::DEFAULT_GRAD_TOL)]
    grad_tol: f64,
    #[arg(long, default_value_t = synclab::spectral::DEFAULT_EIG_TOL)]
    eig_tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Phases for the proposition certificate.
    #[arg(long)]
    theta: Option<PathBuf>,
    /// Edge probability for the deviation and RIP checks.
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, default_value_t = 2.0)]
    gamma: f64,
    /// RIP tolerance; the probe runs only when given together with --p.
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = harness::DEFAULT_SEED)]
    seed: u64,
    /// Also report the random-graph density regime for this n.
    #[arg(long)]
    er_n: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn header(cmd: &Command) -> String {
    format!("# synclab {}\n# {:?}\n", env!("CARGO_PKG_VERSION"), cmd)
}

fn emit(out: Option<&Path>, data: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, data).map_err(|e| Error::io(path, e)),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(data.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Error::io("<stdout>", e))
        }
    }
}

fn run_gen(a: &GenArgs) -> Result<()> {
    let g = match a.kind {
        GraphKind::Path => graph::path(a.n)?,
        GraphKind::Cycle => graph::cycle(a.n)?,
        GraphKind::Complete => graph::complete(a.n)?,
        GraphKind::Wsg => graph::ring_lattice(a.n, a.k)?,
        GraphKind::BipartiteWsg => graph::bipartite_ring_lattice(a.n, a.k)?,
        GraphKind::Er => graph::erdos_renyi(a.n, a.p, a.seed)?,
    };
    emit(a.out.as_deref(), &graph::format_edge_list(&g))
}

fn load_pair(graph: &Path, theta: &Path) -> Result<(WeightedGraph, PhaseState)> {
    let g = load_edge_list(graph)?;
    let s = PhaseState::load(theta)?;
    if s.len() != g.n() {
        return Err(Error::Shape {
            expected: g.n(),
            got: s.len(),
        });
    }
    Ok((g, s))
}

fn run_descend(a: &DescendArgs) -> Result<()> {
    let g = load_edge_list(&a.graph)?;
    let init = match &a.theta {
        Some(p) => PhaseState::load(p)?,
        None => random_init(g.n(), a.seed),
    };
    // 0 still yields the first and last rows
    let trace_every = if a.trace_every == 0 { usize::MAX } else { a.trace_every };
    let (outcome, trace) = descend(&g, &init, &a.descent.config(trace_every))?;
    eprintln!(
        "iterations={} stopped_by={:?} classification={:?} final_energy={} final_grad_norm={}",
        outcome.iterations, outcome.stopped_by, outcome.classification, outcome.final_energy, outcome.final_grad_norm
    );
    if let Some(path) = &a.final_theta {
        outcome.final_theta.save(path)?;
    }
    emit(a.out.as_deref(), &trace.to_csv())
}

fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    let bad = || Error::invalid(format!("grid `{text}` is not lo:hi:step"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let v: Vec<f64> = parts
        .iter()
        .map(|s| s.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| bad())?;
    harness::linear_grid(v[0], v[1], v[2])
}

fn run_phase(a: &PhaseArgs) -> Result<()> {
    if a.n_step == 0 || a.n_max < a.n_min {
        return Err(Error::invalid("need n_step >= 1 and n_max >= n_min"));
    }
    let n_values: Vec<usize> = (a.n_min..=a.n_max).step_by(a.n_step).collect();
    let p_rule = match &a.c_grid {
        Some(c) => PRule::LogScaled(parse_grid(c)?),
        None => PRule::Absolute(parse_grid(&a.p_grid)?),
    };
    let spec = GridSpec {
        n_values,
        p_rule,
        trials: a.trials,
        base_seed: a.seed,
        config: a.descent.config(0),
        mode: if a.fixed_graph {
            TrialMode::FixedGraph
        } else {
            TrialMode::FreshGraph
        },
    };
    spec.validate()?;
    let clamped = spec.points().iter().filter(|p| p.clamped).count();
    if clamped > 0 {
        eprintln!("warning: {clamped} grid points had p > 1 and were clamped to 1");
    }
    let cells = harness::run_grid_with_threads(&spec, a.threads)?;
    let curves = harness::format_reference_curves(&harness::reference_curves(&spec.n_values));
    let curves_path = a
        .curves
        .clone()
        .or_else(|| a.out.as_ref().map(|o| o.with_extension("curves.csv")));
    if let Some(path) = curves_path {
        fs::write(&path, curves).map_err(|e| Error::io(&path, e))?;
    }
    emit(a.out.as_deref(), &harness::format_phase_table(&cells))
}

fn run_twisted(a: &TwistedArgs) -> Result<()> {
    let k_max = a.k_max.unwrap_or(a.n.saturating_sub(1) / 2);
    let rows = ring_lattice_lambda2_curve(a.n, a.k_min, k_max)?;
    eprintln!("critical_k={}", ring_lattice_critical_k(a.n));
    let mut data = String::from("k,mu,lambda2_min\n");
    for r in rows {
        data.push_str(&format!("{},{},{}\n", r.k, r.mu, r.lambda2_min));
    }
    emit(a.out.as_deref(), &data)
}

fn run_classify(a: &ClassifyArgs) -> Result<()> {
    let (g, s) = load_pair(&a.graph, &a.theta)?;
    let report = classify_critical(&g, &s, a.grad_tol, a.eig_tol)?;
    emit(a.out.as_deref(), &report.to_text())
}

fn run_check(a: &CheckArgs) -> Result<()> {
    let g = load_edge_list(&a.graph)?;
    let mut certs: Vec<Certificate> = vec![check_theorem1(&g)];
    if let Some(path) = &a.theta {
        let s = PhaseState::load(path)?;
        certs.push(check_proposition(&g, &s)?);
    }
    if let Some(p) = a.p {
        certs.push(deviation_bound(&g, p, a.gamma)?);
        if let Some(delta) = a.delta {
            certs.push(rip_probe(&g, p, delta, a.samples, a.seed)?);
        }
    } else if a.delta.is_some() {
        return Err(Error::invalid("--delta needs --p"));
    }
    if let Some(n) = a.er_n {
        certs.push(er_regime(n, a.gamma)?.certificate());
    }
    let data: String = certs.iter().map(Certificate::to_text).collect();
    emit(a.out.as_deref(), &data)
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Phase(a) => run_phase(a),
        other => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(1)
                .build()
                .map_err(|e| Error::invalid(format!("cannot build thread pool: {e}")))?;
            pool.install(|| match other {
                Command::Gen(a) => run_gen(a),
                Command::Descend(a) => run_descend(a),
                Command::Twisted(a) => run_twisted(a),
                Command::Classify(a) => run_classify(a),
                Command::Check(a) => run_check(a),
                Command::Phase(_) => unreachable!(),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    print!("{}", header(&cli.command));
    let _ = io::stdout().flush();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            let mut source = std::error::Error::source(&e);
            while let Some(s) = source {
                eprintln!("  caused by: {s}");
                source = s.source();
            }
            ExitCode::from(if e.is_numerical() { 2 } else { 1 })
        }
    }
}
