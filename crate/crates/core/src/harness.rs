//! Monte-Carlo phase-transition sweeps.
//!
//! For every grid point `(n, p)` a number of trials is run; each trial draws
//! an Erdős–Rényi graph `G(n, p)` and a uniform random start, runs
//! [`descend`], and counts a success when the run ends aligned.
//!
//! Seeds are derived from the base seed and the cell's coordinates `(n, p)`
//! (not its position in the grid), and from the cell seed and the trial
//! index. Every cell is therefore reproducible on its own, and results do not
//! depend on the number of worker threads or on which other cells are run.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rayon::prelude::*;

use crate::descent::{descend, random_init, DescentConfig};
use crate::graph::erdos_renyi;
use crate::seed::derive_seed;
use crate::{Error, Result};

/// Base seed used when none is given.
pub const DEFAULT_SEED: u64 = 7;

/// How `p` is specified along the grid.
#[derive(Debug, Clone, PartialEq)]
pub enum PRule {
    /// The listed probabilities, for every `n`.
    Absolute(Vec<f64>),
    /// `p = c·log(n)/n` for each listed `c`.
    LogScaled(Vec<f64>),
}

/// What is redrawn per trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TrialMode {
    /// A fresh graph and a fresh initialisation per trial.
    #[default]
    FreshGraph,
    /// One graph per cell; only the initialisation varies.
    FixedGraph,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub n_values: Vec<usize>,
    pub p_rule: PRule,
    pub trials: usize,
    pub base_seed: u64,
    pub config: DescentConfig,
    pub mode: TrialMode,
}

/// A grid point after evaluating the `p` rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub n: usize,
    pub p: f64,
    /// The rule produced a value above 1, which was clamped.
    pub clamped: bool,
}

impl GridSpec {
    /// `n = 5, 10, …, 100`, `p = 0, 0.02, …, 1`.
    pub fn small_systems(base_seed: u64) -> Self {
        Self {
            n_values: (1..=20).map(|i| 5 * i).collect(),
            p_rule: PRule::Absolute(linear_grid(0.0, 1.0, 0.02).expect("static grid")),
            trials: 50,
            base_seed,
            config: DescentConfig::default(),
            mode: TrialMode::FreshGraph,
        }
    }

    /// `n = 100, 150, …, 1500`, `p = c·log(n)/n` with `c = 0, 0.1, …, 4`.
    pub fn large_systems(base_seed: u64) -> Self {
        Self {
            n_values: (0..29).map(|i| 100 + 50 * i).collect(),
            p_rule: PRule::LogScaled(linear_grid(0.0, 4.0, 0.1).expect("static grid")),
            trials: 50,
            base_seed,
            config: DescentConfig::default(),
            mode: TrialMode::FreshGraph,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::invalid(
                "trials must be at least 1 (a 0-trial cell has no success fraction)",
            ));
        }
        if self.n_values.is_empty() {
            return Err(Error::invalid("grid has no n values"));
        }
        if let Some(&n) = self.n_values.iter().find(|&&n| n < 2) {
            return Err(Error::invalid(format!("grid n values must be at least 2, got {n}")));
        }
        let values = match &self.p_rule {
            PRule::Absolute(v) | PRule::LogScaled(v) => v,
        };
        if values.is_empty() {
            return Err(Error::invalid("grid has no p values"));
        }
        if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::invalid(format!(
                "grid p/c values must be finite and nonnegative, got {v}"
            )));
        }
        self.config.validate()
    }

    /// Grid points in `(n, p)` order: `n` outer, `p` inner.
    pub fn points(&self) -> Vec<GridPoint> {
        let mut out = Vec::new();
        for &n in &self.n_values {
            let (values, scale) = match &self.p_rule {
                PRule::Absolute(v) => (v, 1.0),
                PRule::LogScaled(c) => (c, (n as f64).ln() / n as f64),
            };
            for &v in values {
                let p = v * scale;
                out.push(GridPoint {
                    n,
                    p: p.min(1.0),
                    clamped: p > 1.0,
                });
            }
        }
        out
    }
}

/// `lo, lo + step, …` up to `hi` (inclusive, with a small tolerance), each
/// value computed as `lo + i·step` and rounded to 12 decimals.
pub fn linear_grid(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    if !(lo.is_finite() && hi.is_finite() && step.is_finite() && step > 0.0 && hi >= lo) {
        return Err(Error::invalid(format!("invalid grid {lo}:{hi}:{step}")));
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    if count > 1_000_000 {
        return Err(Error::invalid(format!("grid {lo}:{hi}:{step} has too many points")));
    }
    Ok((0..count)
        .map(|i| ((lo + i as f64 * step) * 1e12).round() / 1e12)
        .collect())
}

/// One grid cell of results.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseCell {
    pub n: usize,
    pub p: f64,
    pub trials: usize,
    pub successes: usize,
    pub seed: u64,
}

impl PhaseCell {
    pub fn fraction(&self) -> f64 {
        self.successes as f64 / self.trials as f64
    }
}

/// Seed of the cell at `(n, p)`.
pub fn cell_seed(base_seed: u64, n: usize, p: f64) -> u64 {
    derive_seed(derive_seed(base_seed, n as u64), p.to_bits())
}

const GRAPH_STREAM: u64 = 0;
const INIT_STREAM: u64 = 1;
const FIXED_GRAPH_STREAM: u64 = u64::MAX;

/// Runs one cell. Trial `t` uses `derive_seed(cell_seed, t)` and splits it
/// into independent graph and initialisation seeds.
pub fn run_cell(
    n: usize,
    p: f64,
    trials: usize,
    cell_seed: u64,
    cfg: &DescentConfig,
    mode: TrialMode,
) -> Result<PhaseCell> {
    if trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("p = {p} outside [0, 1]")));
    }
    cfg.validate()?;
    let cfg = DescentConfig { trace_every: 0, ..*cfg };
    let fixed = match mode {
        TrialMode::FixedGraph => Some(erdos_renyi(n, p, derive_seed(cell_seed, FIXED_GRAPH_STREAM))?),
        TrialMode::FreshGraph => None,
    };
    let results: Vec<Result<bool>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let trial_seed = derive_seed(cell_seed, t as u64);
            let run = || -> Result<bool> {
                let fresh;
                let g = match &fixed {
                    Some(g) => g,
                    None => {
                        fresh = erdos_renyi(n, p, derive_seed(trial_seed, GRAPH_STREAM))?;
                        &fresh
                    }
                };
                let init = random_init(n, derive_seed(trial_seed, INIT_STREAM));
                Ok(descend(g, &init, &cfg)?.0.is_global())
            };
            run().map_err(|e| Error::Trial {
                trial: t,
                seed: trial_seed,
                source: Box::new(e),
            })
        })
        .collect();
    let mut successes = 0;
    for r in results {
        successes += usize::from(r?);
    }
    Ok(PhaseCell {
        n,
        p,
        trials,
        successes,
        seed: cell_seed,
    })
}

/// Runs every cell of the grid on the current rayon pool.
pub fn run_grid(spec: &GridSpec) -> Result<Vec<PhaseCell>> {
    spec.validate()?;
    spec.points()
        .into_par_iter()
        .map(|pt| {
            let seed = cell_seed(spec.base_seed, pt.n, pt.p);
            run_cell(pt.n, pt.p, spec.trials, seed, &spec.config, spec.mode).map_err(|e| Error::Cell {
                n: pt.n,
                p: pt.p,
                source: Box::new(e),
            })
        })
        .collect()
}

/// [`run_grid`] on a dedicated pool of `threads` workers (0 = rayon default).
pub fn run_grid_with_threads(spec: &GridSpec, threads: usize) -> Result<Vec<PhaseCell>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::invalid(format!("cannot build thread pool: {e}")))?;
    pool.install(|| run_grid(spec))
}

pub const PHASE_TABLE_HEADER: &str = "n,p,trials,successes,fraction,seed";

pub fn format_phase_table(cells: &[PhaseCell]) -> String {
    let mut out = String::with_capacity(PHASE_TABLE_HEADER.len() + 1 + 48 * cells.len());
    out.push_str(PHASE_TABLE_HEADER);
    out.push('\n');
    for c in cells {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            c.n,
            c.p,
            c.trials,
            c.successes,
            c.fraction(),
            c.seed
        );
    }
    out
}

pub fn write_phase_table(cells: &[PhaseCell], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, format_phase_table(cells)).map_err(|e| Error::io(path, e))
}

pub fn parse_phase_table(text: &str, source_name: &str) -> Result<Vec<PhaseCell>> {
    let err = |line: usize, message: String| Error::Parse {
        source_name: source_name.to_string(),
        line,
        message,
    };
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim_start().starts_with('#'));
    match lines.next() {
        Some((_, h)) if h.trim() == PHASE_TABLE_HEADER => {}
        other => {
            return Err(err(
                other.map_or(1, |(i, _)| i + 1),
                format!("expected header `{PHASE_TABLE_HEADER}`"),
            ))
        }
    }
    let mut cells = Vec::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.trim().split(',').collect();
        if f.len() != 6 {
            return Err(err(line_no, format!("expected 6 fields, found {}", f.len())));
        }
        let bad = |what: &str| err(line_no, format!("invalid {what}"));
        let cell = PhaseCell {
            n: f[0].parse().map_err(|_| bad("n"))?,
            p: f[1].parse().map_err(|_| bad("p"))?,
            trials: f[2].parse().map_err(|_| bad("trials"))?,
            successes: f[3].parse().map_err(|_| bad("successes"))?,
            seed: f[5].parse().map_err(|_| bad("seed"))?,
        };
        let fraction: f64 = f[4].parse().map_err(|_| bad("fraction"))?;
        if cell.trials == 0 || cell.successes > cell.trials || fraction != cell.fraction() {
            return Err(err(line_no, "inconsistent trials/successes/fraction".to_string()));
        }
        cells.push(cell);
    }
    Ok(cells)
}

pub fn read_phase_table(path: impl AsRef<Path>) -> Result<Vec<PhaseCell>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_phase_table(&text, &path.display().to_string())
}

/// The connectivity threshold `log(n)/n` and twice it, per `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceCurve {
    pub n: usize,
    pub log_n_over_n: f64,
    pub two_log_n_over_n: f64,
}

pub fn reference_curves(n_values: &[usize]) -> Vec<ReferenceCurve> {
    n_values
        .iter()
        .map(|&n| {
            let k = (n as f64).ln() / n as f64;
            ReferenceCurve {
                n,
                log_n_over_n: k,
                two_log_n_over_n: 2.0 * k,
            }
        })
        .collect()
}

pub fn format_reference_curves(curves: &[ReferenceCurve]) -> String {
    let mut out = String::from("n,log_n_over_n,two_log_n_over_n\n");
    for c in curves {
        let _ = writeln!(out, "{},{},{}", c.n, c.log_n_over_n, c.two_log_n_over_n);
    }
    out
}
