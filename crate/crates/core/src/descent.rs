//! Local search on `E`: the forward-Euler discretisation of the gradient flow
//! `dθ/dt = −∇E(θ)` started from uniformly random phases.

use std::f64::consts::TAU;

use rand::Rng;
use rayon::prelude::*;

use crate::energy::{energy_and_gradient_into, order_parameter, PhaseState};
use crate::graph::WeightedGraph;
use crate::seed::{derive_seed, rng_from_seed};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DescentConfig {
    /// Euler step size.
    pub step: f64,
    pub max_iters: usize,
    /// Stop once the Euclidean norm of the gradient is at most this.
    pub grad_tol: f64,
    /// A run counts as global when `‖r‖ ≥ (1 − align_tol)·n`.
    pub align_tol: f64,
    /// Record a trace row every this many iterations; 0 disables tracing.
    pub trace_every: usize,
}

impl Default for DescentConfig {
    fn default() -> Self {
        Self {
            step: 0.005,
            max_iters: 1000,
            grad_tol: 1e-8,
            align_tol: 1e-3,
            trace_every: 0,
        }
    }
}

impl DescentConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.step.is_finite() && self.step > 0.0) {
            return Err(Error::invalid(format!("step must be positive, got {}", self.step)));
        }
        if !(self.grad_tol.is_finite() && self.grad_tol > 0.0) {
            return Err(Error::invalid(format!(
                "grad_tol must be positive, got {}",
                self.grad_tol
            )));
        }
        if !(self.align_tol > 0.0 && self.align_tol < 1.0) {
            return Err(Error::invalid(format!(
                "align_tol must lie in (0, 1), got {}",
                self.align_tol
            )));
        }
        Ok(())
    }

    pub fn with_max_iters(mut self, max_iters: usize) -> Self {
        self.max_iters = max_iters;
        self
    }

    pub fn with_trace_every(mut self, trace_every: usize) -> Self {
        self.trace_every = trace_every;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    GradientTol,
    MaxIters,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Global,
    NonGlobal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DescentOutcome {
    pub final_theta: PhaseState,
    pub final_energy: f64,
    pub final_grad_norm: f64,
    /// Number of Euler updates applied.
    pub iterations: usize,
    pub stopped_by: StopReason,
    pub classification: Classification,
}

impl DescentOutcome {
    pub fn is_global(&self) -> bool {
        self.classification == Classification::Global
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub iteration: usize,
    pub energy: f64,
    pub grad_norm: f64,
    pub order_magnitude: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct DescentTrace {
    pub rows: Vec<TraceRow>,
}

impl DescentTrace {
    pub const HEADER: &'static str = "iter,energy,grad_norm,order_mag";

    /// Header plus one comma-separated row per trace point.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(Self::HEADER.len() + 1 + 64 * self.rows.len());
        out.push_str(Self::HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                r.iteration, r.energy, r.grad_norm, r.order_magnitude
            ));
        }
        out
    }
}

/// Uniform phases on `[0, 2π)` from a ChaCha8 stream seeded with `seed`.
pub fn random_init(n: usize, seed: u64) -> PhaseState {
    let mut rng = rng_from_seed(seed);
    PhaseState::new((0..n).map(|_| rng.random_range(0.0..TAU)).collect())
}

/// Primary success rule: the final state is aligned, `‖r‖/n ≥ 1 − align_tol`.
pub fn classify_by_alignment(s: &PhaseState, align_tol: f64) -> Classification {
    let n = s.len() as f64;
    if order_parameter(s).magnitude >= (1.0 - align_tol) * n {
        Classification::Global
    } else {
        Classification::NonGlobal
    }
}

/// Secondary success rule for cross-checking: `E(θ) ≤ eps·Σᵢⱼ aᵢⱼ`.
pub fn classify_by_energy(g: &WeightedGraph, s: &PhaseState, eps: f64) -> Result<Classification> {
    let e = crate::energy::energy(g, s)?;
    Ok(if e <= eps * g.weight_sum() {
        Classification::Global
    } else {
        Classification::NonGlobal
    })
}

/// Runs `θ ← θ − step·∇E(θ)` until `‖∇E‖₂ ≤ grad_tol` or `max_iters`
/// updates have been applied.
///
/// When tracing, rows are recorded at iteration 0, every `trace_every`
/// iterations and at the final iterate.
pub fn descend(g: &WeightedGraph, init: &PhaseState, cfg: &DescentConfig) -> Result<(DescentOutcome, DescentTrace)> {
    cfg.validate()?;
    if g.n() != init.len() {
        return Err(Error::Shape {
            expected: g.n(),
            got: init.len(),
        });
    }
    let mut theta = init.clone();
    let mut grad = vec![0.0; g.n()];
    let mut trace = DescentTrace::default();
    let mut iter = 0;
    loop {
        let e = energy_and_gradient_into(g, theta.as_slice(), &mut grad);
        let grad_norm = grad.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !e.is_finite() || !grad_norm.is_finite() {
            return Err(Error::Divergence { iteration: iter });
        }
        let converged = grad_norm <= cfg.grad_tol;
        let done = converged || iter >= cfg.max_iters;
        if cfg.trace_every > 0 && (iter % cfg.trace_every == 0 || done) {
            trace.rows.push(TraceRow {
                iteration: iter,
                energy: e,
                grad_norm,
                order_magnitude: order_parameter(&theta).magnitude,
            });
        }
        if done {
            let classification = classify_by_alignment(&theta, cfg.align_tol);
            let outcome = DescentOutcome {
                final_theta: theta,
                final_energy: e,
                final_grad_norm: grad_norm,
                iterations: iter,
                stopped_by: if converged {
                    StopReason::GradientTol
                } else {
                    StopReason::MaxIters
                },
                classification,
            };
            return Ok((outcome, trace));
        }
        for (t, gi) in theta.as_mut_slice().iter_mut().zip(&grad) {
            *t -= cfg.step * gi;
        }
        iter += 1;
    }
}

/// Seed of restart `trial` under `base_seed`.
pub fn trial_seed(base_seed: u64, trial: usize) -> u64 {
    derive_seed(base_seed, trial as u64)
}

/// Runs `trials` independent descents from [`random_init`] with per-trial
/// seeds [`trial_seed`]`(base_seed, t)` and returns how many end global.
/// Trials run on the current rayon pool; the count does not depend on it.
pub fn multi_restart(g: &WeightedGraph, trials: usize, base_seed: u64, cfg: &DescentConfig) -> Result<usize> {
    if trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    cfg.validate()?;
    let cfg = DescentConfig { trace_every: 0, ..*cfg };
    let results: Vec<Result<bool>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let seed = trial_seed(base_seed, t);
            descend(g, &random_init(g.n(), seed), &cfg)
                .map(|(o, _)| o.is_global())
                .map_err(|e| Error::Trial {
                    trial: t,
                    seed,
                    source: Box::new(e),
                })
        })
        .collect();
    let mut successes = 0;
    for r in results {
        successes += usize::from(r?);
    }
    Ok(successes)
}
