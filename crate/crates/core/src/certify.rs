//! Checkable forms of the landscape conditions.
//!
//! * [`check_proposition`]: the two-quadrant condition `|sin(θᵢ − θ_r)| < 1/√2`
//!   around the order-parameter angle, on a connected graph. A local minimum
//!   satisfying it is the synchronized state.
//! * [`check_theorem1`]: minimum degree at least `μ(n − 1)` with
//!   `μ ≥ (3 − √2)/2`, which rules out spurious local minima.
//! * [`er_regime`]: the edge density `p = 32γ log n / n^{1/3}` of the random
//!   graph guarantee and its failure-probability expression.
//! * [`deviation_bound`]: concentration of `A − E[A]` in spectral norm and of
//!   its row sums, against `√(2γnp(1−p) log n) + 2γ log n / 3`.
//! * [`rip_probe`]: a sampling probe of the restricted isometry inequalities
//!   `|⟨A − pJ, QQᵀ∘QQᵀ⟩| ≤ δp‖QQᵀ‖²_F` and `|⟨A − pJ, QQᵀ⟩| ≤ δp‖QQᵀ‖²_F`.
//!   Sampling can only find violations; it never proves the uniform bound.
//!
//! Logarithms are natural. Wherever `E[A]` appears its diagonal is taken to
//! be `p`, i.e. the centred matrix `Δ = A − p(J − I)` has a zero diagonal.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::descent::random_init;
use crate::energy::{embedding, gradient, order_parameter, PhaseState};
use crate::graph::WeightedGraph;
use crate::linalg::symmetric_spectral_norm;
use crate::seed::derive_seed;
use crate::{Error, Result};

/// `(3 − √2)/2 ≈ 0.7928932188134524`.
pub fn theorem1_threshold() -> f64 {
    (3.0 - std::f64::consts::SQRT_2) / 2.0
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub name: String,
    pub holds: bool,
    pub witness: BTreeMap<String, f64>,
    pub notes: String,
}

impl Certificate {
    fn new(name: &str, holds: bool) -> Self {
        Self {
            name: name.to_string(),
            holds,
            witness: BTreeMap::new(),
            notes: String::new(),
        }
    }

    fn with(mut self, key: &str, value: f64) -> Self {
        self.witness.insert(key.to_string(), value);
        self
    }

    fn note(mut self, notes: &str) -> Self {
        self.notes = notes.to_string();
        self
    }

    /// `name: PASS|FAIL`, then `key=value` witness lines, then the note as
    /// a `#` comment.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}: {}\n", self.name, if self.holds { "PASS" } else { "FAIL" });
        for (k, v) in &self.witness {
            let _ = writeln!(out, "{k}={v}");
        }
        if !self.notes.is_empty() {
            let _ = writeln!(out, "# {}", self.notes);
        }
        out
    }
}

fn bool_value(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

/// Holds when the graph is connected, the order parameter has an angle
/// `θ_r`, and every phase lies within `π/4` of the line through `θ_r`.
pub fn check_proposition(g: &WeightedGraph, s: &PhaseState) -> Result<Certificate> {
    if g.n() != s.len() {
        return Err(Error::Shape {
            expected: g.n(),
            got: s.len(),
        });
    }
    let connected = g.is_connected();
    let r = order_parameter(s);
    let threshold = std::f64::consts::FRAC_1_SQRT_2;
    let Some(theta_r) = r.angle else {
        return Ok(Certificate::new("proposition", false)
            .with("connected", bool_value(connected))
            .with("order_magnitude", r.magnitude)
            .with("threshold", threshold)
            .note("order parameter degenerate"));
    };
    let max_abs_sin = s
        .as_slice()
        .iter()
        .fold(0.0_f64, |m, t| m.max((t - theta_r).sin().abs()));
    let holds = connected && max_abs_sin < threshold;
    let mut cert = Certificate::new("proposition", holds)
        .with("connected", bool_value(connected))
        .with("max_abs_sin", max_abs_sin)
        .with("order_magnitude", r.magnitude)
        .with("theta_r", theta_r)
        .with("threshold", threshold);
    if !connected {
        cert = cert.note("graph is disconnected");
    }
    Ok(cert)
}

/// Holds when `min degree / (n − 1) ≥ (3 − √2)/2`.
pub fn check_theorem1(g: &WeightedGraph) -> Certificate {
    let n = g.n();
    let min_degree = g.degrees().into_iter().fold(f64::INFINITY, f64::min);
    let mu = if n > 1 { min_degree / (n - 1) as f64 } else { 0.0 };
    let threshold = theorem1_threshold();
    Certificate::new("theorem1", n > 1 && mu >= threshold)
        .with("min_degree", min_degree)
        .with("mu", mu)
        .with("threshold", threshold)
}

/// Parameters of the Erdős–Rényi landscape guarantee.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErRegime {
    pub n: usize,
    pub gamma: f64,
    /// `32γ log n / n^{1/3}`, unclamped.
    pub p: f64,
    /// `1 − 4 exp(n(log(100 n^{1/3}) − 2γ log n)) − 10 n^{1−γ}`.
    pub prob_bound: f64,
}

impl ErRegime {
    pub fn edge_probability(n: usize, gamma: f64) -> f64 {
        let nf = n as f64;
        32.0 * gamma * nf.ln() / nf.cbrt()
    }

    /// The density exceeds 1: the guarantee says nothing at this size.
    pub fn is_vacuous(&self) -> bool {
        self.p > 1.0
    }

    pub fn clamped_p(&self) -> f64 {
        self.p.min(1.0)
    }

    pub fn certificate(&self) -> Certificate {
        let cert = Certificate::new("er_regime", !self.is_vacuous())
            .with("n", self.n as f64)
            .with("gamma", self.gamma)
            .with("p", self.p)
            .with("prob_bound", self.prob_bound);
        if self.is_vacuous() {
            cert.note("p > 1: regime vacuous at this n")
        } else {
            cert
        }
    }
}

pub fn er_regime(n: usize, gamma: f64) -> Result<ErRegime> {
    if n < 2 {
        return Err(Error::invalid(format!("er_regime needs n >= 2, got {n}")));
    }
    if !(gamma >= 1.0 && gamma.is_finite()) {
        return Err(Error::invalid(format!("er_regime needs gamma >= 1, got {gamma}")));
    }
    let nf = n as f64;
    let ln_n = nf.ln();
    let p = ErRegime::edge_probability(n, gamma);
    let exponent = nf * ((100.0 * nf.cbrt()).ln() - 2.0 * gamma * ln_n);
    let prob_bound = 1.0 - 4.0 * exponent.exp() - 10.0 * nf.powf(1.0 - gamma);
    Ok(ErRegime {
        n,
        gamma,
        p,
        prob_bound,
    })
}

/// `√(2γnp(1−p) log n) + 2γ log n / 3`.
pub fn bernstein_bound(n: usize, p: f64, gamma: f64) -> f64 {
    let ln_n = (n as f64).ln();
    (2.0 * gamma * n as f64 * p * (1.0 - p) * ln_n).sqrt() + 2.0 * gamma * ln_n / 3.0
}

fn check_probability(p: f64) -> Result<()> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::invalid(format!("p must lie in (0, 1), got {p}")));
    }
    Ok(())
}

/// `Δ = A − p(J − I)`.
fn centred(g: &WeightedGraph, p: f64) -> DMatrix<f64> {
    let n = g.n();
    DMatrix::from_fn(n, n, |i, j| if i == j { 0.0 } else { g.weight(i, j) - p })
}

/// Compares `‖Δ‖` and `‖Δ1‖∞` with the Bernstein-type bound.
pub fn deviation_bound(g: &WeightedGraph, p: f64, gamma: f64) -> Result<Certificate> {
    check_probability(p)?;
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::invalid(format!("gamma must be positive, got {gamma}")));
    }
    if !g.is_unweighted() {
        return Err(Error::invalid("deviation_bound needs a 0/1 adjacency matrix"));
    }
    let n = g.n();
    let delta = centred(g, p);
    let row_sum_inf = (0..n).fold(0.0_f64, |m, i| m.max(delta.row(i).sum().abs()));
    let row_norm_max = (0..n).fold(0.0_f64, |m, i| m.max(delta.row(i).norm()));
    let spectral_norm = symmetric_spectral_norm(delta)?;
    let bound = bernstein_bound(n, p, gamma);
    Ok(
        Certificate::new("deviation_bound", spectral_norm <= bound && row_sum_inf <= bound)
            .with("bound", bound)
            .with("row_norm_max", row_norm_max)
            .with("row_sum_inf", row_sum_inf)
            .with("spectral_norm", spectral_norm),
    )
}

/// `(|⟨Δ, QQᵀ∘QQᵀ⟩|, |⟨Δ, QQᵀ⟩|)`, both divided by `p‖QQᵀ‖²_F`.
pub fn rip_ratios(g: &WeightedGraph, p: f64, s: &PhaseState) -> Result<(f64, f64)> {
    if g.n() != s.len() {
        return Err(Error::Shape {
            expected: g.n(),
            got: s.len(),
        });
    }
    let q = embedding(s);
    let n = g.n() as f64;
    let theta = s.as_slice();
    // Off-diagonal sums of cos and cos² over all ordered pairs i ≠ j.
    let [sx, sy] = q.column_sums();
    let frob = q.gram_frobenius_sq();
    let all_cos = sx * sx + sy * sy - n;
    let all_cos2 = frob - n;
    let (mut edge_cos, mut edge_cos2) = (0.0, 0.0);
    for e in g.edges() {
        let c = (theta[e.i] - theta[e.j]).cos();
        edge_cos += e.weight * c;
        edge_cos2 += e.weight * c * c;
    }
    let linear = 2.0 * edge_cos - p * all_cos;
    let hadamard = 2.0 * edge_cos2 - p * all_cos2;
    let scale = p * frob;
    Ok((hadamard.abs() / scale, linear.abs() / scale))
}

/// Samples `samples` uniform phase vectors and records the largest ratios
/// from [`rip_ratios`]; holds when neither exceeds `delta`. A falsification
/// probe only.
pub fn rip_probe(g: &WeightedGraph, p: f64, delta: f64, samples: usize, seed: u64) -> Result<Certificate> {
    check_probability(p)?;
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::invalid(format!("delta must lie in (0, 1], got {delta}")));
    }
    if samples == 0 {
        return Err(Error::invalid("samples must be at least 1"));
    }
    let ratios: Vec<(f64, f64)> = (0..samples)
        .into_par_iter()
        .map(|k| rip_ratios(g, p, &random_init(g.n(), derive_seed(seed, k as u64))))
        .collect::<Result<_>>()?;
    let violations = ratios.iter().filter(|(h, l)| *h > delta || *l > delta).count();
    let max_h = ratios.iter().fold(0.0_f64, |m, r| m.max(r.0));
    let max_l = ratios.iter().fold(0.0_f64, |m, r| m.max(r.1));
    Ok(Certificate::new("rip_probe", violations == 0)
        .with("delta", delta)
        .with("max_ratio_hadamard", max_h)
        .with("max_ratio_linear", max_l)
        .with("samples", samples as f64)
        .with("violations", violations as f64)
        .note("sampled phases only; not a bound over all phase vectors"))
}

/// `‖∇E(θ)‖∞`.
pub fn first_order_residual(g: &WeightedGraph, s: &PhaseState) -> Result<f64> {
    Ok(gradient(g, s)?.iter().fold(0.0_f64, |m, v| m.max(v.abs())))
}
