//! Critical point analysis.
//!
//! A critical point of `E` is a local minimum candidate when the Hessian is
//! positive semidefinite. The Hessian always has the constant vector in its
//! null space, so the decisive quantity is its second-smallest eigenvalue.
//!
//! On the ring lattice (Wiley–Strogatz–Girvan network) the twisted state
//! `θₗ = 2πl/n` is critical and the Hessian there is circulant, with
//! eigenvalues
//!
//! ```text
//! λₗ = 2 Σⱼ₌₁ᵏ cos(2πj/n) − 2 Σⱼ₌₁ᵏ cos(2πj/n)·cos(2π(l−1)j/n),   l = 1..n
//! ```
//!
//! The bipartite double cover at the doubled twisted state has the `2n`
//! eigenvalues `base ± (modulated sum)`.

use std::f64::consts::{PI, TAU};

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::energy::{gradient, hessian, PhaseState};
use crate::graph::{path, WeightedGraph};
use crate::linalg::symmetric_eigenvalues;
use crate::{Error, Result};

pub const DEFAULT_GRAD_TOL: f64 = 1e-7;
pub const DEFAULT_EIG_TOL: f64 = 1e-8;

/// Largest path handled by exhaustive enumeration.
pub const MAX_PATH_ENUMERATION: usize = 16;

/// Hessian eigenvalues at `s`, ascending.
pub fn hessian_spectrum(g: &WeightedGraph, s: &PhaseState) -> Result<Vec<f64>> {
    symmetric_eigenvalues(hessian(g, s)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    NotCritical,
    /// First- and second-order necessary conditions hold. Zero eigenvalues
    /// beyond the translation direction leave strictness undecided.
    LocalMinCandidate,
    Saddle,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::NotCritical => "not-critical",
            Verdict::LocalMinCandidate => "local-min-candidate",
            Verdict::Saddle => "saddle",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriticalPointReport {
    pub grad_inf_norm: f64,
    /// Ascending.
    pub hessian_eigs: Vec<f64>,
    /// Smallest Hessian eigenvalue orthogonal to the translation direction
    /// `1` (0 for a single vertex). Equals the second-smallest eigenvalue
    /// whenever no eigenvalue is negative; with exactly one negative
    /// eigenvalue the second-smallest would be the translation zero.
    pub lambda2: f64,
    pub verdict: Verdict,
    pub grad_tol: f64,
    pub eig_tol: f64,
}

impl CriticalPointReport {
    /// A candidate whose `λ₂` sits inside `[−eig_tol, eig_tol]`: second-order
    /// information cannot separate it from a degenerate saddle.
    pub fn is_inconclusive(&self) -> bool {
        self.verdict == Verdict::LocalMinCandidate && self.lambda2 <= self.eig_tol
    }

    /// `key: value` lines.
    pub fn to_text(&self) -> String {
        let eigs: Vec<String> = self.hessian_eigs.iter().map(|v| v.to_string()).collect();
        format!(
            "verdict: {}\ngrad_inf_norm: {}\nlambda2: {}\ninconclusive: {}\ngrad_tol: {}\neig_tol: {}\nhessian_eigs: {}\n",
            self.verdict.as_str(),
            self.grad_inf_norm,
            self.lambda2,
            self.is_inconclusive(),
            self.grad_tol,
            self.eig_tol,
            eigs.join(" ")
        )
    }
}

/// First-order test on `‖∇E‖∞`, then second-order test on the Hessian
/// restricted to `1⊥`: saddle iff `λ₂ < −eig_tol`.
pub fn classify_critical(
    g: &WeightedGraph,
    s: &PhaseState,
    grad_tol: f64,
    eig_tol: f64,
) -> Result<CriticalPointReport> {
    if !(grad_tol >= 0.0 && eig_tol >= 0.0) {
        return Err(Error::invalid("tolerances must be nonnegative"));
    }
    let grad_inf_norm = gradient(g, s)?.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let h = hessian(g, s)?;
    let lambda2 = transverse_min_eigenvalue(&h)?;
    let hessian_eigs = symmetric_eigenvalues(h)?;
    let verdict = if grad_inf_norm > grad_tol {
        Verdict::NotCritical
    } else if lambda2 < -eig_tol {
        Verdict::Saddle
    } else {
        Verdict::LocalMinCandidate
    };
    Ok(CriticalPointReport {
        grad_inf_norm,
        hessian_eigs,
        lambda2,
        verdict,
        grad_tol,
        eig_tol,
    })
}

/// `H1 = 0` always, so the remaining eigenvectors span `1⊥`. Adding
/// `(c/n)·J` with `c` above the spectral radius moves the translation
/// eigenvalue out of the way and leaves the others untouched.
fn transverse_min_eigenvalue(h: &DMatrix<f64>) -> Result<f64> {
    let n = h.nrows();
    if n < 2 {
        return Ok(0.0);
    }
    let gershgorin = h
        .row_iter()
        .map(|r| r.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let shift = (1.0 + 2.0 * gershgorin) / n as f64;
    let deflated = h.add_scalar(shift);
    Ok(symmetric_eigenvalues(deflated)?[0])
}

/// `θₗ = 2πl/n`, `l = 0..n−1`.
pub fn twisted_state(n: usize) -> PhaseState {
    PhaseState::new((0..n).map(|l| TAU * l as f64 / n as f64).collect())
}

/// The twisted state repeated on both halves of the bipartite double cover.
pub fn doubled_twisted_state(n: usize) -> PhaseState {
    let half = twisted_state(n).into_inner();
    PhaseState::new(half.iter().chain(&half).copied().collect())
}

fn check_ring(n: usize, k: usize) -> Result<()> {
    let k_max = n.saturating_sub(1) / 2;
    if n < 3 || k < 1 || k > k_max {
        return Err(Error::invalid(format!(
            "ring lattice needs 1 <= k <= {k_max}, got n = {n}, k = {k}"
        )));
    }
    Ok(())
}

/// `cos(2πm/n)` for `m = 0..n`, with arguments reduced modulo `n` exactly.
fn cos_table(n: usize) -> Vec<f64> {
    (0..n).map(|m| (TAU * m as f64 / n as f64).cos()).collect()
}

/// Running sums over `j = 1..k` of the degree term and the modulated term of
/// the circulant Hessian eigenvalues.
struct CirculantSums {
    n: usize,
    cos: Vec<f64>,
    k: usize,
    base: f64,
    /// `Σⱼ cos(2πj/n)·cos(2π(l−1)j/n)` for `l = 1..n` (index `l − 1`).
    modulated: Vec<f64>,
}

impl CirculantSums {
    fn new(n: usize) -> Self {
        Self {
            n,
            cos: cos_table(n),
            k: 0,
            base: 0.0,
            modulated: vec![0.0; n],
        }
    }

    fn push_neighbour(&mut self) {
        self.k += 1;
        let j = self.k;
        let cj = self.cos[j % self.n];
        self.base += cj;
        for (l0, m) in self.modulated.iter_mut().enumerate() {
            *m += cj * self.cos[(l0 * j) % self.n];
        }
    }

    fn advance_to(&mut self, k: usize) {
        while self.k < k {
            self.push_neighbour();
        }
    }

    /// `λₗ` for `l = 1..n`. The `l = 1` entry is exactly zero: both sums add
    /// the same terms in the same order.
    fn ring_eigs(&self) -> Vec<f64> {
        self.modulated.iter().map(|m| 2.0 * self.base - 2.0 * m).collect()
    }

    fn min_nontrivial(&self) -> f64 {
        self.modulated[1..]
            .iter()
            .map(|m| 2.0 * self.base - 2.0 * m)
            .fold(f64::INFINITY, f64::min)
    }
}

/// Closed-form Hessian eigenvalues of the ring lattice `(n, k)` at the
/// twisted state, indexed by Fourier mode `l = 1..n` (not sorted).
pub fn ring_lattice_hessian_eigs(n: usize, k: usize) -> Result<Vec<f64>> {
    check_ring(n, k)?;
    let mut sums = CirculantSums::new(n);
    sums.advance_to(k);
    Ok(sums.ring_eigs())
}

/// One point of the `λ₂` versus degree-ratio curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lambda2Row {
    pub k: usize,
    /// `2k / (n − 1)`.
    pub mu: f64,
    /// `min over l ≥ 2 of λₗ`: the true second-smallest eigenvalue, robust
    /// to mode reordering as `k` grows.
    pub lambda2_min: f64,
}

pub fn ring_lattice_lambda2_curve(n: usize, k_min: usize, k_max: usize) -> Result<Vec<Lambda2Row>> {
    if k_min > k_max {
        return Err(Error::invalid(format!("empty k range {k_min}..={k_max}")));
    }
    check_ring(n, k_min)?;
    check_ring(n, k_max)?;
    let mut sums = CirculantSums::new(n);
    Ok((k_min..=k_max)
        .map(|k| {
            sums.advance_to(k);
            Lambda2Row {
                k,
                mu: 2.0 * k as f64 / (n - 1) as f64,
                lambda2_min: sums.min_nontrivial(),
            }
        })
        .collect())
}

/// Largest `k` for which the twisted state on the ring lattice `(n, k)` has
/// `min over l ≥ 2 of λₗ > 0`; 0 if there is none.
pub fn ring_lattice_critical_k(n: usize) -> usize {
    let k_max = n.saturating_sub(1) / 2;
    if n < 3 || k_max == 0 {
        return 0;
    }
    let mut sums = CirculantSums::new(n);
    let mut best = 0;
    for k in 1..=k_max {
        sums.advance_to(k);
        if sums.min_nontrivial() > 0.0 {
            best = k;
        }
    }
    best
}

/// Closed-form Hessian eigenvalues of the bipartite double cover of the ring
/// lattice at [`doubled_twisted_state`]: `base − mₗ` for `l = 1..n` followed
/// by `base + mₗ` for `l = 1..n`.
pub fn bipartite_twisted_eigs(n: usize, k: usize) -> Result<Vec<f64>> {
    check_ring(n, k)?;
    let mut sums = CirculantSums::new(n);
    sums.advance_to(k);
    let base = 2.0 * sums.base;
    let minus = sums.modulated.iter().map(|m| base - 2.0 * m);
    let plus = sums.modulated.iter().map(|m| base + 2.0 * m);
    Ok(minus.chain(plus).collect())
}

/// A `{0, π}` phase pattern on the path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathCriticalPoint {
    /// Bit `i` set means `θᵢ = π`.
    pub mask: u32,
    pub grad_inf_norm: f64,
    pub lambda2: f64,
    pub verdict: Verdict,
}

impl PathCriticalPoint {
    pub fn phases(&self, n: usize) -> PhaseState {
        PhaseState::new((0..n).map(|i| if self.mask >> i & 1 == 1 { PI } else { 0.0 }).collect())
    }

    pub fn is_constant(&self, n: usize) -> bool {
        self.mask == 0 || self.mask == (1u32 << n) - 1
    }
}

/// Classifies all `2ⁿ` patterns `θᵢ ∈ {0, π}` on the `n`-path, which are
/// exactly its critical points modulo 2π. Output is in mask order.
pub fn path_critical_points(n: usize) -> Result<Vec<PathCriticalPoint>> {
    if n > MAX_PATH_ENUMERATION {
        return Err(Error::TooLarge {
            what: "path enumeration",
            n,
            max: MAX_PATH_ENUMERATION,
        });
    }
    let g = path(n)?;
    (0..1u32 << n)
        .into_par_iter()
        .map(|mask| {
            let probe = PathCriticalPoint {
                mask,
                grad_inf_norm: 0.0,
                lambda2: 0.0,
                verdict: Verdict::NotCritical,
            };
            let r = classify_critical(&g, &probe.phases(n), DEFAULT_GRAD_TOL, DEFAULT_EIG_TOL)?;
            Ok(PathCriticalPoint {
                grad_inf_norm: r.grad_inf_norm,
                lambda2: r.lambda2,
                verdict: r.verdict,
                ..probe
            })
        })
        .collect()
}
