//! The synchronization energy and its derivatives.
//!
//! ```text
//! E(θ)      = ½ Σᵢⱼ aᵢⱼ (1 − cos(θᵢ − θⱼ))
//! ∂E/∂θᵢ    = Σⱼ aᵢⱼ sin(θᵢ − θⱼ)
//! ∂²E/∂θᵢθⱼ = −aᵢⱼ cos(θᵢ − θⱼ)           (i ≠ j)
//! ∂²E/∂θᵢ²  = Σⱼ aᵢⱼ cos(θᵢ − θⱼ)
//! ```
//!
//! The Hessian is a graph Laplacian with signed weights `aᵢⱼ cos(θᵢ − θⱼ)`,
//! so `H·1 = 0` everywhere and `H = diag(A1) − A` at any constant state.
//!
//! Angles are never normalised here; [`PhaseState::wrapped`] reduces modulo
//! 2π on demand.

use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use nalgebra::DMatrix;

use crate::graph::WeightedGraph;
use crate::{Error, Result};

/// A vector of phases θ ∈ ℝⁿ, interpreted modulo 2π.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseState(Vec<f64>);

impl PhaseState {
    pub fn new(theta: Vec<f64>) -> Self {
        Self(theta)
    }

    /// The synchronized state `c·1`.
    pub fn constant(n: usize, c: f64) -> Self {
        Self(vec![c; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// `θ + c·1`.
    pub fn shifted(&self, c: f64) -> Self {
        Self(self.0.iter().map(|t| t + c).collect())
    }

    /// Componentwise reduction to `[0, 2π)`.
    pub fn wrapped(&self) -> Self {
        Self(self.0.iter().map(|&t| wrap_angle(t)).collect())
    }

    /// Parses one angle (radians) per line; blank lines and `#` comments are
    /// ignored.
    pub fn parse(text: &str, source_name: &str) -> Result<Self> {
        let mut theta = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let value: f64 = content.parse().map_err(|_| Error::Parse {
                source_name: source_name.to_string(),
                line: idx + 1,
                message: format!("invalid angle `{content}`"),
            })?;
            if !value.is_finite() {
                return Err(Error::Parse {
                    source_name: source_name.to_string(),
                    line: idx + 1,
                    message: format!("angle `{content}` is not finite"),
                });
            }
            theta.push(value);
        }
        Ok(Self(theta))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, &path.display().to_string())
    }

    /// One angle per line in shortest round-trip form.
    pub fn format(&self) -> String {
        let mut out = String::with_capacity(20 * self.len());
        for t in &self.0 {
            let _ = writeln!(out, "{t}");
        }
        out
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.format()).map_err(|e| Error::io(path, e))
    }
}

impl From<Vec<f64>> for PhaseState {
    fn from(theta: Vec<f64>) -> Self {
        Self(theta)
    }
}

/// Reduces an angle to `[0, 2π)`.
pub fn wrap_angle(t: f64) -> f64 {
    let r = t.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}

fn check_shape(g: &WeightedGraph, s: &PhaseState) -> Result<()> {
    if g.n() != s.len() {
        return Err(Error::Shape {
            expected: g.n(),
            got: s.len(),
        });
    }
    Ok(())
}

/// `1 − cos d` without cancellation when `d` is small.
#[inline]
fn one_minus_cos(sin_d: f64, cos_d: f64) -> f64 {
    if cos_d > 0.0 {
        sin_d * sin_d / (1.0 + cos_d)
    } else {
        1.0 - cos_d
    }
}

/// `E(θ)`, summed once over the edges `i < j`.
pub fn energy(g: &WeightedGraph, s: &PhaseState) -> Result<f64> {
    check_shape(g, s)?;
    let theta = s.as_slice();
    Ok(g.edges()
        .iter()
        .map(|e| {
            let (sin_d, cos_d) = (theta[e.i] - theta[e.j]).sin_cos();
            e.weight * one_minus_cos(sin_d, cos_d)
        })
        .sum())
}

/// `∇E(θ)`; component `i` is `Σⱼ aᵢⱼ sin(θᵢ − θⱼ)`.
pub fn gradient(g: &WeightedGraph, s: &PhaseState) -> Result<Vec<f64>> {
    check_shape(g, s)?;
    let mut grad = vec![0.0; g.n()];
    energy_and_gradient_into(g, s.as_slice(), &mut grad);
    Ok(grad)
}

/// Energy and gradient in one pass over the edges. `grad` is overwritten.
pub(crate) fn energy_and_gradient_into(g: &WeightedGraph, theta: &[f64], grad: &mut [f64]) -> f64 {
    grad.iter_mut().for_each(|v| *v = 0.0);
    let mut e_total = 0.0;
    for e in g.edges() {
        let (sin_d, cos_d) = (theta[e.i] - theta[e.j]).sin_cos();
        let f = e.weight * sin_d;
        grad[e.i] += f;
        grad[e.j] -= f;
        e_total += e.weight * one_minus_cos(sin_d, cos_d);
    }
    e_total
}

/// Right-hand side of the homogeneous Kuramoto model,
/// `dθᵢ/dt = Σⱼ aᵢⱼ sin(θⱼ − θᵢ)`.
///
/// Evaluated row by row through `sin(θⱼ − θᵢ) = sⱼcᵢ − cⱼsᵢ`, independently
/// of [`gradient`]; the two agree up to sign and roundoff.
pub fn kuramoto_velocity(g: &WeightedGraph, s: &PhaseState) -> Result<Vec<f64>> {
    check_shape(g, s)?;
    let (c, sn): (Vec<f64>, Vec<f64>) = s.as_slice().iter().map(|t| (t.cos(), t.sin())).unzip();
    Ok((0..g.n())
        .map(|i| {
            g.row(i)
                .iter()
                .enumerate()
                .map(|(j, &a)| a * (sn[j] * c[i] - c[j] * sn[i]))
                .sum()
        })
        .collect())
}

/// `∇²E(θ) = ddiag(A·QQᵀ) − A ∘ QQᵀ`.
pub fn hessian(g: &WeightedGraph, s: &PhaseState) -> Result<DMatrix<f64>> {
    check_shape(g, s)?;
    let n = g.n();
    let theta = s.as_slice();
    let mut h = DMatrix::zeros(n, n);
    for e in g.edges() {
        let w = e.weight * (theta[e.i] - theta[e.j]).cos();
        h[(e.i, e.j)] = -w;
        h[(e.j, e.i)] = -w;
        h[(e.i, e.i)] += w;
        h[(e.j, e.j)] += w;
    }
    Ok(h)
}

/// The `n × 2` matrix `Q = [x y]` with unit rows `(cos θᵢ, sin θᵢ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleEmbedding {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl CircleEmbedding {
    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// `QQᵀ`, entries `cos(θᵢ − θⱼ)`.
    pub fn gram(&self) -> DMatrix<f64> {
        let n = self.n();
        DMatrix::from_fn(n, n, |i, j| self.x[i] * self.x[j] + self.y[i] * self.y[j])
    }

    /// `Qᵀ1`.
    pub fn column_sums(&self) -> [f64; 2] {
        [self.x.iter().sum(), self.y.iter().sum()]
    }

    /// `‖QQᵀ‖_F² = Σᵢⱼ cos²(θᵢ − θⱼ)`, through the 2×2 Gram matrix `QᵀQ`.
    pub fn gram_frobenius_sq(&self) -> f64 {
        let xx: f64 = self.x.iter().map(|v| v * v).sum();
        let yy: f64 = self.y.iter().map(|v| v * v).sum();
        let xy: f64 = self.x.iter().zip(&self.y).map(|(a, b)| a * b).sum();
        xx * xx + 2.0 * xy * xy + yy * yy
    }
}

pub fn embedding(s: &PhaseState) -> CircleEmbedding {
    let (x, y) = s.as_slice().iter().map(|t| (t.cos(), t.sin())).unzip();
    CircleEmbedding { x, y }
}

/// `r(θ) = Σⱼ e^{iθⱼ}` in polar form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderParameter {
    /// `‖r‖ ∈ [0, n]`.
    pub magnitude: f64,
    /// `θ_r ∈ [0, 2π)`; `None` when degenerate.
    pub angle: Option<f64>,
}

impl OrderParameter {
    /// Magnitudes below `1e−9·n` carry no usable angle.
    pub const DEGENERATE_REL: f64 = 1e-9;

    pub fn is_degenerate(&self) -> bool {
        self.angle.is_none()
    }
}

pub fn order_parameter(s: &PhaseState) -> OrderParameter {
    let (re, im) = s
        .as_slice()
        .iter()
        .fold((0.0_f64, 0.0_f64), |(re, im), t| (re + t.cos(), im + t.sin()));
    let magnitude = re.hypot(im);
    let angle = if magnitude < OrderParameter::DEGENERATE_REL * s.len() as f64 || s.is_empty() {
        None
    } else {
        Some(wrap_angle(im.atan2(re)))
    };
    OrderParameter { magnitude, angle }
}
