//! Laboratory for the landscape of the network synchronization energy
//!
//! ```text
//! E(θ) = ½ Σᵢⱼ aᵢⱼ (1 − cos(θᵢ − θⱼ))
//! ```
//!
//! over weighted graphs. The gradient flow of `E` is the homogeneous Kuramoto
//! model `dθᵢ/dt = −Σⱼ aᵢⱼ sin(θᵢ − θⱼ)`, so every question about where
//! Kuramoto oscillators end up is a question about the local minima of `E`.
//!
//! | Module | Purpose |
//! |--------|---------|
//! | [`graph`] | Weighted graphs, generators (path, cycle, ring lattice, Erdős–Rényi, ...), edge-list I/O |
//! | [`energy`] | `E`, its gradient and Hessian, the circle embedding `Q = [cos θ, sin θ]`, the order parameter |
//! | [`descent`] | Euler-discretised gradient flow from random starts, success classification |
//! | [`spectral`] | Hessian spectra, critical point verdicts, twisted states, circulant closed forms |
//! | [`certify`] | Executable landscape conditions: quadrant certificate, degree condition, concentration, RIP probe |
//! | [`harness`] | Monte-Carlo phase-transition sweeps over `(n, p)` |

pub mod certify;
pub mod descent;
pub mod energy;
mod error;
pub mod graph;
pub mod harness;
mod linalg;
pub mod seed;
pub mod spectral;

pub use error::{Error, Result};
