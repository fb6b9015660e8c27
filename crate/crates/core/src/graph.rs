//! Weighted undirected graphs and the generators used throughout the crate.
//!
//! Graphs are stored densely (row-major `n × n`, `f64`) together with the
//! list of positive-weight edges `i < j`. The dense matrix serves Hessians and
//! eigendecompositions; the edge list keeps energy and gradient evaluation
//! proportional to the number of edges.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use nalgebra::DMatrix;
use rand::Rng;

use crate::linalg::symmetric_eigenvalues;
use crate::seed::rng_from_seed;
use crate::{Error, Result};

/// Largest vertex count accepted for dense storage.
pub const MAX_VERTICES: usize = 4000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub weight: f64,
}

/// Symmetric, nonnegative, zero-diagonal weight matrix.
#[derive(Debug, Clone)]
pub struct WeightedGraph {
    n: usize,
    weights: Vec<f64>,
    edges: Vec<Edge>,
}

impl PartialEq for WeightedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.weights == other.weights
    }
}

impl WeightedGraph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Result<Self> {
        check_vertex_count("graph", n, 1)?;
        Ok(Self {
            n,
            weights: vec![0.0; n * n],
            edges: Vec::new(),
        })
    }

    /// Builds a graph from a row-major `n × n` matrix, validating symmetry
    /// (exact), the zero diagonal and nonnegativity.
    pub fn from_dense(n: usize, weights: Vec<f64>) -> Result<Self> {
        check_vertex_count("graph", n, 1)?;
        if weights.len() != n * n {
            return Err(Error::invalid(format!(
                "weight matrix has {} entries, expected {}",
                weights.len(),
                n * n
            )));
        }
        for i in 0..n {
            if weights[i * n + i] != 0.0 {
                return Err(Error::invalid(format!("nonzero diagonal entry at vertex {i}")));
            }
            for j in (i + 1)..n {
                let w = weights[i * n + j];
                if !w.is_finite() || w < 0.0 {
                    return Err(Error::invalid(format!(
                        "weight ({i}, {j}) = {w} is not a nonnegative real"
                    )));
                }
                if w != weights[j * n + i] {
                    return Err(Error::invalid(format!("weight matrix is not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(Self::from_validated(n, weights))
    }

    fn from_validated(n: usize, weights: Vec<f64>) -> Self {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let w = weights[i * n + j];
                if w > 0.0 {
                    edges.push(Edge { i, j, weight: w });
                }
            }
        }
        Self { n, weights, edges }
    }

    /// Builds from unordered pairs; later pairs overwrite earlier ones.
    fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize, f64)>) -> Self {
        let mut weights = vec![0.0; n * n];
        for (i, j, w) in pairs {
            debug_assert!(i != j && i < n && j < n && w >= 0.0);
            weights[i * n + j] = w;
            weights[j * n + i] = w;
        }
        Self::from_validated(n, weights)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.weights[i * self.n + j]
    }

    /// Row `i` of the weight matrix.
    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.weights[i * self.n..(i + 1) * self.n]
    }

    /// The full row-major weight matrix.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Positive-weight edges with `i < j`, in row-major order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Weighted degree of vertex `i`.
    pub fn degree(&self, i: usize) -> f64 {
        self.row(i).iter().sum()
    }

    pub fn degrees(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.degree(i)).collect()
    }

    pub fn max_degree(&self) -> f64 {
        self.degrees().into_iter().fold(0.0, f64::max)
    }

    /// `Σᵢⱼ aᵢⱼ` over all ordered pairs (twice the total edge weight).
    pub fn weight_sum(&self) -> f64 {
        2.0 * self.edges.iter().map(|e| e.weight).sum::<f64>()
    }

    /// True when every weight is 0 or 1.
    pub fn is_unweighted(&self) -> bool {
        self.edges.iter().all(|e| e.weight == 1.0)
    }

    /// `diag(A1) − A`.
    pub fn laplacian(&self) -> DMatrix<f64> {
        let n = self.n;
        let mut l = DMatrix::zeros(n, n);
        for e in &self.edges {
            l[(e.i, e.j)] -= e.weight;
            l[(e.j, e.i)] -= e.weight;
            l[(e.i, e.i)] += e.weight;
            l[(e.j, e.j)] += e.weight;
        }
        l
    }

    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.i].push(e.j);
            adj[e.j].push(e.i);
        }
        adj
    }

    /// Connected component label of every vertex, labels in order of first
    /// appearance.
    pub fn components(&self) -> Vec<usize> {
        let adj = self.adjacency_lists();
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                for &u in &adj[v] {
                    if label[u] == usize::MAX {
                        label[u] = next;
                        queue.push_back(u);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn is_connected(&self) -> bool {
        self.components().iter().all(|&c| c == 0)
    }
}

fn check_vertex_count(what: &'static str, n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::InvalidSize { what, n, min });
    }
    if n > MAX_VERTICES {
        return Err(Error::TooLarge {
            what,
            n,
            max: MAX_VERTICES,
        });
    }
    Ok(())
}

fn check_ring_k(what: &str, n: usize, k: usize) -> Result<()> {
    let k_max = n.saturating_sub(1) / 2;
    if k < 1 || k > k_max {
        return Err(Error::invalid(format!(
            "{what}: k = {k} outside 1..={k_max} for n = {n}"
        )));
    }
    Ok(())
}

/// Path `0 − 1 − … − (n−1)` with unit weights.
pub fn path(n: usize) -> Result<WeightedGraph> {
    check_vertex_count("path", n, 2)?;
    Ok(WeightedGraph::from_pairs(n, (0..n - 1).map(|i| (i, i + 1, 1.0))))
}

/// The path closed by the edge `(0, n−1)`.
pub fn cycle(n: usize) -> Result<WeightedGraph> {
    check_vertex_count("cycle", n, 3)?;
    Ok(WeightedGraph::from_pairs(
        n,
        (0..n - 1)
            .map(|i| (i, i + 1, 1.0))
            .chain(std::iter::once((0, n - 1, 1.0))),
    ))
}

/// All off-diagonal weights equal to one.
pub fn complete(n: usize) -> Result<WeightedGraph> {
    check_vertex_count("complete graph", n, 2)?;
    let mut weights = vec![1.0; n * n];
    for i in 0..n {
        weights[i * n + i] = 0.0;
    }
    Ok(WeightedGraph::from_validated(n, weights))
}

/// Ring lattice (Wiley–Strogatz–Girvan network): vertex `i` is joined to
/// `i ± 1, …, i ± k (mod n)`. The adjacency matrix is circulant.
pub fn ring_lattice(n: usize, k: usize) -> Result<WeightedGraph> {
    check_vertex_count("ring lattice", n, 3)?;
    check_ring_k("ring lattice", n, k)?;
    Ok(WeightedGraph::from_pairs(n, ring_pairs(n, k)))
}

fn ring_pairs(n: usize, k: usize) -> impl Iterator<Item = (usize, usize, f64)> {
    (0..n).flat_map(move |i| (1..=k).map(move |d| (i, (i + d) % n, 1.0)))
}

/// Bipartite double cover of the ring lattice: `2n` vertices with the block
/// matrix `[[0, A_k], [A_k, 0]]`.
pub fn bipartite_ring_lattice(n: usize, k: usize) -> Result<WeightedGraph> {
    check_vertex_count("bipartite ring lattice", n, 3)?;
    check_vertex_count("bipartite ring lattice", 2 * n, 6)?;
    check_ring_k("bipartite ring lattice", n, k)?;
    Ok(WeightedGraph::from_pairs(
        2 * n,
        ring_pairs(n, k).flat_map(move |(i, j, w)| [(i, j + n, w), (j, i + n, w)]),
    ))
}

/// Erdős–Rényi `G(n, p)`.
///
/// Pairs are visited as `i < j` in row-major order with exactly one uniform
/// draw per pair, so the output depends only on `(n, p, seed)`.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<WeightedGraph> {
    check_vertex_count("Erdős–Rényi graph", n, 1)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("edge probability p = {p} outside [0, 1]")));
    }
    let mut rng = rng_from_seed(seed);
    let mut weights = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random::<f64>() < p {
                weights[i * n + j] = 1.0;
                weights[j * n + i] = 1.0;
            }
        }
    }
    Ok(WeightedGraph::from_validated(n, weights))
}

/// Summary statistics of a graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphMetrics {
    /// Minimum weighted row sum.
    pub min_degree: f64,
    /// `min_degree / (n − 1)`; zero for a single vertex.
    pub degree_ratio: f64,
    pub connected: bool,
    /// Second-smallest eigenvalue of the Laplacian (algebraic connectivity);
    /// zero for a single vertex.
    pub laplacian_lambda2: f64,
}

/// Degree statistics, connectivity (breadth-first search) and algebraic
/// connectivity (dense symmetric eigendecomposition of the Laplacian).
pub fn metrics(g: &WeightedGraph) -> Result<GraphMetrics> {
    let n = g.n();
    let min_degree = g.degrees().into_iter().fold(f64::INFINITY, f64::min);
    let degree_ratio = if n > 1 { min_degree / (n - 1) as f64 } else { 0.0 };
    let connected = g.is_connected();
    let laplacian_lambda2 = if n > 1 {
        let eigs = symmetric_eigenvalues(g.laplacian())?;
        // Disconnected graphs have a repeated zero eigenvalue; report it exactly.
        if connected {
            eigs[1]
        } else {
            0.0
        }
    } else {
        0.0
    };
    Ok(GraphMetrics {
        min_degree,
        degree_ratio,
        connected,
        laplacian_lambda2,
    })
}

/// Serialises `g` as an edge list: a header line `n <count>`, then one
/// `i j w` line per edge `i < j` (0-indexed). Weights are written in the
/// shortest form that parses back to the same `f64`.
pub fn format_edge_list(g: &WeightedGraph) -> String {
    let mut out = String::with_capacity(16 + 16 * g.edge_count());
    let _ = writeln!(out, "n {}", g.n());
    for e in g.edges() {
        let _ = writeln!(out, "{} {} {}", e.i, e.j, e.weight);
    }
    out
}

pub fn save_edge_list(g: &WeightedGraph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, format_edge_list(g)).map_err(|e| Error::io(path, e))
}

pub fn load_edge_list(path: impl AsRef<Path>) -> Result<WeightedGraph> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_edge_list(&text, &path.display().to_string())
}

/// Parses the edge-list text format. `#` starts a comment; blank lines are
/// skipped; the header is `n <count>` (or `n=<count>`); a missing weight
/// defaults to 1. An edge may be listed in both orientations only with the
/// same weight.
pub fn parse_edge_list(text: &str, source_name: &str) -> Result<WeightedGraph> {
    let err = |line: usize, message: String| Error::Parse {
        source_name: source_name.to_string(),
        line,
        message,
    };
    let mut n: Option<usize> = None;
    let mut weights: Vec<f64> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some(n) = n else {
            let rest = content
                .strip_prefix('n')
                .map(|r| r.trim_start().trim_start_matches('=').trim())
                .ok_or_else(|| err(line_no, format!("expected header `n <count>`, found `{content}`")))?;
            let count: usize = rest
                .parse()
                .map_err(|_| err(line_no, format!("invalid vertex count `{rest}`")))?;
            if count == 0 || count > MAX_VERTICES {
                return Err(err(line_no, format!("vertex count {count} outside 1..={MAX_VERTICES}")));
            }
            n = Some(count);
            weights = vec![0.0; count * count];
            continue;
        };
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() < 2 || fields.len() > 3 {
            return Err(err(line_no, format!("expected `i j [w]`, found `{content}`")));
        }
        let index = |s: &str| -> Result<usize> {
            let v: usize = s
                .parse()
                .map_err(|_| err(line_no, format!("invalid vertex index `{s}`")))?;
            if v >= n {
                return Err(err(line_no, format!("vertex index {v} out of range for n = {n}")));
            }
            Ok(v)
        };
        let i = index(fields[0])?;
        let j = index(fields[1])?;
        let w = match fields.get(2) {
            Some(s) => s
                .parse::<f64>()
                .map_err(|_| err(line_no, format!("invalid weight `{s}`")))?,
            None => 1.0,
        };
        if i == j {
            return Err(err(line_no, format!("self-loop at vertex {i}")));
        }
        if !w.is_finite() || w < 0.0 {
            return Err(err(line_no, format!("weight {w} is not a nonnegative real")));
        }
        let existing = weights[i * n + j];
        if existing != 0.0 && existing != w {
            return Err(err(
                line_no,
                format!("edge ({i}, {j}) repeated with conflicting weight {w} (previously {existing})"),
            ));
        }
        weights[i * n + j] = w;
        weights[j * n + i] = w;
    }
    let n = n.ok_or_else(|| err(0, "missing header `n <count>`".to_string()))?;
    Ok(WeightedGraph::from_validated(n, weights))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_invariants(g: &WeightedGraph) {
        let n = g.n();
        for i in 0..n {
            assert_eq!(g.weight(i, i), 0.0);
            for j in 0..n {
                assert_eq!(g.weight(i, j), g.weight(j, i));
                assert!(g.weight(i, j) >= 0.0);
            }
        }
    }

    fn edge_set(g: &WeightedGraph) -> Vec<(usize, usize)> {
        g.edges().iter().map(|e| (e.i, e.j)).collect()
    }

    #[test]
    fn path_graphs() {
        assert_eq!(edge_set(&path(3).unwrap()), vec![(0, 1), (1, 2)]);
        assert_eq!(edge_set(&path(2).unwrap()), vec![(0, 1)]);
        let g = path(5).unwrap();
        assert_eq!(g.edge_count(), 4);
        let m = metrics(&g).unwrap();
        assert_eq!(m.min_degree, 1.0);
        assert!(m.connected);
        assert!(matches!(path(1), Err(Error::InvalidSize { .. })));
    }

    #[test]
    fn cycle_graphs() {
        let g = cycle(4).unwrap();
        assert_eq!(g.edge_count(), 4);
        assert!(g.degrees().iter().all(|&d| d == 2.0));
        assert_eq!(cycle(3).unwrap(), complete(3).unwrap());
        let l2 = metrics(&cycle(6).unwrap()).unwrap().laplacian_lambda2;
        // 2 − 2cos(2π/6) = 1
        assert!((l2 - 1.0).abs() < 1e-12, "{l2}");
        assert!(matches!(cycle(2), Err(Error::InvalidSize { .. })));
    }

    #[test]
    fn ring_lattices() {
        assert_eq!(ring_lattice(6, 1).unwrap(), cycle(6).unwrap());
        let g = ring_lattice(8, 2).unwrap();
        assert_eq!(g.edge_count(), 16);
        assert!(g.degrees().iter().all(|&d| d == 4.0));
        let m = metrics(&ring_lattice(10, 4).unwrap()).unwrap();
        assert!((m.degree_ratio - 8.0 / 9.0).abs() < 1e-15);
        assert!(ring_lattice(10, 5).is_err());
        assert!(ring_lattice(10, 0).is_err());
        for n in 3..20 {
            for k in 1..=(n - 1) / 2 {
                let g = ring_lattice(n, k).unwrap();
                assert_invariants(&g);
                assert!(g.degrees().iter().all(|&d| d == 2.0 * k as f64));
            }
        }
    }

    #[test]
    fn complete_graphs() {
        let g = complete(4).unwrap();
        assert_eq!(g.edge_count(), 6);
        let m = metrics(&complete(6).unwrap()).unwrap();
        assert_eq!(m.degree_ratio, 1.0);
        assert!((m.laplacian_lambda2 - 6.0).abs() < 1e-12);
        assert!(complete(1).is_err());
    }

    #[test]
    fn bipartite_ring_lattices() {
        let g = bipartite_ring_lattice(4, 1).unwrap();
        assert_eq!(g.n(), 8);
        assert_eq!(g.edge_count(), 8);
        assert!(g.degrees().iter().all(|&d| d == 2.0));
        let g = bipartite_ring_lattice(6, 2).unwrap();
        assert!(g.degrees().iter().all(|&d| d == 4.0));
        assert_invariants(&g);
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(g.weight(i, j), 0.0);
                assert_eq!(g.weight(i + 6, j + 6), 0.0);
            }
        }
        assert!(bipartite_ring_lattice(6, 3).is_err());
    }

    #[test]
    fn bipartite_has_no_odd_cycles() {
        // 2-colouring by BFS parity must be proper.
        for (n, k) in [(5, 2), (7, 3), (9, 1), (12, 5)] {
            let g = bipartite_ring_lattice(n, k).unwrap();
            let adj = g.adjacency_lists();
            let mut colour = vec![None; g.n()];
            let mut queue = VecDeque::new();
            for s in 0..g.n() {
                if colour[s].is_some() {
                    continue;
                }
                colour[s] = Some(false);
                queue.push_back(s);
                while let Some(v) = queue.pop_front() {
                    for &u in &adj[v] {
                        match colour[u] {
                            None => {
                                colour[u] = Some(!colour[v].unwrap());
                                queue.push_back(u);
                            }
                            Some(c) => assert_ne!(c, colour[v].unwrap()),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn erdos_renyi_extremes_and_determinism() {
        for seed in 0..5 {
            assert_eq!(erdos_renyi(12, 0.0, seed).unwrap().edge_count(), 0);
            assert_eq!(erdos_renyi(12, 1.0, seed).unwrap(), complete(12).unwrap());
        }
        assert_eq!(erdos_renyi(40, 0.3, 9).unwrap(), erdos_renyi(40, 0.3, 9).unwrap());
        assert_ne!(erdos_renyi(40, 0.3, 9).unwrap(), erdos_renyi(40, 0.3, 10).unwrap());
        assert!(erdos_renyi(10, 1.5, 0).is_err());
        assert!(erdos_renyi(10, -0.1, 0).is_err());
        assert!(erdos_renyi(10, f64::NAN, 0).is_err());
    }

    #[test]
    fn erdos_renyi_edge_count_concentrates() {
        let n = 1000;
        let p = 0.3;
        let pairs = (n * (n - 1) / 2) as f64;
        let sd = (pairs * p * (1.0 - p)).sqrt();
        let m = erdos_renyi(n, p, 2024).unwrap().edge_count() as f64;
        assert!((m - pairs * p).abs() <= 4.0 * sd, "edges {m}, mean {}", pairs * p);
    }

    #[test]
    fn metrics_disconnected() {
        let g = WeightedGraph::from_pairs(4, [(0, 1, 1.0), (2, 3, 1.0)]);
        let m = metrics(&g).unwrap();
        assert!(!m.connected);
        assert_eq!(m.laplacian_lambda2, 0.0);
    }

    #[test]
    fn connectivity_matches_lambda2() {
        for seed in 0..20 {
            let g = erdos_renyi(30, 0.08, seed).unwrap();
            let m = metrics(&g).unwrap();
            let raw = symmetric_eigenvalues(g.laplacian()).unwrap()[1];
            assert_eq!(m.connected, raw > 1e-9 * 30.0, "seed {seed}: λ₂ = {raw}");
        }
    }

    #[test]
    fn from_dense_validation() {
        assert!(WeightedGraph::from_dense(2, vec![0.0, 1.0, 1.0, 0.0]).is_ok());
        assert!(WeightedGraph::from_dense(2, vec![0.0, 1.0, 2.0, 0.0]).is_err());
        assert!(WeightedGraph::from_dense(2, vec![1.0, 1.0, 1.0, 0.0]).is_err());
        assert!(WeightedGraph::from_dense(2, vec![0.0, -1.0, -1.0, 0.0]).is_err());
        assert!(WeightedGraph::from_dense(2, vec![0.0; 3]).is_err());
    }

    #[test]
    fn edge_list_format() {
        let text = format_edge_list(&cycle(4).unwrap());
        assert_eq!(text.lines().count(), 5);
        assert_eq!(text.lines().next(), Some("n 4"));

        let g = parse_edge_list("n=3\n", "mem").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 0);

        let g = parse_edge_list("# comment\nn 3\n0 1\n2 1 0.5 # trailing\n\n", "mem").unwrap();
        assert_eq!(g.weight(0, 1), 1.0);
        assert_eq!(g.weight(1, 2), 0.5);
        // both orientations with the same weight are fine
        assert!(parse_edge_list("n 3\n0 1 2\n1 0 2\n", "mem").is_ok());
    }

    #[test]
    fn edge_list_errors_carry_line_numbers() {
        let cases = [
            ("n 3\n0 1\n1 1\n", 3, "self-loop"),
            ("n 3\n0 1 2\n1 0 3\n", 3, "conflicting"),
            ("n 3\n0 x\n", 2, "invalid vertex index"),
            ("n 3\n0 5\n", 2, "out of range"),
            ("n 3\n\n0 1 -2\n", 3, "nonnegative"),
            ("n 3\n0 1 2 3\n", 2, "expected"),
            ("0 1\n", 1, "header"),
        ];
        for (text, line, needle) in cases {
            match parse_edge_list(text, "mem") {
                Err(Error::Parse { line: l, message, .. }) => {
                    assert_eq!(l, line, "{text:?}");
                    assert!(message.contains(needle), "{message}");
                }
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn edge_list_file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.txt");
        let g = erdos_renyi(50, 0.2, 7).unwrap();
        save_edge_list(&g, &path).unwrap();
        let back = load_edge_list(&path).unwrap();
        assert_eq!(back.weights(), g.weights());
        assert!(matches!(
            load_edge_list(dir.path().join("missing")),
            Err(Error::Io { .. })
        ));
    }
}
