//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Runs with `harness = false` so the lines are always shown.

use std::f64::consts::TAU;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use nalgebra::DMatrix;

use synclab::certify::{check_proposition, check_theorem1, deviation_bound, rip_probe};
use synclab::descent::{descend, multi_restart, random_init, trial_seed, DescentConfig};
use synclab::energy::{embedding, energy, gradient, hessian, order_parameter, PhaseState};
use synclab::graph::{cycle, erdos_renyi, path, ring_lattice, WeightedGraph};
use synclab::harness::{
    cell_seed, format_phase_table, run_cell, run_grid_with_threads, GridSpec, PRule, TrialMode, DEFAULT_SEED,
};
use synclab::seed::derive_seed;
use synclab::spectral::{
    classify_critical, hessian_spectrum, path_critical_points, ring_lattice_critical_k, ring_lattice_hessian_eigs,
    ring_lattice_lambda2_curve, twisted_state, Verdict, DEFAULT_EIG_TOL, DEFAULT_GRAD_TOL,
};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

/// The 20 (graph, θ) instances shared by criteria 1–3: Erdős–Rényi graphs
/// on 30 vertices with random positive weights and uniform phases.
fn instances() -> Vec<(WeightedGraph, PhaseState)> {
    let n = 30;
    (0..20u64)
        .map(|i| {
            let s = derive_seed(DEFAULT_SEED, 1000 + i);
            let base = erdos_renyi(n, 0.2 + 0.03 * i as f64, derive_seed(s, 0)).unwrap();
            let w = random_init(n * n, derive_seed(s, 1));
            let mut dense = vec![0.0; n * n];
            for e in base.edges() {
                // weights in (0.5, 1.5]
                let v = 0.5 + w.as_slice()[e.i * n + e.j] / TAU;
                dense[e.i * n + e.j] = v;
                dense[e.j * n + e.i] = v;
            }
            let g = WeightedGraph::from_dense(n, dense).unwrap();
            (g, random_init(n, derive_seed(s, 2)))
        })
        .collect()
}

fn c1_gradient() -> Outcome {
    let start = Instant::now();
    let h = 1e-6;
    let mut worst = 0.0f64;
    for (g, s) in instances() {
        let grad = gradient(&g, &s).unwrap();
        for (i, gi) in grad.iter().enumerate() {
            let mut plus = s.clone().into_inner();
            let mut minus = plus.clone();
            plus[i] += h;
            minus[i] -= h;
            let fd = (energy(&g, &PhaseState::new(plus)).unwrap() - energy(&g, &PhaseState::new(minus)).unwrap())
                / (2.0 * h);
            worst = worst.max((fd - gi).abs());
        }
    }
    let t = start.elapsed();
    outcome(
        worst <= 1e-5 && t < Duration::from_secs(5),
        format!("max |fd - grad| = {worst:.3e} (<= 1e-5), {:.2?} (< 5 s)", t),
    )
}

fn c2_hessian() -> Outcome {
    let h = 1e-5;
    let mut worst = 0.0f64;
    for (g, s) in instances() {
        let hess = hessian(&g, &s).unwrap();
        let n = g.n();
        for j in 0..n {
            let mut plus = s.clone().into_inner();
            let mut minus = plus.clone();
            plus[j] += h;
            minus[j] -= h;
            let gp = gradient(&g, &PhaseState::new(plus)).unwrap();
            let gm = gradient(&g, &PhaseState::new(minus)).unwrap();
            for i in 0..n {
                let fd = (gp[i] - gm[i]) / (2.0 * h);
                worst = worst.max((fd - hess[(i, j)]).abs());
            }
        }
    }
    outcome(worst <= 1e-4, format!("max |fd - H| = {worst:.3e} (<= 1e-4)"))
}

fn c3_invariants() -> Outcome {
    let inst = instances();
    let mut translation = 0.0f64;
    let mut null = 0.0f64;
    let mut chain = 0.0f64;
    let (mut fro_lo, mut fro_hi) = (f64::INFINITY, 0.0f64);
    let mut ok = true;
    for k in 0..1000u64 {
        let (g, _) = &inst[k as usize % inst.len()];
        let n = g.n();
        let nf = n as f64;
        let s = random_init(n, derive_seed(DEFAULT_SEED, 5000 + k));
        let c = (k as f64 * 0.37).sin() * 10.0;

        let e = energy(g, &s).unwrap();
        let dt = (energy(g, &s.shifted(c)).unwrap() - e).abs();
        translation = translation.max(dt / (1.0 + e.abs()));
        ok &= dt <= 1e-10 * (1.0 + e.abs());

        let h1 = hessian(g, &s).unwrap() * DMatrix::from_element(n, 1, 1.0);
        let h1_max = h1.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        null = null.max(h1_max / nf);
        ok &= h1_max <= 1e-10 * nf;

        // ‖r‖² against ‖Qᵀ1‖² with Q built explicitly
        let r = order_parameter(&s).magnitude;
        let q = DMatrix::from_fn(n, 2, |i, j| {
            if j == 0 {
                s.as_slice()[i].cos()
            } else {
                s.as_slice()[i].sin()
            }
        });
        let qt1 = q.transpose() * DMatrix::from_element(n, 1, 1.0);
        let d = (r * r - qt1.norm_squared()).abs();
        chain = chain.max(d / (nf * nf));
        ok &= d <= 1e-9 * nf * nf;

        let gram = &q * q.transpose();
        let fro = gram.norm_squared();
        ok &= (fro - embedding(&s).gram_frobenius_sq()).abs() <= 1e-9 * nf * nf;
        fro_lo = fro_lo.min(fro / (nf * nf));
        fro_hi = fro_hi.max(fro / (nf * nf));
        ok &= fro >= nf * nf / 2.0 && fro <= nf * nf;
    }
    outcome(
        ok,
        format!(
            "translation {translation:.1e} (<= 1e-10 rel), |H1|/n {null:.1e} (<= 1e-10), |r^2 - |Q^T 1|^2|/n^2 {chain:.1e} (<= 1e-9), |QQ^T|_F^2/n^2 in [{fro_lo:.3}, {fro_hi:.3}] (within [0.5, 1])"
        ),
    )
}

fn c4_path_landscape() -> Outcome {
    let start = Instant::now();
    let n = 12;
    let pts = path_critical_points(n).unwrap();
    let t = start.elapsed();
    let max_grad = pts.iter().fold(0.0f64, |m, p| m.max(p.grad_inf_norm));
    let minima: Vec<_> = pts.iter().filter(|p| p.verdict == Verdict::LocalMinCandidate).collect();
    let pass = pts.len() == 4096
        && max_grad <= 1e-12
        && minima.len() == 2
        && minima.iter().all(|p| p.is_constant(n))
        && t < Duration::from_secs(30);
    outcome(
        pass,
        format!(
            "{} states, max grad {max_grad:.1e} (<= 1e-12), {} local-min candidates (== 2, both constant), {:.2?} (< 30 s)",
            pts.len(),
            minima.len(),
            t
        ),
    )
}

fn c5_circulant() -> Outcome {
    let mut worst = 0.0f64;
    for (n, k) in [(12, 1), (60, 5), (240, 20)] {
        let closed = sorted(ring_lattice_hessian_eigs(n, k).unwrap());
        let numeric = hessian_spectrum(&ring_lattice(n, k).unwrap(), &twisted_state(n)).unwrap();
        let d = closed
            .iter()
            .zip(&numeric)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        worst = worst.max(d);
    }
    outcome(worst <= 1e-8, format!("max |closed - numeric| = {worst:.2e} (<= 1e-8)"))
}

fn c6_spot_values() -> Outcome {
    let l1 = ring_lattice_lambda2_curve(6, 1, 1).unwrap()[0].lambda2_min;
    let l2 = ring_lattice_lambda2_curve(6, 2, 2).unwrap()[0].lambda2_min;
    let v1 = classify_critical(
        &ring_lattice(6, 1).unwrap(),
        &twisted_state(6),
        DEFAULT_GRAD_TOL,
        DEFAULT_EIG_TOL,
    )
    .unwrap();
    let v2 = classify_critical(
        &ring_lattice(6, 2).unwrap(),
        &twisted_state(6),
        DEFAULT_GRAD_TOL,
        DEFAULT_EIG_TOL,
    )
    .unwrap();
    let pass = (l1 - 0.5).abs() <= 1e-12
        && (l2 + 1.0).abs() <= 1e-12
        && v1.verdict == Verdict::LocalMinCandidate
        && v2.verdict == Verdict::Saddle;
    outcome(
        pass,
        format!(
            "k=1: {l1} ({}, numeric lambda2 {:.15}), k=2: {l2} ({}, numeric lambda2 {:.15})",
            v1.verdict.as_str(),
            v1.lambda2,
            v2.verdict.as_str(),
            v2.lambda2
        ),
    )
}

fn c7_critical_ratio() -> Outcome {
    let k = ring_lattice_critical_k(600);
    let ratio = k as f64 / 600.0;
    outcome(
        (0.33..=0.35).contains(&ratio),
        format!("critical k = {k}, k/n = {ratio:.4} (in [0.33, 0.35])"),
    )
}

fn c8_monotone_adversary() -> Outcome {
    let cfg = DescentConfig::default().with_max_iters(20_000);
    let successes = multi_restart(&path(20).unwrap(), 200, DEFAULT_SEED, &cfg).unwrap();
    let c = cycle(20).unwrap();
    let tw = twisted_state(20);
    let residual = gradient(&c, &tw).unwrap().iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let report = classify_critical(&c, &tw, DEFAULT_GRAD_TOL, DEFAULT_EIG_TOL).unwrap();
    let pass = successes == 200 && residual <= 1e-12 && report.verdict == Verdict::LocalMinCandidate;
    outcome(
        pass,
        format!(
            "path(20): {successes}/200 global (== 200); cycle(20) twisted: residual {residual:.1e} (<= 1e-12), {}",
            report.verdict.as_str()
        ),
    )
}

fn c9_theorem1() -> Outcome {
    let start = Instant::now();
    let g = ring_lattice(50, 20).unwrap();
    let cert = check_theorem1(&g);
    let successes = multi_restart(&g, 200, DEFAULT_SEED, &DescentConfig::default()).unwrap();
    let t = start.elapsed();
    outcome(
        cert.holds && successes == 200 && t < Duration::from_secs(60),
        format!(
            "mu = {:.4} (>= {:.4}): {}, {successes}/200 global (== 200), {:.2?} (< 60 s)",
            cert.witness["mu"],
            cert.witness["threshold"],
            if cert.holds { "holds" } else { "fails" },
            t
        ),
    )
}

fn c10_phase_transition() -> Outcome {
    let n = 100;
    let ln_n = (n as f64).ln();
    let cfg = DescentConfig::default();
    let cell = |p: f64| run_cell(n, p, 50, cell_seed(DEFAULT_SEED, n, p), &cfg, TrialMode::FreshGraph).unwrap();
    let hi = cell(2.0 * ln_n / n as f64);
    let lo = cell(0.5 * ln_n / n as f64);
    outcome(
        hi.fraction() >= 0.9 && lo.fraction() <= 0.6,
        format!(
            "p = 2 ln n/n: {} (>= 0.9), p = 0.5 ln n/n: {} (<= 0.6)",
            hi.fraction(),
            lo.fraction()
        ),
    )
}

fn c11_proposition() -> Outcome {
    let g = erdos_renyi(200, 0.3, DEFAULT_SEED).unwrap();
    let cfg = DescentConfig::default();
    let (mut global, mut certified) = (0, 0);
    let mut worst_sin = 0.0f64;
    for t in 0..50 {
        let init = random_init(200, trial_seed(DEFAULT_SEED, t));
        let (o, _) = descend(&g, &init, &cfg).unwrap();
        if o.is_global() {
            global += 1;
            let c = check_proposition(&g, &o.final_theta).unwrap();
            certified += usize::from(c.holds);
            worst_sin = worst_sin.max(c.witness.get("max_abs_sin").copied().unwrap_or(f64::INFINITY));
        }
    }
    outcome(
        global == 50 && certified == global,
        format!("{global}/50 global (== 50), {certified}/{global} certified, max |sin| = {worst_sin:.2e} (< 0.7071)"),
    )
}

fn c12_concentration() -> Outcome {
    let (n, p, gamma) = (300, 0.2, 2.0);
    let mut holds = 0;
    for i in 0..100 {
        let g = erdos_renyi(n, p, derive_seed(DEFAULT_SEED, 20_000 + i)).unwrap();
        holds += usize::from(deviation_bound(&g, p, gamma).unwrap().holds);
    }
    outcome(holds >= 95, format!("{holds}/100 draws within the bound (>= 95)"))
}

fn c13_rip() -> Outcome {
    let g = erdos_renyi(150, 0.5, 9).unwrap();
    let c = rip_probe(&g, 0.5, 0.2, 1000, DEFAULT_SEED).unwrap();
    outcome(
        c.holds && c.witness["violations"] == 0.0,
        format!(
            "{} violations in {} samples (== 0), max ratios: hadamard {:.4}, linear {:.4} (<= 0.2)",
            c.witness["violations"],
            c.witness["samples"],
            c.witness["max_ratio_hadamard"],
            c.witness["max_ratio_linear"]
        ),
    )
}

fn c14_determinism() -> Outcome {
    let spec = GridSpec {
        n_values: vec![10, 20, 30],
        p_rule: PRule::LogScaled(vec![0.5, 1.0, 2.0]),
        trials: 20,
        base_seed: DEFAULT_SEED,
        config: DescentConfig::default(),
        mode: TrialMode::FreshGraph,
    };
    let tables: Vec<String> = [1, 4, 16]
        .iter()
        .map(|&w| format_phase_table(&run_grid_with_threads(&spec, w).unwrap()))
        .collect();
    let same = tables.windows(2).all(|w| w[0] == w[1]);
    outcome(same, format!("3x3 grid tables identical across 1/4/16 workers: {same}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 14] = [
        ("gradient vs finite differences", c1_gradient),
        ("hessian vs finite differences", c2_hessian),
        ("structural invariants", c3_invariants),
        ("path landscape", c4_path_landscape),
        ("circulant closed form", c5_circulant),
        ("analytic spot values", c6_spot_values),
        ("critical ratio", c7_critical_ratio),
        ("monotone adversary", c8_monotone_adversary),
        ("degree condition consequence", c9_theorem1),
        ("phase transition", c10_phase_transition),
        ("two-quadrant certificate", c11_proposition),
        ("concentration", c12_concentration),
        ("RIP probe", c13_rip),
        ("determinism", c14_determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        println!(
            "{} criterion {:>2} {name}: {} [{:.2?}]",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail,
            start.elapsed()
        );
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
