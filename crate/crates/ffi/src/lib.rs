//! C ABI for `synclab`.
//!
//! Conventions:
//! * every fallible function returns [`SlStatus`]; results go through out
//!   pointers, which are written only on `SL_OK`;
//! * after a non-OK status, [`sl_last_error_message`] describes the failure
//!   (per thread, valid until the next failing call on that thread);
//! * graphs and certificates are opaque handles owned by the caller and
//!   released with [`sl_graph_free`] / [`sl_certificate_free`];
//! * phase vectors are passed as `(const double *theta, size_t n)` and must
//!   match the graph's vertex count;
//! * panics never cross the boundary; they surface as `SL_ERR_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use synclab::certify::{self, Certificate};
use synclab::descent::{self, Classification, DescentConfig, StopReason};
use synclab::energy::{self, PhaseState};
use synclab::graph::{self, WeightedGraph};
use synclab::harness::{self, TrialMode};
use synclab::spectral::{self, Verdict};
use synclab::Error;

/// Status codes.
#[repr(C)]
#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlStatus {
    SL_OK = 0,
    SL_ERR_NULL_POINTER = 1,
    SL_ERR_INVALID_ARGUMENT = 2,
    SL_ERR_SHAPE = 3,
    SL_ERR_PARSE = 4,
    SL_ERR_IO = 5,
    SL_ERR_NUMERICAL = 6,
    SL_ERR_TOO_LARGE = 7,
    SL_ERR_BUFFER_TOO_SMALL = 8,
    SL_ERR_PANIC = 9,
}

#[repr(C)]
#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlStopReason {
    SL_STOP_GRADIENT_TOL = 0,
    SL_STOP_MAX_ITERS = 1,
}

#[repr(C)]
#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlVerdict {
    SL_VERDICT_NOT_CRITICAL = 0,
    SL_VERDICT_LOCAL_MIN_CANDIDATE = 1,
    SL_VERDICT_SADDLE = 2,
}

/// Opaque graph handle.
pub struct SlGraph(WeightedGraph);

/// Opaque certificate handle.
pub struct SlCertificate(Certificate);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlGraphMetrics {
    pub min_degree: f64,
    pub degree_ratio: f64,
    pub connected: bool,
    pub laplacian_lambda2: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlDescentConfig {
    pub step: f64,
    pub max_iters: usize,
    pub grad_tol: f64,
    pub align_tol: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlDescentOutcome {
    pub final_energy: f64,
    pub final_grad_norm: f64,
    pub iterations: usize,
    pub stopped_by: SlStopReason,
    pub global: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlCriticalReport {
    pub grad_inf_norm: f64,
    pub lambda2: f64,
    pub verdict: SlVerdict,
    pub inconclusive: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SlStatus {
    match e {
        Error::InvalidSize { .. } | Error::InvalidParameter(_) => SlStatus::SL_ERR_INVALID_ARGUMENT,
        Error::TooLarge { .. } => SlStatus::SL_ERR_TOO_LARGE,
        Error::Shape { .. } => SlStatus::SL_ERR_SHAPE,
        Error::Parse { .. } => SlStatus::SL_ERR_PARSE,
        Error::Io { .. } => SlStatus::SL_ERR_IO,
        Error::Divergence { .. } | Error::EigenSolver { .. } => SlStatus::SL_ERR_NUMERICAL,
        Error::Trial { source, .. } | Error::Cell { source, .. } => status_of(source),
    }
}

/// Internal failure: status plus message.
struct Fail(SlStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(SlStatus::SL_ERR_NULL_POINTER, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SlStatus::SL_OK,
        Ok(Err(Fail(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_string());
            set_last_error(format!("panic: {msg}"));
            SlStatus::SL_ERR_PANIC
        }
    }
}

unsafe fn graph_ref<'a>(g: *const SlGraph) -> Result<&'a WeightedGraph, Fail> {
    g.as_ref().map(|g| &g.0).ok_or_else(|| null("graph"))
}

unsafe fn phases(theta: *const f64, n: usize) -> Result<PhaseState, Fail> {
    if n == 0 {
        return Ok(PhaseState::new(Vec::new()));
    }
    if theta.is_null() {
        return Err(null("theta"));
    }
    Ok(PhaseState::new(std::slice::from_raw_parts(theta, n).to_vec()))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_slice(out: *mut f64, values: &[f64]) -> Result<(), Fail> {
    if values.is_empty() {
        return Ok(());
    }
    if out.is_null() {
        return Err(null("output buffer"));
    }
    ptr::copy_nonoverlapping(values.as_ptr(), out, values.len());
    Ok(())
}

unsafe fn c_path<'a>(path: *const c_char) -> Result<&'a str, Fail> {
    if path.is_null() {
        return Err(null("path"));
    }
    CStr::from_ptr(path)
        .to_str()
        .map_err(|_| Fail(SlStatus::SL_ERR_INVALID_ARGUMENT, "path is not valid UTF-8".to_string()))
}

fn config_of(c: &SlDescentConfig) -> DescentConfig {
    DescentConfig {
        step: c.step,
        max_iters: c.max_iters,
        grad_tol: c.grad_tol,
        align_tol: c.align_tol,
        trace_every: 0,
    }
}

unsafe fn config_ref(cfg: *const SlDescentConfig) -> Result<DescentConfig, Fail> {
    cfg.as_ref().map(config_of).ok_or_else(|| null("config"))
}

unsafe fn emit_graph(out: *mut *mut SlGraph, g: synclab::Result<WeightedGraph>) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output handle"));
    }
    let g = g?;
    out.write(Box::into_raw(Box::new(SlGraph(g))));
    Ok(())
}

unsafe fn emit_certificate(out: *mut *mut SlCertificate, c: Certificate) -> Result<(), Fail> {
    write_out(out, Box::into_raw(Box::new(SlCertificate(c))))
}

/// Message for the last failing call on this thread, or NULL.
#[no_mangle]
pub extern "C" fn sl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub extern "C" fn sl_clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

/// Library version, static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

// ---- graphs ---------------------------------------------------------------

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sl_graph_path(n: usize, out: *mut *mut SlGraph) -> SlStatus {
    guard(|| emit_graph(out, graph::path(n)))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sl_graph_cycle(n: usize, out: *mut *mut SlGraph) -> SlStatus {
    guard(|| emit_graph(out, graph::cycle(n)))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sl_graph_complete(n: usize, out: *mut *mut SlGraph) -> SlStatus {
    guard(|| emit_graph(out, graph::complete(n)))
}

/// Ring lattice: every vertex joined to its `k` nearest neighbours per side.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sl_graph_ring_lattice(n: usize, k: usize, out: *mut *mut SlGraph) -> SlStatus {
    guard(|| emit_graph(out, graph::ring_lattice(n, k)))
}

/// Bipartite double cover of the ring lattice, `2n` vertices.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sl_graph_bipartite_ring_lattice(n: usize, k: usize, out: *mut *mut SlGraph) -> SlStatus {
    guard(|| emit_graph(out, graph::bipartite_ring_lattice(n, k)))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sl_graph_erdos_renyi(n: usize, p: f64, seed: u64, out: *mut *mut SlGraph) -> SlStatus {
    guard(|| emit_graph(out, graph::erdos_renyi(n, p, seed)))
}

/// Builds a graph from a row-major `n × n` symmetric weight matrix.
///
/// # Safety
/// `weights` must point to `n * n` doubles; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sl_graph_from_dense(n: usize, weights: *const f64, out: *mut *mut SlGraph) -> SlStatus {
    guard(|| {
        let len = n
            .checked_mul(n)
            .ok_or_else(|| Fail(SlStatus::SL_ERR_TOO_LARGE, "n * n overflows".to_string()))?;
        let w = if len == 0 {
            Vec::new()
        } else if weights.is_null() {
            return Err(null("weights"));
        } else {
            std::slice::from_raw_parts(weights, len).to_vec()
        };
        emit_graph(out, WeightedGraph::from_dense(n, w))
    })
}

/// # Safety
/// `path` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sl_graph_load(path: *const c_char, out: *mut *mut SlGraph) -> SlStatus {
    guard(|| {
        let path = c_path(path)?;
        emit_graph(out, graph::load_edge_list(path))
    })
}

/// # Safety
/// `g` must be a live handle; `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn sl_graph_save(g: *const SlGraph, path: *const c_char) -> SlStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let path = c_path(path)?;
        Ok(graph::save_edge_list(g, path)?)
    })
}

/// Releases a graph. NULL is ignored.
///
/// # Safety
/// `g` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sl_graph_free(g: *mut SlGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count; 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sl_graph_n(g: *const SlGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n())
}

/// Number of undirected edges; 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sl_graph_edge_count(g: *const SlGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// # Safety
/// `g` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sl_graph_metrics(g: *const SlGraph, out: *mut SlGraphMetrics) -> SlStatus {
    guard(|| {
        let m = graph::metrics(graph_ref(g)?)?;
        write_out(
            out,
            SlGraphMetrics {
                min_degree: m.min_degree,
                degree_ratio: m.degree_ratio,
                connected: m.connected,
                laplacian_lambda2: m.laplacian_lambda2,
            },
        )
    })
}

// ---- energy ---------------------------------------------------------------

/// # Safety
/// `theta` must hold `n` doubles; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sl_energy(g: *const SlGraph, theta: *const f64, n: usize, out: *mut f64) -> SlStatus {
    guard(|| write_out(out, energy::energy(graph_ref(g)?, &phases(theta, n)?)?))
}

/// # Safety
/// `theta` and `grad_out` must hold `n` doubles.
#[no_mangle]
pub unsafe extern "C" fn sl_gradient(g: *const SlGraph, theta: *const f64, n: usize, grad_out: *mut f64) -> SlStatus {
    guard(|| write_slice(grad_out, &energy::gradient(graph_ref(g)?, &phases(theta, n)?)?))
}

/// Row-major `n × n` Hessian.
///
/// # Safety
/// `theta` must hold `n` doubles, `hess_out` `n * n`.
#[no_mangle]
pub unsafe extern "C" fn sl_hessian(g: *const SlGraph, theta: *const f64, n: usize, hess_out: *mut f64) -> SlStatus {
    guard(|| {
        let h = energy::hessian(graph_ref(g)?, &phases(theta, n)?)?;
        // nalgebra is column-major; H is symmetric so the layouts coincide
        write_slice(hess_out, h.as_slice())
    })
}

/// `|Σ e^{iθ}|` and its angle; the angle is NaN when the magnitude is
/// below `1e-9 · n`.
///
/// # Safety
/// `theta` must hold `n` doubles; outputs valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sl_order_parameter(
    theta: *const f64,
    n: usize,
    magnitude: *mut f64,
    angle: *mut f64,
) -> SlStatus {
    guard(|| {
        let r = energy::order_parameter(&phases(theta, n)?);
        if magnitude.is_null() || angle.is_null() {
            return Err(null("output pointer"));
        }
        write_out(magnitude, r.magnitude)?;
        write_out(angle, r.angle.unwrap_or(f64::NAN))
    })
}

/// # Safety
/// `out` must hold `n` doubles.
#[no_mangle]
pub unsafe extern "C" fn sl_random_init(n: usize, seed: u64, out: *mut f64) -> SlStatus {
    guard(|| write_slice(out, descent::random_init(n, seed).as_slice()))
}

/// `θₗ = 2πl/n`.
///
/// # Safety
/// `out` must hold `n` doubles.
#[no_mangle]
pub unsafe extern "C" fn sl_twisted_state(n: usize, out: *mut f64) -> SlStatus {
    guard(|| write_slice(out, spectral::twisted_state(n).as_slice()))
}

// ---- descent --------------------------------------------------------------

/// step 0.005, 1000 iterations, gradient tolerance 1e-8, alignment tolerance 1e-3.
#[no_mangle]
pub extern "C" fn sl_descent_config_default() -> SlDescentConfig {
    let d = DescentConfig::default();
    SlDescentConfig {
        step: d.step,
        max_iters: d.max_iters,
        grad_tol: d.grad_tol,
        align_tol: d.align_tol,
    }
}

/// Runs gradient descent from `init`. `final_theta` may be NULL.
///
/// # Safety
/// `init` must hold `n` doubles, `final_theta` (if non-NULL) too.
#[no_mangle]
pub unsafe extern "C" fn sl_descend(
    g: *const SlGraph,
    init: *const f64,
    n: usize,
    cfg: *const SlDescentConfig,
    final_theta: *mut f64,
    outcome: *mut SlDescentOutcome,
) -> SlStatus {
    guard(|| {
        if outcome.is_null() {
            return Err(null("outcome"));
        }
        let (o, _) = descent::descend(graph_ref(g)?, &phases(init, n)?, &config_ref(cfg)?)?;
        if !final_theta.is_null() {
            write_slice(final_theta, o.final_theta.as_slice())?;
        }
        write_out(
            outcome,
            SlDescentOutcome {
                final_energy: o.final_energy,
                final_grad_norm: o.final_grad_norm,
                iterations: o.iterations,
                stopped_by: match o.stopped_by {
                    StopReason::GradientTol => SlStopReason::SL_STOP_GRADIENT_TOL,
                    StopReason::MaxIters => SlStopReason::SL_STOP_MAX_ITERS,
                },
                global: o.classification == Classification::Global,
            },
        )
    })
}

/// Number of global outcomes over `trials` random restarts.
///
/// # Safety
/// `g` and `cfg` must be live; `successes` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sl_multi_restart(
    g: *const SlGraph,
    trials: usize,
    base_seed: u64,
    cfg: *const SlDescentConfig,
    successes: *mut usize,
) -> SlStatus {
    guard(|| {
        write_out(
            successes,
            descent::multi_restart(graph_ref(g)?, trials, base_seed, &config_ref(cfg)?)?,
        )
    })
}

// ---- spectral -------------------------------------------------------------

/// Ascending Hessian eigenvalues.
///
/// # Safety
/// `theta` and `eigs_out` must hold `n` doubles.
#[no_mangle]
pub unsafe extern "C" fn sl_hessian_spectrum(
    g: *const SlGraph,
    theta: *const f64,
    n: usize,
    eigs_out: *mut f64,
) -> SlStatus {
    guard(|| {
        write_slice(
            eigs_out,
            &spectral::hessian_spectrum(graph_ref(g)?, &phases(theta, n)?)?,
        )
    })
}

/// # Safety
/// `theta` must hold `n` doubles; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sl_classify_critical(
    g: *const SlGraph,
    theta: *const f64,
    n: usize,
    grad_tol: f64,
    eig_tol: f64,
    out: *mut SlCriticalReport,
) -> SlStatus {
    guard(|| {
        let r = spectral::classify_critical(graph_ref(g)?, &phases(theta, n)?, grad_tol, eig_tol)?;
        write_out(
            out,
            SlCriticalReport {
                grad_inf_norm: r.grad_inf_norm,
                lambda2: r.lambda2,
                verdict: match r.verdict {
                    Verdict::NotCritical => SlVerdict::SL_VERDICT_NOT_CRITICAL,
                    Verdict::LocalMinCandidate => SlVerdict::SL_VERDICT_LOCAL_MIN_CANDIDATE,
                    Verdict::Saddle => SlVerdict::SL_VERDICT_SADDLE,
                },
                inconclusive: r.is_inconclusive(),
            },
        )
    })
}

/// Closed-form Hessian eigenvalues of the ring lattice at the twisted
/// state, indexed by Fourier mode (not sorted).
///
/// # Safety
/// `out` must hold `n` doubles.
#[no_mangle]
pub unsafe extern "C" fn sl_ring_lattice_hessian_eigs(n: usize, k: usize, out: *mut f64) -> SlStatus {
    guard(|| write_slice(out, &spectral::ring_lattice_hessian_eigs(n, k)?))
}

/// Largest `k` whose twisted state has positive `λ₂`; 0 if none.
#[no_mangle]
pub extern "C" fn sl_ring_lattice_critical_k(n: usize) -> usize {
    catch_unwind(|| spectral::ring_lattice_critical_k(n)).unwrap_or(0)
}

/// Closed-form Hessian eigenvalues of the bipartite ring lattice at the
/// doubled twisted state: minus branch then plus branch.
///
/// # Safety
/// `out` must hold `2n` doubles.
#[no_mangle]
pub unsafe extern "C" fn sl_bipartite_twisted_eigs(n: usize, k: usize, out: *mut f64) -> SlStatus {
    guard(|| write_slice(out, &spectral::bipartite_twisted_eigs(n, k)?))
}

// ---- certificates ---------------------------------------------------------

/// `(3 − √2)/2`.
#[no_mangle]
pub extern "C" fn sl_theorem1_threshold() -> f64 {
    certify::theorem1_threshold()
}

/// # Safety
/// `g` must be live; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sl_check_theorem1(g: *const SlGraph, out: *mut *mut SlCertificate) -> SlStatus {
    guard(|| emit_certificate(out, certify::check_theorem1(graph_ref(g)?)))
}

/// # Safety
/// `theta` must hold `n` doubles; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sl_check_proposition(
    g: *const SlGraph,
    theta: *const f64,
    n: usize,
    out: *mut *mut SlCertificate,
) -> SlStatus {
    guard(|| emit_certificate(out, certify::check_proposition(graph_ref(g)?, &phases(theta, n)?)?))
}

/// # Safety
/// `g` must be live; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sl_deviation_bound(
    g: *const SlGraph,
    p: f64,
    gamma: f64,
    out: *mut *mut SlCertificate,
) -> SlStatus {
    guard(|| emit_certificate(out, certify::deviation_bound(graph_ref(g)?, p, gamma)?))
}

/// Sampling probe: can find violations, never proves the bound.
///
/// # Safety
/// `g` must be live; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sl_rip_probe(
    g: *const SlGraph,
    p: f64,
    delta: f64,
    samples: usize,
    seed: u64,
    out: *mut *mut SlCertificate,
) -> SlStatus {
    guard(|| emit_certificate(out, certify::rip_probe(graph_ref(g)?, p, delta, samples, seed)?))
}

/// # Safety
/// `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sl_er_regime(n: usize, gamma: f64, out: *mut *mut SlCertificate) -> SlStatus {
    guard(|| emit_certificate(out, certify::er_regime(n, gamma)?.certificate()))
}

/// Whether the certificate holds; false for NULL.
///
/// # Safety
/// `c` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sl_certificate_holds(c: *const SlCertificate) -> bool {
    c.as_ref().is_some_and(|c| c.0.holds)
}

/// Looks up a witness value by key.
///
/// # Safety
/// `c` must be live, `key` NUL-terminated, `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sl_certificate_witness(
    c: *const SlCertificate,
    key: *const c_char,
    out: *mut f64,
) -> SlStatus {
    guard(|| {
        let c = c.as_ref().ok_or_else(|| null("certificate"))?;
        let key = c_path(key)?;
        let v = c.0.witness.get(key).copied().ok_or_else(|| {
            Fail(
                SlStatus::SL_ERR_INVALID_ARGUMENT,
                format!("certificate `{}` has no witness `{key}`", c.0.name),
            )
        })?;
        write_out(out, v)
    })
}

/// Copies the text form (`name: PASS|FAIL` then `key=value` lines) into
/// `buf`. `needed` receives the size including the terminating NUL; with a
/// too-small `buf` nothing is copied and `SL_ERR_BUFFER_TOO_SMALL` returned.
/// `buf` may be NULL when `len` is 0.
///
/// # Safety
/// `buf` must be valid for `len` bytes; `needed` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sl_certificate_text(
    c: *const SlCertificate,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> SlStatus {
    guard(|| {
        let c = c.as_ref().ok_or_else(|| null("certificate"))?;
        let text = c.0.to_text();
        let size = text.len() + 1;
        write_out(needed, size)?;
        if len < size {
            return Err(Fail(
                SlStatus::SL_ERR_BUFFER_TOO_SMALL,
                format!("buffer of {len} bytes, need {size}"),
            ));
        }
        if buf.is_null() {
            return Err(null("buffer"));
        }
        ptr::copy_nonoverlapping(text.as_ptr().cast::<c_char>(), buf, text.len());
        buf.add(text.len()).write(0);
        Ok(())
    })
}

/// Releases a certificate. NULL is ignored.
///
/// # Safety
/// `c` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sl_certificate_free(c: *mut SlCertificate) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

// ---- harness --------------------------------------------------------------

/// Seed of the phase-grid cell at `(n, p)`.
#[no_mangle]
pub extern "C" fn sl_cell_seed(base_seed: u64, n: usize, p: f64) -> u64 {
    harness::cell_seed(base_seed, n, p)
}

/// Runs one phase-grid cell and reports the number of global outcomes.
///
/// # Safety
/// `cfg` must be live; `successes` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sl_run_cell(
    n: usize,
    p: f64,
    trials: usize,
    cell_seed: u64,
    cfg: *const SlDescentConfig,
    fixed_graph: bool,
    successes: *mut usize,
) -> SlStatus {
    guard(|| {
        let mode = if fixed_graph {
            TrialMode::FixedGraph
        } else {
            TrialMode::FreshGraph
        };
        let cell = harness::run_cell(n, p, trials, cell_seed, &config_ref(cfg)?, mode)?;
        write_out(successes, cell.successes)
    })
}
