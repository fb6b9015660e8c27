#ifndef SYNCLAB_H
#define SYNCLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Status codes.
typedef enum SlStatus {
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
} SlStatus;

typedef enum SlStopReason {
  SL_STOP_GRADIENT_TOL = 0,
  SL_STOP_MAX_ITERS = 1,
} SlStopReason;

typedef enum SlVerdict {
  SL_VERDICT_NOT_CRITICAL = 0,
  SL_VERDICT_LOCAL_MIN_CANDIDATE = 1,
  SL_VERDICT_SADDLE = 2,
} SlVerdict;

// Opaque certificate handle.
typedef struct SlCertificate SlCertificate;

// Opaque graph handle.
typedef struct SlGraph SlGraph;

typedef struct SlGraphMetrics {
  double min_degree;
  double degree_ratio;
  bool connected;
  double laplacian_lambda2;
} SlGraphMetrics;

typedef struct SlDescentConfig {
  double step;
  size_t max_iters;
  double grad_tol;
  double align_tol;
} SlDescentConfig;

typedef struct SlDescentOutcome {
  double final_energy;
  double final_grad_norm;
  size_t iterations;
  enum SlStopReason stopped_by;
  bool global;
} SlDescentOutcome;

typedef struct SlCriticalReport {
  double grad_inf_norm;
  double lambda2;
  enum SlVerdict verdict;
  bool inconclusive;
} SlCriticalReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failing call on this thread, or NULL.
const char *sl_last_error_message(void);

void sl_clear_last_error(void);

// Library version, static NUL-terminated string.
const char *sl_version(void);

// # Safety
// `out` must be valid for writes.
enum SlStatus sl_graph_path(size_t n, struct SlGraph **out);

// # Safety
// `out` must be valid for writes.
enum SlStatus sl_graph_cycle(size_t n, struct SlGraph **out);

// # Safety
// `out` must be valid for writes.
enum SlStatus sl_graph_complete(size_t n, struct SlGraph **out);

// Ring lattice: every vertex joined to its `k` nearest neighbours per side.
//
// # Safety
// `out` must be valid for writes.
enum SlStatus sl_graph_ring_lattice(size_t n, size_t k, struct SlGraph **out);

// Bipartite double cover of the ring lattice, `2n` vertices.
//
// # Safety
// `out` must be valid for writes.
enum SlStatus sl_graph_bipartite_ring_lattice(size_t n, size_t k, struct SlGraph **out);

// # Safety
// `out` must be valid for writes.
enum SlStatus sl_graph_erdos_renyi(size_t n, double p, uint64_t seed, struct SlGraph **out);

// Builds a graph from a row-major `n × n` symmetric weight matrix.
//
// # Safety
// `weights` must point to `n * n` doubles; `out` must be valid for writes.
enum SlStatus sl_graph_from_dense(size_t n, const double *weights, struct SlGraph **out);

// # Safety
// `path` must be a NUL-terminated string; `out` must be valid for writes.
enum SlStatus sl_graph_load(const char *path, struct SlGraph **out);

// # Safety
// `g` must be a live handle; `path` a NUL-terminated string.
enum SlStatus sl_graph_save(const struct SlGraph *g, const char *path);

// Releases a graph. NULL is ignored.
//
// # Safety
// `g` must be NULL or a handle not yet freed.
void sl_graph_free(struct SlGraph *g);

// Vertex count; 0 for NULL.
//
// # Safety
// `g` must be NULL or a live handle.
size_t sl_graph_n(const struct SlGraph *g);

// Number of undirected edges; 0 for NULL.
//
// # Safety
// `g` must be NULL or a live handle.
size_t sl_graph_edge_count(const struct SlGraph *g);

// # Safety
// `g` must be a live handle; `out` valid for writes.
enum SlStatus sl_graph_metrics(const struct SlGraph *g, struct SlGraphMetrics *out);

// # Safety
// `theta` must hold `n` doubles; `out` valid for writes.
enum SlStatus sl_energy(const struct SlGraph *g, const double *theta, size_t n, double *out);

// # Safety
// `theta` and `grad_out` must hold `n` doubles.
enum SlStatus sl_gradient(const struct SlGraph *g, const double *theta, size_t n, double *grad_out);

// Row-major `n × n` Hessian.
//
// # Safety
// `theta` must hold `n` doubles, `hess_out` `n * n`.
enum SlStatus sl_hessian(const struct SlGraph *g, const double *theta, size_t n, double *hess_out);

// `|Σ e^{iθ}|` and its angle; the angle is NaN when the magnitude is
// below `1e-9 · n`.
//
// # Safety
// `theta` must hold `n` doubles; outputs valid for writes.
enum SlStatus sl_order_parameter(const double *theta, size_t n, double *magnitude, double *angle);

// # Safety
// `out` must hold `n` doubles.
enum SlStatus sl_random_init(size_t n, uint64_t seed, double *out);

// `θₗ = 2πl/n`.
//
// # Safety
// `out` must hold `n` doubles.
enum SlStatus sl_twisted_state(size_t n, double *out);

// step 0.005, 1000 iterations, gradient tolerance 1e-8, alignment tolerance 1e-3.
struct SlDescentConfig sl_descent_config_default(void);

// Runs gradient descent from `init`. `final_theta` may be NULL.
//
// # Safety
// `init` must hold `n` doubles, `final_theta` (if non-NULL) too.
enum SlStatus sl_descend(const struct SlGraph *g,
                         const double *init,
                         size_t n,
                         const struct SlDescentConfig *cfg,
                         double *final_theta,
                         struct SlDescentOutcome *outcome);

// Number of global outcomes over `trials` random restarts.
//
// # Safety
// `g` and `cfg` must be live; `successes` valid for writes.
enum SlStatus sl_multi_restart(const struct SlGraph *g,
                               size_t trials,
                               uint64_t base_seed,
                               const struct SlDescentConfig *cfg,
                               size_t *successes);

// Ascending Hessian eigenvalues.
//
// # Safety
// `theta` and `eigs_out` must hold `n` doubles.
enum SlStatus sl_hessian_spectrum(const struct SlGraph *g,
                                  const double *theta,
                                  size_t n,
                                  double *eigs_out);

// # Safety
// `theta` must hold `n` doubles; `out` valid for writes.
enum SlStatus sl_classify_critical(const struct SlGraph *g,
                                   const double *theta,
                                   size_t n,
                                   double grad_tol,
                                   double eig_tol,
                                   struct SlCriticalReport *out);

// Closed-form Hessian eigenvalues of the ring lattice at the twisted
// state, indexed by Fourier mode (not sorted).
//
// # Safety
// `out` must hold `n` doubles.
enum SlStatus sl_ring_lattice_hessian_eigs(size_t n, size_t k, double *out);

// Largest `k` whose twisted state has positive `λ₂`; 0 if none.
size_t sl_ring_lattice_critical_k(size_t n);

// Closed-form Hessian eigenvalues of the bipartite ring lattice at the
// doubled twisted state: minus branch then plus branch.
//
// # Safety
// `out` must hold `2n` doubles.
enum SlStatus sl_bipartite_twisted_eigs(size_t n, size_t k, double *out);

// `(3 − √2)/2`.
double sl_theorem1_threshold(void);

// # Safety
// `g` must be live; `out` valid for writes.
enum SlStatus sl_check_theorem1(const struct SlGraph *g, struct SlCertificate **out);

// # Safety
// `theta` must hold `n` doubles; `out` valid for writes.
enum SlStatus sl_check_proposition(const struct SlGraph *g,
                                   const double *theta,
                                   size_t n,
                                   struct SlCertificate **out);

// # Safety
// `g` must be live; `out` valid for writes.
enum SlStatus sl_deviation_bound(const struct SlGraph *g,
                                 double p,
                                 double gamma,
                                 struct SlCertificate **out);

// Sampling probe: can find violations, never proves the bound.
//
// # Safety
// `g` must be live; `out` valid for writes.
enum SlStatus sl_rip_probe(const struct SlGraph *g,
                           double p,
                           double delta,
                           size_t samples,
                           uint64_t seed,
                           struct SlCertificate **out);

// # Safety
// `out` valid for writes.
enum SlStatus sl_er_regime(size_t n, double gamma, struct SlCertificate **out);

// Whether the certificate holds; false for NULL.
//
// # Safety
// `c` must be NULL or a live handle.
bool sl_certificate_holds(const struct SlCertificate *c);

// Looks up a witness value by key.
//
// # Safety
// `c` must be live, `key` NUL-terminated, `out` valid for writes.
enum SlStatus sl_certificate_witness(const struct SlCertificate *c, const char *key, double *out);

// Copies the text form (`name: PASS|FAIL` then `key=value` lines) into
// `buf`. `needed` receives the size including the terminating NUL; with a
// too-small `buf` nothing is copied and `SL_ERR_BUFFER_TOO_SMALL` returned.
// `buf` may be NULL when `len` is 0.
//
// # Safety
// `buf` must be valid for `len` bytes; `needed` valid for writes.
enum SlStatus sl_certificate_text(const struct SlCertificate *c,
                                  char *buf,
                                  size_t len,
                                  size_t *needed);

// Releases a certificate. NULL is ignored.
//
// # Safety
// `c` must be NULL or a handle not yet freed.
void sl_certificate_free(struct SlCertificate *c);

// Seed of the phase-grid cell at `(n, p)`.
uint64_t sl_cell_seed(uint64_t base_seed, size_t n, double p);

// Runs one phase-grid cell and reports the number of global outcomes.
//
// # Safety
// `cfg` must be live; `successes` valid for writes.
enum SlStatus sl_run_cell(size_t n,
                          double p,
                          size_t trials,
                          uint64_t cell_seed,
                          const struct SlDescentConfig *cfg,
                          bool fixed_graph,
                          size_t *successes);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SYNCLAB_H */
