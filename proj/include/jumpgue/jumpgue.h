#ifndef JUMPGUE_H
#define JUMPGUE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(JUMPGUE_BUILDING)
#define JG_API __declspec(dllexport)
#else
#define JG_API __declspec(dllimport)
#endif
#else
#define JG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Every fallible call returns one of these; on failure a
 * description is available from jg_last_error() on the calling thread. */
typedef enum jg_status {
  JG_OK = 0,
  JG_ERR_INVALID_ARGUMENT = 1,
  JG_ERR_LOSS_OF_POSITIVITY = 2,
  JG_ERR_DEGENERATE_JUMP = 3,
  JG_ERR_POLE_OR_SIGN_CHANGE = 4,
  JG_ERR_ROUTE_DISAGREEMENT = 5,
  JG_ERR_NON_CONVERGENCE = 6,
  JG_ERR_INSUFFICIENT_CONDITIONING = 7,
  JG_ERR_BLOW_UP = 8,
  JG_ERR_IO = 9,
  JG_ERR_INTERNAL = 10
} jg_status;

JG_API const char* jg_version(void);
/* Stable snake_case name of a status, e.g. "degenerate_jump". */
JG_API const char* jg_status_name(jg_status status);
/* Message of the most recent failure on this thread ("" if none). */
JG_API const char* jg_last_error(void);

/* ---- weights and orthogonal polynomials ------------------------------- */

/* e^{-x^2} times 1 on x < s1, omega1 on (s1, s2), omega2 on x > s2.
 * s1 == s2 with omega1 == omega2 is a single jump. */
typedef struct jg_weight {
  double s1, s2;
  double omega1, omega2;
} jg_weight;

/* Quadrature controls; zero-initialised means defaults. */
typedef struct jg_quadrature {
  int nodes_per_panel;
  double panel_width;
  double refine;
} jg_quadrature;

typedef struct jg_recurrence jg_recurrence;

/* Recurrence data through degree n_max - 1 and ln D_1..ln D_{n_max}.
 * quad may be NULL. */
JG_API jg_status jg_recurrence_create(const jg_weight* weight, int n_max, const jg_quadrature* quad,
                                      jg_recurrence** out);
JG_API void jg_recurrence_free(jg_recurrence* table);
JG_API int jg_recurrence_n_max(const jg_recurrence* table);

/* Row k (0 <= k < n_max): alpha_k, beta_k^2, ln gamma_k and ln D_{k+1}.
 * Any output pointer may be NULL. */
JG_API jg_status jg_recurrence_row(const jg_recurrence* table, int k, double* alpha, double* beta2,
                                   double* log_gamma, double* log_hankel);
JG_API jg_status jg_log_hankel(const jg_recurrence* table, int n, double* out);
/* ln D_n of the pure Gaussian weight. */
JG_API jg_status jg_log_hankel_gue(int n, double* out);
/* d/ds1 + d/ds2 of ln D_n by the Christoffel-Darboux and subleading routes. */
JG_API jg_status jg_hankel_F(const jg_recurrence* table, int n, double* cd, double* subleading);
/* pi_n(x) = p * exp(log_scale), pi_n'(x) = dp * exp(log_scale). */
JG_API jg_status jg_eval_monic(const jg_recurrence* table, int n, double x, double* p, double* dp,
                               double* log_scale);

/* ---- coupled Painleve IV at finite n ---------------------------------- */

typedef struct jg_cpiv_state {
  int n;
  double x, s;
  double a1, a2, b1, b2;
  double y_im, log_y_im;
  double log_gamma;
  double max_imag_rel;
} jg_cpiv_state;

typedef struct jg_identity_residuals {
  double alpha, beta, gamma0, f_h, pns1, pns2;
} jg_identity_residuals;

/* Components ordered (y, a1, a2, b1, b2). */
typedef struct jg_cpiv_ode_report {
  double h;
  int n;
  double residual[5];
  double scaled[5];
  double dlog_gamma;
} jg_cpiv_ode_report;

typedef struct jg_cpiv_second_order_report {
  double h;
  double a1, a2, piv;
} jg_cpiv_second_order_report;

typedef struct jg_cpiv_scaling_report {
  int n;
  double a1, a2, b1, b2, y;
  jg_cpiv_state state;
} jg_cpiv_scaling_report;

/* Needs jg_recurrence_n_max(table) >= n + 1. */
JG_API jg_status jg_cpiv_reconstruct(const jg_recurrence* table, int n, jg_cpiv_state* out);
JG_API double jg_hamiltonian_iv(const jg_cpiv_state* state);
JG_API jg_status jg_cpiv_identities(const jg_recurrence* table, const jg_cpiv_state* state,
                                    jg_identity_residuals* out);
JG_API jg_status jg_cpiv_ode_residual(const jg_weight* weight, int n, double h, jg_cpiv_ode_report* out);
JG_API jg_status jg_cpiv_second_order(const jg_weight* weight, int n, double h,
                                      jg_cpiv_second_order_report* out);
/* s_k = sqrt(2n) + t_k / (sqrt(2) n^{1/6}). */
JG_API double jg_edge_location(int n, double t);

/* ---- coupled Painleve II ---------------------------------------------- */

typedef struct jg_cpii_options {
  double x_min, x_max, tol, dx;
} jg_cpii_options;

typedef struct jg_cpii_point {
  double x;
  double v1, v2, w1, w2, H;
  double u1, du1, u2, du2;
} jg_cpii_point;

typedef struct jg_cpii jg_cpii;

JG_API jg_cpii_options jg_cpii_default_options(void);
/* opts may be NULL for the defaults. */
JG_API jg_status jg_cpii_solve(double omega1, double omega2, double s, const jg_cpii_options* opts,
                               jg_cpii** out);
JG_API jg_status jg_cpii_solve_as(double omega, const jg_cpii_options* opts, jg_cpii** out);
JG_API void jg_cpii_free(jg_cpii* traj);
/* Options after any near-critical adjustment of x_min. */
JG_API jg_cpii_options jg_cpii_effective_options(const jg_cpii* traj);
JG_API size_t jg_cpii_size(const jg_cpii* traj);
/* Grid node i, ordered from x_max down to x_min. */
JG_API jg_status jg_cpii_node(const jg_cpii* traj, size_t i, jg_cpii_point* out);
JG_API jg_status jg_cpii_sample(const jg_cpii* traj, double t, jg_cpii_point* out);
JG_API jg_status jg_cpii_hamiltonian_check(const jg_cpii* traj, double* fd, double* integral);
JG_API jg_status jg_cpii_second_order_residual(const jg_cpii* traj, double* out);
JG_API jg_status jg_cpii_pii_residual(const jg_cpii* traj, double* out);
/* E(t) by the weighted-integral and Hamiltonian routes. */
JG_API jg_status jg_tw_exponent_routes(const jg_cpii* traj, double t, double* direct, double* hamiltonian);
/* Hamiltonian-route value; JG_ERR_ROUTE_DISAGREEMENT above 1e-6. */
JG_API jg_status jg_tw_exponent(const jg_cpii* traj, double t, double* out);
JG_API double jg_hamiltonian_ii(double v1, double v2, double w1, double w2, double x, double s);

JG_API jg_status jg_gap_limit(double t1, double t2, const jg_cpii_options* opts, double* out);
JG_API jg_status jg_conditional_limit(double t1, double t2, double p, const jg_cpii_options* opts, double* out);
JG_API jg_status jg_tracy_widom(const jg_cpii* hastings_mcleod, double t, double* out);
JG_API jg_status jg_hankel_prediction(int n, double t1, double t2, double omega1, double omega2,
                                      const jg_cpii_options* opts, double* log_ratio, double* log_D_gue);

typedef struct jg_op_asymptotics {
  double alpha, beta, log_gamma, log_gamma_lead, log_abs_pn1, log_abs_pn2;
} jg_op_asymptotics;

/* traj must be solved for (omega1, omega2, t2 - t1). */
JG_API jg_status jg_op_predictions(int n, double t1, double t2, double omega1, double omega2, const jg_cpii* traj,
                                   jg_op_asymptotics* out);
JG_API jg_status jg_cpiv_scaling(int n, double t1, double t2, double omega1, double omega2, const jg_cpii* traj,
                                 jg_cpiv_scaling_report* out);

/* ---- random-matrix oracles -------------------------------------------- */

typedef struct jg_mc_estimate {
  double estimate;
  double stderr_;
  long n_samples;
  long n_generated;
  uint64_t seed;
} jg_mc_estimate;

typedef struct jg_mc_conditional_result {
  jg_mc_estimate conditional;
  double ratio_estimate;
  double unconditional_lambda_below_x;
  double unconditional_kept_below_y;
} jg_mc_conditional_result;

typedef struct jg_fredholm_result {
  double value, coarse, difference;
  int m_nodes;
} jg_fredholm_result;

/* Writes n ascending eigenvalues. */
JG_API jg_status jg_sample_gue_spectrum(int n, uint64_t seed, double* eigenvalues);
/* workers = 0 uses every hardware thread; results do not depend on it. */
JG_API jg_status jg_mc_gap(int n, double s1, double s2, long n_samples, uint64_t seed, int workers,
                           jg_mc_estimate* out);
JG_API jg_status jg_mc_conditional(int n, double x, double y, double p, long n_samples, uint64_t seed, int workers,
                                   jg_mc_conditional_result* out);
JG_API jg_status jg_fredholm(double t1, double t2, double omega1, double omega2, int m_nodes,
                             jg_fredholm_result* out);

#ifdef __cplusplus
}
#endif

#endif
