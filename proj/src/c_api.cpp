#include "jumpgue/jumpgue.h"

#include <exception>
#include <new>
#include <string>

#include "jumpgue/cpii.hpp"
#include "jumpgue/cpiv.hpp"
#include "jumpgue/error.hpp"
#include "jumpgue/op_engine.hpp"
#include "jumpgue/rmt_oracles.hpp"

#ifndef JUMPGUE_VERSION
#define JUMPGUE_VERSION "0.0.0"
#endif

struct jg_recurrence {
  jumpgue::RecurrenceTable table;
};

struct jg_cpii {
  jumpgue::CPIITrajectory traj;
};

namespace {

using namespace jumpgue;

thread_local std::string g_last_error;

jg_status code_of(ErrorTag tag) {
  switch (tag) {
    case ErrorTag::invalid_argument: return JG_ERR_INVALID_ARGUMENT;
    case ErrorTag::loss_of_positivity: return JG_ERR_LOSS_OF_POSITIVITY;
    case ErrorTag::degenerate_jump: return JG_ERR_DEGENERATE_JUMP;
    case ErrorTag::pole_or_sign_change: return JG_ERR_POLE_OR_SIGN_CHANGE;
    case ErrorTag::route_disagreement: return JG_ERR_ROUTE_DISAGREEMENT;
    case ErrorTag::non_convergence: return JG_ERR_NON_CONVERGENCE;
    case ErrorTag::insufficient_conditioning: return JG_ERR_INSUFFICIENT_CONDITIONING;
    case ErrorTag::blow_up: return JG_ERR_BLOW_UP;
    case ErrorTag::io: return JG_ERR_IO;
  }
  return JG_ERR_INTERNAL;
}

template <class F>
jg_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return JG_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return code_of(e.tag());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return JG_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return JG_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return JG_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) fail(ErrorTag::invalid_argument, std::string(what) + " must not be NULL");
}

JumpWeightSpec to_spec(const jg_weight* w) {
  need(w, "weight");
  JumpWeightSpec spec{w->s1, w->s2, w->omega1, w->omega2};
  spec.validate();
  return spec;
}

QuadratureOptions to_quad(const jg_quadrature* q) {
  QuadratureOptions o;
  if (!q) return o;
  if (q->nodes_per_panel > 0) o.nodes_per_panel = q->nodes_per_panel;
  if (q->panel_width > 0.0) o.panel_width = q->panel_width;
  if (q->refine > 0.0) o.refine = q->refine;
  return o;
}

CPIISolveOptions to_cpii(const jg_cpii_options* o) {
  CPIISolveOptions out;
  if (!o) return out;
  out.x_min = o->x_min;
  out.x_max = o->x_max;
  out.tol = o->tol;
  out.dx = o->dx;
  return out;
}

jg_cpii_options from_cpii(const CPIISolveOptions& o) { return {o.x_min, o.x_max, o.tol, o.dx}; }

jg_cpiv_state from_state(const CPIVState& s) {
  return {s.n, s.x, s.s, s.a1, s.a2, s.b1, s.b2, s.y_im, s.log_y_im, s.log_gamma, s.max_imag_rel};
}

CPIVState to_state(const jg_cpiv_state& s) {
  CPIVState out;
  out.n = s.n;
  out.x = s.x;
  out.s = s.s;
  out.a1 = s.a1;
  out.a2 = s.a2;
  out.b1 = s.b1;
  out.b2 = s.b2;
  out.y_im = s.y_im;
  out.log_y_im = s.log_y_im;
  out.log_gamma = s.log_gamma;
  out.max_imag_rel = s.max_imag_rel;
  return out;
}

jg_cpii_point from_sample(const CPIITrajectory::Sample& s) {
  return {s.x, s.v1, s.v2, s.w1, s.w2, s.H, s.u1, s.du1, s.u2, s.du2};
}

jg_mc_estimate from_mc(const MCEstimate& e) { return {e.estimate, e.stderr_, e.n_samples, e.n_generated, e.seed}; }

MCOptions mc_opts(int workers) {
  MCOptions o;
  o.workers = workers;
  return o;
}

}  // namespace

extern "C" {

const char* jg_version(void) { return JUMPGUE_VERSION; }

const char* jg_status_name(jg_status status) {
  switch (status) {
    case JG_OK: return "ok";
    case JG_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case JG_ERR_LOSS_OF_POSITIVITY: return "loss_of_positivity";
    case JG_ERR_DEGENERATE_JUMP: return "degenerate_jump";
    case JG_ERR_POLE_OR_SIGN_CHANGE: return "pole_or_sign_change";
    case JG_ERR_ROUTE_DISAGREEMENT: return "route_disagreement";
    case JG_ERR_NON_CONVERGENCE: return "non_convergence";
    case JG_ERR_INSUFFICIENT_CONDITIONING: return "insufficient_conditioning";
    case JG_ERR_BLOW_UP: return "blow_up";
    case JG_ERR_IO: return "io";
    case JG_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* jg_last_error(void) { return g_last_error.c_str(); }

jg_status jg_recurrence_create(const jg_weight* weight, int n_max, const jg_quadrature* quad, jg_recurrence** out) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    auto* h = new jg_recurrence{compute_recurrence(to_spec(weight), n_max, to_quad(quad))};
    *out = h;
  });
}

void jg_recurrence_free(jg_recurrence* table) { delete table; }

int jg_recurrence_n_max(const jg_recurrence* table) { return table ? table->table.n_max : 0; }

jg_status jg_recurrence_row(const jg_recurrence* table, int k, double* alpha, double* beta2, double* log_gamma,
                            double* log_hankel) {
  return guarded([&] {
    need(table, "table");
    const RecurrenceTable& t = table->table;
    require(k >= 0 && k < t.n_max, "row index out of range");
    if (alpha) *alpha = t.alpha[k];
    if (beta2) *beta2 = t.beta2[k];
    if (log_gamma) *log_gamma = t.log_gamma[k];
    if (log_hankel) *log_hankel = t.log_hankel[k];
  });
}

jg_status jg_log_hankel(const jg_recurrence* table, int n, double* out) {
  return guarded([&] {
    need(table, "table");
    need(out, "out");
    *out = table->table.log_D(n);
  });
}

jg_status jg_log_hankel_gue(int n, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = log_hankel_gue(n);
  });
}

jg_status jg_hankel_F(const jg_recurrence* table, int n, double* cd, double* subleading) {
  return guarded([&] {
    need(table, "table");
    if (cd) *cd = hankel_F_cd(table->table, n);
    if (subleading) *subleading = hankel_F_subleading(table->table, n);
  });
}

jg_status jg_eval_monic(const jg_recurrence* table, int n, double x, double* p, double* dp, double* log_scale) {
  return guarded([&] {
    need(table, "table");
    const OpPair v = eval_monic_pair(table->table, n, x);
    if (p) *p = v.p;
    if (dp) *dp = v.dp;
    if (log_scale) *log_scale = v.log_scale;
  });
}

jg_status jg_cpiv_reconstruct(const jg_recurrence* table, int n, jg_cpiv_state* out) {
  return guarded([&] {
    need(table, "table");
    need(out, "out");
    *out = from_state(reconstruct_cpiv(table->table, n));
  });
}

double jg_hamiltonian_iv(const jg_cpiv_state* state) { return state ? hamiltonian_iv(to_state(*state)) : 0.0; }

jg_status jg_cpiv_identities(const jg_recurrence* table, const jg_cpiv_state* state, jg_identity_residuals* out) {
  return guarded([&] {
    need(table, "table");
    need(state, "state");
    need(out, "out");
    const IdentityResiduals r = identity_residuals(table->table, to_state(*state));
    *out = {r.alpha, r.beta, r.gamma0, r.f_h, r.pns1, r.pns2};
  });
}

jg_status jg_cpiv_ode_residual(const jg_weight* weight, int n, double h, jg_cpiv_ode_report* out) {
  return guarded([&] {
    need(out, "out");
    const CPIVOdeReport r = cpiv_ode_residual(to_spec(weight), n, h);
    out->h = r.h;
    out->n = r.n;
    for (int k = 0; k < 5; ++k) {
      out->residual[k] = r.residual[k];
      out->scaled[k] = r.scaled[k];
    }
    out->dlog_gamma = r.dlog_gamma;
  });
}

jg_status jg_cpiv_second_order(const jg_weight* weight, int n, double h, jg_cpiv_second_order_report* out) {
  return guarded([&] {
    need(out, "out");
    const auto r = cpiv_second_order_residual(cpiv_stencil(to_spec(weight), n, h), h);
    *out = {r.h, r.a1, r.a2, r.piv};
  });
}

double jg_edge_location(int n, double t) { return edge_location(n, t); }

jg_cpii_options jg_cpii_default_options(void) { return from_cpii(CPIISolveOptions{}); }

jg_status jg_cpii_solve(double omega1, double omega2, double s, const jg_cpii_options* opts, jg_cpii** out) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    *out = new jg_cpii{solve_cpii({omega1, omega2, s}, to_cpii(opts))};
  });
}

jg_status jg_cpii_solve_as(double omega, const jg_cpii_options* opts, jg_cpii** out) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    *out = new jg_cpii{solve_as_pii(omega, to_cpii(opts))};
  });
}

void jg_cpii_free(jg_cpii* traj) { delete traj; }

jg_cpii_options jg_cpii_effective_options(const jg_cpii* traj) {
  return traj ? from_cpii(traj->traj.options) : jg_cpii_default_options();
}

size_t jg_cpii_size(const jg_cpii* traj) { return traj ? traj->traj.size() : 0; }

jg_status jg_cpii_node(const jg_cpii* traj, size_t i, jg_cpii_point* out) {
  return guarded([&] {
    need(traj, "traj");
    need(out, "out");
    const CPIITrajectory& t = traj->traj;
    require(i < t.size(), "node index out of range");
    *out = {t.x[i], t.v1[i], t.v2[i], t.w1[i], t.w2[i], t.H[i], t.u1[i], t.du1[i], t.u2[i], t.du2[i]};
  });
}

jg_status jg_cpii_sample(const jg_cpii* traj, double t, jg_cpii_point* out) {
  return guarded([&] {
    need(traj, "traj");
    need(out, "out");
    *out = from_sample(traj->traj.sample(t));
  });
}

jg_status jg_cpii_hamiltonian_check(const jg_cpii* traj, double* fd, double* integral) {
  return guarded([&] {
    need(traj, "traj");
    const HamiltonianCheck c = hamiltonian_relation_residual(traj->traj);
    if (fd) *fd = c.fd;
    if (integral) *integral = c.integral;
  });
}

jg_status jg_cpii_second_order_residual(const jg_cpii* traj, double* out) {
  return guarded([&] {
    need(traj, "traj");
    need(out, "out");
    *out = second_order_v_residual(traj->traj);
  });
}

jg_status jg_cpii_pii_residual(const jg_cpii* traj, double* out) {
  return guarded([&] {
    need(traj, "traj");
    need(out, "out");
    *out = pii_residual(traj->traj);
  });
}

jg_status jg_tw_exponent_routes(const jg_cpii* traj, double t, double* direct, double* hamiltonian) {
  return guarded([&] {
    need(traj, "traj");
    const TWExponent e = tw_exponent_routes(traj->traj, t);
    if (direct) *direct = e.direct;
    if (hamiltonian) *hamiltonian = e.hamiltonian;
  });
}

jg_status jg_tw_exponent(const jg_cpii* traj, double t, double* out) {
  return guarded([&] {
    need(traj, "traj");
    need(out, "out");
    *out = tw_exponent(traj->traj, t);
  });
}

double jg_hamiltonian_ii(double v1, double v2, double w1, double w2, double x, double s) {
  return hamiltonian_ii(v1, v2, w1, w2, x, s);
}

jg_status jg_gap_limit(double t1, double t2, const jg_cpii_options* opts, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = gap_probability_limit(t1, t2, to_cpii(opts));
  });
}

jg_status jg_conditional_limit(double t1, double t2, double p, const jg_cpii_options* opts, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = conditional_distribution_limit(t1, t2, p, to_cpii(opts));
  });
}

jg_status jg_tracy_widom(const jg_cpii* hastings_mcleod, double t, double* out) {
  return guarded([&] {
    need(hastings_mcleod, "traj");
    need(out, "out");
    *out = tracy_widom_f2(hastings_mcleod->traj, t);
  });
}

jg_status jg_hankel_prediction(int n, double t1, double t2, double omega1, double omega2, const jg_cpii_options* opts,
                               double* log_ratio, double* log_D_gue) {
  return guarded([&] {
    const HankelPrediction p = hankel_asymptotic_prediction(n, t1, t2, omega1, omega2, to_cpii(opts));
    if (log_ratio) *log_ratio = p.log_ratio;
    if (log_D_gue) *log_D_gue = p.log_D_gue;
  });
}

jg_status jg_op_predictions(int n, double t1, double t2, double omega1, double omega2, const jg_cpii* traj,
                            jg_op_asymptotics* out) {
  return guarded([&] {
    need(traj, "traj");
    need(out, "out");
    const OpAsymptotics a = op_asymptotic_predictions(n, t1, t2, omega1, omega2, traj->traj.at(t1));
    *out = {a.alpha, a.beta, a.log_gamma, a.log_gamma_lead, a.log_abs_pn1, a.log_abs_pn2};
  });
}

jg_status jg_cpiv_scaling(int n, double t1, double t2, double omega1, double omega2, const jg_cpii* traj,
                          jg_cpiv_scaling_report* out) {
  return guarded([&] {
    need(traj, "traj");
    need(out, "out");
    const CPIVScalingReport r = cpiv_scaling_check(n, t1, t2, omega1, omega2, traj->traj.at(t1));
    *out = {r.n, r.a1, r.a2, r.b1, r.b2, r.y, from_state(r.state)};
  });
}

jg_status jg_sample_gue_spectrum(int n, uint64_t seed, double* eigenvalues) {
  return guarded([&] {
    need(eigenvalues, "eigenvalues");
    const SpectrumSample s = sample_gue_spectrum(n, seed);
    for (int i = 0; i < n; ++i) eigenvalues[i] = s.eigenvalues[i];
  });
}

jg_status jg_mc_gap(int n, double s1, double s2, long n_samples, uint64_t seed, int workers, jg_mc_estimate* out) {
  return guarded([&] {
    need(out, "out");
    *out = from_mc(mc_gap_probability(n, s1, s2, n_samples, seed, mc_opts(workers)));
  });
}

jg_status jg_mc_conditional(int n, double x, double y, double p, long n_samples, uint64_t seed, int workers,
                            jg_mc_conditional_result* out) {
  return guarded([&] {
    need(out, "out");
    const MCConditional c = mc_conditional_distribution(n, x, y, p, n_samples, seed, mc_opts(workers));
    *out = {from_mc(c.conditional), c.ratio_estimate, c.unconditional_lambda_below_x, c.unconditional_kept_below_y};
  });
}

jg_status jg_fredholm(double t1, double t2, double omega1, double omega2, int m_nodes, jg_fredholm_result* out) {
  return guarded([&] {
    need(out, "out");
    const FredholmResult r = fredholm_airy_discontinuous(t1, t2, omega1, omega2, m_nodes);
    *out = {r.value, r.coarse, r.difference, r.m_nodes};
  });
}

}  // extern "C"
