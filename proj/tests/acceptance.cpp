// Acceptance run: one PASS/FAIL line per criterion with its runtime.
// Exit status is nonzero when any criterion fails.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "jumpgue/cpii.hpp"
#include "jumpgue/cpiv.hpp"
#include "jumpgue/error.hpp"
#include "jumpgue/op_engine.hpp"
#include "jumpgue/rmt_oracles.hpp"

using namespace jumpgue;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "[x] ") + what;
  }
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

JumpWeightSpec random_spec(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> loc(-1.5, 2.5), om(0.0, 2.0);
  for (;;) {
    double s1 = loc(rng), s2 = loc(rng);
    if (s1 > s2) std::swap(s1, s2);
    const double w1 = om(rng), w2 = om(rng);
    if (s2 - s1 < 0.05 || std::fabs(w1 - 1.0) < 0.05 || std::fabs(w1 - w2) < 0.05) continue;
    return JumpWeightSpec::two_jump(s1, s2, w1, w2);
  }
}

double max_of(const std::array<double, 5>& a) { return *std::max_element(a.begin(), a.end()); }

Outcome hermite_reduction() {
  Outcome out;
  const auto table = compute_recurrence(JumpWeightSpec::single_jump(0.0, 1.0), 101);
  double ea = 0.0, eb = 0.0, ed = 0.0;
  for (int n = 0; n <= 100; ++n) {
    ea = std::max(ea, std::fabs(table.alpha[n]));
    if (n > 0) eb = std::max(eb, std::fabs(table.beta2[n] - 0.5 * n));
    if (n > 0) ed = std::max(ed, std::fabs(table.log_D(n) - log_hankel_gue(n)));
  }
  out.require(ea < 1e-12, fmt("max|alpha| %.2e", ea));
  out.require(eb < 1e-10, fmt("max|beta^2 - n/2| %.2e", eb));
  out.require(ed < 1e-8, fmt("max|lnD - lnD_gue| %.2e", ed));
  return out;
}

Outcome identity_suite() {
  Outcome out;
  std::mt19937_64 rng(20240611);
  double worst_id = 0.0, worst_ode = 0.0, worst_gamma = 0.0;
  double ratio_lo = 1e300, ratio_hi = 0.0;
  std::array<double, 5> worst_comp{};
  int ode_fail = 0, ratio_fail = 0, total = 0;
  std::string first_bad;
  for (int trial = 0; trial < 20; ++trial) {
    const auto spec = random_spec(rng);
    for (int n : {3, 6, 12, 25}) {
      ++total;
      const auto table = compute_recurrence(spec, n + 1);
      const auto st = reconstruct_cpiv(table, n);
      const auto r = identity_residuals(table, st);
      worst_id = std::max({worst_id, r.alpha, r.beta, r.gamma0, r.f_h});

      const auto fine = cpiv_ode_residual(spec, n, 1e-3);
      const auto coarse = cpiv_ode_residual(spec, n, 2e-3);
      const double rf = max_of(fine.scaled), rc = max_of(coarse.scaled);
      worst_ode = std::max(worst_ode, rf);
      for (int i = 0; i < 5; ++i) worst_comp[i] = std::max(worst_comp[i], fine.scaled[i]);
      worst_gamma = std::max(worst_gamma, fine.dlog_gamma);
      const double ratio = rc / rf;
      ratio_lo = std::min(ratio_lo, ratio);
      ratio_hi = std::max(ratio_hi, ratio);
      const bool ok = rf < 1e-4 && fine.dlog_gamma < 1e-4;
      if (!ok) ++ode_fail;
      if (!(ratio >= 3.4 && ratio <= 4.6)) ++ratio_fail;
      if ((!ok || !(ratio >= 3.4 && ratio <= 4.6)) && first_bad.empty())
        first_bad = fmt("s=(%.3f,%.3f) w=(%.3f,%.3f) n=%d res %.2e ratio %.2f", spec.s1, spec.s2, spec.omega1,
                        spec.omega2, n, rf, ratio);
    }
  }
  out.require(worst_id < 1e-7, fmt("identities max %.2e", worst_id));
  out.require(ode_fail == 0, fmt("ODE residual at h=1e-3 max %.2e (%d/%d above 1e-4)", std::max(worst_ode, worst_gamma),
                                  ode_fail, total));
  out.require(ratio_fail == 0, fmt("h-halving ratio in [%.2f, %.2f] (%d/%d outside [3.4, 4.6])", ratio_lo, ratio_hi,
                                   ratio_fail, total));
  out.detail += fmt("; per component (y a1 a2 b1 b2) %.1e %.1e %.1e %.1e %.1e", worst_comp[0], worst_comp[1],
                    worst_comp[2], worst_comp[3], worst_comp[4]);
  if (!first_bad.empty()) out.detail += "; first offender " + first_bad;
  return out;
}

Outcome cpii_health() {
  Outcome out;
  const double ws[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  double worst_h = 0.0, worst_tw = 0.0;
  int sign_violations = 0, traj = 0;
  bool h_ok = true;
  for (double w1 : ws)
    for (double w2 : ws) {
      if (w1 == w2 || w1 == 1.0) continue;
      for (double s : {0.5, 1.0, 2.0}) {
        const CPIIParams p{w1, w2, s};
        const auto tr = solve_cpii(p);
        ++traj;
        const auto h = hamiltonian_relation_residual(tr);
        const double hm = std::max(h.fd, h.integral);
        worst_h = std::max(worst_h, hm / tr.options.tol);
        if (hm > 10.0 * tr.options.tol) h_ok = false;
        for (std::size_t i = 0; i < tr.size(); ++i) {
          if (tr.v1[i] != 0.0 && (tr.v1[i] > 0.0) != (p.c1() > 0.0)) ++sign_violations;
          if (tr.v2[i] != 0.0 && (tr.v2[i] > 0.0) != (p.c2() > 0.0)) ++sign_violations;
        }
        for (double t = std::ceil(tr.options.x_min); t <= 4.0; t += 1.0)
          worst_tw = std::max(worst_tw, tw_exponent_routes(tr, t).difference);
      }
    }
  out.require(h_ok, fmt("Hamiltonian residual max %.2f tol over %d trajectories", worst_h, traj));
  out.require(worst_tw <= 1e-8, fmt("exponent routes max %.2e", worst_tw));
  out.require(sign_violations == 0, fmt("sign violations %d", sign_violations));
  return out;
}

Outcome tracy_widom() {
  Outcome out;
  const auto hm = solve_as_pii(0.0);
  double worst = 0.0;
  for (int i = 0; i < 36; ++i) {
    const double t = -5.0 + 7.0 * i / 35.0;
    const double fd = fredholm_airy_discontinuous(t, t + 1.0, 0.0, 0.0).value;
    worst = std::max(worst, std::fabs(tracy_widom_f2(hm, t) - fd));
  }
  out.require(worst <= 1e-4, fmt("max|F2 - det| %.2e over 36 points", worst));
  return out;
}

Outcome gap_law() {
  Outcome out;
  const int n = 400;
  const double slack = 0.5 * std::pow(n, -1.0 / 6.0);
  const double pts[][2] = {{-2.0, 0.0}, {-1.0, 1.0}, {-3.0, -1.0}};
  double worst_fd = 0.0;
  for (const auto& t : pts) {
    const double lim = gap_probability_limit(t[0], t[1]);
    const double fd = fredholm_airy_discontinuous(t[0], t[1], 0.0, 1.0).value;
    worst_fd = std::max(worst_fd, std::fabs(lim - fd));
    const auto mc = mc_gap_probability(n, edge_location(n, t[0]), edge_location(n, t[1]), 200000, 7);
    const double dev = std::fabs(lim - mc.estimate), bound = 3.0 * mc.stderr_ + slack;
    out.require(dev <= bound, fmt("(%g,%g) MC %.4f limit %.4f dev %.2e bound %.2e", t[0], t[1], mc.estimate, lim, dev,
                                  bound));
  }
  out.require(worst_fd <= 1e-4, fmt("max|limit - det| %.2e", worst_fd));
  return out;
}

Outcome hankel_convergence() {
  Outcome out;
  const double t1 = -0.5, t2 = 0.5;
  const double ws[][2] = {{0.4, 0.7}, {0.0, 1.0}};
  for (const auto& w : ws) {
    double dev[2];
    const int ns[] = {64, 256};
    for (int k = 0; k < 2; ++k) {
      const int n = ns[k];
      const auto pred = hankel_asymptotic_prediction(n, t1, t2, w[0], w[1]);
      const auto spec = JumpWeightSpec::two_jump(edge_location(n, t1), edge_location(n, t2), w[0], w[1]);
      const double lr = compute_recurrence(spec, n).log_D(n) - log_hankel_gue(n);
      dev[k] = std::fabs(lr - pred.log_ratio);
      out.require(dev[k] <= 1.5 * std::pow(n, -1.0 / 6.0),
                  fmt("w=(%g,%g) n=%d dev %.3e", w[0], w[1], n, dev[k]));
    }
    const double ratio = dev[0] / dev[1];
    out.require(ratio >= 1.05 && ratio <= 1.6, fmt("w=(%g,%g) ratio %.3f", w[0], w[1], ratio));
  }
  return out;
}

Outcome scaling_rates() {
  Outcome out;
  const double t1 = -0.5, t2 = 0.5, w1 = 0.4, w2 = 0.7;
  const auto tr = solve_cpii({w1, w2, t2 - t1});
  const auto pt = tr.at(t1);
  const int ns[] = {64, 256};

  std::array<std::array<double, 5>, 2> cp{}, op{};
  for (int k = 0; k < 2; ++k) {
    const int n = ns[k];
    const auto rep = cpiv_scaling_check(n, t1, t2, w1, w2, pt);
    cp[k] = {rep.a1, rep.a2, rep.b1, rep.b2, rep.y};

    const auto pr = op_asymptotic_predictions(n, t1, t2, w1, w2, pt);
    const double s1 = edge_location(n, t1), s2 = edge_location(n, t2);
    const auto table = compute_recurrence(JumpWeightSpec::two_jump(s1, s2, w1, w2), n + 1);
    auto log_abs_pn = [&](double x) {
      const auto v = eval_monic_pair(table, n, x);
      return std::log(std::fabs(v.p)) + v.log_scale;
    };
    op[k] = {std::fabs(table.alpha[n] - pr.alpha), std::fabs(std::sqrt(table.beta2[n]) - pr.beta),
             std::fabs(std::expm1(table.log_gamma[n - 1] - pr.log_gamma)),
             std::fabs(std::expm1(log_abs_pn(s1) - pr.log_abs_pn1)),
             std::fabs(std::expm1(log_abs_pn(s2) - pr.log_abs_pn2))};
  }
  const char* cp_names[] = {"a1", "a2", "b1", "b2", "y"};
  const char* op_names[] = {"alpha", "beta", "gamma", "pn(s1)", "pn(s2)"};
  for (int i = 0; i < 5; ++i) {
    const double r = cp[0][i] / cp[1][i];
    out.require(r >= 1.2 && r <= 2.1, fmt("cpiv %s %.2e->%.2e ratio %.3f", cp_names[i], cp[0][i], cp[1][i], r));
  }
  for (int i = 0; i < 5; ++i) {
    const double r = op[0][i] / op[1][i];
    out.require(r >= 1.5 && r <= 2.7, fmt("op %s %.2e->%.2e ratio %.3f", op_names[i], op[0][i], op[1][i], r));
  }
  return out;
}

Outcome conditional_law() {
  Outcome out;
  const double t1 = -1.0, t2 = 0.5, p = 0.5;
  {
    const int n = 100;
    const double lim = conditional_distribution_limit(t1, t2, p);
    const auto mc = mc_conditional_distribution(n, edge_location(n, t2), edge_location(n, t1), p, 200000, 11);
    const double dev = std::fabs(lim - mc.conditional.estimate);
    const double bound = 3.0 * mc.conditional.stderr_ + 0.5 * std::pow(n, -1.0 / 6.0);
    out.require(dev <= bound, fmt("n=100 MC %.4f limit %.4f dev %.2e bound %.2e", mc.conditional.estimate, lim, dev,
                                  bound));
  }
  {
    const int n = 50;
    const double y = edge_location(n, t1), x = edge_location(n, t2);
    const auto mc = mc_conditional_distribution(n, x, y, p, 200000, 13);
    const double num = compute_recurrence(JumpWeightSpec::two_jump(y, x, p, 0.0), n).log_D(n);
    const double den = compute_recurrence(JumpWeightSpec::single_jump(y, p), n).log_D(n);
    const double quad = std::exp(num - den);
    const double dev = std::fabs(quad - mc.conditional.estimate);
    out.require(dev <= 3.0 * mc.conditional.stderr_,
                fmt("n=50 MC %.4f quadrature %.4f dev %.2e (%.2f stderr)", mc.conditional.estimate, quad, dev,
                    dev / mc.conditional.stderr_));
  }
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"hermite reduction", 5.0, hermite_reduction},
      {"finite-n identities and coupled PIV", 120.0, identity_suite},
      {"coupled PII solver health", 120.0, cpii_health},
      {"Tracy-Widom vs Fredholm", 60.0, tracy_widom},
      {"gap limit law", 600.0, gap_law},
      {"Hankel determinant convergence", 180.0, hankel_convergence},
      {"edge scaling rates", 180.0, scaling_rates},
      {"conditional limit law", 600.0, conditional_law},
  };
  int failures = 0, index = 0;
  for (const auto& c : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const Error& e) {
      o.pass = false;
      o.detail = std::string("error ") + std::string(to_string(e.tag())) + ": " + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget) o.require(false, fmt("runtime over %.0f s", c.budget));
    if (!o.pass) ++failures;
    std::printf("%s %d %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", index, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
