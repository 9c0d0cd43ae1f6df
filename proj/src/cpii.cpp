#include "jumpgue/cpii.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "jumpgue/airy.hpp"
#include "jumpgue/error.hpp"
#include "jumpgue/ode.hpp"

namespace jumpgue {
namespace {

// State layout: u1, u1', u2, u2', I0, I1, J.
using State = OdeState<7>;
constexpr double kBlowUp = 50.0;

struct System {
  double s;
  double sig1, sig2;

  double potential(const State& y) const { return sig1 * y[0] * y[0] + sig2 * y[2] * y[2]; }

  double hamiltonian(double x, const State& y) const {
    const double V = potential(y);
    return -V * V - V * x + sig1 * y[1] * y[1] + sig2 * y[3] * y[3] - s * sig2 * y[2] * y[2];
  }

  State operator()(double x, const State& y) const {
    const double V = potential(y);
    State d;
    d[0] = y[1];
    d[1] = (x + 2.0 * V) * y[0];
    d[2] = y[3];
    d[3] = (x + s + 2.0 * V) * y[2];
    d[4] = -V;
    d[5] = -x * V;
    d[6] = -hamiltonian(x, y);
    return d;
  }
};

State error_scale(double tol, const State& a, const State& b) {
  State sc;
  for (int k = 0; k < 2; ++k) {
    const double mag = std::max(std::fabs(a[2 * k]) + std::fabs(a[2 * k + 1]),
                                std::fabs(b[2 * k]) + std::fabs(b[2 * k + 1]));
    sc[2 * k] = sc[2 * k + 1] = tol * mag + 1e-300;
  }
  for (int i = 4; i < 7; ++i) sc[i] = tol * (std::max(std::fabs(a[i]), std::fabs(b[i])) + 1e-20);
  return sc;
}

// ∫_X^∞ Ai² and ∫_X^∞ τ Ai², from Ai'' = x Ai.
double airy_sq_tail(double X) {
  const AiryValue a = airy_ai(X);
  return a.aip * a.aip - X * a.ai * a.ai;
}
double airy_sq_tail_moment(double X) {
  const AiryValue a = airy_ai(X);
  return -(X * X * a.ai * a.ai - X * a.aip * a.aip + a.ai * a.aip) / 3.0;
}

void integrate(const System& sys, double tol, double& x, State& y, double x_end, double& h, bool coupled) {
  auto scale = [tol](const State& a, const State& b) { return error_scale(tol, a, b); };
  auto check = [coupled](double xx, const State& yy) {
    for (int k : {0, 2}) {
      if (!std::isfinite(yy[k]) || std::fabs(yy[k]) > kBlowUp) {
        fail(coupled ? ErrorTag::pole_or_sign_change : ErrorTag::blow_up,
             "solution left the pole-free regime near x = " + std::to_string(xx));
      }
    }
  };
  dopri5<7>(sys, x, y, x_end, h, scale, check);
}

System make_system(const CPIIParams& p) {
  auto sign = [](double c) { return c > 0.0 ? 1.0 : (c < 0.0 ? -1.0 : 0.0); };
  return {p.s, sign(p.c1()), sign(p.c2())};
}

bool single_channel(const CPIIParams& p) { return p.c1() == 0.0 || p.c2() == 0.0; }

void store(CPIITrajectory& tr, const System& sys, double x, const State& y) {
  tr.x.push_back(x);
  tr.u1.push_back(y[0]);
  tr.du1.push_back(y[1]);
  tr.u2.push_back(y[2]);
  tr.du2.push_back(y[3]);
  tr.v1.push_back(sys.sig1 * y[0] * y[0]);
  tr.v2.push_back(sys.sig2 * y[2] * y[2]);
  tr.w1.push_back(sys.sig1 != 0.0 ? y[1] / y[0] : 0.0);
  tr.w2.push_back(sys.sig2 != 0.0 ? y[3] / y[2] : 0.0);
  tr.H.push_back(sys.hamiltonian(x, y));
  tr.I0.push_back(y[4]);
  tr.I1.push_back(y[5]);
  tr.J.push_back(y[6]);
}

}  // namespace

bool is_near_critical(const CPIIParams& p) noexcept {
  const double c1 = p.c1(), c2 = p.c2();
  return std::fabs(c1 - 1.0) < 1e-3 || std::fabs(c2 - 1.0) < 1e-3 || std::fabs(c1 + c2 - 1.0) < 1e-3;
}

double hamiltonian_ii(double v1, double v2, double w1, double w2, double x, double s) noexcept {
  const double V = v1 + v2;
  return -V * V - V * x + v1 * w1 * w1 + v2 * w2 * w2 - s * v2;
}

CPIITrajectory solve_cpii(const CPIIParams& params, const CPIISolveOptions& opts) {
  require(std::isfinite(params.omega1) && std::isfinite(params.omega2) && std::isfinite(params.s),
          "solve_cpii: parameters must be finite");
  require(params.omega1 >= 0.0 && params.omega2 >= 0.0, "solve_cpii: jump heights must be nonnegative");
  require(params.s >= 0.0, "solve_cpii: s must be nonnegative");
  require(params.s > 0.0 || single_channel(params), "solve_cpii: s > 0 required for two active channels");
  require(opts.x_max >= 8.0, "solve_cpii: x_max >= 8 required");
  require(opts.x_min >= -10.0 && opts.x_min < opts.x_max, "solve_cpii: x_min must lie in [-10, x_max)");
  require(opts.tol >= 1e-13 && opts.tol <= 1e-8, "solve_cpii: tol must lie in [1e-13, 1e-8]");
  require(opts.dx > 0.0 && opts.dx <= 0.5, "solve_cpii: grid spacing must lie in (0, 0.5]");

  CPIITrajectory tr;
  tr.params = params;
  tr.options = opts;
  if (is_near_critical(params)) tr.options.x_min = std::max(opts.x_min, -8.0);
  const System sys = make_system(params);
  tr.sigma = {sys.sig1, sys.sig2};
  const bool coupled = !single_channel(params);

  const double xmax = tr.options.x_max;
  const double a1 = std::sqrt(std::fabs(params.c1())), a2 = std::sqrt(std::fabs(params.c2()));
  const AiryValue ai1 = airy_ai(xmax), ai2 = airy_ai(xmax + params.s);
  State y{};
  y[0] = a1 * ai1.ai;
  y[1] = a1 * ai1.aip;
  y[2] = a2 * ai2.ai;
  y[3] = a2 * ai2.aip;
  // Tail integrals beyond x_max from the linear (Airy) approximation.
  const double c1 = params.c1(), c2 = params.c2(), X2 = xmax + params.s;
  y[4] = c1 * airy_sq_tail(xmax) + c2 * airy_sq_tail(X2);
  y[5] = c1 * airy_sq_tail_moment(xmax) + c2 * (airy_sq_tail_moment(X2) - params.s * airy_sq_tail(X2));
  y[6] = y[5] - xmax * y[4];

  const int steps = static_cast<int>(std::ceil((xmax - tr.options.x_min) / tr.options.dx - 1e-9));
  tr.x.reserve(steps + 1);
  double x = xmax, h = -1e-3;
  store(tr, sys, x, y);
  for (int i = 1; i <= steps; ++i) {
    const double target = (i == steps) ? tr.options.x_min : xmax - i * tr.options.dx;
    integrate(sys, tr.options.tol, x, y, target, h, coupled);
    store(tr, sys, x, y);
  }
  return tr;
}

CPIITrajectory solve_as_pii(double omega, const CPIISolveOptions& opts) {
  require(omega >= 0.0 && omega <= 1.0, "solve_as_pii: omega must lie in [0, 1]");
  return solve_cpii({omega, omega, 1.0}, opts);
}

CPIITrajectory::Sample CPIITrajectory::sample(double t) const {
  require(!x.empty(), "empty trajectory");
  require(t <= x.front() && t >= x.back(), "sample point outside the solved range");
  const double pos = (x.front() - t) / options.dx;
  const std::size_t i = std::min<std::size_t>(x.size() - 1, static_cast<std::size_t>(std::llround(pos)));
  State y{u1[i], du1[i], u2[i], du2[i], I0[i], I1[i], J[i]};
  const System sys{params.s, sigma[0], sigma[1]};
  double xx = x[i], h = t < xx ? -options.dx : options.dx;
  if (t != xx) integrate(sys, options.tol, xx, y, t, h, true);
  Sample out;
  out.x = t;
  out.u1 = y[0];
  out.du1 = y[1];
  out.u2 = y[2];
  out.du2 = y[3];
  out.v1 = sigma[0] * y[0] * y[0];
  out.v2 = sigma[1] * y[2] * y[2];
  out.w1 = sigma[0] != 0.0 ? y[1] / y[0] : 0.0;
  out.w2 = sigma[1] != 0.0 ? y[3] / y[2] : 0.0;
  out.H = sys.hamiltonian(t, y);
  out.I0 = y[4];
  out.I1 = y[5];
  out.J = y[6];
  return out;
}

CPIIPoint CPIITrajectory::at(double t) const {
  const Sample s = sample(t);
  return {s.v1, s.v2, s.w1, s.w2, s.H};
}

namespace {

// Eighth-order central differences on a uniform descending grid, where
// f(x + k dx) sits at index i - k.
template <class F>
double d1_eighth(F&& f, std::size_t i, double dx) {
  return (-(f(i - 4) - f(i + 4)) / 280.0 + 4.0 * (f(i - 3) - f(i + 3)) / 105.0 - (f(i - 2) - f(i + 2)) / 5.0 +
          4.0 * (f(i - 1) - f(i + 1)) / 5.0) /
         dx;
}

template <class F>
double d2_eighth(F&& f, std::size_t i, double dx) {
  return (-(f(i - 4) + f(i + 4)) / 560.0 + 8.0 * (f(i - 3) + f(i + 3)) / 315.0 - (f(i - 2) + f(i + 2)) / 5.0 +
          8.0 * (f(i - 1) + f(i + 1)) / 5.0 - 205.0 / 72.0 * f(i)) /
         (dx * dx);
}

// Last index (exclusive) of the uniformly spaced part of the grid.
std::size_t uniform_end(const CPIITrajectory& tr) {
  const std::size_t n = tr.size();
  if (n >= 2 && std::fabs((tr.x[n - 2] - tr.x[n - 1]) - tr.options.dx) > 1e-12) return n - 1;
  return n;
}

}  // namespace

HamiltonianCheck hamiltonian_relation_residual(const CPIITrajectory& tr) {
  HamiltonianCheck out;
  const double dx = tr.options.dx;
  const std::size_t end = uniform_end(tr);
  for (std::size_t i = 4; i + 4 < end; ++i) {
    const double dH = d1_eighth([&](std::size_t j) { return tr.H[j]; }, i, dx);
    out.fd = std::max(out.fd, std::fabs(dH + tr.v1[i] + tr.v2[i]));
  }
  for (std::size_t i = 0; i < tr.size(); ++i) out.integral = std::max(out.integral, std::fabs(tr.H[i] - tr.I0[i]));
  return out;
}

double second_order_v_residual(const CPIITrajectory& tr) {
  const double dx = tr.options.dx;
  double worst = 0.0;
  const std::size_t end = uniform_end(tr);
  for (std::size_t i = 4; i + 4 < end; ++i) {
    const double V = tr.v1[i] + tr.v2[i];
    for (int k = 0; k < 2; ++k) {
      const std::vector<double>& v = k == 0 ? tr.v1 : tr.v2;
      if (std::fabs(v[i]) < 1e-6) continue;
      const double shift = k == 0 ? 0.0 : tr.params.s;
      auto f = [&](std::size_t j) { return v[j]; };
      const double d1 = d1_eighth(f, i, dx);
      const double d2 = d2_eighth(f, i, dx);
      const double terms[] = {d2, -d1 * d1 / (2.0 * v[i]), -4.0 * v[i] * (V + 0.5 * (tr.x[i] + shift))};
      double total = 0.0, size = 0.0;
      for (double t : terms) {
        total += t;
        size += std::fabs(t);
      }
      worst = std::max(worst, std::fabs(total) / size);
    }
  }
  return worst;
}

double pii_residual(const CPIITrajectory& tr) {
  const double dx = tr.options.dx;
  double worst = 0.0;
  const std::size_t end = uniform_end(tr);
  for (std::size_t i = 4; i + 4 < end; ++i) {
    const double q = tr.u1[i];
    const double q2 = d1_eighth([&](std::size_t j) { return tr.du1[j]; }, i, dx);
    worst = std::max(worst, std::fabs(q2 - 2.0 * q * q * q - tr.x[i] * q));
  }
  return worst;
}

TWExponent tw_exponent_routes(const CPIITrajectory& tr, double t1) {
  require(std::fabs(tr.H.front()) < 1e-14, "tw_exponent: trajectory tail does not reach the decay regime");
  const auto s = tr.sample(t1);
  TWExponent out;
  out.direct = s.I1 - t1 * s.I0;
  out.hamiltonian = s.J;
  out.difference = std::fabs(out.direct - out.hamiltonian);
  return out;
}

double tw_exponent(const CPIITrajectory& tr, double t1) {
  const TWExponent e = tw_exponent_routes(tr, t1);
  if (e.difference > 1e-6)
    fail(ErrorTag::route_disagreement, "weighted-integral and Hamiltonian routes differ by " +
                                           std::to_string(e.difference));
  return e.hamiltonian;
}

namespace {

CPIISolveOptions reach(const CPIISolveOptions& opts, double t) {
  CPIISolveOptions o = opts;
  o.x_min = std::min(o.x_min, std::floor(t) - 1.0);
  require(o.x_min >= -10.0, "evaluation point too far left (x_min >= -10)");
  return o;
}

}  // namespace

double gap_probability_limit(double t1, double t2, const CPIISolveOptions& opts) {
  require(t1 <= t2, "gap_probability_limit: t1 <= t2 required");
  if (t1 == t2) return 1.0;  // q(·; 1) vanishes identically
  const auto tr = solve_cpii({0.0, 1.0, t2 - t1}, reach(opts, t1));
  return std::exp(-tw_exponent(tr, t1));
}

double conditional_distribution_limit(double t1, double t2, double p, const CPIISolveOptions& opts) {
  require(t1 < t2, "conditional_distribution_limit: t1 < t2 required");
  require(p > 0.0 && p < 1.0, "conditional_distribution_limit: p must lie in (0, 1)");
  const CPIISolveOptions o = reach(opts, t1);
  const auto coupled = solve_cpii({p, 0.0, t2 - t1}, o);
  const auto as = solve_as_pii(p, o);
  return std::exp(-(tw_exponent(coupled, t1) - tw_exponent(as, t1)));
}

double tracy_widom_f2(const CPIITrajectory& hm, double t) { return std::exp(-tw_exponent(hm, t)); }

HankelPrediction hankel_asymptotic_prediction(int n, double t1, double t2, double omega1, double omega2,
                                              const CPIISolveOptions& opts) {
  require(n >= 1, "hankel_asymptotic_prediction: n >= 1 required");
  require(t1 < t2, "hankel_asymptotic_prediction: t1 < t2 required");
  HankelPrediction out;
  out.log_D_gue = log_hankel_gue(n);
  if (omega1 == 1.0 && omega2 == 1.0) return out;
  const auto tr = solve_cpii({omega1, omega2, t2 - t1}, reach(opts, t1));
  out.log_ratio = -tw_exponent(tr, t1);
  return out;
}

OpAsymptotics op_asymptotic_predictions(int n, double t1, double t2, double omega1, double omega2,
                                        const CPIIPoint& at) {
  require(n >= 1, "op_asymptotic_predictions: n >= 1 required");
  const double c1 = 1.0 - omega1, c2 = omega1 - omega2;
  require(c1 != 0.0 && c2 != 0.0, "op_asymptotic_predictions: omega1 must differ from 1 and omega2");
  // u_k = √v_k; a negative v_k pairs with a negative c_k, so √(2π/c_k)·u_k is
  // real. Compare moduli only.
  if ((at.v1 != 0.0 && (at.v1 > 0.0) != (c1 > 0.0)) || (at.v2 != 0.0 && (at.v2 > 0.0) != (c2 > 0.0)))
    fail(ErrorTag::pole_or_sign_change, "channel sign does not match its coefficient; prediction is not real");
  const double nd = n, V = at.v1 + at.v2;
  const double n16 = std::pow(nd, 1.0 / 6.0), n13 = std::cbrt(nd);
  OpAsymptotics out;
  out.alpha = -V / (std::sqrt(2.0) * n16);
  out.beta = std::sqrt(nd / 2.0) - V / (std::pow(2.0, 1.5) * n16);
  out.log_gamma_lead = (nd / 2.0 - 0.75) * std::numbers::ln2 + (0.25 - nd / 2.0) * std::log(nd) + nd / 2.0 -
                       0.5 * std::log(std::numbers::pi);
  out.log_gamma = out.log_gamma_lead + std::log1p(0.5 * at.H / n13);
  const double common = 0.5 * nd * std::log(nd * std::numbers::e / 2.0) + std::log(nd) / 6.0;
  out.log_abs_pn1 = 0.5 * std::log(2.0 * std::numbers::pi / std::fabs(c1)) + common + t1 * n13 +
                    0.5 * std::log(std::fabs(at.v1));
  out.log_abs_pn2 = 0.5 * std::log(2.0 * std::numbers::pi / std::fabs(c2)) + common + t2 * n13 +
                    0.5 * std::log(std::fabs(at.v2));
  return out;
}

}  // namespace jumpgue
