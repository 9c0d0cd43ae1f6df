#pragma once

#include <array>
#include <vector>

#include "jumpgue/cpiv.hpp"

namespace jumpgue {

/// Coupled PII parameters. Channel coefficients (tail amplitudes of v_k):
///   v1 ~ c1 Ai(x)²,  v2 ~ c2 Ai(x+s)²,  c1 = 1 - ω1,  c2 = ω1 - ω2.
/// A zero coefficient switches its channel off; ω1 = ω2 gives the
/// single-channel (Ablowitz–Segur) problem v1 = q(x; ω1)².
struct CPIIParams {
  double omega1 = 0.0;
  double omega2 = 1.0;
  double s = 1.0;

  double c1() const noexcept { return 1.0 - omega1; }
  double c2() const noexcept { return omega1 - omega2; }
};

struct CPIISolveOptions {
  double x_min = -8.0;
  double x_max = 12.0;
  double tol = 1e-11;
  double dx = 1.0 / 128.0;  // output grid spacing
};

/// True when a channel coefficient, or their sum, lies within 1e-3 of 1 (the
/// Hastings–McLeod boundary). solve_cpii then raises x_min to -8.
bool is_near_critical(const CPIIParams& params) noexcept;

/// Solution on a descending grid x_max = x[0] > ... > x[last] = x_min.
/// The solver works with real amplitudes u_k, v_k = sign(c_k)·u_k²,
///   u_k'' = (x + δ_k) u_k + 2 u_k (v1 + v2),  δ_1 = 0, δ_2 = s,
/// and carries the tail integrals
///   I0(x) = ∫_x^∞ (v1+v2),  I1(x) = ∫_x^∞ τ (v1+v2),  J(x) = ∫_x^∞ H_II.
struct CPIITrajectory {
  CPIIParams params;
  CPIISolveOptions options;  // effective options (x_min after any capping)
  std::array<double, 2> sigma{};  // sign(c_k), 0 for a switched-off channel

  std::vector<double> x;
  std::vector<double> v1, v2, w1, w2, H;
  std::vector<double> u1, du1, u2, du2;
  std::vector<double> I0, I1, J;

  std::size_t size() const noexcept { return x.size(); }

  /// Full state at an arbitrary t in [x_min, x_max], re-integrated from the
  /// nearest grid node.
  struct Sample {
    double x = 0.0;
    double u1 = 0.0, du1 = 0.0, u2 = 0.0, du2 = 0.0;
    double v1 = 0.0, v2 = 0.0, w1 = 0.0, w2 = 0.0, H = 0.0;
    double I0 = 0.0, I1 = 0.0, J = 0.0;
  };
  Sample sample(double t) const;
  CPIIPoint at(double t) const;
};

CPIITrajectory solve_cpii(const CPIIParams& params, const CPIISolveOptions& opts = {});

/// Ablowitz–Segur solution q(x; ω) of q'' = 2q³ + xq with q ~ √(1-ω) Ai(x);
/// ω = 0 is Hastings–McLeod. q = u1 of the returned trajectory, v1 = q².
CPIITrajectory solve_as_pii(double omega, const CPIISolveOptions& opts = {});

/// -(v1+v2)² - (v1+v2)x + v1 w1² + v2 w2² - s v2.
double hamiltonian_ii(double v1, double v2, double w1, double w2, double x, double s) noexcept;

/// dH/dx + (v1 + v2) along the grid: by an eighth-order finite difference of H
/// (fd) and in integrated form, H(x) - ∫_x^∞ (v1+v2) (integral).
struct HamiltonianCheck {
  double fd = 0.0;
  double integral = 0.0;
};
HamiltonianCheck hamiltonian_relation_residual(const CPIITrajectory& traj);

/// Max residual of the second-order v equations by finite differences over
/// nodes where |v_k| is not negligible, relative to the size of the terms.
double second_order_v_residual(const CPIITrajectory& traj);

/// Max |q'' - 2q³ - xq| on the grid, q'' by an eighth-order difference of q'.
double pii_residual(const CPIITrajectory& traj);

/// E(t) = ∫_t^∞ (τ - t)(v1 + v2) dτ by two routes.
struct TWExponent {
  double direct = 0.0;       // I1(t) - t·I0(t)
  double hamiltonian = 0.0;  // J(t)
  double difference = 0.0;
};
TWExponent tw_exponent_routes(const CPIITrajectory& traj, double t1);
/// Hamiltonian-route value; signals route_disagreement if the routes differ
/// by more than 1e-6.
double tw_exponent(const CPIITrajectory& traj, double t1);

/// Limit of the probability of no eigenvalue in (s1, s2) under edge scaling.
double gap_probability_limit(double t1, double t2, const CPIISolveOptions& opts = {});

/// Limit of Pro(λ_n < s2 | thinned max < s1) with removal probability p.
double conditional_distribution_limit(double t1, double t2, double p, const CPIISolveOptions& opts = {});

/// F2(t) = exp(-∫_t^∞ (τ - t) q(τ; 0)² dτ) from a given Hastings–McLeod trajectory.
double tracy_widom_f2(const CPIITrajectory& hastings_mcleod, double t);

/// -E(t1) for (ω1, ω2, s = t2 - t1): the predicted ln(D_n / D_n^GUE).
struct HankelPrediction {
  double log_ratio = 0.0;
  double log_D_gue = 0.0;
};
HankelPrediction hankel_asymptotic_prediction(int n, double t1, double t2, double omega1, double omega2,
                                              const CPIISolveOptions& opts = {});

/// Leading-order predictions for the recurrence data at edge-scaled jumps.
/// Polynomial values are compared in modulus: log_abs_pn_k = ln |π_n(s_k)|.
struct OpAsymptotics {
  double alpha = 0.0;
  double beta = 0.0;
  double log_gamma = 0.0;       // ln γ_{n-1} including the (1 + H/2 n^{-1/3}) factor
  double log_gamma_lead = 0.0;  // ln of the leading factor alone
  double log_abs_pn1 = 0.0;
  double log_abs_pn2 = 0.0;
};
OpAsymptotics op_asymptotic_predictions(int n, double t1, double t2, double omega1, double omega2,
                                        const CPIIPoint& at_t1);

}  // namespace jumpgue
