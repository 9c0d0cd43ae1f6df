#pragma once

#include <array>

#include "jumpgue/op_engine.hpp"

namespace jumpgue {

/// Coupled Painlevé IV variables at x = (s1+s2)/2, s = (s2-s1)/2 for degree n.
/// y is purely imaginary, y = i·y_im; log_y_im is kept because y_im
/// underflows once n reaches a few hundred.
struct CPIVState {
  int n = 0;
  double x = 0.0;
  double s = 0.0;
  double a1 = 0.0, a2 = 0.0;
  double b1 = 0.0, b2 = 0.0;
  double y_im = 0.0;
  double log_y_im = 0.0;
  double log_gamma = 0.0;  // ln γ_{n-1}, copied from the table
  /// Largest |Im z|/|z| over the complex intermediate products (a_k, a_k b_k,
  /// a_k b_k²). Should sit at rounding level.
  double max_imag_rel = 0.0;
};

/// Rebuild (a1, a2, b1, b2, y) from γ_{n-1}, π_n(s_k), π_{n-1}(s_k).
/// Needs table.n_max >= n + 1 so that α_n and β_n² are available for the
/// identity checks. Requires ω1 != 1 and ω1 != ω2.
CPIVState reconstruct_cpiv(const RecurrenceTable& table, int n);

double hamiltonian_iv(const CPIVState& state);

/// Residuals of the finite-n identities linking the recurrence data to the
/// reconstructed state. Each entry is |lhs - rhs| / max(1, |lhs|).
struct IdentityResiduals {
  double alpha = 0.0;    // α_n = (a1 b1² + a2 b2²) / (2(a1 b1 + a2 b2 + n))
  double beta = 0.0;     // β_n² = (a1 b1 + a2 b2 + n) / 2
  double gamma0 = 0.0;   // γ_{n-1}² = e^{x²} y / (4π i)
  double f_h = 0.0;      // F = H_IV - 2nx with F from the Christoffel–Darboux route
  double pns1 = 0.0;     // π_n(s1)² from a1 b1² / y
  double pns2 = 0.0;     // π_n(s2)² from a2 b2² / y
};
IdentityResiduals identity_residuals(const RecurrenceTable& table, const CPIVState& state);

/// Right-hand side of the coupled PIV system in the order (y, a1, a2, b1, b2);
/// the y entry is d(ln y)/dx.
std::array<double, 5> cpiv_rhs(const CPIVState& state);

/// States at x + j·h, j = -k..k, for fixed s, each rebuilt from its own table.
std::array<CPIVState, 5> cpiv_stencil(const JumpWeightSpec& spec, int n, double h,
                                      const QuadratureOptions& opts = {});

/// Central-difference check of the coupled PIV system at the centre of a
/// stencil with spacing h. Components are ordered (y, a1, a2, b1, b2). The y
/// component compares d(ln y)/dx, i.e. it is the residual relative to y. The
/// a and b components are absolute and also reported divided by max(1, |z'|).
struct CPIVOdeReport {
  double h = 0.0;
  int n = 0;
  std::array<double, 5> residual{};
  std::array<double, 5> scaled{};
  /// |d ln γ_{n-1}/dx - (a1 + a2)| using a fourth-order stencil, divided by
  /// max(1, |a1 + a2|).
  double dlog_gamma = 0.0;
};
CPIVOdeReport cpiv_ode_residual(const std::array<CPIVState, 5>& stencil, double h);
CPIVOdeReport cpiv_ode_residual(const JumpWeightSpec& spec, int n, double h, const QuadratureOptions& opts = {});

/// Second-order equations for a1 and a2 checked with central second
/// differences. Each residual is divided by the sum of the absolute values of
/// the terms of its equation.
/// piv is the residual of the classical PIV equation for y_IV(ξ) = -2 a1(ξ+s),
/// meaningful only when a2 is negligible.
struct CPIVSecondOrderReport {
  double h = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double piv = 0.0;
};
CPIVSecondOrderReport cpiv_second_order_residual(const std::array<CPIVState, 5>& stencil, double h);

/// Values of the coupled PII solution at t1 needed for edge-scaling checks.
struct CPIIPoint {
  double v1 = 0.0, v2 = 0.0;
  double w1 = 0.0, w2 = 0.0;
  double H = 0.0;
};

/// Edge-scaled jump locations s_k = √(2n) + t_k / (√2 n^{1/6}).
double edge_location(int n, double t);

/// Deviations of the finite-n state from its edge-scaling limit.
struct CPIVScalingReport {
  int n = 0;
  double a1 = 0.0;  // |a1 √2 n^{1/6} + v1(t1)|
  double a2 = 0.0;  // |a2 √2 n^{1/6} + v2(t1)|
  double b1 = 0.0;  // |b1 / √(2n) - 1|
  double b2 = 0.0;
  double y = 0.0;   // |y_im / (2 (2/n)^{n-1/2} e^{-n-(t1+t2) n^{1/3}}) - 1|
  CPIVState state;
};
CPIVScalingReport cpiv_scaling_check(int n, double t1, double t2, double omega1, double omega2,
                                     const CPIIPoint& limit, const QuadratureOptions& opts = {});

}  // namespace jumpgue
