#pragma once

#include <vector>

namespace jumpgue {

/// Gaussian weight with two jumps:
///   w(x) = e^{-x²} · { 1 on x < s1, omega1 on (s1, s2), omega2 on x > s2 }.
/// A single-jump weight is represented with s1 == s2 and omega1 == omega2.
struct JumpWeightSpec {
  double s1 = 0.0;
  double s2 = 0.0;
  double omega1 = 1.0;
  double omega2 = 1.0;

  /// Validating constructor for the two-jump case (requires s1 < s2).
  static JumpWeightSpec two_jump(double s1, double s2, double omega1, double omega2);
  /// e^{-x²} on x < s, omega·e^{-x²} on x > s.
  static JumpWeightSpec single_jump(double s, double omega);

  bool is_single_jump() const noexcept { return s1 == s2; }
  double height(double x) const noexcept;
  double weight(double x) const noexcept;
  void validate() const;
};

struct QuadratureOptions {
  int nodes_per_panel = 0;  // 0 selects a default that grows with n_max
  double panel_width = 1.0;
  double refine = 1.0;      // multiplies the node count (stability checks)
};

/// Composite Gauss–Legendre discretisation of the weight on [-L, L]. Panel
/// boundaries include s1 and s2, so no panel straddles a jump.
struct QuadratureGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> sqrt_weights;  // formed directly; weights underflow first
  std::vector<double> panel_bounds;

  /// Σ w_i x_i^k, summed in a fixed order.
  double moment(int k) const;
};

QuadratureGrid build_quadrature(const JumpWeightSpec& spec, int n_max, const QuadratureOptions& opts = {});

/// Recurrence data of the monic orthogonal polynomials
///   x π_n = π_{n+1} + α_n π_n + β_n² π_{n-1},   ∫ π_m π_n w = γ_n^{-2} δ_mn.
/// Stored entries: α_0..α_{n_max-1}, β_1²..β_{n_max-1}² (slot 0 holds 0),
/// γ_0..γ_{n_max-1}, and ln D_1..ln D_{n_max} in log_hankel[0..n_max-1].
/// γ_n underflows for very large n, so log_gamma is the primary storage.
struct RecurrenceTable {
  JumpWeightSpec spec;
  int n_max = 0;
  double log_m0 = 0.0;
  std::vector<double> alpha;
  std::vector<double> beta2;
  std::vector<double> log_gamma;
  std::vector<double> gamma;
  std::vector<double> log_hankel;

  /// ln D_n for 0 <= n <= n_max (ln D_0 = 0).
  double log_D(int n) const;
};

/// Lanczos tridiagonalisation (full reorthogonalisation) of multiplication
/// by x on the discretised inner product.
RecurrenceTable compute_recurrence(const JumpWeightSpec& spec, int n_max, const QuadratureOptions& opts = {});

/// π_n(x) and π_n'(x) by forward recurrence. Overflows for large n·|x|; use
/// eval_monic_pair when that matters.
struct OpPoint {
  double p = 0.0;
  double dp = 0.0;
};
OpPoint eval_monic_op(const RecurrenceTable& table, int n, double x);

/// π_n, π_n', π_{n-1}, π_{n-1}' sharing a common scale: the true values are
/// the stored mantissas times exp(log_scale).
struct OpPair {
  double p = 0.0, dp = 0.0;
  double p_prev = 0.0, dp_prev = 0.0;
  double log_scale = 0.0;
};
OpPair eval_monic_pair(const RecurrenceTable& table, int n, double x);

/// F = ∂_{s1} ln D_n + ∂_{s2} ln D_n via the Christoffel–Darboux form:
///   Σ_k c_k e^{-s_k²} γ_{n-1}² (π_n' π_{n-1} - π_n π_{n-1}')(s_k),
/// c_1 = 1 - ω1, c_2 = ω1 - ω2.
double hankel_F_cd(const RecurrenceTable& table, int n);

/// F from the subleading coefficient of π_n: -2 Σ_{j<n} α_j.
double hankel_F_subleading(const RecurrenceTable& table, int n);

/// ln D_n for the pure Gaussian weight: (n/2)ln 2π - (n²/2)ln 2 + Σ_{k<n} ln k!.
double log_hankel_gue(int n);

}  // namespace jumpgue
