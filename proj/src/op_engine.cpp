#include "jumpgue/op_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "jumpgue/error.hpp"
#include "jumpgue/gauss_legendre.hpp"

namespace jumpgue {

JumpWeightSpec JumpWeightSpec::two_jump(double s1, double s2, double omega1, double omega2) {
  require(s1 < s2, "two_jump: s1 < s2 required (use single_jump for s1 == s2)");
  JumpWeightSpec spec{s1, s2, omega1, omega2};
  spec.validate();
  return spec;
}

JumpWeightSpec JumpWeightSpec::single_jump(double s, double omega) {
  JumpWeightSpec spec{s, s, omega, omega};
  spec.validate();
  return spec;
}

double JumpWeightSpec::height(double x) const noexcept {
  if (x < s1) return 1.0;
  if (x < s2) return omega1;
  return omega2;
}

double JumpWeightSpec::weight(double x) const noexcept { return std::exp(-x * x) * height(x); }

void JumpWeightSpec::validate() const {
  require(std::isfinite(s1) && std::isfinite(s2), "jump locations must be finite");
  require(s1 <= s2, "jump locations must satisfy s1 <= s2");
  require(s1 < s2 || omega1 == omega2, "single-jump weight needs omega1 == omega2");
  require(std::isfinite(omega1) && std::isfinite(omega2), "jump heights must be finite");
  require(omega1 >= 0.0 && omega2 >= 0.0, "jump heights must be nonnegative");
}

double QuadratureGrid::moment(int k) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * std::pow(nodes[i], k);
  return sum;
}

namespace {

constexpr int kMaxDegree = 500;
constexpr double kMaxHalfWidth = 37.5;

int default_nodes_per_panel(int n_max) {
  return std::max(40, 20 + static_cast<int>(std::ceil(2.0 * std::sqrt(2.0 * n_max))));
}

}  // namespace

QuadratureGrid build_quadrature(const JumpWeightSpec& spec, int n_max, const QuadratureOptions& opts) {
  spec.validate();
  require(n_max >= 1 && n_max <= kMaxDegree, "n_max must lie in [1, 500]");
  require(opts.panel_width > 0.0 && opts.refine > 0.0, "invalid quadrature options");

  // e^{-x²/2} leaves the normal double range near |x| = 37.6.
  const double half_width = std::min(
      kMaxHalfWidth, std::max(std::fabs(spec.s1), std::fabs(spec.s2)) + std::max(9.0, std::sqrt(2.0 * n_max) + 6.0));
  const int base = opts.nodes_per_panel > 0 ? opts.nodes_per_panel : default_nodes_per_panel(n_max);
  const int per_panel = static_cast<int>(std::ceil(base * opts.refine));
  const GaussRule rule = gauss_legendre(per_panel);

  std::vector<double> breaks{-half_width};
  for (double s : {spec.s1, spec.s2})
    if (s > breaks.back() && s < half_width) breaks.push_back(s);
  breaks.push_back(half_width);

  QuadratureGrid grid;
  grid.panel_bounds.push_back(breaks.front());
  for (std::size_t seg = 0; seg + 1 < breaks.size(); ++seg) {
    const double a = breaks[seg], b = breaks[seg + 1];
    if (!(b > a)) continue;
    const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / opts.panel_width)));
    const double h = (b - a) / panels;
    const double height = spec.height(0.5 * (a + b));
    for (int p = 0; p < panels; ++p) {
      const double lo = a + p * h;
      const double hi = (p + 1 == panels) ? b : a + (p + 1) * h;
      const std::size_t first = grid.nodes.size();
      append_gauss_legendre(rule, lo, hi, grid.nodes, grid.weights);
      for (std::size_t i = first; i < grid.nodes.size(); ++i) {
        const double x = grid.nodes[i];
        const double root = std::sqrt(grid.weights[i] * height) * std::exp(-0.5 * x * x);
        grid.sqrt_weights.push_back(root);
        grid.weights[i] = root * root;
      }
      grid.panel_bounds.push_back(hi);
    }
  }
  return grid;
}

RecurrenceTable compute_recurrence(const JumpWeightSpec& spec, int n_max, const QuadratureOptions& opts) {
  const QuadratureGrid grid = build_quadrature(spec, n_max, opts);
  const std::size_t m = grid.nodes.size();
  const std::size_t n = static_cast<std::size_t>(n_max);

  double m0 = 0.0;
  for (double w : grid.weights) m0 += w;
  if (!(m0 > 0.0)) fail(ErrorTag::loss_of_positivity, "weight integrates to zero");

  RecurrenceTable table;
  table.spec = spec;
  table.n_max = n_max;
  table.log_m0 = std::log(m0);
  table.alpha.assign(n, 0.0);
  table.beta2.assign(n, 0.0);

  // Orthonormal Lanczos vectors, stored row-wise: basis[k*m + i].
  std::vector<double> basis(n * m);
  std::vector<double> r(m), coef(n);
  const double inv_norm = 1.0 / std::sqrt(m0);
  for (std::size_t i = 0; i < m; ++i) basis[i] = grid.sqrt_weights[i] * inv_norm;

  double beta_prev = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double* q = &basis[k * m];
    double a = 0.0;
    for (std::size_t i = 0; i < m; ++i) a += grid.nodes[i] * q[i] * q[i];
    table.alpha[k] = a;
    if (k + 1 == n) break;

    const double* qprev = k > 0 ? &basis[(k - 1) * m] : nullptr;
    for (std::size_t i = 0; i < m; ++i) {
      r[i] = (grid.nodes[i] - a) * q[i];
      if (qprev) r[i] -= beta_prev * qprev[i];
    }
    // Two classical Gram–Schmidt sweeps against every previous vector.
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j <= k; ++j) {
        const double* qj = &basis[j * m];
        double c = 0.0;
        for (std::size_t i = 0; i < m; ++i) c += qj[i] * r[i];
        coef[j] = c;
      }
      for (std::size_t j = 0; j <= k; ++j) {
        const double* qj = &basis[j * m];
        const double c = coef[j];
        for (std::size_t i = 0; i < m; ++i) r[i] -= c * qj[i];
      }
    }
    double norm2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) norm2 += r[i] * r[i];
    if (!(norm2 > 1e-28 * (1.0 + a * a)) || !std::isfinite(norm2)) {
      fail(ErrorTag::loss_of_positivity,
           "beta_" + std::to_string(k + 1) + "^2 is not positive: moment functional is numerically degenerate");
    }
    const double beta = std::sqrt(norm2);
    table.beta2[k + 1] = norm2;
    double* next = &basis[(k + 1) * m];
    for (std::size_t i = 0; i < m; ++i) next[i] = r[i] / beta;
    beta_prev = beta;
  }

  table.log_gamma.resize(n);
  table.gamma.resize(n);
  table.log_hankel.resize(n);
  double log_h = table.log_m0;  // ln γ_k^{-2}
  double log_d = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0) log_h += std::log(table.beta2[k]);
    table.log_gamma[k] = -0.5 * log_h;
    table.gamma[k] = std::exp(table.log_gamma[k]);
    log_d += log_h;
    table.log_hankel[k] = log_d;
  }
  return table;
}

double RecurrenceTable::log_D(int n) const {
  require(n >= 0 && n <= n_max, "log_D: degree out of range");
  return n == 0 ? 0.0 : log_hankel[n - 1];
}

OpPair eval_monic_pair(const RecurrenceTable& table, int n, double x) {
  require(n >= 0 && n <= table.n_max, "polynomial degree exceeds the table");
  constexpr double kBig = 1e150;
  OpPair out;
  // (p_prev, p) = (π_{k-1}, π_k), starting from π_{-1} = 0, π_0 = 1.
  double p_prev = 0.0, p = 1.0, dp_prev = 0.0, dp = 0.0;
  double log_scale = 0.0;
  for (int k = 0; k < n; ++k) {
    const double b2 = k > 0 ? table.beta2[k] : 0.0;
    const double p_next = (x - table.alpha[k]) * p - b2 * p_prev;
    const double dp_next = p + (x - table.alpha[k]) * dp - b2 * dp_prev;
    p_prev = p;
    p = p_next;
    dp_prev = dp;
    dp = dp_next;
    const double mag = std::max({std::fabs(p), std::fabs(dp), std::fabs(p_prev), std::fabs(dp_prev)});
    if (mag > kBig) {
      const double inv = 1.0 / mag;
      p *= inv;
      dp *= inv;
      p_prev *= inv;
      dp_prev *= inv;
      log_scale += std::log(mag);
    }
  }
  out.p = p;
  out.dp = dp;
  out.p_prev = p_prev;
  out.dp_prev = dp_prev;
  out.log_scale = log_scale;
  return out;
}

OpPoint eval_monic_op(const RecurrenceTable& table, int n, double x) {
  const OpPair pair = eval_monic_pair(table, n, x);
  const double scale = std::exp(pair.log_scale);
  return {pair.p * scale, pair.dp * scale};
}

double hankel_F_cd(const RecurrenceTable& table, int n) {
  require(n >= 1 && n <= table.n_max, "hankel_F_cd: need 1 <= n <= n_max");
  const JumpWeightSpec& spec = table.spec;
  const double coeff[2] = {1.0 - spec.omega1, spec.omega1 - spec.omega2};
  const double where[2] = {spec.s1, spec.s2};
  double total = 0.0;
  for (int k = 0; k < 2; ++k) {
    if (coeff[k] == 0.0) continue;
    const OpPair v = eval_monic_pair(table, n, where[k]);
    const double wronskian = v.dp * v.p_prev - v.p * v.dp_prev;
    const double log_factor = -where[k] * where[k] + 2.0 * table.log_gamma[n - 1] + 2.0 * v.log_scale;
    total += coeff[k] * std::exp(log_factor) * wronskian;
  }
  return total;
}

double hankel_F_subleading(const RecurrenceTable& table, int n) {
  require(n >= 0 && n <= table.n_max, "hankel_F_subleading: degree out of range");
  double sum = 0.0;
  for (int j = 0; j < n; ++j) sum += table.alpha[j];
  return -2.0 * sum;
}

double log_hankel_gue(int n) {
  require(n >= 0, "log_hankel_gue: negative degree");
  double sum = 0.5 * n * std::log(2.0 * std::numbers::pi) - 0.5 * n * static_cast<double>(n) * std::numbers::ln2;
  for (int k = 1; k < n; ++k) sum += std::lgamma(k + 1.0);
  return sum;
}

}  // namespace jumpgue
