#include "jumpgue/gauss_legendre.hpp"

#include <cmath>
#include <numbers>

#include "jumpgue/error.hpp"

namespace jumpgue {

GaussRule gauss_legendre(int m) {
  require(m >= 1, "gauss_legendre: m must be positive");
  GaussRule rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  const int half = (m + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (m == 1) p0 = 1.0;
      const double pm = (m == 1) ? z : p1;
      dp = m * (z * pm - p0) / (z * z - 1.0);
      const double dz = pm / dp;
      z -= dz;
      if (std::fabs(dz) < 1e-16) {
        // refresh the derivative at the converged node
        double q0 = 1.0, q1 = z;
        for (int k = 2; k <= m; ++k) {
          const double q2 = ((2.0 * k - 1.0) * z * q1 - (k - 1.0) * q0) / k;
          q0 = q1;
          q1 = q2;
        }
        dp = (m == 1) ? 1.0 : m * (z * q1 - q0) / (z * z - 1.0);
        break;
      }
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[m - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[m - 1 - i] = w;
  }
  if (m % 2 == 1) rule.nodes[m / 2] = 0.0;
  return rule;
}

void append_gauss_legendre(const GaussRule& rule, double a, double b, std::vector<double>& nodes,
                           std::vector<double>& weights) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    nodes.push_back(mid + half * rule.nodes[i]);
    weights.push_back(half * rule.weights[i]);
  }
}

}  // namespace jumpgue
