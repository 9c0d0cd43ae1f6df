#pragma once

#include <vector>

namespace jumpgue {

struct GaussRule {
  std::vector<double> nodes;    // ascending, in (-1, 1)
  std::vector<double> weights;  // sum to 2
};

/// m-point Gauss–Legendre rule on [-1, 1] (Newton iteration on the
/// three-term recurrence).
GaussRule gauss_legendre(int m);

/// Same rule mapped affinely onto [a, b], appended to the output vectors.
void append_gauss_legendre(const GaussRule& rule, double a, double b, std::vector<double>& nodes,
                           std::vector<double>& weights);

}  // namespace jumpgue
