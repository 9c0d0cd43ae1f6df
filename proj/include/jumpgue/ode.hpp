#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

#include "jumpgue/error.hpp"

namespace jumpgue {

template <std::size_t N>
using OdeState = std::array<double, N>;

/// Dormand–Prince 5(4) with local error control. Integrates y from x to
/// x_end (either direction), updating x, y and the step suggestion h in place.
/// Componentwise error scales come from scale(y); the step is accepted when
/// max |err_i| / scale_i <= 1. check(x, y) runs after each accepted step and
/// may throw.
template <std::size_t N, class Rhs, class Scale, class Check>
void dopri5(Rhs&& f, double& x, OdeState<N>& y, double x_end, double& h, Scale&& scale, Check&& check,
            long max_steps = 2000000) {
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                   e6 = 22.0 / 525, e7 = -1.0 / 40;

  const double dir = x_end >= x ? 1.0 : -1.0;
  if (x == x_end) return;
  h = dir * std::fabs(h);
  if (h == 0.0) h = dir * 1e-3;

  OdeState<N> k1, k2, k3, k4, k5, k6, k7, tmp, ynew;
  k1 = f(x, y);
  for (long step = 0; step < max_steps; ++step) {
    bool last = false;
    const double h_full = h;
    if (dir * (x + h - x_end) >= 0.0) {
      h = x_end - x;
      last = true;
    }
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    k2 = f(x + c2 * h, tmp);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    k3 = f(x + c3 * h, tmp);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    k4 = f(x + c4 * h, tmp);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    k5 = f(x + c5 * h, tmp);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    k6 = f(x + h, tmp);
    for (std::size_t i = 0; i < N; ++i)
      ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    k7 = f(x + h, ynew);

    const OdeState<N> sc = scale(y, ynew);
    double err = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < N; ++i) {
      const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      finite = finite && std::isfinite(ynew[i]);
      err = std::max(err, std::fabs(ei) / sc[i]);
    }
    if (!finite || !std::isfinite(err)) err = 1e10;

    if (err <= 1.0) {
      x = last ? x_end : x + h;
      y = ynew;
      k1 = k7;  // first-same-as-last
      check(x, y);
      const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      if (last) {
        // Keep the untruncated step as the suggestion for the next call.
        h = std::fabs(h * fac) > std::fabs(h_full) ? h * fac : h_full;
        return;
      }
      h *= fac;
    } else {
      h *= std::max(0.1, 0.9 * std::pow(err, -0.2));
      if (std::fabs(h) < 1e-14 * (1.0 + std::fabs(x)))
        fail(ErrorTag::blow_up, "step size underflow near x = " + std::to_string(x));
    }
  }
  fail(ErrorTag::non_convergence, "step budget exhausted");
}

}  // namespace jumpgue
