#include "jumpgue/airy.hpp"

#include <cmath>
#include <numbers>

namespace jumpgue {
namespace {

constexpr double kPi = std::numbers::pi;

// Regime boundaries. Below kSeriesMin the oscillatory expansion is used, the
// Maclaurin series covers [kSeriesMin, kSeriesMax], the Bessel-K integral the
// range up to ζ = kAsymptoticZeta, and the decaying expansion beyond.
constexpr double kSeriesMin = -8.0;
constexpr double kSeriesMax = 2.0;
constexpr double kAsymptoticZeta = 50.0;

// Ai(0) and -Ai'(0).
constexpr long double kC1 = 0.355028053887817239260063186004183176L;
constexpr long double kC2 = 0.258819403792806798405183560189203963L;

AiryValue maclaurin(double xd) {
  // Evaluated in extended precision: for x near -8 the partial sums reach
  // ~1e6 times the result.
  const long double x = xd;
  const long double x3 = x * x * x;
  const long double eps = 1e-21L;
  long double a = 1.0L, f = 1.0L;   // f(x) = 1 + x^3/6 + ...
  long double b = x, g = x;          // g(x) = x + x^4/12 + ...
  long double d = x * x / 2.0L, fp = d;
  long double e = 1.0L, gp = 1.0L;
  for (int k = 1; k < 200; ++k) {
    const long double k3 = 3.0L * k;
    a *= x3 / ((k3 - 1.0L) * k3);
    b *= x3 / (k3 * (k3 + 1.0L));
    e *= x3 / (k3 * (k3 - 2.0L));
    if (k >= 2) d *= x3 / ((k3 - 1.0L) * (k3 - 3.0L));
    f += a;
    g += b;
    gp += e;
    if (k >= 2) fp += d;
    const long double scale = std::fabs(f) + std::fabs(g) + std::fabs(fp) + std::fabs(gp) + 1.0L;
    if (k > 3 && std::fabs(a) + std::fabs(b) + std::fabs(d) + std::fabs(e) < eps * scale) break;
  }
  return {xd, static_cast<double>(kC1 * f - kC2 * g), static_cast<double>(kC1 * fp - kC2 * gp)};
}

// e^z K_nu(z) = ∫_0^∞ exp(-z (cosh t - 1)) cosh(nu t) dt. The integrand is
// entire and decays double-exponentially, so the trapezoidal rule converges
// geometrically in 1/h.
double scaled_bessel_k(double nu, double z) {
  const double h = std::min(0.25, 6.0 / (0.64 * z + 42.0));
  double sum = 0.5;
  for (int j = 1; j < 100000; ++j) {
    const double t = j * h;
    const double term = std::exp(-z * (std::cosh(t) - 1.0)) * std::cosh(nu * t);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return h * sum;
}

// u_k and v_k coefficients of the Airy asymptotic expansions.
double u_coeff_next(double u_prev, int k) {
  return u_prev * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) /
         ((2.0 * k - 1.0) * 216.0 * k);
}

ScaledAiry decaying_expansion(double x) {
  const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
  double u = 1.0, su = 1.0, sv = 1.0, last = 1.0;
  double sign = 1.0, power = 1.0;
  for (int k = 1; k < 60; ++k) {
    u = u_coeff_next(u, k);
    const double v = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u;
    sign = -sign;
    power /= zeta;
    const double tu = sign * u * power;
    const double tv = sign * v * power;
    if (std::fabs(tu) > last) break;  // expansion started to diverge
    su += tu;
    sv += tv;
    last = std::fabs(tu);
    if (last < 1e-17) break;
  }
  const double q = std::pow(x, 0.25);
  const double pref = 0.5 / std::sqrt(kPi);
  return {x, zeta, pref / q * su, -pref * q * sv};
}

AiryValue oscillatory_expansion(double x) {
  const double z = -x;
  const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
  // P, Q for Ai; R, S for Ai'.
  double p = 1.0, qs = 0.0, r = 1.0, s = 0.0;
  double u = 1.0, power = 1.0, last = 1.0;
  for (int k = 1; k < 80; ++k) {
    u = u_coeff_next(u, k);
    const double v = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u;
    power /= zeta;
    const double tu = u * power;
    if (tu > last) break;
    last = tu;
    // k odd feeds Q/S with sign (-1)^((k-1)/2), k even feeds P/R with (-1)^(k/2).
    const double sgn = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 1) {
      qs += sgn * tu;
      s += sgn * v * power;
    } else {
      p += sgn * tu;
      r += sgn * v * power;
    }
    if (tu < 1e-17) break;
  }
  const double phase = zeta - 0.25 * kPi;
  const double c = std::cos(phase), sn = std::sin(phase);
  const double q = std::pow(z, 0.25);
  const double ai = (c * p + sn * qs) / (std::sqrt(kPi) * q);
  const double aip = q / std::sqrt(kPi) * (sn * r - c * s);
  return {x, ai, aip};
}

}  // namespace

ScaledAiry airy_ai_scaled(double x) noexcept {
  if (x < 0.0) x = 0.0;
  const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
  if (x <= kSeriesMax) {
    const AiryValue v = maclaurin(x);
    const double ez = std::exp(zeta);
    return {x, zeta, v.ai * ez, v.aip * ez};
  }
  if (zeta > kAsymptoticZeta) return decaying_expansion(x);
  const double k13 = scaled_bessel_k(1.0 / 3.0, zeta);
  const double k23 = scaled_bessel_k(2.0 / 3.0, zeta);
  return {x, zeta, std::sqrt(x / 3.0) / kPi * k13, -x / (kPi * std::sqrt(3.0)) * k23};
}

AiryValue airy_ai(double x) noexcept {
  if (std::isnan(x)) return {x, x, x};
  if (x < kSeriesMin) return oscillatory_expansion(x);
  if (x <= kSeriesMax) return maclaurin(x);
  const ScaledAiry s = airy_ai_scaled(x);
  const double ez = std::exp(-s.zeta);
  return {x, s.ai * ez, s.aip * ez};
}

}  // namespace jumpgue
