#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "jumpgue/airy.hpp"

using jumpgue::airy_ai;

namespace {

// Reference values from a 30-digit mpmath evaluation.
struct Ref {
  double x, ai, aip;
};
constexpr Ref kRefs[] = {
    {-7.5, 0.32177571638064787527, 0.31880950669855459621},
    {-4.0, -0.070265532949289515099, -0.7906285753685813803},
    {-1.3, 0.51227200604103092324, 0.17199180675377406265},
    {0.5, 0.23169360648083348977, -0.22491053266468389314},
    {2.5, 0.015725923380470489995, -0.026250881035903230365},
    {4.5, 0.00033025032351430898366, -0.00071786656755750888869},
    {6.0, 9.9476943602528895702e-6, -0.000024765200397034954754},
    {9.0, 2.4711684308724898433e-9, -7.4806413896589464128e-9},
    {12.0, 1.393184688875360839e-13, -4.854736554985308463e-13},
};

double rel(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

}  // namespace

TEST_CASE("values at the origin and at one") {
  const auto v0 = airy_ai(0.0);
  CHECK(rel(v0.ai, 0.3550280538878172) < 1e-15);
  CHECK(rel(v0.aip, -0.2588194037928068) < 1e-15);
  CHECK(rel(airy_ai(1.0).ai, 0.13529241631288141552) < 1e-14);
}

TEST_CASE("reference table") {
  for (const Ref& r : kRefs) {
    CAPTURE(r.x);
    const auto v = airy_ai(r.x);
    if (r.x >= 0.0) {
      CHECK(rel(v.ai, r.ai) < 1e-12);
      CHECK(rel(v.aip, r.aip) < 1e-12);
    } else {
      CHECK(std::fabs(v.ai - r.ai) < 1e-12);
      CHECK(std::fabs(v.aip - r.aip) < 1e-12);
    }
  }
}

TEST_CASE("first negative zero") {
  CHECK(std::fabs(airy_ai(-2.3381074104597670385).ai) < 1e-12);
}

TEST_CASE("regime seams are continuous") {
  for (double x : {-8.0, 2.0}) {
    const auto lo = airy_ai(std::nextafter(x, -100.0));
    const auto hi = airy_ai(std::nextafter(x, 100.0));
    CAPTURE(x);
    CHECK(std::fabs(lo.ai - hi.ai) < 1e-13);
    CHECK(std::fabs(lo.aip - hi.aip) < 1e-12);
  }
  // ζ = 50 seam of the decaying regime, compared in scaled form.
  const double x50 = std::pow(75.0, 2.0 / 3.0);
  const auto a = jumpgue::airy_ai_scaled(std::nextafter(x50, 0.0));
  const auto b = jumpgue::airy_ai_scaled(std::nextafter(x50, 100.0));
  CHECK(rel(a.ai, b.ai) < 1e-13);
  CHECK(rel(a.aip, b.aip) < 1e-13);
}

TEST_CASE("Airy ODE residual by second differences") {
  const double h = 2e-4;
  for (int i = -80; i <= 80; ++i) {
    const double x = 0.1 * i;
    const double d2 = (airy_ai(x + h).ai - 2.0 * airy_ai(x).ai + airy_ai(x - h).ai) / (h * h);
    CAPTURE(x);
    CHECK(std::fabs(d2 - x * airy_ai(x).ai) < 1e-6);
  }
}

TEST_CASE("derivative is consistent with the value") {
  const double h = 1e-4;
  for (double x = -10.0; x <= 10.0; x += 0.37) {
    const double fd = (airy_ai(x + h).ai - airy_ai(x - h).ai) / (2.0 * h);
    CAPTURE(x);
    CHECK(std::fabs(fd - airy_ai(x).aip) < 1e-8 * (1.0 + std::fabs(airy_ai(x).aip)) + 1e-9);
  }
}

TEST_CASE("decay asymptotics, positivity and monotonicity") {
  for (double x = 8.0; x <= 40.0; x += 0.5) {
    const double ratio = airy_ai(x).ai * 2.0 * std::sqrt(std::numbers::pi) * std::pow(x, 0.25) *
                         std::exp(2.0 / 3.0 * std::pow(x, 1.5));
    CAPTURE(x);
    CHECK(ratio > 0.99);
    CHECK(ratio < 1.01);
  }
  double prev = airy_ai(0.0).ai;
  for (int i = 1; i <= 1200; ++i) {
    const double ai = airy_ai(0.01 * i).ai;
    REQUIRE(ai > 0.0);
    REQUIRE(ai < prev);
    prev = ai;
  }
  CHECK(airy_ai(200.0).ai >= 0.0);
  CHECK(airy_ai(200.0).ai < 1e-15);
}

TEST_CASE("scaled values agree with unscaled ones") {
  for (double x : {0.0, 0.7, 3.0, 10.0, 20.0}) {
    const auto s = jumpgue::airy_ai_scaled(x);
    const auto v = airy_ai(x);
    CAPTURE(x);
    CHECK(rel(s.ai * std::exp(-s.zeta), v.ai) < 1e-13);
    CHECK(rel(s.aip * std::exp(-s.zeta), v.aip) < 1e-13);
  }
}

TEST_CASE("short-step integration of the Airy equation reproduces Ai") {
  // Classical RK4 on y'' = x y over [x0, x0 + 0.1].
  for (double x0 : {-5.0, -1.0, 0.0, 3.0, 7.0}) {
    const auto start = airy_ai(x0);
    double y = start.ai, yp = start.aip, x = x0;
    const int steps = 200;
    const double h = 0.1 / steps;
    for (int k = 0; k < steps; ++k) {
      const double k1y = yp, k1p = x * y;
      const double k2y = yp + 0.5 * h * k1p, k2p = (x + 0.5 * h) * (y + 0.5 * h * k1y);
      const double k3y = yp + 0.5 * h * k2p, k3p = (x + 0.5 * h) * (y + 0.5 * h * k2y);
      const double k4y = yp + h * k3p, k4p = (x + h) * (y + h * k3y);
      y += h / 6.0 * (k1y + 2 * k2y + 2 * k3y + k4y);
      yp += h / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p);
      x += h;
    }
    const auto end = airy_ai(x0 + 0.1);
    CAPTURE(x0);
    CHECK(std::fabs(y - end.ai) < 1e-11 * (1.0 + std::fabs(end.ai)));
  }
}
