#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "jumpgue/error.hpp"
#include "jumpgue/op_engine.hpp"

using namespace jumpgue;

namespace {

const JumpWeightSpec kJump = JumpWeightSpec::two_jump(0.3, 1.1, 0.4, 0.7);

double rel(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

double log_D_at(const JumpWeightSpec& spec, int n) { return compute_recurrence(spec, n).log_D(n); }

}  // namespace

TEST_CASE("zeroth and first moments") {
  const auto gauss = build_quadrature(JumpWeightSpec::two_jump(-0.4, 0.9, 1.0, 1.0), 1);
  CHECK(std::fabs(gauss.moment(0) - std::sqrt(std::numbers::pi)) < 1e-13);
  CHECK(std::fabs(gauss.moment(1)) < 1e-14);
  // mpmath: √π − ∫_0^1 e^{-t²} dt
  const auto gap = build_quadrature(JumpWeightSpec::two_jump(0.0, 1.0, 0.0, 1.0), 1);
  CHECK(rel(gap.moment(0), 1.0256297180930890019) < 1e-13);
}

TEST_CASE("quadrature grid structure") {
  const auto grid = build_quadrature(kJump, 30);
  for (double w : grid.weights) REQUIRE(w >= 0.0);
  bool has_s1 = false, has_s2 = false;
  for (double b : grid.panel_bounds) {
    has_s1 = has_s1 || b == kJump.s1;
    has_s2 = has_s2 || b == kJump.s2;
  }
  CHECK(has_s1);
  CHECK(has_s2);
  for (std::size_t i = 1; i < grid.panel_bounds.size(); ++i)
    CHECK(grid.panel_bounds[i] - grid.panel_bounds[i - 1] <= 1.0 + 1e-12);
}

TEST_CASE("moments are stable under node doubling") {
  const int n = 20;
  const auto a = build_quadrature(kJump, n);
  const auto b = build_quadrature(kJump, n, {0, 1.0, 2.0});
  for (int k = 0; k <= 2 * n; ++k) {
    CAPTURE(k);
    const double mb = b.moment(k);
    // Odd moments can be small through cancellation; normalise by the absolute moment.
    double scale = 0.0;
    for (std::size_t i = 0; i < b.nodes.size(); ++i) scale += b.weights[i] * std::pow(std::fabs(b.nodes[i]), k);
    CHECK(std::fabs(a.moment(k) - mb) <= 1e-13 * scale);
  }
}

TEST_CASE("Hermite reduction") {
  const auto table = compute_recurrence(JumpWeightSpec::two_jump(0.0, 1.0, 1.0, 1.0), 100);
  for (int n = 0; n < 100; ++n) {
    CAPTURE(n);
    CHECK(std::fabs(table.alpha[n]) < 1e-12);
    if (n > 0) CHECK(std::fabs(table.beta2[n] - 0.5 * n) < 1e-10);
    CHECK(std::fabs(table.log_D(n + 1) - log_hankel_gue(n + 1)) < 1e-8);
  }
  CHECK(std::fabs(table.log_D(1) - 0.5723649429247001) < 1e-12);
  CHECK(std::fabs(table.log_D(2) - std::log(std::numbers::pi / 2.0)) < 1e-12);
}

TEST_CASE("log Hankel equals minus twice the summed log gammas") {
  const auto table = compute_recurrence(kJump, 40);
  double acc = 0.0;
  for (int j = 0; j < 40; ++j) {
    acc += -2.0 * table.log_gamma[j];
    CHECK(std::fabs(table.log_D(j + 1) - acc) <= 1e-12 * (1.0 + std::fabs(acc)));
    if (j > 0) CHECK(table.beta2[j] > 0.0);
  }
}

TEST_CASE("jump weight against extended-precision moment determinants") {
  // ln D_1..ln D_5 for (0.3, 1.1, 0.4, 0.7) computed from 30-digit moments.
  const double want[] = {0.36970671155629045908, -0.054592821660579466643, -0.34764536281350162683,
                         -0.30255998205151108907, 0.46954269863242508782};
  const auto table = compute_recurrence(kJump, 5);
  for (int n = 1; n <= 5; ++n) {
    CAPTURE(n);
    CHECK(std::fabs(table.log_D(n) - want[n - 1]) < 1e-12);
  }
}

TEST_CASE("monic polynomial values") {
  const auto hermite = compute_recurrence(JumpWeightSpec::two_jump(0.0, 1.0, 1.0, 1.0), 6);
  CHECK(std::fabs(eval_monic_op(hermite, 2, 1.0).p - 0.5) < 1e-14);
  CHECK(std::fabs(eval_monic_op(hermite, 3, 0.0).p) < 1e-14);
  CHECK(std::fabs(eval_monic_op(hermite, 3, 2.0).dp - (3.0 * 4.0 - 1.5)) < 1e-13);

  // Gram-Schmidt on monomials with 30-digit moments.
  const auto table = compute_recurrence(kJump, 6);
  const double xs[] = {0.0, 0.3, 1.1, -0.7};
  const double want[] = {0.62237150786927141153, 0.21289665266304885593, -1.8044863272414698757,
                         -0.31578175262385922537};
  for (int i = 0; i < 4; ++i) {
    CAPTURE(xs[i]);
    CHECK(std::fabs(eval_monic_op(table, 4, xs[i]).p - want[i]) < 1e-12);
  }
  // Leading coefficient 1: π_n(x)/x^n → 1.
  CHECK(rel(eval_monic_op(table, 5, 1e4).p, std::pow(1e4, 5)) < 1e-3);
}

TEST_CASE("scaled pair evaluation survives large degree") {
  const auto table = compute_recurrence(JumpWeightSpec::two_jump(10.0, 11.0, 0.5, 0.2), 400);
  const auto pair = eval_monic_pair(table, 400, 40.0);
  CHECK(pair.log_scale > 0.0);
  CHECK(std::isfinite(pair.p));
  CHECK(std::isfinite(pair.dp));
}

TEST_CASE("single-jump constructor reproduces equal-height two-jump table") {
  const auto a = compute_recurrence(JumpWeightSpec::two_jump(0.2, 1.3, 0.6, 0.6), 30);
  const auto b = compute_recurrence(JumpWeightSpec::single_jump(0.2, 0.6), 30);
  for (int n = 0; n < 30; ++n) {
    CHECK(std::fabs(a.alpha[n] - b.alpha[n]) < 1e-12 * (1.0 + std::fabs(b.alpha[n])));
    CHECK(std::fabs(a.beta2[n] - b.beta2[n]) < 1e-12 * (1.0 + b.beta2[n]));
    CHECK(std::fabs(a.log_D(n + 1) - b.log_D(n + 1)) < 1e-10);
  }
}

TEST_CASE("orthogonality on the grid") {
  const int nmax = 50;
  const auto table = compute_recurrence(kJump, nmax + 1);
  const auto grid = build_quadrature(kJump, nmax + 1);
  double worst = 0.0;
  for (int n = 1; n <= nmax; n += 7) {
    const double hn = std::exp(-2.0 * table.log_gamma[n]);
    for (int m = 0; m < n; m += 3) {
      double s = 0.0;
      for (std::size_t i = 0; i < grid.nodes.size(); ++i)
        s += grid.weights[i] * eval_monic_op(table, m, grid.nodes[i]).p * eval_monic_op(table, n, grid.nodes[i]).p;
      worst = std::max(worst, std::fabs(s) / hn);
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("recurrence is stable under node doubling") {
  const JumpWeightSpec spec = JumpWeightSpec::two_jump(-0.8, 1.7, 1.6, 0.3);
  const auto a = compute_recurrence(spec, 200);
  const auto b = compute_recurrence(spec, 200, {0, 1.0, 2.0});
  for (int n = 0; n < 200; ++n) {
    CAPTURE(n);
    CHECK(std::fabs(a.alpha[n] - b.alpha[n]) < 1e-11 * (1.0 + std::sqrt(n)));
    if (n > 0) CHECK(rel(a.beta2[n], b.beta2[n]) < 1e-11);
  }
}

TEST_CASE("three routes to F agree") {
  std::mt19937_64 rng(20261018);
  std::uniform_real_distribution<double> loc(-2.0, 3.0), height(0.0, 2.0);
  const double h = 1e-5;
  for (int trial = 0; trial < 12; ++trial) {
    double s1 = loc(rng), s2 = loc(rng);
    if (s1 > s2) std::swap(s1, s2);
    if (s2 - s1 < 0.05) s2 = s1 + 0.05;
    const double w1 = height(rng), w2 = height(rng);
    const int n = 3 + trial * 2;
    const auto spec = JumpWeightSpec::two_jump(s1, s2, w1, w2);
    const auto table = compute_recurrence(spec, n + 1);
    const double cd = hankel_F_cd(table, n);
    const double sub = hankel_F_subleading(table, n);
    const double fd = (log_D_at(JumpWeightSpec::two_jump(s1 + h, s2 + h, w1, w2), n) -
                       log_D_at(JumpWeightSpec::two_jump(s1 - h, s2 - h, w1, w2), n)) /
                      (2.0 * h);
    CAPTURE(s1);
    CAPTURE(s2);
    CAPTURE(w1);
    CAPTURE(w2);
    CAPTURE(n);
    CHECK(std::fabs(cd - sub) < 1e-9 * (1.0 + std::fabs(sub)));
    CHECK(std::fabs(cd - fd) < 1e-6 * (1.0 + std::fabs(fd)));
  }
}

TEST_CASE("F degenerate cases") {
  const auto hermite = compute_recurrence(JumpWeightSpec::two_jump(0.0, 1.0, 1.0, 1.0), 10);
  CHECK(hankel_F_cd(hermite, 9) == 0.0);
  CHECK(std::fabs(hankel_F_subleading(hermite, 9)) < 1e-11);
  const auto single = compute_recurrence(JumpWeightSpec::two_jump(0.5, 1.5, 0.3, 0.3), 10);
  CHECK(std::fabs(hankel_F_cd(single, 9) - hankel_F_subleading(single, 9)) < 1e-9);
}

TEST_CASE("argument validation and positivity loss") {
  CHECK_THROWS_AS(JumpWeightSpec::two_jump(1.0, 0.5, 0.3, 0.3), Error);
  CHECK_THROWS_AS(JumpWeightSpec::two_jump(0.0, 1.0, -0.1, 0.3), Error);
  CHECK_THROWS_AS(compute_recurrence(kJump, 0), Error);
  CHECK_THROWS_AS(compute_recurrence(kJump, 501), Error);
  try {
    compute_recurrence(JumpWeightSpec::two_jump(-60.0, -59.0, 0.0, 0.0), 40);
    FAIL("expected loss of positivity");
  } catch (const Error& e) {
    CHECK(e.tag() == ErrorTag::loss_of_positivity);
  }
}

TEST_CASE("pure Gaussian at the largest supported degree") {
  // e^{-x²} itself underflows inside the oscillatory zone once n > ~370.
  for (int n : {400, 500}) {
    CAPTURE(n);
    const auto table = compute_recurrence(JumpWeightSpec::single_jump(0.0, 1.0), n);
    CHECK(std::fabs(table.log_D(n) - log_hankel_gue(n)) < 1e-8 * log_hankel_gue(n));
    CHECK(std::fabs(table.beta2[n - 1] - 0.5 * (n - 1)) < 1e-9 * n);
  }
}
