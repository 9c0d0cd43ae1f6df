#include "jumpgue/rmt_oracles.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <thread>

#include "jumpgue/airy.hpp"
#include "jumpgue/error.hpp"
#include "jumpgue/gauss_legendre.hpp"

namespace jumpgue {

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), 0x9e3779b9u};
  return std::mt19937_64(seq);
}

Tridiagonal sample_gue_tridiagonal(int n, std::mt19937_64& rng) {
  Tridiagonal t;
  t.diag.resize(n);
  t.off.resize(n > 0 ? n - 1 : 0);
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  for (int i = 0; i < n; ++i) t.diag[i] = gauss(rng);
  for (int i = 0; i + 1 < n; ++i) {
    const int k = n - 1 - i;
    // χ²_{2k} is Gamma(k, scale 2).
    std::gamma_distribution<double> chi2(static_cast<double>(k), 2.0);
    t.off[i] = 0.5 * std::sqrt(chi2(rng));
  }
  return t;
}

int sturm_count(const Tridiagonal& t, double x) {
  int count = 0;
  double q = 1.0;
  const std::size_t n = t.diag.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double b2 = i > 0 ? t.off[i - 1] * t.off[i - 1] : 0.0;
    q = (t.diag[i] - x) - (i > 0 ? b2 / q : 0.0);
    if (q == 0.0) q = -1e-300;
    if (q < 0.0) ++count;
  }
  return count;
}

std::vector<double> tridiagonal_eigenvalues(const Tridiagonal& t) {
  const int n = static_cast<int>(t.diag.size());
  double lo = 0.0, hi = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::fabs(t.off[i - 1]) : 0.0) + (i + 1 < n ? std::fabs(t.off[i]) : 0.0);
    lo = std::min(lo, t.diag[i] - r);
    hi = std::max(hi, t.diag[i] + r);
  }
  lo -= 1.0;
  hi += 1.0;
  std::vector<double> ev(n);
  for (int k = 0; k < n; ++k) {
    double a = lo, b = hi;  // count(a) <= k < count(b)
    while (b - a > 1e-14 * std::max(1.0, std::fabs(a) + std::fabs(b))) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      if (sturm_count(t, mid) <= k)
        a = mid;
      else
        b = mid;
    }
    ev[k] = 0.5 * (a + b);
  }
  return ev;
}

SpectrumSample sample_gue_spectrum(int n, std::uint64_t seed) {
  require(n >= 2 && n <= 2000, "sample_gue_spectrum: n must lie in [2, 2000]");
  auto rng = make_stream(seed, 0);
  SpectrumSample out;
  out.n = n;
  out.seed = seed;
  out.eigenvalues = tridiagonal_eigenvalues(sample_gue_tridiagonal(n, rng));
  return out;
}

namespace {

// Runs body(block_index, first, count, counters) over fixed blocks and sums
// the per-block counters in block order.
template <int K, class Body>
std::array<long, K> run_blocks(long n_samples, const MCOptions& opts, Body&& body) {
  const long block = std::max(1, opts.block);
  const long n_blocks = (n_samples + block - 1) / block;
  std::vector<std::array<long, K>> per_block(n_blocks);
  int workers = opts.workers > 0 ? opts.workers : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min<int>(workers, static_cast<int>(n_blocks)));
  auto worker = [&](int w) {
    for (long b = w; b < n_blocks; b += workers) {
      std::array<long, K> c{};
      body(b, std::min(block, n_samples - b * block), c);
      per_block[b] = c;
    }
  };
  if (workers == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker, w);
    for (auto& th : pool) th.join();
  }
  std::array<long, K> total{};
  for (const auto& c : per_block)
    for (int k = 0; k < K; ++k) total[k] += c[k];
  return total;
}

double binomial_stderr(double p, long n) { return n > 0 ? std::sqrt(p * (1.0 - p) / n) : 0.0; }

}  // namespace

MCEstimate mc_gap_probability(int n, double s1, double s2, long n_samples, std::uint64_t seed,
                              const MCOptions& opts) {
  require(n >= 2 && n <= 2000, "mc_gap_probability: n must lie in [2, 2000]");
  require(s1 < s2, "mc_gap_probability: s1 < s2 required");
  require(n_samples >= 1, "mc_gap_probability: n_samples must be positive");
  const auto counts = run_blocks<1>(n_samples, opts, [&](long b, long count, std::array<long, 1>& c) {
    auto rng = make_stream(seed, static_cast<std::uint64_t>(b));
    for (long i = 0; i < count; ++i) {
      const Tridiagonal t = sample_gue_tridiagonal(n, rng);
      if (sturm_count(t, s1) == sturm_count(t, s2)) ++c[0];
    }
  });
  MCEstimate out;
  out.seed = seed;
  out.n_samples = n_samples;
  out.n_generated = n_samples;
  out.estimate = static_cast<double>(counts[0]) / n_samples;
  out.stderr_ = binomial_stderr(out.estimate, n_samples);
  return out;
}

MCConditional mc_conditional_distribution(int n, double x, double y, double p, long n_samples,
                                          std::uint64_t seed, const MCOptions& opts) {
  require(n >= 2 && n <= 2000, "mc_conditional_distribution: n must lie in [2, 2000]");
  require(p > 0.0 && p < 1.0, "mc_conditional_distribution: p must lie in (0, 1)");
  require(n_samples >= 1, "mc_conditional_distribution: n_samples must be positive");
  // Counters: kept max < y, (kept max < y and λ_n < x), λ_n < x.
  const auto counts = run_blocks<3>(n_samples, opts, [&](long b, long count, std::array<long, 3>& c) {
    auto rng = make_stream(seed, static_cast<std::uint64_t>(b));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (long i = 0; i < count; ++i) {
      const Tridiagonal t = sample_gue_tridiagonal(n, rng);
      const int above_y = n - sturm_count(t, y);
      bool all_removed = true;
      for (int k = 0; k < above_y; ++k) all_removed = (unif(rng) < p) && all_removed;
      const bool below_x = sturm_count(t, x) == n;
      if (all_removed) {
        ++c[0];
        if (below_x) ++c[1];
      }
      if (below_x) ++c[2];
    }
  });
  if (counts[0] < 100)
    fail(ErrorTag::insufficient_conditioning,
         "only " + std::to_string(counts[0]) + " samples satisfy the conditioning event");
  MCConditional out;
  out.conditional.seed = seed;
  out.conditional.n_generated = n_samples;
  out.conditional.n_samples = counts[0];
  out.conditional.estimate = static_cast<double>(counts[1]) / counts[0];
  out.conditional.stderr_ = binomial_stderr(out.conditional.estimate, counts[0]);
  out.unconditional_lambda_below_x = static_cast<double>(counts[2]) / n_samples;
  out.unconditional_kept_below_y = static_cast<double>(counts[0]) / n_samples;
  const double joint = x < y ? out.unconditional_lambda_below_x : static_cast<double>(counts[1]) / n_samples;
  out.ratio_estimate = joint / out.unconditional_kept_below_y;
  return out;
}

double airy_kernel(double x, double y) {
  const AiryValue ax = airy_ai(x);
  if (x == y) return ax.aip * ax.aip - x * ax.ai * ax.ai;
  const AiryValue ay = airy_ai(y);
  return (ax.ai * ay.aip - ax.aip * ay.ai) / (x - y);
}

namespace {

double fredholm_once(double t1, double t2, double sig1, double sig2, int m) {
  const GaussRule rule = gauss_legendre(m);
  std::vector<double> nodes, weights, symbol;
  auto add = [&](const std::vector<double>& xs, const std::vector<double>& ws, double sig) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      nodes.push_back(xs[i]);
      weights.push_back(ws[i]);
      symbol.push_back(sig);
    }
  };
  if (sig1 != 0.0 && t2 > t1) {
    std::vector<double> xs, ws;
    append_gauss_legendre(rule, t1, t2, xs, ws);
    add(xs, ws, sig1);
  }
  if (sig2 != 0.0) {
    std::vector<double> us, ws;
    append_gauss_legendre(rule, 0.0, std::sqrt(14.0), us, ws);
    std::vector<double> xs(us.size());
    for (std::size_t i = 0; i < us.size(); ++i) {
      xs[i] = t2 + us[i] * us[i];
      ws[i] *= 2.0 * us[i];
    }
    add(xs, ws, sig2);
  }
  const Eigen::Index N = static_cast<Eigen::Index>(nodes.size());
  if (N == 0) return 1.0;
  std::vector<AiryValue> ai(N);
  for (Eigen::Index i = 0; i < N; ++i) ai[i] = airy_ai(nodes[i]);
  Eigen::MatrixXd M(N, N);
  for (Eigen::Index i = 0; i < N; ++i) {
    for (Eigen::Index j = 0; j < N; ++j) {
      double k;
      if (i == j || nodes[i] == nodes[j]) {
        k = ai[i].aip * ai[i].aip - nodes[i] * ai[i].ai * ai[i].ai;
      } else {
        k = (ai[i].ai * ai[j].aip - ai[i].aip * ai[j].ai) / (nodes[i] - nodes[j]);
      }
      // Scaled by √w on both sides (a similarity transform of the Nyström matrix).
      M(i, j) = (i == j ? 1.0 : 0.0) - std::sqrt(weights[i]) * k * std::sqrt(weights[j]) * symbol[j];
    }
  }
  return Eigen::PartialPivLU<Eigen::MatrixXd>(M).determinant();
}

}  // namespace

FredholmResult fredholm_airy_discontinuous(double t1, double t2, double omega1, double omega2, int m_nodes) {
  require(t1 <= t2, "fredholm_airy_discontinuous: t1 <= t2 required");
  require(m_nodes >= 20 && m_nodes <= 200, "fredholm_airy_discontinuous: m_nodes must lie in [20, 200]");
  const double sig1 = 1.0 - omega1, sig2 = 1.0 - omega2;
  FredholmResult r;
  r.m_nodes = m_nodes;
  r.coarse = fredholm_once(t1, t2, sig1, sig2, m_nodes);
  r.value = fredholm_once(t1, t2, sig1, sig2, 2 * m_nodes);
  r.difference = std::fabs(r.value - r.coarse);
  if (r.difference > 1e-8)
    fail(ErrorTag::non_convergence, "Nystrom determinant changed by " + std::to_string(r.difference) +
                                        " when the nodes were doubled");
  return r;
}

}  // namespace jumpgue
