#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace jumpgue {

/// Eigenvalues of an n×n GUE matrix with density ∝ exp(-tr H²), ascending.
struct SpectrumSample {
  std::vector<double> eigenvalues;
  std::uint64_t seed = 0;
  int n = 0;
};

/// Symmetric tridiagonal model of the same ensemble: diagonal N(0, 1/2),
/// off-diagonals χ_{2k}/2 for k = n-1, ..., 1.
struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;  // off[i] couples rows i and i+1
};
Tridiagonal sample_gue_tridiagonal(int n, std::mt19937_64& rng);

/// Number of eigenvalues of the tridiagonal matrix strictly below x (Sturm).
int sturm_count(const Tridiagonal& t, double x);

/// All eigenvalues by Sturm bisection.
std::vector<double> tridiagonal_eigenvalues(const Tridiagonal& t);

/// Random stream for (seed, stream index); streams are disjoint for
/// distinct indices.
std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream);

SpectrumSample sample_gue_spectrum(int n, std::uint64_t seed);

struct MCEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
  long n_samples = 0;    // samples entering the estimate (after conditioning)
  long n_generated = 0;  // matrices drawn
  std::uint64_t seed = 0;
};

/// Monte-Carlo runs split the work into fixed blocks of samples, each with
/// its own stream, so results do not depend on the number of workers.
struct MCOptions {
  int workers = 0;  // 0 = hardware concurrency
  int block = 4096;
};

/// Fraction of matrices with no eigenvalue in (s1, s2).
MCEstimate mc_gap_probability(int n, double s1, double s2, long n_samples, std::uint64_t seed,
                              const MCOptions& opts = {});

/// Pro(λ_n < x | largest kept eigenvalue < y) where each eigenvalue is
/// removed independently with probability p. Signals
/// insufficient_conditioning below 100 conditioned samples.
/// ratio_estimate is the same quantity formed as
/// #{λ_n < x and kept max < y} / #{kept max < y} from the unconditioned
/// counts; for x < y the numerator event reduces to λ_n < x.
struct MCConditional {
  MCEstimate conditional;
  double ratio_estimate = 0.0;
  double unconditional_lambda_below_x = 0.0;  // fraction with λ_n < x
  double unconditional_kept_below_y = 0.0;    // fraction with kept max < y
};
MCConditional mc_conditional_distribution(int n, double x, double y, double p, long n_samples,
                                          std::uint64_t seed, const MCOptions& opts = {});

/// det(I - K χ) for the Airy kernel with symbol (1-ω1) on (t1, t2) and
/// (1-ω2) on (t2, ∞). Nyström with m Gauss–Legendre nodes on [t1, t2] and on
/// [t2, t2+14] in the variable u = √(x - t2); repeated with 2m nodes.
struct FredholmResult {
  double value = 0.0;        // 2m-node value
  double coarse = 0.0;       // m-node value
  double difference = 0.0;
  int m_nodes = 0;
};
FredholmResult fredholm_airy_discontinuous(double t1, double t2, double omega1, double omega2, int m_nodes = 60);

/// Airy kernel, with the confluent limit Ai'(x)² - x Ai(x)² on the diagonal.
double airy_kernel(double x, double y);

}  // namespace jumpgue
