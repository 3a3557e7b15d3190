#pragma once

#include <cstdint>
#include <vector>

#include "core/ldp.hpp"
#include "core/symbol.hpp"

namespace toepspec {

/// Splittable 64-bit generator: each (seed, replicate) pair keys an
/// independent substream, so parallel schedules reproduce bit-identical
/// results.  Gaussians come from Box-Muller over the substream's uniforms.
class GaussianSubstream {
 public:
  GaussianSubstream(std::uint64_t seed, std::uint64_t replicate);

  double next_uniform();   // in (0, 1]
  double next_gaussian();

 private:
  std::uint64_t next_word();
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct SimulationConfig {
  double theta = 0.0;
  long n = 0;
  long replicates = 1;
  std::uint64_t seed = 0;
  std::vector<double> thresholds;  // ascending
  int threads = 1;
};

struct TailEstimate {
  double threshold = 0.0;
  double empirical_prob = 0.0;
  double empirical_rate = 0.0;   // -(1/n) log prob; +inf when degenerate
  double rate_reference = 0.0;   // J(threshold)
  double stderr_prob = 0.0;      // binomial standard error of the probability
  long exceedances = 0;
  bool upper_tail = false;       // counted P(W >= x); otherwise P(W <= x)
  bool degenerate = false;       // no exceedances observed
};

/// Stationary AR(1) path X_0..X_n with Var X_0 = 1/(1-theta^2), so the path
/// covariance matches the Toeplitz section of the spectral density.
std::vector<double> sample_path(double theta, long n, GaussianSubstream& rng);

/// W_n(f) = (1/n) x^T T_n(f) x for a path of length n+1, evaluated through
/// the coefficient band of f.
double quadratic_form(const Symbol& f, const std::vector<double>& path);

/// Monte Carlo tail exponents against the rate function.  Thresholds at or
/// above mu count upper tails, the rest lower tails.
std::vector<TailEstimate> tail_study(const SimulationConfig& config, const Symbol& f,
                                     const RateFunction& rate);

}  // namespace toepspec
