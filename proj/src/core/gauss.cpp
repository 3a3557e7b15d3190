#include "core/gauss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "core/errors.hpp"
#include "core/quadrature.hpp"

namespace toepspec {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

GaussianSubstream::GaussianSubstream(std::uint64_t seed, std::uint64_t replicate)
    : state_(mix64(mix64(seed + kGolden) + kGolden * (replicate + 1))) {}

std::uint64_t GaussianSubstream::next_word() {
  state_ += kGolden;
  return mix64(state_);
}

double GaussianSubstream::next_uniform() {
  // 53-bit mantissa mapped to (0, 1]: never zero, so log() below is safe.
  return (static_cast<double>(next_word() >> 11) + 1.0) * 0x1.0p-53;
}

double GaussianSubstream::next_gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = next_uniform();
  const double u2 = next_uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = kTwoPi * u2;
  spare_ = r * std::sin(angle);
  has_spare_ = true;
  return r * std::cos(angle);
}

std::vector<double> sample_path(double theta, long n, GaussianSubstream& rng) {
  if (!(std::abs(theta) < 1.0))
    fail(ErrorCode::InvalidArgument, "sample_path requires |theta| < 1");
  if (n < 0) fail(ErrorCode::InvalidArgument, "path length must be >= 1");
  std::vector<double> x(static_cast<size_t>(n + 1));
  x[0] = rng.next_gaussian() / std::sqrt(1.0 - theta * theta);
  for (long t = 1; t <= n; ++t)
    x[static_cast<size_t>(t)] = theta * x[static_cast<size_t>(t - 1)] + rng.next_gaussian();
  return x;
}

namespace {

// x^T T_n(f) x = f_0 S_0 + sum_k 2 Re(f_k) S_k with S_k the lag-k sum;
// weights[k] holds the lag-k factor.
std::vector<double> lag_weights(const Symbol& f, long n) {
  const int band = static_cast<int>(std::min<long>(n, f.band(1e-14)));
  const std::vector<cplx> coeffs = f.fourier_range(0, band);
  std::vector<double> w(static_cast<size_t>(band + 1));
  w[0] = coeffs[0].real();
  for (int k = 1; k <= band; ++k)
    w[static_cast<size_t>(k)] = 2.0 * coeffs[static_cast<size_t>(k)].real();
  return w;
}

double quadratic_form_with(const std::vector<double>& weights,
                           const std::vector<double>& path) {
  const long n = static_cast<long>(path.size()) - 1;
  double s0 = 0.0;
  for (double v : path) s0 += v * v;
  double acc = weights[0] * s0;
  for (size_t k = 1; k < weights.size(); ++k) {
    const double w = weights[k];
    if (w == 0.0) continue;
    double sk = 0.0;
    for (size_t j = 0; j + k < path.size(); ++j) sk += path[j + k] * path[j];
    acc += w * sk;
  }
  return acc / static_cast<double>(n);
}

}  // namespace

double quadratic_form(const Symbol& f, const std::vector<double>& path) {
  const long n = static_cast<long>(path.size()) - 1;
  if (n < 1) fail(ErrorCode::InvalidArgument, "quadratic form needs a path of length >= 2");
  if (!f.is_real_valued()) fail(ErrorCode::NotRealValued, "f must be real-valued");
  return quadratic_form_with(lag_weights(f, n), path);
}

std::vector<TailEstimate> tail_study(const SimulationConfig& config, const Symbol& f,
                                     const RateFunction& rate) {
  if (config.replicates < 1)
    fail(ErrorCode::InvalidArgument, "replicates must be >= 1");
  if (config.n < 1) fail(ErrorCode::InvalidArgument, "n must be >= 1");
  if (!std::is_sorted(config.thresholds.begin(), config.thresholds.end()))
    fail(ErrorCode::InvalidArgument, "thresholds must be sorted ascending");
  if (config.thresholds.empty())
    fail(ErrorCode::InvalidArgument, "at least one threshold is required");
  // Everything the workers touch is validated here; a throw inside a thread
  // would terminate the process.
  if (!(std::abs(config.theta) < 1.0))
    fail(ErrorCode::InvalidArgument, "tail study requires |theta| < 1");
  if (!f.is_real_valued()) fail(ErrorCode::NotRealValued, "f must be real-valued");

  const double mu = rate.mu();
  const size_t m = config.thresholds.size();
  const long replicates = config.replicates;
  const int threads = std::clamp(config.threads, 1, 64);
  const std::vector<double> weights = lag_weights(f, config.n);

  std::vector<std::vector<long>> counts(static_cast<size_t>(threads),
                                        std::vector<long>(m, 0));
  auto worker = [&](int which, long lo, long hi) {
    std::vector<long>& local = counts[static_cast<size_t>(which)];
    for (long r = lo; r < hi; ++r) {
      GaussianSubstream rng(config.seed, static_cast<std::uint64_t>(r));
      const std::vector<double> path = sample_path(config.theta, config.n, rng);
      const double w = quadratic_form_with(weights, path);
      for (size_t i = 0; i < m; ++i) {
        const double x = config.thresholds[i];
        if (x >= mu ? w >= x : w <= x) ++local[i];
      }
    }
  };

  if (threads == 1) {
    worker(0, 0, replicates);
  } else {
    std::vector<std::thread> pool;
    const long chunk = (replicates + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const long lo = t * chunk;
      const long hi = std::min<long>(replicates, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(worker, t, lo, hi);
    }
    for (std::thread& th : pool) th.join();
  }

  std::vector<TailEstimate> out(m);
  for (size_t i = 0; i < m; ++i) {
    long total = 0;
    for (int t = 0; t < threads; ++t) total += counts[static_cast<size_t>(t)][i];
    TailEstimate& e = out[i];
    e.threshold = config.thresholds[i];
    e.upper_tail = config.thresholds[i] >= mu;
    e.exceedances = total;
    e.empirical_prob = static_cast<double>(total) / static_cast<double>(replicates);
    e.degenerate = total == 0;
    e.empirical_rate =
        e.degenerate ? std::numeric_limits<double>::infinity()
                     : -std::log(e.empirical_prob) / static_cast<double>(config.n);
    e.stderr_prob = std::sqrt(e.empirical_prob * (1.0 - e.empirical_prob) /
                              static_cast<double>(replicates));
    e.rate_reference = rate.J(e.threshold);
  }
  return out;
}

}  // namespace toepspec
