#include <doctest.h>

#include <cmath>
#include <vector>

#include "core/errors.hpp"
#include "core/gauss.hpp"
#include "core/sections.hpp"
#include "test_helpers.hpp"

using namespace toepspec;
using toepspec::testing::a_plus_cos;

TEST_CASE("substreams are deterministic and distinct") {
  GaussianSubstream a(7, 0), b(7, 0), c(7, 1);
  for (int i = 0; i < 16; ++i) {
    const double va = a.next_gaussian();
    CHECK(va == b.next_gaussian());
  }
  bool any_different = false;
  GaussianSubstream a2(7, 0);
  for (int i = 0; i < 16; ++i)
    any_different = any_different || a2.next_gaussian() != c.next_gaussian();
  CHECK(any_different);

  GaussianSubstream u(3, 5);
  for (int i = 0; i < 1000; ++i) {
    const double v = u.next_uniform();
    CHECK(v > 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("path moments match the stationary ar1 law") {
  const long replicates = 100000;

  // theta = 0: iid standard normals.
  double acc0 = 0.0;
  for (long r = 0; r < replicates; ++r) {
    GaussianSubstream rng(11, static_cast<std::uint64_t>(r));
    const std::vector<double> x = sample_path(0.0, 2, rng);
    acc0 += x[0] * x[0];
  }
  CHECK(std::abs(acc0 / replicates - 1.0) < 0.02);

  // theta = 0.5: Var X_0 = 4/3 and lag-1 covariance theta/(1-theta^2) = 2/3.
  double var = 0.0, lag1 = 0.0;
  for (long r = 0; r < replicates; ++r) {
    GaussianSubstream rng(12, static_cast<std::uint64_t>(r));
    const std::vector<double> x = sample_path(0.5, 2, rng);
    var += x[0] * x[0];
    lag1 += x[0] * x[1];
  }
  var /= replicates;
  lag1 /= replicates;
  // stderr of a chi-squared-like mean: sqrt(2) Var / sqrt(R) ~ 0.006.
  CHECK(std::abs(var - 4.0 / 3.0) < 3.0 * 0.006);
  CHECK(std::abs(lag1 - 2.0 / 3.0) < 0.02);
}

TEST_CASE("sample covariance matches the toeplitz section entrywise") {
  const double theta = 0.4;
  const long n = 4;
  const long replicates = 100000;
  Matrix cov(n + 1, n + 1);
  for (long r = 0; r < replicates; ++r) {
    GaussianSubstream rng(99, static_cast<std::uint64_t>(r));
    const std::vector<double> x = sample_path(theta, n, rng);
    for (long i = 0; i <= n; ++i)
      for (long j = 0; j <= n; ++j)
        cov(i, j) += x[static_cast<size_t>(i)] * x[static_cast<size_t>(j)];
  }
  cov *= cplx{1.0 / static_cast<double>(replicates), 0.0};
  const Matrix ref = toeplitz_section(Symbol::ar1_density(theta), n);
  for (long i = 0; i <= n; ++i)
    for (long j = 0; j <= n; ++j) {
      const double cii = ref(i, i).real();
      const double cjj = ref(j, j).real();
      const double cij = ref(i, j).real();
      const double se = std::sqrt((cii * cjj + cij * cij) / replicates);
      CHECK(std::abs(cov(i, j).real() - cij) <= 5.0 * se);
    }
}

TEST_CASE("quadratic form closed cases") {
  const long n = 10;
  std::vector<double> spike(n + 1, 0.0);
  spike[0] = 3.0;
  CHECK(quadratic_form(Symbol::constant(1.0), spike) ==
        doctest::Approx(9.0 / n).epsilon(1e-14));

  const double a = 0.7;
  std::vector<double> ones(n + 1, 1.0);
  CHECK(quadratic_form(a_plus_cos(a), ones) ==
        doctest::Approx((a * (n + 1) + n) / n).epsilon(1e-14));
}

TEST_CASE("mean of the quadratic form matches the trace identity") {
  const double theta = 0.5;
  const long n = 16;
  const Symbol f = a_plus_cos(-1.0);
  const long replicates = 20000;
  double mean = 0.0, sq = 0.0;
  for (long r = 0; r < replicates; ++r) {
    GaussianSubstream rng(5, static_cast<std::uint64_t>(r));
    const std::vector<double> x = sample_path(theta, n, rng);
    const double w = quadratic_form(f, x);
    mean += w;
    sq += w * w;
  }
  mean /= replicates;
  sq = sq / replicates - mean * mean;
  const double se = std::sqrt(sq / replicates);
  const Matrix product = toeplitz_section(f, n) * toeplitz_section(Symbol::ar1_density(theta), n);
  const double expected = product.trace().real() / static_cast<double>(n);
  CHECK(std::abs(mean - expected) <= 4.0 * se);
}

TEST_CASE("tail study: determinism, schedule independence, degenerate counts") {
  const Symbol f = a_plus_cos(-1.0);
  const Symbol g = Symbol::ar1_density(0.5);
  const RateFunction rate(f, g, -1.0, 0.0);

  SimulationConfig cfg;
  cfg.theta = 0.5;
  cfg.n = 100;
  cfg.replicates = 40000;
  cfg.seed = 424242;
  cfg.thresholds = {-3.0, -0.9, -2.0 / 3.0, -0.5};
  cfg.threads = 1;

  const std::vector<TailEstimate> first = tail_study(cfg, f, rate);
  cfg.threads = 2;
  const std::vector<TailEstimate> second = tail_study(cfg, f, rate);
  REQUIRE(first.size() == second.size());
  for (size_t i = 0; i < first.size(); ++i) {
    CHECK(first[i].exceedances == second[i].exceedances);
    CHECK(first[i].empirical_prob == second[i].empirical_prob);
  }

  // x = mu: roughly half the mass (finite-n skew shifts it a few percent),
  // and J(mu) = 0.
  CHECK(std::abs(first[2].empirical_prob - 0.5) < 0.05);
  CHECK(std::abs(first[2].rate_reference) < 1e-8);

  // x = -3 sits far below the support floor: degenerate, reported not fatal.
  CHECK(first[0].degenerate);
  CHECK(std::isinf(first[0].empirical_rate));
  CHECK(!first[0].upper_tail);

  // Farther from mu means a larger empirical rate on the same side.
  CHECK(first[1].empirical_rate > 0.0);
  CHECK(first[3].upper_tail);
}

TEST_CASE("input validation") {
  GaussianSubstream rng(1, 1);
  try {
    (void)sample_path(1.5, 4, rng);
    FAIL_CHECK("expected InvalidArgument");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
  }
  try {
    (void)quadratic_form(Symbol::trig_poly({{1, cplx{1.0, 0.0}}}),
                         std::vector<double>{1.0, 2.0});
    FAIL_CHECK("expected NotRealValued");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotRealValued);
  }
}
