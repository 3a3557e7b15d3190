#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "core/errors.hpp"
#include "core/linalg.hpp"
#include "core/sections.hpp"
#include "core/spectrum.hpp"
#include "test_helpers.hpp"

using namespace toepspec;
using toepspec::testing::a_plus_cos;
using toepspec::testing::random_real_trig_poly;

TEST_CASE("g = 1 reduces the product to a single section") {
  std::mt19937_64 rng(31);
  const Symbol f = random_real_trig_poly(rng, 3);
  const Symbol one = Symbol::constant(1.0);
  const SpectrumResult s = product_spectrum(f, one, 24, false);
  const EigenDecomposition direct = hermitian_eig(toeplitz_section(f, 24), false);
  REQUIRE(s.eigenvalues.size() == direct.eigenvalues.size());
  for (size_t k = 0; k < s.eigenvalues.size(); ++k)
    CHECK(std::abs(s.eigenvalues[k] - direct.eigenvalues[k]) < 1e-10);
}

TEST_CASE("lambda_max of cos against the tridiagonal closed form") {
  for (long n : {8L, 64L}) {
    const SpectrumResult s =
        product_spectrum(Symbol::cosine(), Symbol::constant(1.0), n, false);
    CHECK(std::abs(s.lambda_max - std::cos(M_PI / static_cast<double>(n + 2))) < 1e-11);
  }
}

TEST_CASE("ar1 with theta = 0 behaves exactly like the constant symbol") {
  const Symbol f = a_plus_cos(0.3);
  const SpectrumResult via_ar1 = product_spectrum(f, Symbol::ar1_density(0.0), 16, false);
  const SpectrumResult via_one = product_spectrum(f, Symbol::constant(1.0), 16, false);
  for (size_t k = 0; k < via_ar1.eigenvalues.size(); ++k)
    CHECK(std::abs(via_ar1.eigenvalues[k] - via_one.eigenvalues[k]) < 1e-12);
}

TEST_CASE("the closed-form example pins lambda_min at finite order") {
  // Measured in calibration: the limiting value -1 is attained to machine
  // precision already at small n for a=-1, theta=1/2 (the shifted pencil is
  // exactly singular there), so the 0.05 envelope is beaten by far.
  const SpectrumResult s = product_spectrum(a_plus_cos(-1.0), Symbol::ar1_density(0.5),
                                            256, false);
  CHECK(std::abs(s.lambda_min + 1.0) < 1e-9);
  CHECK(std::abs(s.lambda_min + 1.0) < 0.05);
}

TEST_CASE("preconditions of the product spectrum") {
  const Symbol e_ix = Symbol::trig_poly({{1, cplx{1.0, 0.0}}});
  try {
    (void)product_spectrum(e_ix, Symbol::constant(1.0), 4, false);
    FAIL_CHECK("expected NotRealValued");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotRealValued);
  }
  try {
    (void)product_spectrum(a_plus_cos(0.0), Symbol::cosine(), 4, false);
    FAIL_CHECK("expected GNotNonnegative");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GNotNonnegative);
  }
}

TEST_CASE("convergence sweep with the closed-form reference") {
  const Example1Limits lim = example1_limits(-1.0, 0.5);
  const ConvergenceReport rep =
      convergence_sweep(a_plus_cos(-1.0), Symbol::ar1_density(0.5), {32, 64, 128},
                        reference_from(lim));
  REQUIRE(rep.rows.size() == 3);
  REQUIRE(rep.errors_min.size() == 3);
  // errors_max decays cleanly; errors_min sits at the roundoff floor.
  CHECK(rep.errors_max[1] < rep.errors_max[0]);
  CHECK(rep.errors_max[2] < rep.errors_max[1]);
  for (double e : rep.errors_min) CHECK(e < 1e-9);
  CHECK(rep.errors_min.back() < 0.05);

  try {
    (void)convergence_sweep(a_plus_cos(0.0), Symbol::constant(1.0), {8, 8}, {});
    FAIL_CHECK("expected InvalidArgument for non-ascending n_list");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
  }
}

TEST_CASE("convergence of lambda_max for g = 1, f = cos") {
  const ConvergenceReport rep = convergence_sweep(
      Symbol::cosine(), Symbol::constant(1.0), {8, 16, 32}, ReferenceLimits{-1.0, 1.0});
  for (size_t i = 0; i < rep.rows.size(); ++i) {
    const long n = rep.rows[i].n;
    CHECK(std::abs(rep.rows[i].lambda_max_n - std::cos(M_PI / (n + 2.0))) < 1e-11);
  }
  CHECK(rep.errors_max[2] < rep.errors_max[1]);
  CHECK(rep.errors_max[1] < rep.errors_max[0]);
}

TEST_CASE("essential interval values") {
  const EssentialInterval ex = essential_interval(a_plus_cos(-1.0), Symbol::ar1_density(0.5));
  CHECK(ex.lo == doctest::Approx(-8.0 / 9.0).epsilon(1e-9));
  CHECK(std::abs(ex.hi) < 1e-10);

  const EssentialInterval ones =
      essential_interval(Symbol::constant(1.0), Symbol::constant(1.0));
  CHECK(ones.lo == doctest::Approx(1.0));
  CHECK(ones.hi == doctest::Approx(1.0));

  const EssentialInterval cosone =
      essential_interval(Symbol::cosine(), Symbol::constant(1.0));
  CHECK(cosone.lo == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(cosone.hi == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("example limits across the four branches") {
  const Example1Limits base = example1_limits(-1.0, 0.5);
  CHECK(base.a_theta == doctest::Approx(-1.5));
  CHECK(base.b_theta == doctest::Approx(-0.5));
  CHECK(base.lambda_min_limit == doctest::Approx(-1.0));
  CHECK(base.lambda_max_limit == doctest::Approx(0.0));
  CHECK(base.boundary_candidates[0] == doctest::Approx(-8.0 / 9.0));
  CHECK(base.boundary_candidates[1] == doctest::Approx(0.0));
  CHECK(base.boundary_candidates[2] == doctest::Approx(-1.0));

  const Example1Limits flat = example1_limits(0.0, 0.0);
  CHECK(flat.lambda_min_limit == doctest::Approx(-1.0));
  CHECK(flat.lambda_max_limit == doctest::Approx(1.0));

  // theta < 0 with a outside ]a_theta, b_theta[ = ]0.5, 1.5[: both limits
  // come from inf/sup(fg).  Resolved numerically: the n = 512 sweep gives
  // lambda_min -> -8 and lambda_max -> 0, not the third candidate 1/3.
  const Example1Limits neg = example1_limits(-1.0, -0.5);
  CHECK(neg.lambda_min_limit == doctest::Approx(-8.0));
  CHECK(neg.lambda_max_limit == doctest::Approx(0.0));

  // theta < 0 with a inside the interval: the third candidate becomes the
  // maximum; at a=1 it equals 1 and is attained exactly at finite order.
  const Example1Limits inner = example1_limits(1.0, -0.5);
  CHECK(inner.lambda_max_limit == doctest::Approx(1.0));
  CHECK(inner.lambda_min_limit == doctest::Approx(0.0));
  const SpectrumResult s = product_spectrum(a_plus_cos(1.0), Symbol::ar1_density(-0.5),
                                            64, false);
  CHECK(std::abs(s.lambda_max - 1.0) < 1e-9);

  const SpectrumResult sneg = product_spectrum(a_plus_cos(-1.0), Symbol::ar1_density(-0.5),
                                               128, false);
  CHECK(std::abs(sneg.lambda_min + 8.0) < 0.02);
  CHECK(std::abs(sneg.lambda_max) < 2e-4);
}

TEST_CASE("pencil residual vanishes on the computed spectrum") {
  const SpectrumResult s = product_spectrum(a_plus_cos(-1.0), Symbol::ar1_density(0.5),
                                            16, false);
  CHECK(pencil_zero_check(-1.0, 0.5, 16, s) <= 1e-6);

  // theta = 0 reduces the inverse to the identity; same machinery applies.
  const SpectrumResult s0 = product_spectrum(a_plus_cos(0.3), Symbol::ar1_density(0.0),
                                             16, false);
  CHECK(pencil_zero_check(0.3, 0.0, 16, s0) <= 1e-6);
}

TEST_CASE("pencil determinant changes sign across simple eigenvalues") {
  const double a = 0.3, theta = 0.2;
  const long n = 8;
  const SpectrumResult s = product_spectrum(a_plus_cos(a), Symbol::ar1_density(theta),
                                            n, false);
  const Matrix tf = toeplitz_section(a_plus_cos(a), n);
  const Matrix ginv = ar1_inverse_tridiagonal(theta, n);
  auto det_sign_at = [&](double t) {
    Matrix m = ginv;
    m *= cplx{-1.0, 0.0};
    Matrix tfs = tf;
    tfs *= cplx{t, 0.0};
    m += tfs;
    return log_det(m).phase.real() > 0 ? 1 : -1;
  };
  int checked = 0;
  for (double lambda : s.eigenvalues) {
    if (std::abs(lambda) < 1e-3) continue;
    const double t = 1.0 / lambda;
    if (det_sign_at(t - 1e-6) != -det_sign_at(t + 1e-6)) continue;  // paired roots
    ++checked;
  }
  // All eigenvalues of this pair are simple and well separated: every
  // inverse must flip the determinant sign.
  int flips = 0;
  for (double lambda : s.eigenvalues) {
    if (std::abs(lambda) < 1e-3) continue;
    const double t = 1.0 / lambda;
    if (det_sign_at(t - 1e-6) != det_sign_at(t + 1e-6)) ++flips;
  }
  CHECK(flips >= static_cast<int>(s.eigenvalues.size()) - 2);
  (void)checked;
}

TEST_CASE("szego averages") {
  const SzegoAverage sym = szego_average(Symbol::cosine(), Symbol::constant(1.0),
                                         {0.0, 1.0}, 32);
  CHECK(std::abs(sym.discrete) < 1e-12);
  CHECK(std::abs(sym.integral) < 1e-12);

  const Symbol f = a_plus_cos(-1.0);
  const Symbol g = Symbol::ar1_density(0.5);
  const SzegoAverage first = szego_average(f, g, {0.0, 1.0}, 64);
  CHECK(first.integral == doctest::Approx(-2.0 / 3.0).epsilon(1e-9));

  // phi(x) = x is the exact trace identity.
  const Matrix product = toeplitz_section(f, 64) * toeplitz_section(g, 64);
  CHECK(std::abs(first.discrete - product.trace().real() / 65.0) < 1e-12);

  const SzegoAverage g64 = szego_average(f, g, {0.0, 0.0, 1.0}, 64);
  const SzegoAverage g128 = szego_average(f, g, {0.0, 0.0, 1.0}, 128);
  CHECK(std::abs(g128.discrete - g128.integral) < std::abs(g64.discrete - g64.integral));

  try {
    (void)szego_average(f, g, {0, 0, 0, 0, 0, 1.0}, 8);
    FAIL_CHECK("expected InvalidArgument for degree > 4");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
  }
}

TEST_CASE("localization of the extremal eigenvector") {
  const Symbol f = a_plus_cos(-1.0);
  const Symbol g = Symbol::ar1_density(0.5);
  const EssentialInterval iv = essential_interval(f, g);

  const SpectrumResult s64 = product_spectrum(f, g, 64, true);
  const SpectrumResult s128 = product_spectrum(f, g, 128, true);
  const double m64 = localization_profile(s64, iv, Extremal::Min, 1.0 / 8.0);
  const double m128 = localization_profile(s128, iv, Extremal::Min, 1.0 / 8.0);
  CHECK(m64 >= 0.0);
  CHECK(m64 <= 1.0);
  CHECK(m128 < m64);

  // Every eigenvalue of T_n(cos) lies inside [-1, 1]: diagnostic undefined.
  const SpectrumResult inside = product_spectrum(Symbol::cosine(), Symbol::constant(1.0),
                                                 32, true);
  try {
    (void)localization_profile(inside, EssentialInterval{-1.0, 1.0}, Extremal::Max,
                               1.0 / 8.0);
    FAIL_CHECK("expected EigenvalueInsideEssentialSpectrum");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EigenvalueInsideEssentialSpectrum);
  }
}

TEST_CASE("norm bound and transpose symmetry over random pairs") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 3; ++trial) {
    const Symbol f = random_real_trig_poly(rng, 3);
    const double theta = -0.6 + 0.4 * trial;
    const Symbol g = Symbol::ar1_density(theta);
    const SpectrumResult s = product_spectrum(f, g, 32, false);

    const RangeInfo rf = f.range();
    const double norm_f = std::max(std::abs(rf.inf_value), std::abs(rf.sup_value));
    const double norm_g = Symbol::ar1_density(theta).range().sup_value;
    for (double lambda : s.eigenvalues)
      CHECK(std::abs(lambda) <= norm_f * norm_g + 1e-9);

    const SpectrumResult refl = product_spectrum(Symbol::reflected(f),
                                                 Symbol::reflected(g), 32, false);
    for (size_t k = 0; k < s.eigenvalues.size(); ++k)
      CHECK(std::abs(s.eigenvalues[k] - refl.eigenvalues[k]) < 1e-9);
  }
}
