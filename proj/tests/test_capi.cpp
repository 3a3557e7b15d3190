// Exercises the shared-library surface: opaque handles, status codes, and the
// command runner.  Links against the C API only.

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "toepspec/toepspec.h"

namespace {

struct SymbolHandle {
  ts_symbol* p = nullptr;
  ~SymbolHandle() { ts_symbol_free(p); }
};

std::filesystem::path fresh_dir(const char* name) {
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::strlen(ts_version()) > 0);
  CHECK(std::string(ts_status_name(TS_OK)) == "Ok");
  CHECK(std::string(ts_status_name(TS_ERR_QUADRATURE_NOT_CONVERGED)) ==
        "QuadratureNotConverged");
  CHECK(std::string(ts_status_name(TS_ERR_G_NOT_NONNEGATIVE)) == "GNotNonnegative");
}

TEST_CASE("symbol construction and evaluation through the API") {
  SymbolHandle f;
  REQUIRE(ts_symbol_from_json(
              R"({"type":"trigpoly","coeffs":{"-1":[0.5,0],"0":[-1,0],"1":[0.5,0]}})",
              &f.p) == TS_OK);
  double re = 0, im = 0;
  REQUIRE(ts_symbol_eval(f.p, 0.0, &re, &im) == TS_OK);
  CHECK(std::abs(re) < 1e-15);
  REQUIRE(ts_symbol_fourier_coeff(f.p, 1, &re, &im) == TS_OK);
  CHECK(re == doctest::Approx(0.5));

  SymbolHandle bad;
  CHECK(ts_symbol_from_json(R"({"type":"nope"})", &bad.p) == TS_ERR_CONFIG);
  CHECK(std::strlen(ts_last_error_message()) > 0);

  const int32_t orders[] = {-1, 0, 1};
  const double cre[] = {0.5, -1.0, 0.5};
  SymbolHandle f2;
  REQUIRE(ts_symbol_trigpoly(orders, cre, nullptr, 3, &f2.p) == TS_OK);
  double re2 = 0;
  REQUIRE(ts_symbol_eval(f2.p, 1.1, &re2, nullptr) == TS_OK);
  REQUIRE(ts_symbol_eval(f.p, 1.1, &re, nullptr) == TS_OK);
  CHECK(re2 == doctest::Approx(re).epsilon(1e-15));

  SymbolHandle g, fg, jf;
  REQUIRE(ts_symbol_ar1(0.5, &g.p) == TS_OK);
  REQUIRE(ts_symbol_product(f.p, g.p, &fg.p) == TS_OK);
  REQUIRE(ts_symbol_reflect(f.p, &jf.p) == TS_OK);

  ts_range_info range{};
  REQUIRE(ts_symbol_range(fg.p, 0, &range) == TS_OK);
  CHECK(range.inf_value == doctest::Approx(-8.0 / 9.0).epsilon(1e-9));
  CHECK(std::abs(range.sup_value) < 1e-10);
  CHECK(range.exact == 0);

  SymbolHandle invalid;
  CHECK(ts_symbol_ar1(1.5, &invalid.p) == TS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("sections and the widom residual through the API") {
  SymbolHandle cosine;
  REQUIRE(ts_symbol_from_json(R"({"type":"trigpoly","coeffs":{"-1":0.5,"1":0.5}})",
                              &cosine.p) == TS_OK);

  ts_matrix* t = nullptr;
  REQUIRE(ts_toeplitz_section(cosine.p, 2, &t) == TS_OK);
  CHECK(ts_matrix_rows(t) == 3);
  double re = 0, im = 0;
  REQUIRE(ts_matrix_get(t, 1, 0, &re, &im) == TS_OK);
  CHECK(re == doctest::Approx(0.5));
  CHECK(ts_matrix_get(t, 5, 0, &re, &im) == TS_ERR_INVALID_ARGUMENT);

  const auto csv_path = fresh_dir("toepspec_capi_csv") / "t.csv";
  REQUIRE(ts_matrix_write_csv(t, csv_path.string().c_str()) == TS_OK);
  std::ifstream in(csv_path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "size=3");
  ts_matrix_free(t);

  ts_matrix* h = nullptr;
  REQUIRE(ts_hankel_section(cosine.p, 2, 2, &h) == TS_OK);
  REQUIRE(ts_matrix_get(h, 0, 0, &re, &im) == TS_OK);
  CHECK(re == doctest::Approx(0.5));
  ts_matrix_free(h);

  ts_matrix* inv = nullptr;
  CHECK(ts_ar1_inverse_tridiagonal(0.5, 0, &inv) == TS_ERR_DEGENERATE_SECTION);
  REQUIRE(ts_ar1_inverse_tridiagonal(0.5, 4, &inv) == TS_OK);
  REQUIRE(ts_matrix_get(inv, 2, 2, &re, &im) == TS_OK);
  CHECK(re == doctest::Approx(1.25));
  ts_matrix_free(inv);

  double residual = 1.0;
  REQUIRE(ts_widom_residual(cosine.p, cosine.p, 8, 0, &residual) == TS_OK);
  CHECK(residual <= 1e-12);
}

TEST_CASE("spectra, localization, and the pencil through the API") {
  SymbolHandle f, g;
  REQUIRE(ts_symbol_from_json(
              R"({"type":"trigpoly","coeffs":{"-1":0.5,"0":-1,"1":0.5}})", &f.p) ==
          TS_OK);
  REQUIRE(ts_symbol_ar1(0.5, &g.p) == TS_OK);

  ts_spectrum* s = nullptr;
  REQUIRE(ts_product_spectrum(f.p, g.p, 32, 1, &s) == TS_OK);
  CHECK(ts_spectrum_order(s) == 32);
  CHECK(ts_spectrum_lambda_min(s) == doctest::Approx(-1.0).epsilon(1e-9));
  double eigs[33];
  REQUIRE(ts_spectrum_eigenvalues(s, eigs, 33) == TS_OK);
  CHECK(eigs[0] == ts_spectrum_lambda_min(s));
  CHECK(ts_spectrum_eigenvalues(s, eigs, 10) == TS_ERR_INVALID_ARGUMENT);

  double vre[33], vim[33];
  REQUIRE(ts_spectrum_eigenvector(s, 0, vre, vim, 33) == TS_OK);
  double norm = 0;
  for (int i = 0; i < 33; ++i) norm += vre[i] * vre[i] + vim[i] * vim[i];
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-10));

  double lo = 0, hi = 0;
  REQUIRE(ts_essential_interval(f.p, g.p, &lo, &hi) == TS_OK);
  double mass = -1.0;
  REQUIRE(ts_localization_profile(s, lo, hi, 0, 0.125, &mass) == TS_OK);
  CHECK(mass >= 0.0);
  CHECK(mass <= 1.0);

  double residual = 1.0;
  REQUIRE(ts_pencil_zero_check(-1.0, 0.5, 32, s, &residual) == TS_OK);
  CHECK(residual <= 1e-6);
  ts_spectrum_free(s);

  ts_spectrum* novec = nullptr;
  REQUIRE(ts_product_spectrum(f.p, g.p, 8, 0, &novec) == TS_OK);
  double tmp_re[9], tmp_im[9];
  CHECK(ts_spectrum_eigenvector(novec, 0, tmp_re, tmp_im, 9) == TS_ERR_INVALID_ARGUMENT);
  ts_spectrum_free(novec);

  SymbolHandle cosine;
  REQUIRE(ts_symbol_from_json(R"({"type":"trigpoly","coeffs":{"-1":0.5,"1":0.5}})",
                              &cosine.p) == TS_OK);
  ts_spectrum* rejected = nullptr;
  CHECK(ts_product_spectrum(f.p, cosine.p, 8, 0, &rejected) == TS_ERR_G_NOT_NONNEGATIVE);

  ts_example1_limits lim{};
  REQUIRE(ts_example1_compute(-1.0, 0.5, &lim) == TS_OK);
  CHECK(lim.lambda_min_limit == doctest::Approx(-1.0));
  CHECK(lim.lambda_max_limit == doctest::Approx(0.0));

  const double poly[] = {0.0, 1.0};
  double discrete = 0, integral = 0;
  REQUIRE(ts_szego_average(f.p, g.p, poly, 2, 64, &discrete, &integral) == TS_OK);
  CHECK(integral == doctest::Approx(-2.0 / 3.0).epsilon(1e-8));
}

TEST_CASE("large deviations through the API") {
  SymbolHandle f, g;
  REQUIRE(ts_symbol_from_json(
              R"({"type":"trigpoly","coeffs":{"-1":0.5,"0":-1,"1":0.5}})", &f.p) ==
          TS_OK);
  REQUIRE(ts_symbol_ar1(0.5, &g.p) == TS_OK);

  double t_lo = 0, t_hi = 0;
  REQUIRE(ts_cgf_domain(f.p, g.p, &t_lo, &t_hi) == TS_OK);
  CHECK(t_lo == doctest::Approx(-9.0 / 16.0).epsilon(1e-9));
  CHECK(std::isinf(t_hi));

  double v = 1.0;
  REQUIRE(ts_cgf(f.p, g.p, 0.0, &v) == TS_OK);
  CHECK(std::abs(v) < 1e-12);
  CHECK(ts_cgf(f.p, g.p, -0.6, &v) == TS_ERR_OUTSIDE_DOMAIN);
  REQUIRE(ts_cgf_deriv(f.p, g.p, 0.0, &v) == TS_OK);
  CHECK(v == doctest::Approx(-2.0 / 3.0).epsilon(1e-9));
  REQUIRE(ts_legendre(f.p, g.p, -2.0 / 3.0, &v) == TS_OK);
  CHECK(std::abs(v) < 1e-9);
  REQUIRE(ts_finite_n_cgf(f.p, g.p, 32, -0.25, &v) == TS_OK);

  ts_rate_function* rate = nullptr;
  REQUIRE(ts_rate_function_create(f.p, g.p, -1.0, 0.0, &rate) == TS_OK);
  double lmin = 0, lmax = 0, a = 0, b = 0, mu = 0;
  REQUIRE(ts_rate_function_params(rate, &lmin, &lmax, &a, &b, &mu) == TS_OK);
  CHECK(a == doctest::Approx(-4.0).epsilon(1e-6));
  CHECK(std::isinf(b));
  CHECK(mu == doctest::Approx(-2.0 / 3.0).epsilon(1e-9));

  double iv = 0, jv = 0;
  int region = 9;
  REQUIRE(ts_rate_function_eval(rate, -5.0, &iv, &jv, &region) == TS_OK);
  CHECK(region == -1);
  REQUIRE(ts_rate_function_eval(rate, mu, &iv, &jv, &region) == TS_OK);
  CHECK(region == 0);
  CHECK(std::abs(jv) < 1e-8);
  ts_rate_function_free(rate);
}

TEST_CASE("gaussian simulation through the API") {
  double path[17];
  REQUIRE(ts_sample_path(0.5, 16, 7, 3, path) == TS_OK);
  double path2[17];
  REQUIRE(ts_sample_path(0.5, 16, 7, 3, path2) == TS_OK);
  for (int i = 0; i <= 16; ++i) CHECK(path[i] == path2[i]);

  SymbolHandle f;
  REQUIRE(ts_symbol_from_json(
              R"({"type":"trigpoly","coeffs":{"-1":0.5,"0":-1,"1":0.5}})", &f.p) ==
          TS_OK);
  double w = 0;
  REQUIRE(ts_quadratic_form(f.p, path, 17, &w) == TS_OK);
  CHECK(std::isfinite(w));

  SymbolHandle g;
  REQUIRE(ts_symbol_ar1(0.5, &g.p) == TS_OK);
  ts_rate_function* rate = nullptr;
  REQUIRE(ts_rate_function_create(f.p, g.p, -1.0, 0.0, &rate) == TS_OK);
  const double thresholds[] = {-0.9, -0.5};
  ts_tail_estimate est[2];
  REQUIRE(ts_tail_study(f.p, rate, 0.5, 64, 20000, 99, thresholds, 2, 2, est) == TS_OK);
  CHECK(est[0].upper_tail == 0);
  CHECK(est[1].upper_tail == 1);
  CHECK(est[0].empirical_prob >= 0.0);
  CHECK(est[0].empirical_prob <= 1.0);
  ts_rate_function_free(rate);
}

TEST_CASE("command runner through the API") {
  const auto dir = fresh_dir("toepspec_capi_run");
  REQUIRE(ts_run_command("example1", R"({"a":-1,"theta":0.5})", dir.string().c_str(), -1,
                         1) == TS_OK);
  CHECK(std::filesystem::exists(dir / "example1.json"));
  CHECK(std::filesystem::exists(dir / "example1_meta.json"));

  CHECK(ts_run_command("nonsense", "{}", dir.string().c_str(), -1, 1) == TS_ERR_CONFIG);
  CHECK(ts_run_command("example1", "{not json", dir.string().c_str(), -1, 1) ==
        TS_ERR_CONFIG);
  CHECK(ts_run_command("example1", R"({"a":-1,"theta":0.5,"bogus":3})",
                       dir.string().c_str(), -1, 1) == TS_ERR_CONFIG);
}
