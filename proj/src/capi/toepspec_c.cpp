#include "toepspec/toepspec.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "core/errors.hpp"
#include "core/gauss.hpp"
#include "core/ldp.hpp"
#include "core/linalg.hpp"
#include "core/runner.hpp"
#include "core/sections.hpp"
#include "core/spectrum.hpp"
#include "core/symbol.hpp"
#include "core/version.hpp"

using namespace toepspec;

struct ts_symbol {
  Symbol value;
};
struct ts_matrix {
  Matrix value;
};
struct ts_spectrum {
  SpectrumResult value;
};
struct ts_rate_function {
  RateFunction value;
};

namespace {

thread_local std::string g_last_error;

ts_status map_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return TS_ERR_INVALID_ARGUMENT;
    case ErrorCode::ConfigError: return TS_ERR_CONFIG;
    case ErrorCode::IoError: return TS_ERR_IO;
    case ErrorCode::QuadratureNotConverged: return TS_ERR_QUADRATURE_NOT_CONVERGED;
    case ErrorCode::NotRealValued: return TS_ERR_NOT_REAL_VALUED;
    case ErrorCode::BandTooSmall: return TS_ERR_BAND_TOO_SMALL;
    case ErrorCode::DegenerateSection: return TS_ERR_DEGENERATE_SECTION;
    case ErrorCode::NotHermitian: return TS_ERR_NOT_HERMITIAN;
    case ErrorCode::NoConvergence: return TS_ERR_NO_CONVERGENCE;
    case ErrorCode::NotPositiveSemidefinite: return TS_ERR_NOT_POSITIVE_SEMIDEFINITE;
    case ErrorCode::Singular: return TS_ERR_SINGULAR;
    case ErrorCode::GNotNonnegative: return TS_ERR_G_NOT_NONNEGATIVE;
    case ErrorCode::OutsideDomain: return TS_ERR_OUTSIDE_DOMAIN;
    case ErrorCode::BeyondSpectralEdge: return TS_ERR_BEYOND_SPECTRAL_EDGE;
    case ErrorCode::DomainViolation: return TS_ERR_DOMAIN_VIOLATION;
    case ErrorCode::EigenvalueInsideEssentialSpectrum:
      return TS_ERR_EIGENVALUE_IN_ESSENTIAL_SPECTRUM;
  }
  return TS_ERR_UNKNOWN;
}

template <typename Fn>
ts_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return TS_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return TS_ERR_UNKNOWN;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TS_ERR_UNKNOWN;
  }
}

ts_status require_nonnull(const void* p, const char* what) {
  if (p) return TS_OK;
  g_last_error = std::string(what) + " must not be null";
  return TS_ERR_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

const char* ts_status_name(ts_status status) {
  switch (status) {
    case TS_OK: return "Ok";
    case TS_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case TS_ERR_CONFIG: return "ConfigError";
    case TS_ERR_IO: return "IoError";
    case TS_ERR_QUADRATURE_NOT_CONVERGED: return "QuadratureNotConverged";
    case TS_ERR_NOT_REAL_VALUED: return "NotRealValued";
    case TS_ERR_BAND_TOO_SMALL: return "BandTooSmall";
    case TS_ERR_DEGENERATE_SECTION: return "DegenerateSection";
    case TS_ERR_NOT_HERMITIAN: return "NotHermitian";
    case TS_ERR_NO_CONVERGENCE: return "NoConvergence";
    case TS_ERR_NOT_POSITIVE_SEMIDEFINITE: return "NotPositiveSemidefinite";
    case TS_ERR_SINGULAR: return "Singular";
    case TS_ERR_G_NOT_NONNEGATIVE: return "GNotNonnegative";
    case TS_ERR_OUTSIDE_DOMAIN: return "OutsideDomain";
    case TS_ERR_BEYOND_SPECTRAL_EDGE: return "BeyondSpectralEdge";
    case TS_ERR_DOMAIN_VIOLATION: return "DomainViolation";
    case TS_ERR_EIGENVALUE_IN_ESSENTIAL_SPECTRUM:
      return "EigenvalueInsideEssentialSpectrum";
    case TS_ERR_UNKNOWN: break;
  }
  return "Unknown";
}

const char* ts_last_error_message(void) { return g_last_error.c_str(); }

const char* ts_version(void) { return kVersion; }

/* ---- symbols ------------------------------------------------------------- */

ts_status ts_symbol_from_json(const char* json_text, ts_symbol** out) {
  if (ts_status s = require_nonnull(json_text, "json_text"); s != TS_OK) return s;
  if (ts_status s = require_nonnull(out, "out"); s != TS_OK) return s;
  return guarded([&] { *out = new ts_symbol{Symbol::from_json(json_text)}; });
}

ts_status ts_symbol_trigpoly(const int32_t* orders, const double* re, const double* im,
                             size_t count, ts_symbol** out) {
  if (ts_status s = require_nonnull(out, "out"); s != TS_OK) return s;
  if (count > 0) {
    if (ts_status s = require_nonnull(orders, "orders"); s != TS_OK) return s;
    if (ts_status s = require_nonnull(re, "re"); s != TS_OK) return s;
  }
  return guarded([&] {
    std::map<int, cplx> coeffs;
    for (size_t i = 0; i < count; ++i)
      coeffs[orders[i]] = cplx{re[i], im ? im[i] : 0.0};
    *out = new ts_symbol{Symbol::trig_poly(std::move(coeffs))};
  });
}

ts_status ts_symbol_ar1(double theta, ts_symbol** out) {
  if (ts_status s = require_nonnull(out, "out"); s != TS_OK) return s;
  return guarded([&] { *out = new ts_symbol{Symbol::ar1_density(theta)}; });
}

ts_status ts_symbol_product(const ts_symbol* left, const ts_symbol* right,
                            ts_symbol** out) {
  if (ts_status s = require_nonnull(left, "left"); s != TS_OK) return s;
  if (ts_status s = require_nonnull(right, "right"); s != TS_OK) return s;
  if (ts_status s = require_nonnull(out, "out"); s != TS_OK) return s;
  return guarded([&] { *out = new ts_symbol{Symbol::product(left->value, right->value)}; });
}

ts_status ts_symbol_reflect(const ts_symbol* inner, ts_symbol** out) {
  if (ts_status s = require_nonnull(inner, "inner"); s != TS_OK) return s;
  if (ts_status s = require_nonnull(out, "out"); s != TS_OK) return s;
  return guarded([&] { *out = new ts_symbol{Symbol::reflected(inner->value)}; });
}

void ts_symbol_free(ts_symbol* s) { delete s; }

ts_status ts_symbol_eval(const ts_symbol* s, double x, double* re, double* im) {
  if (ts_status st = require_nonnull(s, "symbol"); st != TS_OK) return st;
  return guarded([&] {
    const cplx v = s->value.eval(x);
    if (re) *re = v.real();
    if (im) *im = v.imag();
  });
}

ts_status ts_symbol_fourier_coeff(const ts_symbol* s, int32_t k, double* re, double* im) {
  if (ts_status st = require_nonnull(s, "symbol"); st != TS_OK) return st;
  return guarded([&] {
    const cplx v = s->value.fourier_coeff(k);
    if (re) *re = v.real();
    if (im) *im = v.imag();
  });
}

ts_status ts_symbol_range(const ts_symbol* s, int64_t grid_points, ts_range_info* out) {
  if (ts_status st = require_nonnull(s, "symbol"); st != TS_OK) return st;
  if (ts_status st = require_nonnull(out, "out"); st != TS_OK) return st;
  return guarded([&] {
    const RangeInfo r = grid_points > 0 ? s->value.range(grid_points) : s->value.range();
    out->inf_value = r.inf_value;
    out->sup_value = r.sup_value;
    out->argmin = r.argmin;
    out->argmax = r.argmax;
    out->exact = r.method == RangeMethod::Exact ? 1 : 0;
  });
}

/* ---- sections ------------------------------------------------------------ */

ts_status ts_toeplitz_section(const ts_symbol* s, int64_t n, ts_matrix** out) {
  if (ts_status st = require_nonnull(s, "symbol"); st != TS_OK) return st;
  if (ts_status st = require_nonnull(out, "out"); st != TS_OK) return st;
  return guarded([&] { *out = new ts_matrix{toeplitz_section(s->value, n)}; });
}

ts_status ts_hankel_section(const ts_symbol* s, int64_t rows, int64_t cols,
                            ts_matrix** out) {
  if (ts_status st = require_nonnull(s, "symbol"); st != TS_OK) return st;
  if (ts_status st = require_nonnull(out, "out"); st != TS_OK) return st;
  return guarded([&] { *out = new ts_matrix{hankel_section(s->value, rows, cols)}; });
}

ts_status ts_ar1_inverse_tridiagonal(double theta, int64_t n, ts_matrix** out) {
  if (ts_status st = require_nonnull(out, "out"); st != TS_OK) return st;
  return guarded([&] { *out = new ts_matrix{ar1_inverse_tridiagonal(theta, n)}; });
}

ts_status ts_widom_residual(const ts_symbol* f, const ts_symbol* g, int64_t n,
                            int64_t band, double* residual) {
  if (ts_status st = require_nonnull(f, "f"); st != TS_OK) return st;
  if (ts_status st = require_nonnull(g, "g"); st != TS_OK) return st;
  if (ts_status st = require_nonnull(residual, "residual"); st != TS_OK) return st;
  return guarded([&] {
    const long b = band > 0 ? static_cast<long>(band)
                            : default_widom_band(f->value, g->value);
    *residual = widom_residual(f->value, g->value, n, b);
  });
}

int64_t ts_matrix_rows(const ts_matrix* m) { return m ? m->value.rows() : 0; }
int64_t ts_matrix_cols(const ts_matrix* m) { return m ? m->value.cols() : 0; }

ts_status ts_matrix_get(const ts_matrix* m, int64_t i, int64_t j, double* re,
                        double* im) {
  if (ts_status st = require_nonnull(m, "matrix"); st != TS_OK) return st;
  if (i < 0 || i >= m->value.rows() || j < 0 || j >= m->value.cols()) {
    g_last_error = "matrix index out of range";
    return TS_ERR_INVALID_ARGUMENT;
  }
  const cplx v = m->value(i, j);
  if (re) *re = v.real();
  if (im) *im = v.imag();
  return TS_OK;
}

ts_status ts_matrix_write_csv(const ts_matrix* m, const char* path) {
  if (ts_status st = require_nonnull(m, "matrix"); st != TS_OK) return st;
  if (ts_status st = require_nonnull(path, "path"); st != TS_OK) return st;
  return guarded([&] {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::IoError, std::string("cannot open ") + path);
    write_matrix_csv(m->value, out);
    if (!out) fail(ErrorCode::IoError, std::string("short write to ") + path);
  });
}

void ts_matrix_free(ts_matrix* m) { delete m; }

/* ---- spectra -------------------------------------------------------------- */

ts_status ts_product_spectrum(const ts_symbol* f, const ts_symbol* g, int64_t n,
                              int want_vectors, ts_spectrum** out) {
  if (ts_status st = require_nonnull(f, "f"); st != TS_OK) return st;
  if (ts_status st = require_nonnull(g, "g"); st != TS_OK) return st;
  if (ts_status st = require_nonnull(out, "out"); st != TS_OK) return st;
  return guarded([&] {
    *out = new ts_spectrum{product_spectrum(f->value, g->value, n, want_vectors != 0)};
  });
}

int64_t ts_spectrum_order(const ts_spectrum* s) { return s ? s->value.n : -1; }
double ts_spectrum_lambda_min(const ts_spectrum* s) {
  return s ? s->value.lambda_min : 0.0;
}
double ts_spectrum_lambda_max(const ts_spectrum* s) {
  return s ? s->value.lambda_max : 0.0;
}

ts_status ts_spectrum_eigenvalues(const ts_spectrum* s, double* out, size_t capacity) {
  if (ts_status st = require_nonnull(s, "spectrum"); st != TS_OK) return st;
  if (ts_status st = require_nonnull(out, "out"); st != TS_OK) return st;
  if (capacity < s->value.eigenvalues.size()) {
    g_last_error = "capacity below n+1";
    return TS_ERR_INVALID_ARGUMENT;
  }
  std::memcpy(out, s->value.eigenvalues.data(),
              s->value.eigenvalues.size() * sizeof(double));
  return TS_OK;
}

ts_status ts_spectrum_eigenvector(const ts_spectrum* s, int64_t index, double* re,
                                  double* im, size_t capacity) {
  if (ts_status st = require_nonnull(s, "spectrum"); st != TS_OK) return st;
  const long m = s->value.n + 1;
  if (s->value.eigenvectors.rows() != m) {
    g_last_error = "spectrum was computed without eigenvectors";
    return TS_ERR_INVALID_ARGUMENT;
  }
  if (index < 0 || index >= m || capacity < static_cast<size_t>(m)) {
    g_last_error = "eigenvector index or capacity out of range";
    return TS_ERR_INVALID_ARGUMENT;
  }
  for (long r = 0; r < m; ++r) {
    const cplx v = s->value.eigenvectors(r, index);
    if (re) re[r] = v.real();
    if (im) im[r] = v.imag();
  }
  return TS_OK;
}

void ts_spectrum_free(ts_spectrum* s) { delete s; }

ts_status ts_essential_interval(const ts_symbol* f, const ts_symbol* g, double* lo,
                                double* hi) {
  if (ts_status st = require_nonnull(f, "f"); st != TS_OK) return st;
  if (ts_status st = require_nonnull(g, "g"); st != TS_OK) return st;
  return guarded([&] {
    const EssentialInterval iv = essential_interval(f->value, g->value);
    if (lo) *lo = iv.lo;
    if (hi) *hi = iv.hi;
  });
}

ts_status ts_example1_compute(double a, double theta, ts_example1_limits* out) {
  if (ts_status st = require_nonnull(out, "out"); st != TS_OK) return st;
  return guarded([&] {
    const Example1Limits lim = example1_limits(a, theta);
    out->a = lim.a;
    out->theta = lim.theta;
    out->a_theta = lim.a_theta;
    out->b_theta = lim.b_theta;
    out->lambda_min_limit = lim.lambda_min_limit;
    out->lambda_max_limit = lim.lambda_max_limit;
    for (int i = 0; i < 3; ++i) out->boundary_candidates[i] = lim.boundary_candidates[i];
  });
}

ts_status ts_pencil_zero_check(double a, double theta, int64_t n, const ts_spectrum* s,
                               double* max_residual) {
  if (ts_status st = require_nonnull(s, "spectrum"); st != TS_OK) return st;
  if (ts_status st = require_nonnull(max_residual, "max_residual"); st != TS_OK)
    return st;
  return guarded([&] { *max_residual = pencil_zero_check(a, theta, n, s->value); });
}

ts_status ts_szego_average(const ts_symbol* f, const ts_symbol* g, const double* poly,
                           size_t poly_len, int64_t n, double* discrete,
                           double* integral) {
  if (ts_status st = require_nonnull(f, "f"); st != TS_OK) return st;
  if (ts_status st = require_nonnull(g, "g"); st != TS_OK) return st;
  if (ts_status st = require_nonnull(poly, "poly"); st != TS_OK) return st;
  return guarded([&] {
    const SzegoAverage avg =
        szego_average(f->value, g->value, std::vector<double>(poly, poly + poly_len), n);
    if (discrete) *discrete = avg.discrete;
    if (integral) *integral = avg.integral;
  });
}

ts_status ts_localization_profile(const ts_spectrum* s, double essential_lo,
                                  double essential_hi, int use_max, double epsilon,
                                  double* mass) {
  if (ts_status st = require_nonnull(s, "spectrum"); st != TS_OK) return st;
  if (ts_status st = require_nonnull(mass, "mass"); st != TS_OK) return st;
  return guarded([&] {
    *mass = localization_profile(s->value, EssentialInterval{essential_lo, essential_hi},
                                 use_max ? Extremal::Max : Extremal::Min, epsilon);
  });
}

/* ---- large deviations ------------------------------------------------------ */

ts_status ts_cgf_domain(const ts_symbol* f, const ts_symbol* g, double* t_lo,
                        double* t_hi) {
  if (ts_status st = require_nonnull(f, "f"); st != TS_OK) return st;
  if (ts_status st = require_nonnull(g, "g"); st != TS_OK) return st;
  return guarded([&] {
    const CgfDomain d = cgf_domain(f->value, g->value);
    if (t_lo) *t_lo = d.t_lo;
    if (t_hi) *t_hi = d.t_hi;
  });
}

ts_status ts_cgf(const ts_symbol* f, const ts_symbol* g, double t, double* out) {
  if (ts_status st = require_nonnull(f, "f"); st != TS_OK) return st;
  if (ts_status st = require_nonnull(g, "g"); st != TS_OK) return st;
  if (ts_status st = require_nonnull(out, "out"); st != TS_OK) return st;
  return guarded([&] { *out = cgf(f->value, g->value, t); });
}

ts_status ts_cgf_deriv(const ts_symbol* f, const ts_symbol* g, double t, double* out) {
  if (ts_status st = require_nonnull(f, "f"); st != TS_OK) return st;
  if (ts_status st = require_nonnull(g, "g"); st != TS_OK) return st;
  if (ts_status st = require_nonnull(out, "out"); st != TS_OK) return st;
  return guarded([&] { *out = cgf_deriv(f->value, g->value, t); });
}

ts_status ts_legendre(const ts_symbol* f, const ts_symbol* g, double x, double* out) {
  if (ts_status st = require_nonnull(f, "f"); st != TS_OK) return st;
  if (ts_status st = require_nonnull(g, "g"); st != TS_OK) return st;
  if (ts_status st = require_nonnull(out, "out"); st != TS_OK) return st;
  return guarded([&] { *out = legendre(f->value, g->value, x); });
}

ts_status ts_finite_n_cgf(const ts_symbol* f, const ts_symbol* g, int64_t n, double t,
                          double* out) {
  if (ts_status st = require_nonnull(f, "f"); st != TS_OK) return st;
  if (ts_status st = require_nonnull(g, "g"); st != TS_OK) return st;
  if (ts_status st = require_nonnull(out, "out"); st != TS_OK) return st;
  return guarded([&] { *out = finite_n_cgf(f->value, g->value, n, t); });
}

ts_status ts_rate_function_create(const ts_symbol* f, const ts_symbol* g,
                                  double lambda_min, double lambda_max,
                                  ts_rate_function** out) {
  if (ts_status st = require_nonnull(f, "f"); st != TS_OK) return st;
  if (ts_status st = require_nonnull(g, "g"); st != TS_OK) return st;
  if (ts_status st = require_nonnull(out, "out"); st != TS_OK) return st;
  return guarded([&] {
    *out = new ts_rate_function{RateFunction(f->value, g->value, lambda_min, lambda_max)};
  });
}

ts_status ts_rate_function_params(const ts_rate_function* r, double* lambda_min,
                                  double* lambda_max, double* a, double* b, double* mu) {
  if (ts_status st = require_nonnull(r, "rate"); st != TS_OK) return st;
  if (lambda_min) *lambda_min = r->value.lambda_min();
  if (lambda_max) *lambda_max = r->value.lambda_max();
  if (a) *a = r->value.a();
  if (b) *b = r->value.b();
  if (mu) *mu = r->value.mu();
  return TS_OK;
}

ts_status ts_rate_function_eval(const ts_rate_function* r, double x, double* i_value,
                                double* j_value, int* region) {
  if (ts_status st = require_nonnull(r, "rate"); st != TS_OK) return st;
  return guarded([&] {
    if (j_value) *j_value = r->value.J(x);
    if (i_value)
      *i_value = r->value.region(x) == RateRegion::Middle && j_value ? *j_value
                                                                     : r->value.I(x);
    if (region) {
      switch (r->value.region(x)) {
        case RateRegion::LeftLinear: *region = -1; break;
        case RateRegion::Middle: *region = 0; break;
        case RateRegion::RightLinear: *region = 1; break;
      }
    }
  });
}

void ts_rate_function_free(ts_rate_function* r) { delete r; }

/* ---- gaussian quadratic forms ---------------------------------------------- */

ts_status ts_sample_path(double theta, int64_t n, uint64_t seed, uint64_t replicate,
                         double* out) {
  if (ts_status st = require_nonnull(out, "out"); st != TS_OK) return st;
  return guarded([&] {
    GaussianSubstream rng(seed, replicate);
    const std::vector<double> path = sample_path(theta, n, rng);
    std::memcpy(out, path.data(), path.size() * sizeof(double));
  });
}

ts_status ts_quadratic_form(const ts_symbol* f, const double* path, size_t length,
                            double* out) {
  if (ts_status st = require_nonnull(f, "f"); st != TS_OK) return st;
  if (ts_status st = require_nonnull(path, "path"); st != TS_OK) return st;
  if (ts_status st = require_nonnull(out, "out"); st != TS_OK) return st;
  return guarded([&] {
    *out = quadratic_form(f->value, std::vector<double>(path, path + length));
  });
}

ts_status ts_tail_study(const ts_symbol* f, const ts_rate_function* rate, double theta,
                        int64_t n, int64_t replicates, uint64_t seed,
                        const double* thresholds, size_t threshold_count, int threads,
                        ts_tail_estimate* out) {
  if (ts_status st = require_nonnull(f, "f"); st != TS_OK) return st;
  if (ts_status st = require_nonnull(rate, "rate"); st != TS_OK) return st;
  if (ts_status st = require_nonnull(thresholds, "thresholds"); st != TS_OK) return st;
  if (ts_status st = require_nonnull(out, "out"); st != TS_OK) return st;
  return guarded([&] {
    SimulationConfig cfg;
    cfg.theta = theta;
    cfg.n = n;
    cfg.replicates = replicates;
    cfg.seed = seed;
    cfg.thresholds.assign(thresholds, thresholds + threshold_count);
    cfg.threads = threads;
    const std::vector<TailEstimate> estimates = tail_study(cfg, f->value, rate->value);
    for (size_t i = 0; i < estimates.size(); ++i) {
      out[i].threshold = estimates[i].threshold;
      out[i].empirical_prob = estimates[i].empirical_prob;
      out[i].empirical_rate = estimates[i].empirical_rate;
      out[i].rate_reference = estimates[i].rate_reference;
      out[i].stderr_prob = estimates[i].stderr_prob;
      out[i].exceedances = estimates[i].exceedances;
      out[i].upper_tail = estimates[i].upper_tail ? 1 : 0;
      out[i].degenerate = estimates[i].degenerate ? 1 : 0;
    }
  });
}

/* ---- command runner --------------------------------------------------------- */

ts_status ts_run_command(const char* command, const char* config_json,
                         const char* out_dir, int64_t seed_override, int quiet) {
  if (ts_status st = require_nonnull(command, "command"); st != TS_OK) return st;
  if (ts_status st = require_nonnull(config_json, "config_json"); st != TS_OK) return st;
  return guarded([&] {
    RunOptions opts;
    opts.out_dir = out_dir ? out_dir : ".";
    if (seed_override >= 0) opts.seed_override = static_cast<std::uint64_t>(seed_override);
    opts.quiet = quiet != 0;
    run_command(command, config_json, opts);
  });
}

}  // extern "C"
