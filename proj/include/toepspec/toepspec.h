/* toepspec — spectra of products of finite-section Toeplitz matrices and the
 * large-deviation rate function of the associated Gaussian quadratic forms.
 *
 * C API over the C++ core: opaque handles, integer status codes, thread-local
 * error detail.  Every function that can fail returns ts_status; outputs are
 * written through pointers only on TS_OK.
 */

#ifndef TOEPSPEC_H
#define TOEPSPEC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define TOEPSPEC_API __declspec(dllexport)
#else
#define TOEPSPEC_API __attribute__((visibility("default")))
#endif

typedef enum ts_status {
  TS_OK = 0,
  TS_ERR_INVALID_ARGUMENT,
  TS_ERR_CONFIG,
  TS_ERR_IO,
  TS_ERR_QUADRATURE_NOT_CONVERGED,
  TS_ERR_NOT_REAL_VALUED,
  TS_ERR_BAND_TOO_SMALL,
  TS_ERR_DEGENERATE_SECTION,
  TS_ERR_NOT_HERMITIAN,
  TS_ERR_NO_CONVERGENCE,
  TS_ERR_NOT_POSITIVE_SEMIDEFINITE,
  TS_ERR_SINGULAR,
  TS_ERR_G_NOT_NONNEGATIVE,
  TS_ERR_OUTSIDE_DOMAIN,
  TS_ERR_BEYOND_SPECTRAL_EDGE,
  TS_ERR_DOMAIN_VIOLATION,
  TS_ERR_EIGENVALUE_IN_ESSENTIAL_SPECTRUM,
  TS_ERR_UNKNOWN
} ts_status;

/* Stable module error name for a status ("QuadratureNotConverged", ...). */
TOEPSPEC_API const char* ts_status_name(ts_status status);

/* Detail for the most recent failure on this thread; empty string if none. */
TOEPSPEC_API const char* ts_last_error_message(void);

TOEPSPEC_API const char* ts_version(void);

typedef struct ts_symbol ts_symbol;
typedef struct ts_matrix ts_matrix;
typedef struct ts_spectrum ts_spectrum;
typedef struct ts_rate_function ts_rate_function;

/* ---- symbols on the torus ---------------------------------------------- */

/* Schema: {"type":"trigpoly","coeffs":{"-1":[re,im],...}} |
 *         {"type":"ar1","theta":t} |
 *         {"type":"product","left":...,"right":...} |
 *         {"type":"reflect","inner":...}                                    */
TOEPSPEC_API ts_status ts_symbol_from_json(const char* json_text, ts_symbol** out);
TOEPSPEC_API ts_status ts_symbol_trigpoly(const int32_t* orders, const double* re,
                                          const double* im, size_t count,
                                          ts_symbol** out);
TOEPSPEC_API ts_status ts_symbol_ar1(double theta, ts_symbol** out);
TOEPSPEC_API ts_status ts_symbol_product(const ts_symbol* left, const ts_symbol* right,
                                         ts_symbol** out);
TOEPSPEC_API ts_status ts_symbol_reflect(const ts_symbol* inner, ts_symbol** out);
TOEPSPEC_API void ts_symbol_free(ts_symbol* s);

TOEPSPEC_API ts_status ts_symbol_eval(const ts_symbol* s, double x, double* re,
                                      double* im);
TOEPSPEC_API ts_status ts_symbol_fourier_coeff(const ts_symbol* s, int32_t k, double* re,
                                               double* im);

typedef struct ts_range_info {
  double inf_value;
  double sup_value;
  double argmin; /* radians in [0, 2pi) */
  double argmax;
  int exact; /* 1: closed form, 0: grid-refined */
} ts_range_info;

/* grid_points <= 0 selects the default (100000). */
TOEPSPEC_API ts_status ts_symbol_range(const ts_symbol* s, int64_t grid_points,
                                       ts_range_info* out);

/* ---- finite sections ----------------------------------------------------- */

TOEPSPEC_API ts_status ts_toeplitz_section(const ts_symbol* s, int64_t n,
                                           ts_matrix** out);
TOEPSPEC_API ts_status ts_hankel_section(const ts_symbol* s, int64_t rows, int64_t cols,
                                         ts_matrix** out);
TOEPSPEC_API ts_status ts_ar1_inverse_tridiagonal(double theta, int64_t n,
                                                  ts_matrix** out);

/* Operator-norm defect of the finite-section product identity.  band <= 0
 * selects the default band for f, g. */
TOEPSPEC_API ts_status ts_widom_residual(const ts_symbol* f, const ts_symbol* g,
                                         int64_t n, int64_t band, double* residual);

TOEPSPEC_API int64_t ts_matrix_rows(const ts_matrix* m);
TOEPSPEC_API int64_t ts_matrix_cols(const ts_matrix* m);
TOEPSPEC_API ts_status ts_matrix_get(const ts_matrix* m, int64_t i, int64_t j,
                                     double* re, double* im);
/* One-line "size=m" header, then re,im pairs row-major, one row per line. */
TOEPSPEC_API ts_status ts_matrix_write_csv(const ts_matrix* m, const char* path);
TOEPSPEC_API void ts_matrix_free(ts_matrix* m);

/* ---- product spectra ----------------------------------------------------- */

TOEPSPEC_API ts_status ts_product_spectrum(const ts_symbol* f, const ts_symbol* g,
                                           int64_t n, int want_vectors,
                                           ts_spectrum** out);
TOEPSPEC_API int64_t ts_spectrum_order(const ts_spectrum* s); /* returns n */
TOEPSPEC_API double ts_spectrum_lambda_min(const ts_spectrum* s);
TOEPSPEC_API double ts_spectrum_lambda_max(const ts_spectrum* s);
/* Copies the n+1 ascending eigenvalues; capacity must be >= n+1. */
TOEPSPEC_API ts_status ts_spectrum_eigenvalues(const ts_spectrum* s, double* out,
                                               size_t capacity);
/* Eigenvector of the symmetric form paired with eigenvalue `index`. */
TOEPSPEC_API ts_status ts_spectrum_eigenvector(const ts_spectrum* s, int64_t index,
                                               double* re, double* im, size_t capacity);
TOEPSPEC_API void ts_spectrum_free(ts_spectrum* s);

TOEPSPEC_API ts_status ts_essential_interval(const ts_symbol* f, const ts_symbol* g,
                                             double* lo, double* hi);

typedef struct ts_example1_limits {
  double a;
  double theta;
  double a_theta; /* NaN when theta == 0 */
  double b_theta;
  double lambda_min_limit;
  double lambda_max_limit;
  double boundary_candidates[3];
} ts_example1_limits;

TOEPSPEC_API ts_status ts_example1_compute(double a, double theta,
                                           ts_example1_limits* out);

TOEPSPEC_API ts_status ts_pencil_zero_check(double a, double theta, int64_t n,
                                            const ts_spectrum* s, double* max_residual);

/* poly: coefficients in ascending degree, degree <= 4. */
TOEPSPEC_API ts_status ts_szego_average(const ts_symbol* f, const ts_symbol* g,
                                        const double* poly, size_t poly_len, int64_t n,
                                        double* discrete, double* integral);

/* Mid-band Fourier mass of the extremal eigenvector (use_max != 0 selects
 * lambda_max).  The spectrum must carry eigenvectors. */
TOEPSPEC_API ts_status ts_localization_profile(const ts_spectrum* s, double essential_lo,
                                               double essential_hi, int use_max,
                                               double epsilon, double* mass);

/* ---- large deviations ---------------------------------------------------- */

/* Infinite sides are reported as +/-HUGE_VAL. */
TOEPSPEC_API ts_status ts_cgf_domain(const ts_symbol* f, const ts_symbol* g,
                                     double* t_lo, double* t_hi);
TOEPSPEC_API ts_status ts_cgf(const ts_symbol* f, const ts_symbol* g, double t,
                              double* out);
TOEPSPEC_API ts_status ts_cgf_deriv(const ts_symbol* f, const ts_symbol* g, double t,
                                    double* out);
TOEPSPEC_API ts_status ts_legendre(const ts_symbol* f, const ts_symbol* g, double x,
                                   double* out);
TOEPSPEC_API ts_status ts_finite_n_cgf(const ts_symbol* f, const ts_symbol* g, int64_t n,
                                       double t, double* out);

TOEPSPEC_API ts_status ts_rate_function_create(const ts_symbol* f, const ts_symbol* g,
                                               double lambda_min, double lambda_max,
                                               ts_rate_function** out);
TOEPSPEC_API ts_status ts_rate_function_params(const ts_rate_function* r,
                                               double* lambda_min, double* lambda_max,
                                               double* a, double* b, double* mu);
/* region: -1 left-linear, 0 middle, +1 right-linear. */
TOEPSPEC_API ts_status ts_rate_function_eval(const ts_rate_function* r, double x,
                                             double* i_value, double* j_value,
                                             int* region);
TOEPSPEC_API void ts_rate_function_free(ts_rate_function* r);

/* ---- gaussian quadratic forms -------------------------------------------- */

/* Stationary AR(1) path X_0..X_n into out[0..n]; (seed, replicate) keys an
 * independent substream. */
TOEPSPEC_API ts_status ts_sample_path(double theta, int64_t n, uint64_t seed,
                                      uint64_t replicate, double* out);
TOEPSPEC_API ts_status ts_quadratic_form(const ts_symbol* f, const double* path,
                                         size_t length, double* out);

typedef struct ts_tail_estimate {
  double threshold;
  double empirical_prob;
  double empirical_rate;
  double rate_reference;
  double stderr_prob;
  int64_t exceedances;
  int upper_tail;
  int degenerate;
} ts_tail_estimate;

TOEPSPEC_API ts_status ts_tail_study(const ts_symbol* f, const ts_rate_function* rate,
                                     double theta, int64_t n, int64_t replicates,
                                     uint64_t seed, const double* thresholds,
                                     size_t threshold_count, int threads,
                                     ts_tail_estimate* out);

/* ---- command runner ------------------------------------------------------ */

/* Runs one CLI command ("spectrum", "converge", "widom-check", "essential",
 * "example1", "ldp", "simulate") against a JSON config, writing artifacts
 * into out_dir.  seed_override < 0 keeps the config seed.  quiet != 0
 * suppresses the file listing on stdout. */
TOEPSPEC_API ts_status ts_run_command(const char* command, const char* config_json,
                                      const char* out_dir, int64_t seed_override,
                                      int quiet);

#ifdef __cplusplus
}
#endif

#endif /* TOEPSPEC_H */
