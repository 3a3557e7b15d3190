#include "core/sections.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"
#include "core/linalg.hpp"

namespace toepspec {

Matrix toeplitz_section(const Symbol& s, long n, const QuadratureOptions& opts) {
  if (n < 0) fail(ErrorCode::InvalidArgument, "section order must be >= 0");
  const int ni = static_cast<int>(n);
  const std::vector<cplx> coeffs = s.fourier_range(-ni, ni, opts);
  Matrix t(n + 1, n + 1);
  for (long i = 0; i <= n; ++i)
    for (long j = 0; j <= n; ++j)
      t(i, j) = coeffs[static_cast<size_t>(i - j + n)];
  return t;
}

Matrix hankel_section(const Symbol& s, long rows, long cols,
                      const QuadratureOptions& opts) {
  if (rows < 1 || cols < 1)
    fail(ErrorCode::InvalidArgument, "hankel section needs rows, cols >= 1");
  const std::vector<cplx> coeffs =
      s.fourier_range(1, static_cast<int>(rows + cols - 1), opts);
  Matrix h(rows, cols);
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j)
      h(i, j) = coeffs[static_cast<size_t>(i + j)];
  return h;
}

Matrix ar1_inverse_tridiagonal(double theta, long n) {
  if (!(std::abs(theta) < 1.0))
    fail(ErrorCode::InvalidArgument, "ar1 inverse requires |theta| < 1");
  if (n < 1)
    fail(ErrorCode::DegenerateSection,
         "ar1 inverse needs n >= 1; the order-0 section has colliding corners");
  Matrix m(n + 1, n + 1);
  for (long i = 0; i <= n; ++i) {
    m(i, i) = (i == 0 || i == n) ? 1.0 : 1.0 + theta * theta;
    if (i + 1 <= n) {
      m(i, i + 1) = -theta;
      m(i + 1, i) = -theta;
    }
  }
  return m;
}

long default_widom_band(const Symbol& f, const Symbol& g, double eps) {
  return std::max<long>(1, std::max(f.band(eps), g.band(eps)));
}

namespace {

double residual_at_band(const Symbol& f, const Symbol& g, long n, long band,
                        const QuadratureOptions& opts) {
  const Symbol jf = Symbol::reflected(f);
  const Symbol jg = Symbol::reflected(g);
  const Matrix lhs = toeplitz_section(Symbol::product(f, g), n, opts) -
                     toeplitz_section(f, n, opts) * toeplitz_section(g, n, opts);
  const Matrix low = hankel_section(f, n + 1, band, opts) *
                     hankel_section(jg, band, n + 1, opts);
  const Matrix high = flip_both(hankel_section(jf, n + 1, band, opts) *
                                hankel_section(g, band, n + 1, opts));
  return operator_norm(lhs - low - high);
}

}  // namespace

double widom_residual(const Symbol& f, const Symbol& g, long n, long band,
                      double band_tol, const QuadratureOptions& opts) {
  if (n < 0) fail(ErrorCode::InvalidArgument, "section order must be >= 0");
  const long b = std::max<long>(1, band);
  const double r = residual_at_band(f, g, n, b, opts);
  const double r2 = residual_at_band(f, g, n, 2 * b, opts);
  if (std::abs(r - r2) > band_tol)
    fail(ErrorCode::BandTooSmall,
         "residual moved from " + std::to_string(r) + " to " + std::to_string(r2) +
             " when doubling band " + std::to_string(b));
  return r;
}

}  // namespace toepspec
