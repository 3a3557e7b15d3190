#include "core/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/errors.hpp"
#include "core/linalg.hpp"
#include "core/quadrature.hpp"
#include "core/sections.hpp"

namespace toepspec {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

void require_real_pair(const Symbol& f, const Symbol& g) {
  if (!f.is_real_valued()) fail(ErrorCode::NotRealValued, "f must be real-valued");
  if (!g.is_real_valued()) fail(ErrorCode::NotRealValued, "g must be real-valued");
}

void require_g_nonnegative(const Symbol& g) {
  const RangeInfo r = g.range();
  if (r.inf_value < -1e-10)
    fail(ErrorCode::GNotNonnegative,
         "g attains " + std::to_string(r.inf_value) + " < 0 on the torus");
}

}  // namespace

SpectrumResult product_spectrum(const Symbol& f, const Symbol& g, long n,
                                bool want_vectors) {
  if (n < 0) fail(ErrorCode::InvalidArgument, "section order must be >= 0");
  require_real_pair(f, g);
  require_g_nonnegative(g);

  const Matrix tf = toeplitz_section(f, n);
  const Matrix tg = toeplitz_section(g, n);
  const Matrix root = psd_sqrt(tg);
  Matrix sym = root * tf * root;
  // Hermitian up to roundoff; pin exactly before the eigensolver.
  for (long i = 0; i <= n; ++i) {
    sym(i, i) = cplx{sym(i, i).real(), 0.0};
    for (long j = i + 1; j <= n; ++j) {
      const cplx avg = 0.5 * (sym(i, j) + std::conj(sym(j, i)));
      sym(i, j) = avg;
      sym(j, i) = std::conj(avg);
    }
  }
  EigenDecomposition eig = hermitian_eig(sym, want_vectors);

  SpectrumResult out;
  out.n = n;
  out.eigenvalues = std::move(eig.eigenvalues);
  out.lambda_min = out.eigenvalues.front();
  out.lambda_max = out.eigenvalues.back();
  if (want_vectors) out.eigenvectors = std::move(eig.eigenvectors);
  return out;
}

ConvergenceReport convergence_sweep(const Symbol& f, const Symbol& g,
                                    const std::vector<long>& n_list,
                                    std::optional<ReferenceLimits> reference) {
  if (n_list.empty()) fail(ErrorCode::InvalidArgument, "n_list must be nonempty");
  for (size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1])
      fail(ErrorCode::InvalidArgument, "n_list must be strictly increasing");

  ConvergenceReport report;
  report.reference = reference;
  for (long n : n_list) {
    const SpectrumResult s = product_spectrum(f, g, n, false);
    report.rows.push_back({n, s.lambda_min, s.lambda_max});
    if (reference) {
      report.errors_min.push_back(std::abs(s.lambda_min - reference->lambda_min));
      report.errors_max.push_back(std::abs(s.lambda_max - reference->lambda_max));
    }
  }
  return report;
}

EssentialInterval essential_interval(const Symbol& f, const Symbol& g) {
  require_real_pair(f, g);
  require_g_nonnegative(g);
  const RangeInfo r = Symbol::product(f, g).range();
  return {r.inf_value, r.sup_value};
}

Example1Limits example1_limits(double a, double theta) {
  if (!(std::abs(theta) < 1.0))
    fail(ErrorCode::InvalidArgument, "example requires |theta| < 1");
  Example1Limits out;
  out.a = a;
  out.theta = theta;

  if (theta == 0.0) {
    out.a_theta = kNan;
    out.b_theta = kNan;
    out.boundary_candidates = {a - 1.0, a + 1.0, kNan};
    out.lambda_min_limit = a - 1.0;
    out.lambda_max_limit = a + 1.0;
    return out;
  }

  const double c1 = (a - 1.0) / ((1.0 + theta) * (1.0 + theta));
  const double c2 = (a + 1.0) / ((1.0 - theta) * (1.0 - theta));
  const double inf_fg = std::min(c1, c2);
  const double sup_fg = std::max(c1, c2);
  const double denom = theta * (1.0 + a * theta);
  const double c3 = denom != 0.0 ? -1.0 / (4.0 * denom) : kNan;
  out.a_theta = -(1.0 + theta) / (2.0 * theta);
  out.b_theta = -(1.0 - theta) / (2.0 * theta);
  out.boundary_candidates = {c1, c2, c3};

  const bool inside = a > out.a_theta && a < out.b_theta;
  if (theta > 0.0) {
    out.lambda_max_limit = sup_fg;
    out.lambda_min_limit = inside ? c3 : inf_fg;
  } else {
    out.lambda_min_limit = inf_fg;
    out.lambda_max_limit = inside ? c3 : sup_fg;
  }
  return out;
}

double pencil_zero_check(double a, double theta, long n, const SpectrumResult& spectrum) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "pencil check needs n >= 1");
  const Symbol f = Symbol::trig_poly({{0, a}, {1, 0.5}, {-1, 0.5}});
  const Matrix tf = toeplitz_section(f, n);
  const Matrix ginv = ar1_inverse_tridiagonal(theta, n);

  const double eig_scale =
      std::max({1.0, std::abs(spectrum.lambda_min), std::abs(spectrum.lambda_max)});
  const double zero_tol = 1e-9 * eig_scale;

  double worst = 0.0;
  for (double lambda : spectrum.eigenvalues) {
    if (std::abs(lambda) <= zero_tol) continue;
    const double t = 1.0 / lambda;
    Matrix pencil = ginv;
    pencil *= cplx{-1.0, 0.0};
    Matrix scaled_tf = tf;
    scaled_tf *= cplx{t, 0.0};
    pencil += scaled_tf;

    double log_scale = 0.0;
    bool degenerate_row = false;
    for (long i = 0; i <= n; ++i) {
      double row2 = 0.0;
      for (long j = 0; j <= n; ++j) row2 += std::norm(pencil(i, j));
      if (row2 == 0.0) {
        degenerate_row = true;
        break;
      }
      log_scale += 0.5 * std::log(row2);
    }
    if (degenerate_row) continue;  // Hadamard scale undefined; report via others
    const LogDet ld = log_det(pencil);
    const double scaled = std::isfinite(ld.log_abs) ? std::exp(ld.log_abs - log_scale) : 0.0;
    worst = std::max(worst, scaled);
  }
  return worst;
}

SzegoAverage szego_average(const Symbol& f, const Symbol& g,
                           const std::vector<double>& poly, long n) {
  if (poly.empty() || poly.size() > 5)
    fail(ErrorCode::InvalidArgument, "polynomial must have degree 0..4");
  auto phi = [&](double x) {
    double acc = 0.0;
    for (size_t i = poly.size(); i-- > 0;) acc = acc * x + poly[i];
    return acc;
  };

  const SpectrumResult s = product_spectrum(f, g, n, false);
  double discrete = 0.0;
  for (double lambda : s.eigenvalues) discrete += phi(lambda);
  discrete /= static_cast<double>(n + 1);

  const Symbol fg = Symbol::product(f, g);
  const double integral =
      adaptive_periodic_mean([&](double x) { return phi(fg.eval(x).real()); });
  return {discrete, integral};
}

double localization_profile(const SpectrumResult& spectrum,
                            const EssentialInterval& interval, Extremal which,
                            double epsilon) {
  const long n = spectrum.n;
  if (spectrum.eigenvectors.rows() != n + 1)
    fail(ErrorCode::InvalidArgument, "spectrum was computed without eigenvectors");
  if (!(epsilon > 0.0 && epsilon < 0.5))
    fail(ErrorCode::InvalidArgument, "epsilon must lie in (0, 1/2)");

  const long idx = which == Extremal::Min ? 0 : n;
  const double lambda = spectrum.eigenvalues[static_cast<size_t>(idx)];
  const bool outside = lambda < interval.lo - 1e-6 || lambda > interval.hi + 1e-6;
  if (!outside)
    fail(ErrorCode::EigenvalueInsideEssentialSpectrum,
         "eigenvalue " + std::to_string(lambda) +
             " is not separated from the essential interval");

  const double lo = epsilon * static_cast<double>(n);
  const double hi = (1.0 - epsilon) * static_cast<double>(n);
  double mass = 0.0;
  for (long k = 0; k <= n; ++k) {
    const double kd = static_cast<double>(k);
    if (kd >= lo && kd <= hi) mass += std::norm(spectrum.eigenvectors(k, idx));
  }
  return mass;
}

}  // namespace toepspec
