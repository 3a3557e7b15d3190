#pragma once

#include <array>
#include <optional>
#include <vector>

#include "core/matrix.hpp"
#include "core/symbol.hpp"

namespace toepspec {

/// Eigenvalues of T_n(f)T_n(g) at section order n, obtained through the
/// symmetric form sqrt(T_n(g)) T_n(f) sqrt(T_n(g)), which shares its
/// spectrum with the product.  Eigenvectors, when requested, are those of
/// the symmetric form.
struct SpectrumResult {
  long n = 0;
  std::vector<double> eigenvalues;  // ascending, length n+1
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  Matrix eigenvectors;  // empty unless requested
};

struct ConvergenceRow {
  long n;
  double lambda_min_n;
  double lambda_max_n;
};

struct ReferenceLimits {
  double lambda_min;
  double lambda_max;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  std::optional<ReferenceLimits> reference;
  std::vector<double> errors_min;  // |lambda_min_n - reference|, empty without one
  std::vector<double> errors_max;
};

struct EssentialInterval {
  double lo;
  double hi;
};

/// Closed-form limit data for f = a + cos, g the AR(1) density: the interval
/// endpoints a_theta, b_theta, the three boundary-inverse candidates, and
/// the selected extremal limits.
struct Example1Limits {
  double a = 0.0;
  double theta = 0.0;
  double a_theta = 0.0;  // NaN when theta == 0
  double b_theta = 0.0;
  double lambda_min_limit = 0.0;
  double lambda_max_limit = 0.0;
  std::array<double, 3> boundary_candidates{};  // (a-1)/(1+t)^2, (a+1)/(1-t)^2, -1/(4t(1+at))
};

enum class Extremal { Min, Max };

SpectrumResult product_spectrum(const Symbol& f, const Symbol& g, long n,
                                bool want_vectors);

ConvergenceReport convergence_sweep(const Symbol& f, const Symbol& g,
                                    const std::vector<long>& n_list,
                                    std::optional<ReferenceLimits> reference);

EssentialInterval essential_interval(const Symbol& f, const Symbol& g);

Example1Limits example1_limits(double a, double theta);

inline ReferenceLimits reference_from(const Example1Limits& lim) {
  return {lim.lambda_min_limit, lim.lambda_max_limit};
}

/// Max over nonzero eigenvalues of the Hadamard-scaled |det(M_n(1/lambda))|
/// for the pencil M_n(t) = t T_n(a + cos) - T_n(g)^{-1}.
double pencil_zero_check(double a, double theta, long n, const SpectrumResult& spectrum);

struct SzegoAverage {
  double discrete;  // mean of phi over the n+1 product eigenvalues
  double integral;  // (1/2pi) integral of phi(fg)
};

/// poly holds polynomial coefficients in ascending degree, degree <= 4.
SzegoAverage szego_average(const Symbol& f, const Symbol& g,
                           const std::vector<double>& poly, long n);

/// Fourier mass of the selected extremal eigenvector over the mid-band modes
/// epsilon*n <= k <= (1-epsilon)*n.  The eigenvalue must sit outside the
/// essential interval by at least 1e-6.
double localization_profile(const SpectrumResult& spectrum,
                            const EssentialInterval& interval, Extremal which,
                            double epsilon);

}  // namespace toepspec
