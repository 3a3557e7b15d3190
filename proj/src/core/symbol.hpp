#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "core/matrix.hpp"

namespace toepspec {

/// How a range was obtained: closed form or dense grid plus local refinement.
enum class RangeMethod { Exact, GridRefined };

struct RangeInfo {
  double inf_value = 0.0;
  double sup_value = 0.0;
  double argmin = 0.0;  // radians in [0, 2pi)
  double argmax = 0.0;
  RangeMethod method = RangeMethod::Exact;
};

struct QuadratureOptions {
  long points = 4096;     // default M for coefficient quadrature
  double tol = 1e-10;     // doubling-consistency trigger
};

/// A function on the torus, represented as an immutable expression tree:
/// trigonometric polynomials and the AR(1) spectral density at the leaves,
/// pointwise products/sums/scalings and the reflection (Jf)(x)=f(-x) above
/// them.  Symbols are cheap to copy and safe to share across threads.
class Symbol {
 public:
  // Leaves.
  static Symbol trig_poly(std::map<int, cplx> coeffs);
  static Symbol constant(double value);
  static Symbol cosine();                      // cos x
  static Symbol ar1_density(double theta);     // 1 / (1 + theta^2 - 2 theta cos x)

  // Composites.
  static Symbol product(Symbol left, Symbol right);
  static Symbol sum(Symbol left, Symbol right);
  static Symbol scaled(Symbol inner, double factor);
  static Symbol reflected(Symbol inner);

  /// Pointwise value.  Exact closed form at the leaves, recursive otherwise.
  cplx eval(double x) const;

  /// k-th Fourier coefficient.  Exact wherever the tree supports it; any
  /// subtree containing a product falls back to periodic trapezoid
  /// quadrature with a doubling-consistency check.
  cplx fourier_coeff(int k, const QuadratureOptions& opts = {}) const;

  /// Batch of coefficients k = k_min..k_max (inclusive); one shared sampling
  /// pass when quadrature is needed.
  std::vector<cplx> fourier_range(int k_min, int k_max,
                                  const QuadratureOptions& opts = {}) const;

  /// Essential range of a real-valued symbol.  Closed form for trig
  /// polynomials of degree <= 1 and for the AR(1) density; otherwise a dense
  /// grid scan refined by ternary search to 1e-12 interval width.
  RangeInfo range(long grid_points = kDefaultRangeGrid) const;

  bool is_real_valued(double tol = 1e-12) const;

  /// Coefficient support bound: exact degree for trig polynomials,
  /// K(eps) = ceil(log(eps (1-theta^2)) / log|theta|) for AR(1), combined
  /// structurally for composites.
  int band(double eps = 1e-14) const;

  /// True when every coefficient is available in closed form.
  bool has_exact_coefficients() const;

  std::string to_json() const;
  static Symbol from_json(const std::string& text);

  static constexpr long kDefaultRangeGrid = 100000;

  struct Node;  // opaque to callers

 private:
  explicit Symbol(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Coefficient of any symbol by M-point quadrature, ignoring closed forms.
/// Exposed so tests can pit closed forms against the quadrature oracle.
cplx fourier_coeff_quadrature(const Symbol& s, int k, long points);

/// AR(1) truncation cutoff K(eps) for a given theta.
int ar1_band(double theta, double eps);

}  // namespace toepspec
