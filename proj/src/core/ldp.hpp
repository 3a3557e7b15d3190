#pragma once

#include "core/symbol.hpp"

namespace toepspec {

/// Open interval on which 1 - 2 t f g stays positive: (1/(2 inf fg), 1/(2 sup fg))
/// with the convention that a side is infinite when the bound does not bind.
struct CgfDomain {
  double t_lo;  // -inf when inf(fg) >= 0
  double t_hi;  // +inf when sup(fg) <= 0
};

CgfDomain cgf_domain(const Symbol& f, const Symbol& g);

/// L(t) = -(1/4pi) integral of log(1 - 2 t f g); OutsideDomain unless t is
/// strictly inside the domain.
double cgf(const Symbol& f, const Symbol& g, double t);

/// L'(t) = (1/2pi) integral of fg / (1 - 2 t f g).
double cgf_deriv(const Symbol& f, const Symbol& g, double t);

struct LegendreResult {
  double value;             // may be +inf
  double arg_t;             // maximizing t (by duality, I'(x) when interior)
  bool boundary_attained;   // supremum approached at a domain endpoint
};

/// Fenchel-Legendre transform I(x) = sup_t { x t - L(t) }, solved by
/// bisection on L'(t) = x; when x falls outside the range of L' on the open
/// domain the limiting boundary value is returned and flagged.
LegendreResult legendre_ex(const Symbol& f, const Symbol& g, double x);
double legendre(const Symbol& f, const Symbol& g, double x);

enum class RateRegion { LeftLinear, Middle, RightLinear };

/// The rate function J: the Legendre transform of L on ]a, b[ extended
/// linearly with slopes 1/(2 lambda_min) and 1/(2 lambda_max) beyond.  The
/// knots a and b are L' evaluated at those slopes when the extremal limits
/// escape the essential range of fg, and infinite otherwise.
class RateFunction {
 public:
  RateFunction(Symbol f, Symbol g, double lambda_min, double lambda_max);

  double lambda_min() const { return lambda_min_; }
  double lambda_max() const { return lambda_max_; }
  double a() const { return a_; }            // -inf when no left knot
  double b() const { return b_; }            // +inf when no right knot
  double mu() const { return mu_; }          // L'(0), the zero of J

  double I(double x) const;
  double J(double x) const;
  RateRegion region(double x) const;

 private:
  Symbol f_, g_;
  Symbol fg_;              // cached product
  double dom_lo_ = 0.0;    // cached open domain of L
  double dom_hi_ = 0.0;
  double lambda_min_, lambda_max_;
  double mu_;
  double a_, b_;
  double i_at_a_ = 0.0, i_at_b_ = 0.0;
};

/// L_n(t) = -(1/(2(n+1))) sum log(1 - 2 t lambda_k^n) over the product
/// eigenvalues at section order n; BeyondSpectralEdge when any log argument
/// is nonpositive.
double finite_n_cgf(const Symbol& f, const Symbol& g, long n, double t);

}  // namespace toepspec
