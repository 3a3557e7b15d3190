#include "core/ldp.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "core/errors.hpp"
#include "core/quadrature.hpp"
#include "core/spectrum.hpp"

namespace toepspec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBoundaryOffset = 1e-10;

CgfDomain domain_from_range(const RangeInfo& r) {
  CgfDomain d{-kInf, kInf};
  if (r.inf_value < 0.0) d.t_lo = 1.0 / (2.0 * r.inf_value);
  if (r.sup_value > 0.0) d.t_hi = 1.0 / (2.0 * r.sup_value);
  return d;
}

// Integrand guard: strictly inside the domain 1 - 2 t fg > 0 holds
// mathematically; clamp roundoff graze at the refined extremum.
double positive_part(double v) {
  return v > 0.0 ? v : std::numeric_limits<double>::min();
}

double cgf_inside(const Symbol& fg, double t) {
  return -0.5 * adaptive_periodic_mean([&](double x) {
    return std::log(positive_part(1.0 - 2.0 * t * fg.eval(x).real()));
  });
}

double cgf_deriv_inside(const Symbol& fg, double t) {
  return adaptive_periodic_mean([&](double x) {
    const double v = fg.eval(x).real();
    return v / positive_part(1.0 - 2.0 * t * v);
  });
}

void require_inside(const CgfDomain& d, double t) {
  if (!(t > d.t_lo && t < d.t_hi))
    fail(ErrorCode::OutsideDomain,
         "t = " + std::to_string(t) + " is outside the open cgf domain");
}

struct LegendreSetup {
  Symbol fg;
  CgfDomain dom;
};

LegendreSetup legendre_setup(const Symbol& f, const Symbol& g) {
  Symbol fg = Symbol::product(f, g);
  const RangeInfo r = fg.range();
  return {std::move(fg), domain_from_range(r)};
}

bool try_quadrature(double* out, const std::function<double()>& eval) {
  try {
    *out = eval();
    return true;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::QuadratureNotConverged) return false;
    throw;
  }
}

// Boundary supremum: x t* - L(t*) at the deepest t* whose log integrand the
// quadrature still resolves, walking outward from t_inner if needed.
LegendreResult boundary_value(const LegendreSetup& s, double x, double boundary,
                              double t_inner) {
  double t = t_inner;
  double l = 0.0;
  while (!try_quadrature(&l, [&] { return cgf_inside(s.fg, t); })) {
    t = boundary + 8.0 * (t - boundary);
    if (!std::isfinite(t) || std::abs(t - boundary) > 1.0)
      fail(ErrorCode::QuadratureNotConverged,
           "cgf unresolvable everywhere near the domain boundary");
  }
  return {x * t - l, t, true};
}

LegendreResult legendre_with(const LegendreSetup& s, double x) {
  const CgfDomain& dom = s.dom;

  // Bracket the root of L'(t) = x; L' is strictly increasing on the open
  // domain.  Finite endpoints are probed by walking toward the boundary in
  // shrinking offsets (down to 1e-10) for as long as the quadrature
  // resolves the integrand; infinite sides are bracketed by doubling.
  double ta, la;
  if (std::isfinite(dom.t_lo)) {
    double off = 1e-2;
    if (std::isfinite(dom.t_hi)) off = std::min(off, 0.25 * (dom.t_hi - dom.t_lo));
    ta = dom.t_lo + off;
    la = cgf_deriv_inside(s.fg, ta);
    while (la > x && off > 1.0000001 * kBoundaryOffset) {
      const double next_off = std::max(off / 32.0, kBoundaryOffset);
      const double tn = dom.t_lo + next_off;
      double ln = 0.0;
      if (!try_quadrature(&ln, [&] { return cgf_deriv_inside(s.fg, tn); })) break;
      ta = tn;
      la = ln;
      off = next_off;
    }
    if (la > x) return boundary_value(s, x, dom.t_lo, ta);
  } else {
    ta = -1.0;
    la = cgf_deriv_inside(s.fg, ta);
    int guard = 0;
    while (la > x && guard++ < 70) {
      const double tn = 2.0 * ta;
      double ln = 0.0;
      if (!try_quadrature(&ln, [&] { return cgf_deriv_inside(s.fg, tn); }))
        return boundary_value(s, x, -kInf, ta);  // best resolvable lower bound
      ta = tn;
      la = ln;
    }
    if (la > x) return {kInf, -kInf, true};  // supremum runs away at -inf
  }

  double tb, lb;
  if (std::isfinite(dom.t_hi)) {
    double off = 1e-2;
    if (std::isfinite(dom.t_lo)) off = std::min(off, 0.25 * (dom.t_hi - dom.t_lo));
    tb = dom.t_hi - off;
    lb = cgf_deriv_inside(s.fg, tb);
    while (lb < x && off > 1.0000001 * kBoundaryOffset) {
      const double next_off = std::max(off / 32.0, kBoundaryOffset);
      const double tn = dom.t_hi - next_off;
      double ln = 0.0;
      if (!try_quadrature(&ln, [&] { return cgf_deriv_inside(s.fg, tn); })) break;
      tb = tn;
      lb = ln;
      off = next_off;
    }
    if (lb < x) return boundary_value(s, x, dom.t_hi, tb);
  } else {
    tb = 1.0;
    lb = cgf_deriv_inside(s.fg, tb);
    int guard = 0;
    while (lb < x && guard++ < 70) {
      const double tn = 2.0 * tb;
      double ln = 0.0;
      if (!try_quadrature(&ln, [&] { return cgf_deriv_inside(s.fg, tn); }))
        return boundary_value(s, x, kInf, tb);
      tb = tn;
      lb = ln;
    }
    if (lb < x) return {kInf, kInf, true};
  }

  while (tb - ta > 1e-12) {
    const double tm = 0.5 * (ta + tb);
    if (tm <= ta || tm >= tb) break;  // double spacing floor at this magnitude
    if (cgf_deriv_inside(s.fg, tm) < x)
      ta = tm;
    else
      tb = tm;
  }
  const double t = 0.5 * (ta + tb);
  return {x * t - cgf_inside(s.fg, t), t, false};
}

}  // namespace

CgfDomain cgf_domain(const Symbol& f, const Symbol& g) {
  return domain_from_range(Symbol::product(f, g).range());
}

double cgf(const Symbol& f, const Symbol& g, double t) {
  const LegendreSetup s = legendre_setup(f, g);
  require_inside(s.dom, t);
  return cgf_inside(s.fg, t);
}

double cgf_deriv(const Symbol& f, const Symbol& g, double t) {
  const LegendreSetup s = legendre_setup(f, g);
  require_inside(s.dom, t);
  return cgf_deriv_inside(s.fg, t);
}

LegendreResult legendre_ex(const Symbol& f, const Symbol& g, double x) {
  return legendre_with(legendre_setup(f, g), x);
}

double legendre(const Symbol& f, const Symbol& g, double x) {
  return legendre_ex(f, g, x).value;
}

RateFunction::RateFunction(Symbol f, Symbol g, double lambda_min, double lambda_max)
    : f_(std::move(f)),
      g_(std::move(g)),
      fg_(Symbol::product(f_, g_)),
      lambda_min_(lambda_min),
      lambda_max_(lambda_max),
      a_(-kInf),
      b_(kInf) {
  const RangeInfo fg_range = fg_.range();
  dom_lo_ = domain_from_range(fg_range).t_lo;
  dom_hi_ = domain_from_range(fg_range).t_hi;
  const LegendreSetup s{fg_, CgfDomain{dom_lo_, dom_hi_}};
  mu_ = cgf_deriv_inside(s.fg, 0.0);

  if (lambda_min_ < 0.0 && lambda_min_ < fg_range.inf_value) {
    const double t = 1.0 / (2.0 * lambda_min_);
    if (!(t > s.dom.t_lo && t < s.dom.t_hi))
      fail(ErrorCode::DomainViolation,
           "1/(2 lambda_min) falls outside the open cgf domain; "
           "the supplied limits are inconsistent");
    a_ = cgf_deriv_inside(s.fg, t);
    if (!std::isfinite(a_)) {
      a_ = -kInf;  // non-finite knot degenerates to the plain transform
    } else {
      i_at_a_ = a_ * t - cgf_inside(s.fg, t);
    }
  }
  if (lambda_max_ > 0.0 && lambda_max_ > fg_range.sup_value) {
    const double t = 1.0 / (2.0 * lambda_max_);
    if (!(t > s.dom.t_lo && t < s.dom.t_hi))
      fail(ErrorCode::DomainViolation,
           "1/(2 lambda_max) falls outside the open cgf domain; "
           "the supplied limits are inconsistent");
    b_ = cgf_deriv_inside(s.fg, t);
    if (!std::isfinite(b_)) {
      b_ = kInf;
    } else {
      i_at_b_ = b_ * t - cgf_inside(s.fg, t);
    }
  }
}

double RateFunction::I(double x) const {
  return legendre_with(LegendreSetup{fg_, CgfDomain{dom_lo_, dom_hi_}}, x).value;
}

double RateFunction::J(double x) const {
  if (x <= a_) return i_at_a_ + (x - a_) / (2.0 * lambda_min_);
  if (x >= b_) return i_at_b_ + (x - b_) / (2.0 * lambda_max_);
  return I(x);
}

RateRegion RateFunction::region(double x) const {
  if (x <= a_) return RateRegion::LeftLinear;
  if (x >= b_) return RateRegion::RightLinear;
  return RateRegion::Middle;
}

double finite_n_cgf(const Symbol& f, const Symbol& g, long n, double t) {
  const SpectrumResult s = product_spectrum(f, g, n, false);
  double acc = 0.0;
  for (double lambda : s.eigenvalues) {
    const double arg = 1.0 - 2.0 * t * lambda;
    if (arg <= 0.0)
      fail(ErrorCode::BeyondSpectralEdge,
           "1 - 2 t lambda <= 0 at lambda = " + std::to_string(lambda));
    acc += std::log(arg);
  }
  return -acc / (2.0 * static_cast<double>(n + 1));
}

}  // namespace toepspec
