#include "core/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <variant>

#include <json.hpp>

#include "core/errors.hpp"
#include "core/quadrature.hpp"

namespace toepspec {

namespace detail {

struct TrigPolyNode {
  std::map<int, cplx> coeffs;  // zero entries dropped at construction
};

struct Ar1Node {
  double theta = 0.0;
};

enum class PointwiseOp { Product, Sum };

struct PointwiseNode {
  PointwiseOp op;
  std::shared_ptr<const Symbol::Node> left, right;
};

struct ScaleNode {
  double factor;
  std::shared_ptr<const Symbol::Node> inner;
};

struct ReflectNode {
  std::shared_ptr<const Symbol::Node> inner;
};

}  // namespace detail

struct Symbol::Node {
  std::variant<detail::TrigPolyNode, detail::Ar1Node, detail::PointwiseNode,
               detail::ScaleNode, detail::ReflectNode>
      v;
};

namespace {

using detail::Ar1Node;
using detail::PointwiseNode;
using detail::PointwiseOp;
using detail::ReflectNode;
using detail::ScaleNode;
using detail::TrigPolyNode;

constexpr double kPi = kTwoPi / 2.0;

double wrap_angle(double x) {
  double y = std::fmod(x, kTwoPi);
  if (y < 0) y += kTwoPi;
  return y;
}

cplx eval_node(const Symbol::Node& n, double x) {
  return std::visit(
      [&](const auto& node) -> cplx {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, TrigPolyNode>) {
          cplx acc = 0.0;
          for (const auto& [k, c] : node.coeffs) acc += c * std::polar(1.0, k * x);
          return acc;
        } else if constexpr (std::is_same_v<T, Ar1Node>) {
          const double th = node.theta;
          return 1.0 / (1.0 + th * th - 2.0 * th * std::cos(x));
        } else if constexpr (std::is_same_v<T, PointwiseNode>) {
          const cplx l = eval_node(*node.left, x), r = eval_node(*node.right, x);
          return node.op == PointwiseOp::Product ? l * r : l + r;
        } else if constexpr (std::is_same_v<T, ScaleNode>) {
          return node.factor * eval_node(*node.inner, x);
        } else {
          return eval_node(*node.inner, -x);
        }
      },
      n.v);
}

bool exact_coeffs(const Symbol::Node& n) {
  return std::visit(
      [](const auto& node) -> bool {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, TrigPolyNode> || std::is_same_v<T, Ar1Node>) {
          return true;
        } else if constexpr (std::is_same_v<T, PointwiseNode>) {
          return node.op == PointwiseOp::Sum && exact_coeffs(*node.left) &&
                 exact_coeffs(*node.right);
        } else {
          return exact_coeffs(*node.inner);
        }
      },
      n.v);
}

cplx exact_coeff(const Symbol::Node& n, int k) {
  return std::visit(
      [&](const auto& node) -> cplx {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, TrigPolyNode>) {
          auto it = node.coeffs.find(k);
          return it == node.coeffs.end() ? cplx{0.0, 0.0} : it->second;
        } else if constexpr (std::is_same_v<T, Ar1Node>) {
          const double th = node.theta;
          if (th == 0.0) return k == 0 ? 1.0 : 0.0;
          return std::pow(th, std::abs(k)) / (1.0 - th * th);
        } else if constexpr (std::is_same_v<T, PointwiseNode>) {
          return exact_coeff(*node.left, k) + exact_coeff(*node.right, k);
        } else if constexpr (std::is_same_v<T, ScaleNode>) {
          return node.factor * exact_coeff(*node.inner, k);
        } else {
          return exact_coeff(*node.inner, -k);
        }
      },
      n.v);
}

bool real_valued_node(const Symbol::Node& n, double tol) {
  return std::visit(
      [&](const auto& node) -> bool {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, TrigPolyNode>) {
          for (const auto& [k, c] : node.coeffs) {
            if (k < 0) continue;
            cplx mirror{0.0, 0.0};
            auto it = node.coeffs.find(-k);
            if (it != node.coeffs.end()) mirror = it->second;
            if (std::abs(mirror - std::conj(c)) > tol) return false;
          }
          for (const auto& [k, c] : node.coeffs)
            if (k < 0 && !node.coeffs.count(-k) && std::abs(c) > tol) return false;
          return true;
        } else if constexpr (std::is_same_v<T, Ar1Node>) {
          return true;
        } else if constexpr (std::is_same_v<T, PointwiseNode>) {
          return real_valued_node(*node.left, tol) && real_valued_node(*node.right, tol);
        } else {
          return real_valued_node(*node.inner, tol);
        }
      },
      n.v);
}

int band_node(const Symbol::Node& n, double eps) {
  return std::visit(
      [&](const auto& node) -> int {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, TrigPolyNode>) {
          int b = 0;
          for (const auto& [k, c] : node.coeffs)
            if (std::abs(c) > 0.0) b = std::max(b, std::abs(k));
          return b;
        } else if constexpr (std::is_same_v<T, Ar1Node>) {
          return ar1_band(node.theta, eps);
        } else if constexpr (std::is_same_v<T, PointwiseNode>) {
          const int l = band_node(*node.left, eps), r = band_node(*node.right, eps);
          return node.op == PointwiseOp::Product ? l + r : std::max(l, r);
        } else {
          return band_node(*node.inner, eps);
        }
      },
      n.v);
}

// Coefficients k_min..k_max from samples F(2pi j s / (size)) taken with
// stride s; per-sample phase advanced multiplicatively to avoid a
// transcendental call per (k, j) pair.
std::vector<cplx> dft_range(const std::vector<cplx>& samples, long stride, int k_min,
                            int k_max) {
  const long m = static_cast<long>(samples.size()) / stride;
  std::vector<cplx> out(static_cast<size_t>(k_max - k_min + 1), cplx{0.0, 0.0});
  for (long j = 0; j < m; ++j) {
    const double x = kTwoPi * static_cast<double>(j) / static_cast<double>(m);
    const cplx f = samples[static_cast<size_t>(j * stride)];
    cplx phase = std::polar(1.0, -static_cast<double>(k_min) * x);
    const cplx step = std::polar(1.0, -x);
    for (int k = k_min; k <= k_max; ++k) {
      out[static_cast<size_t>(k - k_min)] += f * phase;
      phase *= step;
    }
  }
  for (cplx& v : out) v /= static_cast<double>(m);
  return out;
}

}  // namespace

int ar1_band(double theta, double eps) {
  const double at = std::abs(theta);
  if (at == 0.0) return 0;
  const double k = std::log(eps * (1.0 - theta * theta)) / std::log(at);
  return std::max(0, static_cast<int>(std::ceil(k)));
}

Symbol Symbol::trig_poly(std::map<int, cplx> coeffs) {
  std::erase_if(coeffs, [](const auto& kv) { return kv.second == cplx{0.0, 0.0}; });
  return Symbol(std::make_shared<Node>(Node{TrigPolyNode{std::move(coeffs)}}));
}

Symbol Symbol::constant(double value) { return trig_poly({{0, cplx{value, 0.0}}}); }

Symbol Symbol::cosine() {
  return trig_poly({{1, cplx{0.5, 0.0}}, {-1, cplx{0.5, 0.0}}});
}

Symbol Symbol::ar1_density(double theta) {
  if (!(std::abs(theta) < 1.0))
    fail(ErrorCode::InvalidArgument, "ar1 density requires |theta| < 1");
  return Symbol(std::make_shared<Node>(Node{Ar1Node{theta}}));
}

Symbol Symbol::product(Symbol left, Symbol right) {
  return Symbol(std::make_shared<Node>(Node{
      PointwiseNode{PointwiseOp::Product, std::move(left.node_), std::move(right.node_)}}));
}

Symbol Symbol::sum(Symbol left, Symbol right) {
  return Symbol(std::make_shared<Node>(Node{
      PointwiseNode{PointwiseOp::Sum, std::move(left.node_), std::move(right.node_)}}));
}

Symbol Symbol::scaled(Symbol inner, double factor) {
  return Symbol(std::make_shared<Node>(Node{ScaleNode{factor, std::move(inner.node_)}}));
}

Symbol Symbol::reflected(Symbol inner) {
  return Symbol(std::make_shared<Node>(Node{ReflectNode{std::move(inner.node_)}}));
}

cplx Symbol::eval(double x) const { return eval_node(*node_, x); }

bool Symbol::has_exact_coefficients() const { return exact_coeffs(*node_); }

bool Symbol::is_real_valued(double tol) const { return real_valued_node(*node_, tol); }

int Symbol::band(double eps) const { return band_node(*node_, eps); }

cplx Symbol::fourier_coeff(int k, const QuadratureOptions& opts) const {
  if (has_exact_coefficients()) return exact_coeff(*node_, k);
  return fourier_range(k, k, opts)[0];
}

std::vector<cplx> Symbol::fourier_range(int k_min, int k_max,
                                        const QuadratureOptions& opts) const {
  if (k_min > k_max) fail(ErrorCode::InvalidArgument, "empty coefficient range");
  if (has_exact_coefficients()) {
    std::vector<cplx> out;
    out.reserve(static_cast<size_t>(k_max - k_min + 1));
    for (int k = k_min; k <= k_max; ++k) out.push_back(exact_coeff(*node_, k));
    return out;
  }
  const long m = std::max<long>(opts.points, 4);
  std::vector<cplx> samples(static_cast<size_t>(2 * m));
  for (long j = 0; j < 2 * m; ++j)
    samples[static_cast<size_t>(j)] = eval(kTwoPi * static_cast<double>(j) / (2.0 * m));
  std::vector<cplx> fine = dft_range(samples, 1, k_min, k_max);
  std::vector<cplx> coarse = dft_range(samples, 2, k_min, k_max);
  double diff = 0.0;
  for (size_t i = 0; i < fine.size(); ++i)
    diff = std::max(diff, std::abs(fine[i] - coarse[i]));
  if (diff > opts.tol)
    fail(ErrorCode::QuadratureNotConverged,
         "coefficient quadrature moved by " + std::to_string(diff) +
             " when doubling M=" + std::to_string(m));
  return fine;
}

cplx fourier_coeff_quadrature(const Symbol& s, int k, long points) {
  cplx acc = 0.0;
  for (long j = 0; j < points; ++j) {
    const double x = kTwoPi * static_cast<double>(j) / static_cast<double>(points);
    acc += s.eval(x) * std::polar(1.0, -static_cast<double>(k) * x);
  }
  return acc / static_cast<double>(points);
}

namespace {

RangeInfo range_of_constant(double c) { return {c, c, 0.0, 0.0, RangeMethod::Exact}; }

// Ternary refinement of a smooth local extremum inside [lo, hi].
template <typename F>
double refine_extremum(F&& f, double lo, double hi, bool maximize) {
  while (hi - lo > 1e-12) {
    const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
    const bool move_lo = maximize ? f(m1) < f(m2) : f(m1) > f(m2);
    if (move_lo)
      lo = m1;
    else
      hi = m2;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

RangeInfo Symbol::range(long grid_points) const {
  if (!is_real_valued())
    fail(ErrorCode::NotRealValued, "range requires a real-valued symbol");

  if (const auto* trig = std::get_if<TrigPolyNode>(&node_->v)) {
    int degree = 0;
    for (const auto& [k, c] : trig->coeffs)
      if (std::abs(c) > 0.0) degree = std::max(degree, std::abs(k));
    if (degree <= 1) {
      auto coeff = [&](int k) -> cplx {
        auto it = trig->coeffs.find(k);
        return it == trig->coeffs.end() ? cplx{0.0, 0.0} : it->second;
      };
      const double c0 = coeff(0).real();
      const cplx c1 = coeff(1);
      const double amp = 2.0 * std::abs(c1);
      if (amp == 0.0) return range_of_constant(c0);
      const double phi = std::arg(c1);
      RangeInfo r;
      r.sup_value = c0 + amp;
      r.inf_value = c0 - amp;
      r.argmax = wrap_angle(-phi);
      r.argmin = wrap_angle(kPi - phi);
      r.method = RangeMethod::Exact;
      return r;
    }
  } else if (const auto* ar1 = std::get_if<Ar1Node>(&node_->v)) {
    const double th = ar1->theta;
    if (th == 0.0) return range_of_constant(1.0);
    const double at = std::abs(th);
    RangeInfo r;
    r.sup_value = 1.0 / ((1.0 - at) * (1.0 - at));
    r.inf_value = 1.0 / ((1.0 + at) * (1.0 + at));
    r.argmax = th > 0 ? 0.0 : kPi;
    r.argmin = th > 0 ? kPi : 0.0;
    r.method = RangeMethod::Exact;
    return r;
  } else if (const auto* refl = std::get_if<ReflectNode>(&node_->v)) {
    // J maps the extremum location x* of the inner symbol to -x*.
    RangeInfo r = Symbol(refl->inner).range(grid_points);
    r.argmin = wrap_angle(-r.argmin);
    r.argmax = wrap_angle(-r.argmax);
    return r;
  }

  const long grid = std::max<long>(grid_points, 16);
  auto value = [this](double x) { return eval(x).real(); };
  long idx_min = 0, idx_max = 0;
  double best_min = value(0.0), best_max = best_min;
  for (long j = 1; j < grid; ++j) {
    const double v = value(kTwoPi * static_cast<double>(j) / static_cast<double>(grid));
    if (v < best_min) {
      best_min = v;
      idx_min = j;
    }
    if (v > best_max) {
      best_max = v;
      idx_max = j;
    }
  }
  const double h = kTwoPi / static_cast<double>(grid);
  auto center = [&](long idx) { return kTwoPi * static_cast<double>(idx) / grid; };
  RangeInfo r;
  r.method = RangeMethod::GridRefined;
  const double xmin = refine_extremum(value, center(idx_min) - h, center(idx_min) + h, false);
  const double xmax = refine_extremum(value, center(idx_max) - h, center(idx_max) + h, true);
  r.argmin = wrap_angle(xmin);
  r.argmax = wrap_angle(xmax);
  r.inf_value = value(xmin);
  r.sup_value = value(xmax);
  return r;
}

namespace {

using nlohmann::ordered_json;

void require_keys(const nlohmann::json& obj, std::initializer_list<const char*> keys) {
  for (const char* k : keys)
    if (!obj.contains(k))
      fail(ErrorCode::ConfigError, std::string("symbol object missing key '") + k + "'");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known)
      fail(ErrorCode::ConfigError, "symbol object has unknown key '" + it.key() + "'");
  }
}

cplx parse_coeff_value(const nlohmann::json& v) {
  if (v.is_number()) return cplx{v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return cplx{v[0].get<double>(), v[1].get<double>()};
  fail(ErrorCode::ConfigError, "coefficient must be a number or [re, im] pair");
}

Symbol parse_symbol(const nlohmann::json& j) {
  if (!j.is_object()) fail(ErrorCode::ConfigError, "symbol must be a JSON object");
  if (!j.contains("type") || !j["type"].is_string())
    fail(ErrorCode::ConfigError, "symbol needs a string 'type'");
  const std::string type = j["type"].get<std::string>();
  if (type == "trigpoly") {
    require_keys(j, {"type", "coeffs"});
    if (!j["coeffs"].is_object())
      fail(ErrorCode::ConfigError, "'coeffs' must be an object keyed by integers");
    std::map<int, cplx> coeffs;
    for (auto it = j["coeffs"].begin(); it != j["coeffs"].end(); ++it) {
      size_t pos = 0;
      int k = 0;
      try {
        k = std::stoi(it.key(), &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != it.key().size())
        fail(ErrorCode::ConfigError, "coefficient key '" + it.key() + "' is not an integer");
      coeffs[k] = parse_coeff_value(it.value());
    }
    return Symbol::trig_poly(std::move(coeffs));
  }
  if (type == "ar1") {
    require_keys(j, {"type", "theta"});
    if (!j["theta"].is_number()) fail(ErrorCode::ConfigError, "'theta' must be a number");
    const double theta = j["theta"].get<double>();
    if (!(std::abs(theta) < 1.0))
      fail(ErrorCode::ConfigError, "'theta' must satisfy |theta| < 1");
    return Symbol::ar1_density(theta);
  }
  if (type == "product") {
    require_keys(j, {"type", "left", "right"});
    return Symbol::product(parse_symbol(j["left"]), parse_symbol(j["right"]));
  }
  if (type == "reflect") {
    require_keys(j, {"type", "inner"});
    return Symbol::reflected(parse_symbol(j["inner"]));
  }
  fail(ErrorCode::ConfigError, "unknown symbol type '" + type + "'");
}

ordered_json symbol_to_json(const Symbol::Node& n) {
  return std::visit(
      [](const auto& node) -> ordered_json {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, TrigPolyNode>) {
          ordered_json coeffs = ordered_json::object();
          for (const auto& [k, c] : node.coeffs)
            coeffs[std::to_string(k)] = {c.real(), c.imag()};
          return ordered_json{{"type", "trigpoly"}, {"coeffs", coeffs}};
        } else if constexpr (std::is_same_v<T, Ar1Node>) {
          return ordered_json{{"type", "ar1"}, {"theta", node.theta}};
        } else if constexpr (std::is_same_v<T, PointwiseNode>) {
          if (node.op != PointwiseOp::Product)
            fail(ErrorCode::InvalidArgument, "sum symbols have no JSON form");
          return ordered_json{{"type", "product"},
                              {"left", symbol_to_json(*node.left)},
                              {"right", symbol_to_json(*node.right)}};
        } else if constexpr (std::is_same_v<T, ScaleNode>) {
          fail(ErrorCode::InvalidArgument, "scaled symbols have no JSON form");
        } else {
          return ordered_json{{"type", "reflect"}, {"inner", symbol_to_json(*node.inner)}};
        }
      },
      n.v);
}

}  // namespace

Symbol Symbol::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorCode::ConfigError, std::string("symbol JSON parse error: ") + e.what());
  }
  return parse_symbol(j);
}

std::string Symbol::to_json() const { return symbol_to_json(*node_).dump(); }

}  // namespace toepspec
