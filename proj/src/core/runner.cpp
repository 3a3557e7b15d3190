#include "core/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "core/errors.hpp"
#include "core/gauss.hpp"
#include "core/ldp.hpp"
#include "core/sections.hpp"
#include "core/spectrum.hpp"
#include "core/symbol.hpp"
#include "core/version.hpp"

namespace toepspec {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// ---- config access with strict key checking -------------------------------

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const char* where) {
  if (!obj.is_object())
    fail(ErrorCode::ConfigError, std::string(where) + " must be a JSON object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed) known = known || it.key() == k;
    if (!known)
      fail(ErrorCode::ConfigError,
           std::string(where) + " has unknown key '" + it.key() + "'");
  }
}

const json& require(const json& obj, const char* key, const char* where) {
  if (!obj.contains(key))
    fail(ErrorCode::ConfigError, std::string(where) + " is missing key '" + key + "'");
  return obj.at(key);
}

double number(const json& v, const char* what) {
  if (!v.is_number()) fail(ErrorCode::ConfigError, std::string(what) + " must be a number");
  return v.get<double>();
}

long integer(const json& v, const char* what) {
  if (!v.is_number_integer())
    fail(ErrorCode::ConfigError, std::string(what) + " must be an integer");
  return v.get<long>();
}

Symbol symbol_field(const json& obj, const char* key, const char* where) {
  return Symbol::from_json(require(obj, key, where).dump());
}

std::vector<double> number_array(const json& v, const char* what) {
  if (!v.is_array() || v.empty())
    fail(ErrorCode::ConfigError, std::string(what) + " must be a nonempty array");
  std::vector<double> out;
  for (const auto& e : v) out.push_back(number(e, what));
  return out;
}

std::vector<long> integer_array(const json& v, const char* what) {
  if (!v.is_array() || v.empty())
    fail(ErrorCode::ConfigError, std::string(what) + " must be a nonempty array");
  std::vector<long> out;
  for (const auto& e : v) out.push_back(integer(e, what));
  return out;
}

// "limits" accepts either the closed-form example parameters or explicit
// extremal values.
ReferenceLimits limits_field(const json& v, const char* where) {
  if (v.contains("a") || v.contains("theta")) {
    check_keys(v, {"a", "theta"}, where);
    const Example1Limits lim = example1_limits(number(require(v, "a", where), "'a'"),
                                               number(require(v, "theta", where), "'theta'"));
    return reference_from(lim);
  }
  check_keys(v, {"lambda_min", "lambda_max"}, where);
  return {number(require(v, "lambda_min", where), "'lambda_min'"),
          number(require(v, "lambda_max", where), "'lambda_max'")};
}

// ---- output plumbing -------------------------------------------------------

struct OutputSet {
  std::filesystem::path dir;
  std::vector<std::pair<std::string, std::string>> files;  // name -> body

  void add(const std::string& name, std::string body) {
    files.emplace_back(name, std::move(body));
  }

  void write_all() const {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) fail(ErrorCode::IoError, "cannot create output directory " + dir.string());
    for (const auto& [name, body] : files) {
      const std::filesystem::path path = dir / name;
      std::ofstream out(path, std::ios::binary);
      if (!out) fail(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
      out << body;
      if (!out) fail(ErrorCode::IoError, "short write to " + path.string());
    }
  }
};

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string meta_body(const std::string& command, std::optional<std::uint64_t> seed,
                      std::vector<std::string> notes) {
  ordered_json meta;
  meta["command"] = command;
  meta["generated_at"] = timestamp_utc();
  meta["library"] = {{"name", "toepspec"}, {"version", kVersion}};
  if (seed) meta["seed"] = *seed;
  meta["notes"] = notes;
  return meta.dump(2) + "\n";
}

std::string json_body(const ordered_json& j) { return j.dump(2) + "\n"; }

// ---- commands --------------------------------------------------------------

void cmd_spectrum(const json& cfg, const RunOptions& opts, OutputSet& out) {
  check_keys(cfg, {"f", "g", "n", "dump_matrices"}, "spectrum config");
  const Symbol f = symbol_field(cfg, "f", "spectrum config");
  const Symbol g = symbol_field(cfg, "g", "spectrum config");
  const long n = integer(require(cfg, "n", "spectrum config"), "'n'");
  bool dump_matrices = false;
  if (cfg.contains("dump_matrices")) {
    if (!cfg["dump_matrices"].is_boolean())
      fail(ErrorCode::ConfigError, "'dump_matrices' must be a boolean");
    dump_matrices = cfg["dump_matrices"].get<bool>();
  }

  const SpectrumResult s = product_spectrum(f, g, n, false);
  std::ostringstream csv;
  csv << "index,eigenvalue\n";
  for (size_t k = 0; k < s.eigenvalues.size(); ++k)
    csv << k << "," << fmt(s.eigenvalues[k]) << "\n";
  out.add("spectrum.csv", csv.str());
  out.add("spectrum.json", json_body(ordered_json{{"n", s.n},
                                                  {"lambda_min", s.lambda_min},
                                                  {"lambda_max", s.lambda_max}}));
  if (dump_matrices) {
    std::ostringstream tf, tg;
    write_matrix_csv(toeplitz_section(f, n), tf);
    write_matrix_csv(toeplitz_section(g, n), tg);
    out.add("t_f.csv", tf.str());
    out.add("t_g.csv", tg.str());
  }
  out.add("spectrum_meta.json",
          meta_body("spectrum", opts.seed_override,
                    {"eigenvalues ascend; spectrum computed through the symmetric form "
                     "sqrt(T_n(g)) T_n(f) sqrt(T_n(g))",
                     "eigenvalue averages and finite-order cumulants over this spectrum "
                     "are normalized by 1/(n+1), the true mean over n+1 eigenvalues"}));
}

void cmd_converge(const json& cfg, const RunOptions& opts, OutputSet& out) {
  check_keys(cfg, {"f", "g", "n_list", "reference"}, "converge config");
  const Symbol f = symbol_field(cfg, "f", "converge config");
  const Symbol g = symbol_field(cfg, "g", "converge config");
  const std::vector<long> n_list =
      integer_array(require(cfg, "n_list", "converge config"), "'n_list'");
  std::optional<ReferenceLimits> reference;
  if (cfg.contains("reference")) reference = limits_field(cfg["reference"], "'reference'");

  const ConvergenceReport rep = convergence_sweep(f, g, n_list, reference);
  std::ostringstream csv;
  csv << "n,lambda_min_n,lambda_max_n,err_min,err_max\n";
  for (size_t i = 0; i < rep.rows.size(); ++i) {
    csv << rep.rows[i].n << "," << fmt(rep.rows[i].lambda_min_n) << ","
        << fmt(rep.rows[i].lambda_max_n) << ",";
    if (rep.reference)
      csv << fmt(rep.errors_min[i]) << "," << fmt(rep.errors_max[i]);
    else
      csv << ",";
    csv << "\n";
  }
  out.add("converge.csv", csv.str());
  out.add("converge_meta.json",
          meta_body("converge", opts.seed_override,
                    {"one row per section order; errors are absolute distances to the "
                     "reference limits when present",
                     "eigenvalue averages and finite-order cumulants are normalized by "
                     "1/(n+1)"}));
}

void cmd_widom(const json& cfg, const RunOptions& opts, OutputSet& out) {
  check_keys(cfg, {"f", "g", "n", "band"}, "widom-check config");
  const Symbol f = symbol_field(cfg, "f", "widom-check config");
  const Symbol g = symbol_field(cfg, "g", "widom-check config");
  const long n = integer(require(cfg, "n", "widom-check config"), "'n'");
  long band = cfg.contains("band") ? integer(cfg["band"], "'band'")
                                   : default_widom_band(f, g);
  const double residual = widom_residual(f, g, n, band);
  out.add("widom.json",
          json_body(ordered_json{{"n", n}, {"band", band}, {"residual", residual}}));
  out.add("widom_meta.json",
          meta_body("widom-check", opts.seed_override,
                    {"residual is the operator norm of the finite-section product "
                     "identity defect at the given Hankel band"}));
}

void cmd_essential(const json& cfg, const RunOptions& opts, OutputSet& out) {
  check_keys(cfg, {"f", "g"}, "essential config");
  const Symbol f = symbol_field(cfg, "f", "essential config");
  const Symbol g = symbol_field(cfg, "g", "essential config");
  const EssentialInterval iv = essential_interval(f, g);
  out.add("essential.json", json_body(ordered_json{{"lo", iv.lo}, {"hi", iv.hi}}));
  out.add("essential_meta.json",
          meta_body("essential", opts.seed_override,
                    {"interval is [inf(fg), sup(fg)] over the torus"}));
}

void cmd_example1(const json& cfg, const RunOptions& opts, OutputSet& out) {
  check_keys(cfg, {"a", "theta"}, "example1 config");
  const double a = number(require(cfg, "a", "example1 config"), "'a'");
  const double theta = number(require(cfg, "theta", "example1 config"), "'theta'");
  const Example1Limits lim = example1_limits(a, theta);
  out.add("example1.json",
          json_body(ordered_json{{"a", lim.a},
                                 {"theta", lim.theta},
                                 {"a_theta", lim.a_theta},
                                 {"b_theta", lim.b_theta},
                                 {"lambda_min_limit", lim.lambda_min_limit},
                                 {"lambda_max_limit", lim.lambda_max_limit},
                                 {"boundary_candidates", lim.boundary_candidates}}));
  out.add("example1_meta.json",
          meta_body("example1", opts.seed_override,
                    {"non-finite values (theta = 0 corner cases) serialize as null"}));
}

void cmd_ldp(const json& cfg, const RunOptions& opts, OutputSet& out) {
  check_keys(cfg, {"f", "g", "limits", "grid"}, "ldp config");
  const Symbol f = symbol_field(cfg, "f", "ldp config");
  const Symbol g = symbol_field(cfg, "g", "ldp config");
  const ReferenceLimits lim = limits_field(require(cfg, "limits", "ldp config"), "'limits'");

  std::vector<double> xs;
  const json& grid = require(cfg, "grid", "ldp config");
  if (grid.contains("points")) {
    check_keys(grid, {"points"}, "'grid'");
    xs = number_array(grid["points"], "'points'");
  } else {
    check_keys(grid, {"from", "to", "step"}, "'grid'");
    const double from = number(require(grid, "from", "'grid'"), "'from'");
    const double to = number(require(grid, "to", "'grid'"), "'to'");
    const double step = number(require(grid, "step", "'grid'"), "'step'");
    if (!(step > 0.0) || to < from)
      fail(ErrorCode::ConfigError, "'grid' needs step > 0 and to >= from");
    for (double x = from; x <= to + 0.5 * step; x += step) xs.push_back(x);
  }

  const RateFunction rate(f, g, lim.lambda_min, lim.lambda_max);
  std::ostringstream csv;
  csv << "x,I,J,region\n";
  for (double x : xs) {
    const double jv = rate.J(x);
    const double iv = rate.region(x) == RateRegion::Middle ? jv : rate.I(x);
    const char* region = rate.region(x) == RateRegion::LeftLinear    ? "left-linear"
                         : rate.region(x) == RateRegion::RightLinear ? "right-linear"
                                                                     : "middle";
    csv << fmt(x) << "," << fmt(iv) << "," << fmt(jv) << "," << region << "\n";
  }
  out.add("ldp.csv", csv.str());
  out.add("ldp_meta.json",
          meta_body("ldp", opts.seed_override,
                    {"J extends I linearly with slopes 1/(2 lambda_min) and "
                     "1/(2 lambda_max) beyond the knots a and b"}));
}

void cmd_simulate(const json& cfg, const RunOptions& opts, OutputSet& out) {
  check_keys(cfg, {"f", "theta", "n", "replicates", "seed", "thresholds", "limits",
                   "threads"},
             "simulate config");
  const Symbol f = symbol_field(cfg, "f", "simulate config");
  SimulationConfig sim;
  sim.theta = number(require(cfg, "theta", "simulate config"), "'theta'");
  if (!(std::abs(sim.theta) < 1.0))
    fail(ErrorCode::ConfigError, "'theta' must satisfy |theta| < 1");
  sim.n = integer(require(cfg, "n", "simulate config"), "'n'");
  sim.replicates = integer(require(cfg, "replicates", "simulate config"), "'replicates'");
  const long seed_cfg = integer(require(cfg, "seed", "simulate config"), "'seed'");
  sim.seed = opts.seed_override ? *opts.seed_override
                                : static_cast<std::uint64_t>(seed_cfg);
  sim.thresholds = number_array(require(cfg, "thresholds", "simulate config"),
                                "'thresholds'");
  sim.threads = cfg.contains("threads")
                    ? static_cast<int>(integer(cfg["threads"], "'threads'"))
                    : 1;
  const ReferenceLimits lim =
      limits_field(require(cfg, "limits", "simulate config"), "'limits'");

  const Symbol g = Symbol::ar1_density(sim.theta);
  const RateFunction rate(f, g, lim.lambda_min, lim.lambda_max);
  const std::vector<TailEstimate> estimates = tail_study(sim, f, rate);

  std::ostringstream csv;
  csv << "x,empirical_prob,empirical_rate,J_reference,stderr,n,replicates,seed\n";
  for (const TailEstimate& e : estimates) {
    csv << fmt(e.threshold) << "," << fmt(e.empirical_prob) << ","
        << fmt(e.empirical_rate) << "," << fmt(e.rate_reference) << ","
        << fmt(e.stderr_prob) << "," << sim.n << "," << sim.replicates << ","
        << sim.seed << "\n";
  }
  out.add("simulate.csv", csv.str());
  out.add("simulate_meta.json",
          meta_body("simulate", std::optional<std::uint64_t>(sim.seed),
                    {"tail speed follows the 1/n normalization of the quadratic form, "
                     "which averages n+1 samples (O(1/n) finite-size mismatch)",
                     "substreams are keyed by (seed, replicate); results do not depend "
                     "on the thread schedule"}));
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{
      "spectrum", "converge", "widom-check", "essential", "example1", "ldp", "simulate"};
  return names;
}

void run_command(const std::string& command, const std::string& config_json,
                 const RunOptions& options) {
  json cfg;
  try {
    cfg = json::parse(config_json);
  } catch (const std::exception& e) {
    fail(ErrorCode::ConfigError, std::string("config JSON parse error: ") + e.what());
  }

  OutputSet out;
  out.dir = options.out_dir;
  if (command == "spectrum")
    cmd_spectrum(cfg, options, out);
  else if (command == "converge")
    cmd_converge(cfg, options, out);
  else if (command == "widom-check")
    cmd_widom(cfg, options, out);
  else if (command == "essential")
    cmd_essential(cfg, options, out);
  else if (command == "example1")
    cmd_example1(cfg, options, out);
  else if (command == "ldp")
    cmd_ldp(cfg, options, out);
  else if (command == "simulate")
    cmd_simulate(cfg, options, out);
  else
    fail(ErrorCode::ConfigError, "unknown command '" + command + "'");

  out.write_all();
  if (!options.quiet) {
    for (const auto& [name, body] : out.files)
      std::cout << (out.dir / name).string() << "\n";
  }
}

}  // namespace toepspec
