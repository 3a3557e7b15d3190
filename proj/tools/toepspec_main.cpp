// Command-line front end for the toepspec shared library.  All numerical work
// happens behind the C API; this binary only parses flags, reads the config
// file, and maps status codes to exit codes.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "toepspec/toepspec.h"

namespace {

constexpr std::pair<const char*, const char*> kCommands[] = {
    {"spectrum", "eigenvalues of the finite-section product T_n(f) T_n(g)"},
    {"converge", "extremal-eigenvalue sweep over section orders"},
    {"widom-check", "residual of the finite-section product identity"},
    {"essential", "essential-spectrum interval [inf(fg), sup(fg)]"},
    {"example1", "closed-form limits for f = a + cos, g the AR(1) density"},
    {"ldp", "rate function I/J on a grid"},
    {"simulate", "Monte Carlo tail exponents for the AR(1) quadratic form"}};

int exit_code_for(ts_status status) {
  switch (status) {
    case TS_OK:
      return 0;
    case TS_ERR_CONFIG:
    case TS_ERR_IO:
    case TS_ERR_INVALID_ARGUMENT:
      return 1;  // validation
    default:
      return 2;  // numerical failure
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-section Toeplitz product spectra and Gaussian quadratic-form "
               "tail studies"};
  app.set_version_flag("--version", std::string(ts_version()));
  app.require_subcommand(1);

  struct Args {
    std::string config;
    std::string out = ".";
    std::int64_t seed = -1;
    bool quiet = false;
  };
  std::vector<std::pair<CLI::App*, Args>> subs;
  subs.reserve(std::size(kCommands));
  for (const auto& [name, description] : kCommands) {
    CLI::App* sub = app.add_subcommand(name, description);
    subs.emplace_back(sub, Args{});
    Args& a = subs.back().second;
    sub->add_option("--config", a.config, "JSON config file")->required();
    sub->add_option("--out", a.out, "output directory (default: .)");
    sub->add_option("--seed", a.seed, "override the config seed");
    sub->add_flag("--quiet", a.quiet, "suppress the output file listing");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;  // flag/usage problems count as validation errors
  }

  for (auto& [sub, args] : subs) {
    if (!sub->parsed()) continue;

    std::ifstream in(args.config, std::ios::binary);
    if (!in) {
      std::fprintf(stderr, "IoError: cannot read config file %s\n", args.config.c_str());
      return 1;
    }
    std::ostringstream text;
    text << in.rdbuf();

    const ts_status status =
        ts_run_command(sub->get_name().c_str(), text.str().c_str(), args.out.c_str(),
                       args.seed, args.quiet ? 1 : 0);
    if (status != TS_OK) {
      std::fprintf(stderr, "%s: %s\n", ts_status_name(status), ts_last_error_message());
      return exit_code_for(status);
    }
    return 0;
  }
  return 1;
}
