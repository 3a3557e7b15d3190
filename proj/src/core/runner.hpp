#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace toepspec {

struct RunOptions {
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed_override;  // wins over the config seed
  bool quiet = false;
};

/// Executes one CLI command against a JSON config and writes its artifacts
/// into out_dir.  The config is validated in full (unknown keys rejected)
/// and all results are computed before any file is written.  Throws Error:
/// ConfigError/IoError for bad input, module errors for numerical failures.
void run_command(const std::string& command, const std::string& config_json,
                 const RunOptions& options);

const std::vector<std::string>& command_names();

}  // namespace toepspec
