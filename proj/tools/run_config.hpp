// run_config.hpp — JSON run configurations and the command executors behind the
// CLI subcommands. Configs are single JSON documents; complex values are [re, im]
// pairs; beta serializes as a number or the string "inf" for zero temperature.
#pragma once

#include "pointer_sim/bath.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace psim::cli {

using nlohmann::json;

struct CommandResult {
  std::string payload;  // full output document (CSV or JSON text)
  int exit_code = 0;    // 0 success, 4 tolerance exceeded (payload still written)
};

// Parses the file and reports json syntax errors with a line number.
json load_config(const std::string& path);

CommandResult cmd_premeasure(const json& cfg);
CommandResult cmd_decohere(const json& cfg);
CommandResult cmd_oracle(const json& cfg);
CommandResult cmd_scan(const json& cfg, std::optional<unsigned> seed_override);
CommandResult cmd_envariance(const json& cfg);

// Parse + re-emit with defaults made explicit; idempotent, so configs round-trip
// losslessly through serialization.
json canonical_config(const std::string& command, const json& cfg);

}  // namespace psim::cli
