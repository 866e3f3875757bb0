#pragma once

#include <filesystem>
#include <string_view>

#include "json.hpp"
#include "tcr/harness.hpp"

namespace tcr {

using Json = nlohmann::ordered_json;

// JSON documents use the struct field names as snake_case keys. Unknown keys
// are rejected; missing keys keep the SimParams defaults. Run and sweep
// documents accept SimParams keys either nested under "sim_params" or at the
// top level.
//
//   stake_policy:  "protocol" | {"analysis_sigma": <sigma>}
//   tie_rule:      "reject_and_refund"
//   behavior_mode: "stochastic" | "degenerate_ideal"
//   grid:          [{"name": "p_informed", "values": [0.1, 0.5, 0.9]}, ...]

SimParams sim_params_from_json(const Json& doc, SimParams base = {});
Json to_json(const SimParams& params);

RunConfig run_config_from_json(const Json& doc);
Json to_json(const RunConfig& config);

SweepSpec sweep_spec_from_json(const Json& doc);
Json to_json(const SweepSpec& spec);

std::string_view to_string(BehaviorMode mode);
BehaviorMode behavior_mode_from_string(std::string_view text);

/// Parses a JSON file; throws IoError if unreadable, ConfigError if malformed.
Json read_json_file(const std::filesystem::path& path);

}  // namespace tcr
