#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "cogsim/engine.hpp"

namespace cogsim {

// JSON configuration. One document with optional sections
//
//     { "algorithm": "ca" | "ba",
//       "mobility": {...}, "dataset": {...}, "exchange": {...}, "engine": {...} }
//
// Every key is optional and overrides the value already in the target config;
// unknown keys are rejected. Field names are listed in config.cpp and README.

/// Applies `doc` on top of `cfg`. Throws ConfigError naming the JSON path of
/// the first bad field. Does not run SimConfig::validate.
void apply_config(SimConfig& cfg, const nlohmann::json& doc);

/// Parses and applies a config file. Throws ConfigError (also for malformed
/// JSON, with the parser's position).
void apply_config_file(SimConfig& cfg, const std::filesystem::path& path);

/// Full config as JSON; apply_config of the result reproduces cfg.
nlohmann::json config_to_json(const SimConfig& cfg);

/// Presets: "1" = 99 nodes in one community with d1 data, "2" = 50 nodes in
/// one community with d2 data, "3" = 99 nodes in three separated communities
/// of a 6x6 grid with two travellers each (d1), "desk" = "1" with 50 nodes on
/// a 750 m square. All with the default exchange operating point.
SimConfig scenario_preset(std::string_view name);

}  // namespace cogsim
