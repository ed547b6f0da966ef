#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace qwd::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// Everything needed to rerun a command: its name and the resolved value of
/// every option (defaults included).
struct RunManifest {
  std::string command;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  std::uint64_t seed = 0;
  double wall_time = 0.0;
  std::vector<std::string> outputs;
  nlohmann::ordered_json headline = nlohmann::ordered_json::object();

  nlohmann::ordered_json to_json() const;
  static RunManifest from_json(const nlohmann::json& j);

  /// Arguments that reproduce the run, starting with the command name.
  std::vector<std::string> to_args() const;
};

/// Writes <dir>/<command>.manifest.json and returns its path.
std::string write_manifest(const std::string& dir, const RunManifest& m);

}  // namespace qwd::cli
