#include "manifest.hpp"

#include <filesystem>

#include "qwd/errors.hpp"
#include "qwd/io.hpp"

namespace qwd::cli {

nlohmann::ordered_json RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["parameters"] = parameters;
  j["seed"] = seed;
  j["tool_version"] = kToolVersion;
  j["wall_time_seconds"] = wall_time;
  j["outputs"] = outputs;
  j["headline"] = headline;
  return j;
}

RunManifest RunManifest::from_json(const nlohmann::json& j) {
  try {
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    for (const auto& [k, v] : j.at("parameters").items()) m.parameters[k] = v;
    m.seed = j.value("seed", std::uint64_t{0});
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed manifest: ") + e.what());
  }
}

std::vector<std::string> RunManifest::to_args() const {
  std::vector<std::string> args{command};
  for (const auto& [k, v] : parameters.items()) {
    if (v.is_boolean()) {
      if (v.get<bool>()) args.push_back("--" + k);
    } else {
      args.push_back("--" + k);
      args.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    }
  }
  return args;
}

std::string write_manifest(const std::string& dir, const RunManifest& m) {
  const std::string path = (std::filesystem::path(dir) / (m.command + ".manifest.json")).string();
  write_file(path, m.to_json().dump(2) + "\n");
  return path;
}

}  // namespace qwd::cli
