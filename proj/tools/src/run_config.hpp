#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "ghr/filters.hpp"
#include "ghr/quaternion.hpp"
#include "json.hpp"

namespace ghr::cli {

struct RunConfig {
  std::string subcommand;
  std::uint64_t seed = 1;
  std::map<std::string, double> tolerances;
  std::optional<std::string> output_path;
  std::optional<std::size_t> points;
  // Config file contents with command-line flags merged on top.
  nlohmann::json settings = nlohmann::json::object();
};

// Throws ConfigError when the file cannot be read or is not a JSON object.
nlohmann::json load_config_file(const std::string& path);

// "name=value"
std::pair<std::string, double> parse_tolerance(const std::string& text);

double number_or(const nlohmann::json& settings, const std::string& key, double fallback);
std::size_t count_or(const nlohmann::json& settings, const std::string& key, std::size_t fallback);
std::string text_or(const nlohmann::json& settings, const std::string& key,
                    const std::string& fallback);
Quaternion quaternion_or(const nlohmann::json& settings, const std::string& key,
                         const Quaternion& fallback);

// A JSON number or quaternion string such as "0.3-0.1i+0.2k".
Quaternion to_quaternion(const nlohmann::json& value, const std::string& where);
QVector to_qvector(const nlohmann::json& value, const std::string& where);

}  // namespace ghr::cli
