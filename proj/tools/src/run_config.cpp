#include "run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "ghr/errors.hpp"

namespace ghr::cli {

nlohmann::json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("invalid JSON in '" + path + "': " + e.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("config file '" + path + "' must hold a JSON object");
  }
  return doc;
}

std::pair<std::string, double> parse_tolerance(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == text.size()) {
    throw ConfigError("tolerance override must look like name=value, got '" + text + "'");
  }
  const std::string value = text.substr(eq + 1);
  double tol = 0.0;
  const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), tol);
  if (ec != std::errc() || end != value.data() + value.size() || !std::isfinite(tol) || tol < 0.0) {
    throw ConfigError("tolerance value must be a nonnegative number, got '" + value + "'");
  }
  return {text.substr(0, eq), tol};
}

double number_or(const nlohmann::json& settings, const std::string& key, double fallback) {
  if (!settings.contains(key)) {
    return fallback;
  }
  const nlohmann::json& v = settings.at(key);
  if (v.is_number()) {
    return v.get<double>();
  }
  if (v.is_string() && (v == "inf" || v == "+inf")) {
    return INFINITY;
  }
  throw ConfigError("'" + key + "' must be a number");
}

std::size_t count_or(const nlohmann::json& settings, const std::string& key,
                     std::size_t fallback) {
  if (!settings.contains(key)) {
    return fallback;
  }
  const nlohmann::json& v = settings.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ConfigError("'" + key + "' must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

std::string text_or(const nlohmann::json& settings, const std::string& key,
                    const std::string& fallback) {
  if (!settings.contains(key)) {
    return fallback;
  }
  const nlohmann::json& v = settings.at(key);
  if (!v.is_string()) {
    throw ConfigError("'" + key + "' must be a string");
  }
  return v.get<std::string>();
}

Quaternion quaternion_or(const nlohmann::json& settings, const std::string& key,
                         const Quaternion& fallback) {
  return settings.contains(key) ? to_quaternion(settings.at(key), key) : fallback;
}

Quaternion to_quaternion(const nlohmann::json& value, const std::string& where) {
  if (value.is_number()) {
    return Quaternion(value.get<double>());
  }
  if (value.is_string()) {
    return parse_quaternion(value.get<std::string>());
  }
  throw ConfigError("'" + where + "' must be a number or quaternion string");
}

QVector to_qvector(const nlohmann::json& value, const std::string& where) {
  if (!value.is_array() || value.empty()) {
    throw ConfigError("'" + where + "' must be a nonempty array");
  }
  QVector out;
  for (std::size_t m = 0; m < value.size(); ++m) {
    out.push_back(to_quaternion(value[m], where + "[" + std::to_string(m) + "]"));
  }
  return out;
}

}  // namespace ghr::cli
