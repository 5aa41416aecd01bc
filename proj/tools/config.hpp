#pragma once

#include <Eigen/Dense>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cli {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SimConfig {
  std::string model = "sphere-body";
  double I_perp = 1.0, I_ax = 1.0;
  Eigen::Vector3d n0 = Eigen::Vector3d::UnitZ(), v0 = Eigen::Vector3d::Zero();
  double r0 = 0.0, dt = 1e-3;
  long steps = 0;
  std::optional<std::string> out;
  std::string format = "csv";
  std::uint64_t seed = 0;
  std::vector<std::string> warnings;
};

namespace detail {

inline double number(const nlohmann::json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError("'" + key + "' must be a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw ConfigError("'" + key + "' must be finite");
  return x;
}

inline Eigen::Vector3d vec3(const nlohmann::json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 3) throw ConfigError("'" + key + "' must be an array of 3 numbers");
  return {number(j[0], key), number(j[1], key), number(j[2], key)};
}

inline std::string text(const nlohmann::json& j, const std::string& key) {
  if (!j.is_string()) throw ConfigError("'" + key + "' must be a string");
  return j.get<std::string>();
}

}  // namespace detail

/// Parses a flat JSON document. Unknown keys, missing required keys and bad values throw ConfigError.
inline SimConfig parse_config(const std::string& document) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  static const std::set<std::string> known{"model", "I_perp", "I_ax", "n0", "v0", "r0",
                                           "dt",    "steps",  "out",  "format", "seed"};
  static const std::vector<std::string> required{"model", "I_perp", "I_ax", "n0", "v0", "r0", "dt", "steps"};
  for (const auto& [k, _] : j.items())
    if (!known.count(k)) throw ConfigError("unknown key '" + k + "'");
  for (const auto& k : required)
    if (!j.contains(k)) throw ConfigError("missing key '" + k + "'");

  SimConfig c;
  c.model = detail::text(j["model"], "model");
  if (c.model != "sphere-body") throw ConfigError("unknown model '" + c.model + "'");
  c.I_perp = detail::number(j["I_perp"], "I_perp");
  c.I_ax = detail::number(j["I_ax"], "I_ax");
  if (!(c.I_perp > 0) || !(c.I_ax > 0)) throw ConfigError("I_perp and I_ax must be positive");
  c.n0 = detail::vec3(j["n0"], "n0");
  c.v0 = detail::vec3(j["v0"], "v0");
  c.r0 = detail::number(j["r0"], "r0");
  c.dt = detail::number(j["dt"], "dt");
  if (!(c.dt > 0)) throw ConfigError("dt must be positive");
  if (!j["steps"].is_number_integer() || j["steps"].get<long>() < 1) throw ConfigError("steps must be a positive integer");
  c.steps = j["steps"].get<long>();
  if (j.contains("out")) c.out = detail::text(j["out"], "out");
  if (j.contains("format")) c.format = detail::text(j["format"], "format");
  if (c.format != "csv" && c.format != "json") throw ConfigError("format must be csv or json");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer() || j["seed"].get<long long>() < 0)
      throw ConfigError("seed must be a non-negative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }

  const double len = c.n0.norm();
  if (len == 0.0) throw ConfigError("n0 must be nonzero");
  if (std::abs(len - 1) > 1e-6) {
    std::ostringstream w;
    w << "n0 normalized (|n0| was " << len << ")";
    c.warnings.push_back(w.str());
  }
  c.n0 /= len;
  const double along = c.n0.dot(c.v0);
  if (std::abs(along) > 1e-6) {
    std::ostringstream w;
    w << "v0 orthogonalized against n0 (removed component " << along << ")";
    c.warnings.push_back(w.str());
  }
  c.v0 -= along * c.n0;
  return c;
}

inline SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace cli
