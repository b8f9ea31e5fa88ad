#include "slipball/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "slipball/errors.hpp"

namespace slipball {

namespace {

using Json = nlohmann::json;

void reject_unknown(const Json& obj, const std::set<std::string>& allowed,
                    const std::string& prefix) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.contains(key)) {
      throw ConfigError("unknown config key '" + prefix + key + "'");
    }
  }
}

const Json& require_object(const Json& value, const std::string& key) {
  if (!value.is_object()) throw ConfigError("config key '" + key + "' must be an object");
  return value;
}

double get_number(const Json& value, const std::string& key) {
  if (!value.is_number()) throw ConfigError("config key '" + key + "' must be a number");
  return value.get<double>();
}

std::size_t get_count(const Json& value, const std::string& key) {
  if (!value.is_number_integer() || value.get<long long>() < 0) {
    throw ConfigError("config key '" + key + "' must be a non-negative integer");
  }
  return value.get<std::size_t>();
}

std::string get_string(const Json& value, const std::string& key) {
  if (!value.is_string()) throw ConfigError("config key '" + key + "' must be a string");
  return value.get<std::string>();
}

// 1-based line and column of a byte offset.
std::string locate(std::string_view text, std::size_t offset) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

}  // namespace

void RunConfig::validate() const {
  try {
    oracle.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("oracle.step: ") + e.what());
  }
  try {
    grid.validate(oracle);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
  try {
    boundary.validate(oracle);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("boundary: ") + e.what());
  }
  if (!(viscosity >= 0.0) || !std::isfinite(viscosity)) {
    throw ConfigError("viscosity must be finite and non-negative");
  }
}

RunConfig parse_run_config(std::string_view text, RunConfig base) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError("malformed config at " + locate(text, e.byte > 0 ? e.byte - 1 : 0) +
                      ": " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  reject_unknown(doc,
                 {"family", "grid", "boundary", "oracle", "epsilons", "viscosity",
                  "report", "out"},
                 "");
  RunConfig cfg = std::move(base);

  if (doc.contains("family")) cfg.family = get_string(doc["family"], "family");
  if (doc.contains("grid")) {
    const Json& g = require_object(doc["grid"], "grid");
    reject_unknown(g, {"n_r", "n_theta", "n_phi", "margin_r", "margin_theta"}, "grid.");
    if (g.contains("n_r")) cfg.grid.n_r = get_count(g["n_r"], "grid.n_r");
    if (g.contains("n_theta")) cfg.grid.n_theta = get_count(g["n_theta"], "grid.n_theta");
    if (g.contains("n_phi")) cfg.grid.n_phi = get_count(g["n_phi"], "grid.n_phi");
    if (g.contains("margin_r")) cfg.grid.margin_r = get_number(g["margin_r"], "grid.margin_r");
    if (g.contains("margin_theta")) {
      cfg.grid.margin_theta = get_number(g["margin_theta"], "grid.margin_theta");
    }
  }
  if (doc.contains("boundary")) {
    const Json& b = require_object(doc["boundary"], "boundary");
    reject_unknown(b, {"n_theta", "n_phi"}, "boundary.");
    if (b.contains("n_theta")) {
      cfg.boundary.n_theta = get_count(b["n_theta"], "boundary.n_theta");
    }
    if (b.contains("n_phi")) cfg.boundary.n_phi = get_count(b["n_phi"], "boundary.n_phi");
  }
  if (doc.contains("oracle")) {
    const Json& o = require_object(doc["oracle"], "oracle");
    reject_unknown(o, {"step", "richardson"}, "oracle.");
    if (o.contains("step")) cfg.oracle.step = get_number(o["step"], "oracle.step");
    if (o.contains("richardson")) {
      if (!o["richardson"].is_boolean()) {
        throw ConfigError("config key 'oracle.richardson' must be a boolean");
      }
      cfg.oracle.richardson = o["richardson"].get<bool>();
    }
  }
  if (doc.contains("epsilons")) {
    const Json& e = doc["epsilons"];
    if (!e.is_array()) throw ConfigError("config key 'epsilons' must be an array");
    cfg.epsilons.clear();
    for (std::size_t i = 0; i < e.size(); ++i) {
      cfg.epsilons.push_back(get_number(e[i], "epsilons[" + std::to_string(i) + "]"));
    }
  }
  if (doc.contains("viscosity")) cfg.viscosity = get_number(doc["viscosity"], "viscosity");
  if (doc.contains("report")) cfg.report_path = get_string(doc["report"], "report");
  if (doc.contains("out")) cfg.out_path = get_string(doc["out"], "out");
  return cfg;
}

RunConfig load_run_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_run_config(buffer.str(), std::move(base));
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

}  // namespace slipball
