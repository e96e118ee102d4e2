#include "config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace eisenrest::cli {

namespace {

using nlohmann::json;

double number(const json& v, const std::string& key) {
  if (!v.is_number()) throw UsageError("config key '" + key + "' must be a number");
  return v.get<double>();
}

int integer(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw UsageError("config key '" + key + "' must be an integer");
  return v.get<int>();
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "json") return Format::json;
  if (name == "jsonl") return Format::jsonl;
  if (name == "csv") return Format::csv;
  throw UsageError("unknown format '" + name + "' (expected json, jsonl or csv)");
}

std::string format_name(Format f) {
  switch (f) {
    case Format::json: return "json";
    case Format::jsonl: return "jsonl";
    case Format::csv: return "csv";
  }
  return "json";
}

void Config::validate() const {
  if (T_default && !(*T_default >= 1.0 && *T_default <= 1e3)) throw UsageError("T must lie in [1, 1000]");
  if (!(tol >= 1e-12 && tol < 1.0)) throw UsageError("tol must lie in [1e-12, 1)");
  if (!(alpha > 0.0) || !(beta > alpha)) throw UsageError("need 0 < alpha < beta");
  if (quad_points < 16 || quad_points > 1'000'000) throw UsageError("quad_points must lie in [16, 10^6]");
  if (!(q_exponent >= 0.0 && q_exponent <= 1.0)) throw UsageError("q_exponent must lie in [0, 1]");
  if (thread_count && *thread_count < 1) throw UsageError("thread_count must be positive");
  if (!(truncation_margin >= 0.0)) throw UsageError("truncation_margin must be >= 0");
}

Config config_from_json_text(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(origin + ": invalid JSON: " + e.what());
  }
  if (!doc.is_object()) throw UsageError(origin + ": top level must be an object");
  Config c;
  for (const auto& [key, v] : doc.items()) {
    if (key == "T_default")
      c.T_default = number(v, key);
    else if (key == "tol")
      c.tol = number(v, key);
    else if (key == "alpha")
      c.alpha = number(v, key);
    else if (key == "beta")
      c.beta = number(v, key);
    else if (key == "quad_points")
      c.quad_points = integer(v, key);
    else if (key == "q_exponent")
      c.q_exponent = number(v, key);
    else if (key == "thread_count")
      c.thread_count = integer(v, key);
    else if (key == "format") {
      if (!v.is_string()) throw UsageError("config key 'format' must be a string");
      c.format = parse_format(v.get<std::string>());
    } else if (key == "truncation_margin")
      c.truncation_margin = number(v, key);
    else
      throw UsageError(origin + ": unknown key '" + key + "'");
  }
  c.validate();
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return config_from_json_text(buf.str(), path);
}

}  // namespace eisenrest::cli
