#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "eisenrest/errors.hpp"

namespace eisenrest::cli {

/// Bad flags, bad config files, bad environment. Exit status 2.
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error("usage", what) {}
};

enum class Format { json, jsonl, csv };

Format parse_format(const std::string& name);
std::string format_name(Format f);

/// Settings shared by all commands. Precedence: flag, then config file, then
/// these defaults.
struct Config {
  std::optional<double> T_default;
  double tol = 1e-9;
  double alpha = 1.0;
  double beta = 3.0;
  int quad_points = 512;
  double q_exponent = 0.25;  // Q = T^{q_exponent}
  std::optional<int> thread_count;
  std::optional<Format> format;
  double truncation_margin = 30.0;

  /// Throws UsageError when a field is outside its module's domain.
  void validate() const;
};

/// Reads a JSON object; unknown keys and wrongly typed values are errors.
Config load_config(const std::string& path);
Config config_from_json_text(const std::string& text, const std::string& origin = "config");

}  // namespace eisenrest::cli
