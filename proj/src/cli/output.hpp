#pragma once

#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "eisenrest/experiments.hpp"

namespace eisenrest::cli {

using nlohmann::json;

struct ErrorInfo {
  std::string kind;
  std::string message;
  friend bool operator==(const ErrorInfo&, const ErrorInfo&) = default;
};

/// What every command prints.
struct OutputRecord {
  std::string schema_version = "1";
  std::string command;
  json inputs = json::object();
  json results = json::object();
  json residuals = json::object();
  std::optional<ErrorInfo> error;

  friend bool operator==(const OutputRecord&, const OutputRecord&) = default;
};

json to_json(const OutputRecord& r);
OutputRecord record_from_json(const json& j);

/// Pretty JSON when `pretty`, else a single line; newline terminated.
void write_record(std::ostream& out, const OutputRecord& r, bool pretty);

/// Finite numbers as themselves, NaN and infinities as null.
json number(double v);

// Sweep tables ---------------------------------------------------------------

/// x,T,a,q,theta,bq,I_psi,main_term,ratio,quad_err,flag
const std::string& csv_header();
std::string csv_row(const exper::SweepRow& row);
json row_json(const exper::SweepRow& row);

/// RFC 4180 quoting when the field needs it.
std::string csv_field(const std::string& s);

}  // namespace eisenrest::cli
