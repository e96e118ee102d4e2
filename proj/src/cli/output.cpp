#include "output.hpp"

#include <cmath>
#include <cstdio>

namespace eisenrest::cli {

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json to_json(const OutputRecord& r) {
  json j = {{"schema_version", r.schema_version},
            {"command", r.command},
            {"inputs", r.inputs},
            {"results", r.results},
            {"residuals", r.residuals}};
  if (r.error) j["error"] = {{"kind", r.error->kind}, {"message", r.error->message}};
  return j;
}

OutputRecord record_from_json(const json& j) {
  OutputRecord r;
  r.schema_version = j.at("schema_version").get<std::string>();
  r.command = j.at("command").get<std::string>();
  r.inputs = j.at("inputs");
  r.results = j.at("results");
  r.residuals = j.at("residuals");
  if (j.contains("error"))
    r.error = ErrorInfo{j["error"].at("kind").get<std::string>(), j["error"].at("message").get<std::string>()};
  return r;
}

void write_record(std::ostream& out, const OutputRecord& r, bool pretty) {
  out << to_json(r).dump(pretty ? 2 : -1) << '\n';
}

const std::string& csv_header() {
  static const std::string h = "x,T,a,q,theta,bq,I_psi,main_term,ratio,quad_err,flag";
  return h;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string csv_row(const exper::SweepRow& row) {
  std::string s;
  s += g17(row.x) + ',' + g17(row.T) + ',' + std::to_string(row.a) + ',' + std::to_string(row.q) + ',';
  s += g17(row.theta) + ',' + g17(row.bq_value) + ',' + g17(row.I_value) + ',' + g17(row.main_value) + ',';
  s += g17(row.ratio) + ',' + g17(row.quad_err) + ',' + csv_field(row.flag);
  return s;
}

json row_json(const exper::SweepRow& row) {
  return {{"x", number(row.x)},          {"T", number(row.T)},
          {"a", row.a},                  {"q", row.q},
          {"theta", number(row.theta)},  {"bq", number(row.bq_value)},
          {"I_psi", number(row.I_value)}, {"main_term", number(row.main_value)},
          {"ratio", number(row.ratio)},  {"quad_err", number(row.quad_err)},
          {"flag", row.flag}};
}

}  // namespace eisenrest::cli
