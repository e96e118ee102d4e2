#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "config.hpp"
#include "eisenrest/arithmetic.hpp"
#include "eisenrest/eisenstein.hpp"
#include "eisenrest/experiments.hpp"
#include "eisenrest/parallel.hpp"
#include "eisenrest/restriction.hpp"
#include "output.hpp"

namespace eisenrest::cli {

namespace {

// Flag values before merging with the config file.
struct Flags {
  std::string config_path;
  std::optional<std::string> format;
  std::optional<int> threads;

  std::optional<double> x, y, T, tol, alpha, beta, Q, a, s, resolution;
  std::optional<int> quad_points;
  std::optional<std::uint64_t> q;
  std::string x_grid, T_grid, out_path, suite;
};

struct Context {
  Config config;
  Format format = Format::json;
  Exec exec;
  Flags flags;
};

double need(const std::optional<double>& v, const char* flag) {
  if (!v) throw UsageError(std::string("missing required flag ") + flag);
  return *v;
}

double need_T(const Context& c) {
  if (c.flags.T) return *c.flags.T;
  if (c.config.T_default) return *c.config.T_default;
  throw UsageError("missing required flag --T (or T_default in the config file)");
}

restr::TestFunction test_function(const Context& c) {
  return restr::TestFunction(c.config.alpha, c.config.beta, c.config.quad_points);
}

eis::EisensteinParams eisenstein_params(const Context& c, double T) {
  return eis::EisensteinParams::make(T, c.config.tol, c.config.truncation_margin);
}

double resolve_Q(const Context& c, double T) {
  return c.flags.Q ? *c.flags.Q : std::pow(T, c.config.q_exponent);
}

json common_inputs(const Context& c) {
  return {{"tol", c.config.tol}, {"threads", c.exec.threads}};
}

json segment_inputs(const Context& c) {
  json j = common_inputs(c);
  j["alpha"] = c.config.alpha;
  j["beta"] = c.config.beta;
  j["quad_points"] = c.config.quad_points;
  return j;
}

int cmd_eval(Context& c, OutputRecord& r) {
  const double x = need(c.flags.x, "--x"), y = need(c.flags.y, "--y"), T = need_T(c);
  r.inputs = common_inputs(c);
  r.inputs.update({{"x", x}, {"y", y}, {"T", T}, {"truncation_margin", c.config.truncation_margin}});
  const auto params = eisenstein_params(c, T);
  const auto v = eis::eval_star(x, y, params);
  const auto raw = std::conj(params.norm.mu) * v.value;
  r.results = {{"value", v.value}, {"terms_used", v.terms_used}, {"raw_re", raw.real()}, {"raw_im", raw.imag()}};
  r.residuals = {{"tail_bound", v.tail_bound}};
  return 0;
}

int cmd_restrict(Context& c, OutputRecord& r) {
  const double x = need(c.flags.x, "--x"), T = need_T(c);
  const double a = c.flags.a.value_or(0.0);
  r.inputs = segment_inputs(c);
  r.inputs.update({{"x", x}, {"T", T}, {"a", a}});
  const auto tf = test_function(c);
  const auto params = eisenstein_params(c, T);
  const auto v = a == 0.0 ? restr::I_psi(x, tf, params, c.exec) : restr::I_psi_shifted(x, a, tf, params, c.exec);
  r.results = {{"value", v.value}, {"c_psi", tf.c_psi()}};
  r.residuals = {{"quad_error_est", v.quad_error_est}, {"eisenstein_tail_max", v.eisenstein_tail_max}};
  return 0;
}

int cmd_main_term(Context& c, OutputRecord& r) {
  const double x = need(c.flags.x, "--x"), T = need_T(c);
  const double a = c.flags.a.value_or(0.0);
  const double Q = resolve_Q(c, T);
  r.inputs = segment_inputs(c);
  r.inputs.update({{"x", x}, {"T", T}, {"a", a}, {"Q", Q}});
  const auto tf = test_function(c);
  const auto m = a == 0.0 ? restr::main_term(x, T, tf, Q) : restr::main_term_shifted(x, T, a, tf, Q);
  // The asymptotic statement needs T^delta << Q << T^{1/3 - delta}; this is
  // reported, not enforced.
  const double q_exp = T > 1.0 ? std::log(Q) / std::log(T) : 0.0;
  r.results = {{"value", m.value}, {"a", m.approx.a},         {"q", m.approx.q},
               {"theta", m.approx.theta}, {"bq", m.bq_value}, {"c_psi", tf.c_psi()},
               {"Q_exponent", number(q_exp)}, {"Q_in_window", q_exp > 0.0 && q_exp < 1.0 / 3.0}};
  return 0;
}

int cmd_compare(Context& c, OutputRecord& r, std::ostream& out, bool& printed) {
  const double x = need(c.flags.x, "--x"), T = need_T(c);
  const double Q = resolve_Q(c, T);
  r.inputs = segment_inputs(c);
  r.inputs.update({{"x", x}, {"T", T}, {"Q", Q}});
  const auto row = exper::compare_row(x, eisenstein_params(c, T), test_function(c), Q, c.exec);
  if (c.format == Format::csv) {
    out << csv_header() << '\n' << csv_row(row) << '\n';
    printed = true;
  }
  r.results = row_json(row);
  r.residuals = {{"quad_err", number(row.quad_err)}};
  if (!row.flag.empty()) {
    r.error = ErrorInfo{"computation", row.flag};
    return 1;
  }
  return 0;
}

int cmd_signchange(Context& c, OutputRecord& r) {
  const double x = need(c.flags.x, "--x"), T = need_T(c);
  const double resolution = c.flags.resolution.value_or(1e-5 * (c.config.beta - c.config.alpha));
  r.inputs = common_inputs(c);
  r.inputs.update({{"x", x}, {"T", T}, {"alpha", c.config.alpha}, {"beta", c.config.beta},
                   {"resolution", resolution}});
  const auto rep = exper::find_sign_change(x, c.config.alpha, c.config.beta, resolution, eisenstein_params(c, T), c.exec);
  json brackets = json::array();
  for (const auto& b : rep.brackets)
    brackets.push_back({{"y_lo", b.y_lo}, {"y_hi", b.y_hi}, {"value_lo", b.value_lo}, {"value_hi", b.value_hi}});
  r.results = {{"brackets", brackets}, {"count", rep.brackets.size()}, {"evaluations", rep.evaluations},
               {"grid_step", rep.grid_step}};
  return 0;
}

// x and x + k give identical rows, so only the first of each class mod 1 is kept.
std::vector<double> distinct_mod_one(const std::vector<double>& xs) {
  std::vector<double> out;
  for (double x : xs) {
    bool dup = false;
    for (double seen : out) {
      const double d = x - seen;
      if (std::abs(d - std::round(d)) <= 1e-12) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(x);
  }
  return out;
}

int cmd_sweep(Context& c, OutputRecord& r) {
  if (c.flags.x_grid.empty()) throw UsageError("missing required flag --x-grid");
  if (c.flags.T_grid.empty()) throw UsageError("missing required flag --T-grid");
  if (c.flags.out_path.empty()) throw UsageError("missing required flag --out");
  exper::SweepConfig cfg;
  try {
    cfg.x_grid = distinct_mod_one(exper::parse_grid(c.flags.x_grid));
    cfg.T_grid = exper::parse_grid(c.flags.T_grid);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  cfg.alpha = c.config.alpha;
  cfg.beta = c.config.beta;
  cfg.quad_points = c.config.quad_points;
  cfg.q_exponent = c.config.q_exponent;
  cfg.tol = c.config.tol;
  const bool jsonl = c.format == Format::jsonl;

  std::ofstream file(c.flags.out_path, std::ios::binary);
  if (!file) throw UsageError("cannot open output file '" + c.flags.out_path + "'");
  if (!jsonl) file << csv_header() << '\n';
  std::size_t flagged = 0, rows = 0;
  exper::sweep(cfg, c.exec, [&](const exper::SweepRow& row) {
    if (jsonl)
      file << row_json(row).dump() << '\n';
    else
      file << csv_row(row) << '\n';
    file.flush();
    ++rows;
    if (!row.flag.empty()) ++flagged;
  });

  r.inputs = segment_inputs(c);
  r.inputs.update({{"x_grid", c.flags.x_grid}, {"T_grid", c.flags.T_grid}, {"out", c.flags.out_path},
                   {"q_exponent", c.config.q_exponent}, {"format", jsonl ? "jsonl" : "csv"}});
  r.results = {{"rows", rows}, {"flagged", flagged}, {"x_points", cfg.x_grid.size()}, {"T_points", cfg.T_grid.size()}};
  return 0;
}

int cmd_bq(Context& c, OutputRecord& r) {
  if (!c.flags.q) throw UsageError("missing required flag --q");
  const std::uint64_t q = *c.flags.q;
  const double T = need_T(c);
  const double s = c.flags.s.value_or(1.0);
  r.inputs = {{"q", q}, {"T", T}, {"s", s}};
  const double v = arith::bq(q, T, s);
  r.results = {{"value", v}};
  if (s == 1.0 && q <= 1'000'000'000ULL && arith::is_prime(q)) {
    const double closed = arith::bq_prime_closed_form(q, T);
    r.results["closed_form"] = closed;
    r.residuals = {{"closed_form_abs_diff", std::abs(v - closed)}};
  }
  return 0;
}

int cmd_check(Context& c, OutputRecord& r) {
  if (c.flags.suite.empty()) throw UsageError("missing required flag --suite");
  const auto& names = exper::suite_names();
  if (std::find(names.begin(), names.end(), c.flags.suite) == names.end())
    throw UsageError("unknown suite '" + c.flags.suite + "'");
  r.inputs = {{"suite", c.flags.suite}, {"threads", c.exec.threads}};
  const auto report = exper::run_check_suite(c.flags.suite, c.exec);
  json items = json::array();
  for (const auto& it : report.items)
    items.push_back({{"suite", it.suite}, {"name", it.name}, {"residual", number(it.residual)},
                     {"threshold", it.threshold}, {"passed", it.passed}});
  r.results = {{"passed", report.passed()}, {"items", items}, {"notes", report.notes}};
  std::size_t failed = 0;
  for (const auto& it : report.items) failed += it.passed ? 0 : 1;
  r.residuals = {{"failed", failed}, {"total", report.items.size()}};
  return report.passed() ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Context ctx;
  Flags& f = ctx.flags;
  OutputRecord record;

  CLI::App app{"Eisenstein series E*(x+iy, 1/2+iT): evaluation, restricted L2 mass, main terms"};
  app.name("eisenrest");
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--config", f.config_path, "JSON config file (flags override it)");
  app.add_option("--format", f.format, "json, jsonl or csv");
  app.add_option("--threads", f.threads, "worker threads (default: EISENREST_THREADS or 1)");

  auto common = [&](CLI::App* sub) {
    sub->add_option("--T", f.T, "spectral parameter T");
    sub->add_option("--tol", f.tol, "target accuracy of E*");
  };
  auto segment = [&](CLI::App* sub) {
    sub->add_option("--alpha", f.alpha, "segment start");
    sub->add_option("--beta", f.beta, "segment end");
    sub->add_option("--quad-points", f.quad_points, "Gauss-Legendre nodes");
  };

  auto* eval = app.add_subcommand("eval", "E*(x+iy)");
  eval->add_option("--x", f.x);
  eval->add_option("--y", f.y);
  common(eval);

  auto* restrict_cmd = app.add_subcommand("restrict", "int psi^2 |E*|^2 dy/y along the segment");
  restrict_cmd->add_option("--x", f.x);
  restrict_cmd->add_option("--a", f.a, "shift a (default 0)");
  common(restrict_cmd);
  segment(restrict_cmd);

  auto* main_cmd = app.add_subcommand("main-term", "predicted main term");
  main_cmd->add_option("--x", f.x);
  main_cmd->add_option("--Q", f.Q, "approximation quality (default T^q_exponent)");
  main_cmd->add_option("--a", f.a, "shift a (default 0)");
  common(main_cmd);
  segment(main_cmd);

  auto* compare = app.add_subcommand("compare", "restricted integral next to the main term");
  compare->add_option("--x", f.x);
  compare->add_option("--Q", f.Q);
  common(compare);
  segment(compare);

  auto* sign = app.add_subcommand("signchange", "sign changes of E* along the segment");
  sign->add_option("--x", f.x);
  sign->add_option("--resolution", f.resolution, "bracket width");
  common(sign);
  segment(sign);

  auto* sweep = app.add_subcommand("sweep", "comparison table over an (x, T) grid");
  sweep->add_option("--x-grid", f.x_grid, "lo:hi:step");
  sweep->add_option("--T-grid", f.T_grid, "lo:hi:step");
  sweep->add_option("--out", f.out_path, "output file");
  common(sweep);
  segment(sweep);

  auto* bq = app.add_subcommand("bq", "Euler product B_q(s, T)");
  bq->add_option("--q", f.q);
  bq->add_option("--s", f.s, "default 1");
  common(bq);

  auto* check = app.add_subcommand("check", "built-in verification suites");
  check->add_option("--suite", f.suite, "mellin, parseval, modular, bessel_identity, bq, diagonal, arithmetic, signchange, all");

  auto emit_error = [&](const std::string& kind, const std::string& message, int status) {
    record.error = ErrorInfo{kind, message};
    err << "eisenrest: " << message << '\n';
    write_record(out, record, ctx.format == Format::json);
    return status;
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    record.command = app.get_subcommands().empty() ? "" : app.get_subcommands().front()->get_name();
    return emit_error("usage", e.what(), 2);
  }
  record.command = app.get_subcommands().front()->get_name();

  int status = 0;
  try {
    if (!f.config_path.empty()) ctx.config = load_config(f.config_path);
    if (f.T) ctx.config.T_default = f.T;
    if (f.tol) ctx.config.tol = *f.tol;
    if (f.alpha) ctx.config.alpha = *f.alpha;
    if (f.beta) ctx.config.beta = *f.beta;
    if (f.quad_points) ctx.config.quad_points = *f.quad_points;
    if (f.threads) ctx.config.thread_count = *f.threads;
    if (f.format) ctx.config.format = parse_format(*f.format);
    ctx.config.validate();
    ctx.format = ctx.config.format.value_or(record.command == "sweep" ? Format::csv : Format::json);
    if (ctx.format == Format::csv && record.command != "compare" && record.command != "sweep")
      throw UsageError("--format csv is only available for compare and sweep");
    if (ctx.format == Format::json && record.command == "sweep")
      throw UsageError("sweep writes csv or jsonl");
    if (ctx.config.thread_count) {
      ctx.exec.threads = *ctx.config.thread_count;
    } else {
      try {
        ctx.exec.threads = threads_from_env();
      } catch (const DomainError& e) {
        throw UsageError(e.what());
      }
    }

    bool printed = false;
    const std::string& cmd = record.command;
    if (cmd == "eval")
      status = cmd_eval(ctx, record);
    else if (cmd == "restrict")
      status = cmd_restrict(ctx, record);
    else if (cmd == "main-term")
      status = cmd_main_term(ctx, record);
    else if (cmd == "compare")
      status = cmd_compare(ctx, record, out, printed);
    else if (cmd == "signchange")
      status = cmd_signchange(ctx, record);
    else if (cmd == "sweep")
      status = cmd_sweep(ctx, record);
    else if (cmd == "bq")
      status = cmd_bq(ctx, record);
    else if (cmd == "check")
      status = cmd_check(ctx, record);
    if (!printed) write_record(out, record, ctx.format == Format::json);
  } catch (const UsageError& e) {
    return emit_error(e.kind(), e.what(), 2);
  } catch (const Error& e) {
    return emit_error(e.kind(), e.what(), 1);
  } catch (const std::exception& e) {
    return emit_error("internal", e.what(), 1);
  }
  return status;
}

}  // namespace eisenrest::cli
