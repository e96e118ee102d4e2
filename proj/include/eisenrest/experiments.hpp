#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "eisenrest/eisenstein.hpp"
#include "eisenrest/parallel.hpp"
#include "eisenrest/restriction.hpp"

namespace eisenrest::exper {

struct Bracket {
  double y_lo = 0.0, y_hi = 0.0;
  double value_lo = 0.0, value_hi = 0.0;
};

struct SignChangeReport {
  std::vector<Bracket> brackets;
  std::int64_t evaluations = 0;
  double grid_step = 0.0;
};

/// Scans E*(x+iy) on [alpha, beta] with spacing (beta-alpha)/max(64, 4T) and
/// bisects every sign-alternating cell down to `resolution`.
SignChangeReport find_sign_change(double x, double alpha, double beta, double resolution,
                                  const eis::EisensteinParams& params, const Exec& exec = {});

struct SweepRow {
  double x = 0.0;
  double T = 0.0;
  std::int64_t a = 0;
  std::int64_t q = 1;
  double theta = 0.0;
  double bq_value = 1.0;
  double I_value = 0.0;
  double main_value = 0.0;
  double ratio = 0.0;
  double quad_err = 0.0;
  std::string flag;  // empty on success, "<kind>: <message>" otherwise
};

struct SweepConfig {
  std::vector<double> x_grid;
  std::vector<double> T_grid;
  double alpha = 1.0;
  double beta = 3.0;
  int quad_points = 512;
  double q_exponent = 0.25;  // Q = T^{q_exponent}
  double tol = 1e-9;
};

/// One row for (x, T); errors land in the flag.
SweepRow compare_row(double x, const eis::EisensteinParams& params, const restr::TestFunction& tf,
                     double Q, const Exec& exec = {});

/// Rows in row-major order (x outer, T inner), handed to `sink` in that
/// order as soon as they are available. Cells run in parallel.
std::vector<SweepRow> sweep(const SweepConfig& config, const Exec& exec = {},
                            const std::function<void(const SweepRow&)>& sink = {});

/// Parses lo:hi:step; includes lo, stops once past hi + step/2.
std::vector<double> parse_grid(const std::string& text);

// ---------------------------------------------------------------------------

/// int_0^inf e^{pi T/2} V_T(2 pi y) y^{s'} dy/y by Gauss-Legendre in log y.
special::cplx kernel_mellin_numeric(special::cplx s_prime, double T);

struct CheckItem {
  std::string suite;
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

struct CheckReport {
  std::vector<CheckItem> items;
  std::vector<std::string> notes;  // tables and other non-pass/fail output
  bool passed() const;
};

/// mellin, parseval, modular, bessel_identity, bq, diagonal, arithmetic,
/// signchange, all.
const std::vector<std::string>& suite_names();

CheckReport run_check_suite(const std::string& name, const Exec& exec = {});

inline constexpr double kA0 = 3.8317059702075123;  // first zero of J_1

}  // namespace eisenrest::exper
