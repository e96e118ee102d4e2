#include "eisenrest/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "eisenrest/arithmetic.hpp"
#include "eisenrest/errors.hpp"
#include "eisenrest/quadrature.hpp"

namespace eisenrest::exper {

namespace {

constexpr double kPi = std::numbers::pi;
using special::cplx;

std::string format(const char* fmt, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, fmt, a, b, c);
  return buf;
}

}  // namespace

SignChangeReport find_sign_change(double x, double alpha, double beta, double resolution,
                                  const eis::EisensteinParams& params, const Exec& exec) {
  if (!(alpha > 0.0) || !(beta > alpha)) throw DomainError("find_sign_change: need 0 < alpha < beta");
  if (!(resolution >= 1e-6 * (beta - alpha))) throw DomainError("find_sign_change: resolution too small");
  SignChangeReport report;
  const double cells_wanted = std::max(64.0, 4.0 * params.T);
  const auto cells = static_cast<std::size_t>(cells_wanted);
  report.grid_step = (beta - alpha) / static_cast<double>(cells);

  std::vector<double> ys(cells + 1), values(cells + 1);
  for (std::size_t k = 0; k <= cells; ++k)
    ys[k] = k == cells ? beta : alpha + report.grid_step * static_cast<double>(k);
  parallel_for(cells + 1, exec, [&](std::size_t k) { values[k] = eis::eval_star(x, ys[k], params).value; });
  report.evaluations = static_cast<std::int64_t>(cells + 1);

  std::vector<std::size_t> crossings;
  for (std::size_t k = 0; k < cells; ++k)
    if (values[k] * values[k + 1] < 0.0) crossings.push_back(k);

  std::vector<Bracket> found(crossings.size());
  std::vector<std::int64_t> used(crossings.size(), 0);
  parallel_for(crossings.size(), exec, [&](std::size_t i) {
    const std::size_t k = crossings[i];
    Bracket b{ys[k], ys[k + 1], values[k], values[k + 1]};
    while (b.y_hi - b.y_lo > resolution) {
      const double mid = 0.5 * (b.y_lo + b.y_hi);
      const double v = eis::eval_star(x, mid, params).value;
      ++used[i];
      if (v == 0.0) {
        // Land the exact zero strictly inside the bracket.
        const double half = 0.25 * resolution;
        b = {mid - half, mid + half, eis::eval_star(x, mid - half, params).value,
             eis::eval_star(x, mid + half, params).value};
        used[i] += 2;
        if (b.value_lo * b.value_hi < 0.0) break;
        b = {ys[k], ys[k + 1], values[k], values[k + 1]};
        break;
      }
      if (v * b.value_lo < 0.0) {
        b.y_hi = mid;
        b.value_hi = v;
      } else {
        b.y_lo = mid;
        b.value_lo = v;
      }
    }
    found[i] = b;
  });
  for (std::size_t i = 0; i < found.size(); ++i) {
    if (found[i].value_lo * found[i].value_hi < 0.0 && found[i].y_hi - found[i].y_lo <= resolution)
      report.brackets.push_back(found[i]);
    report.evaluations += used[i];
  }
  return report;
}

SweepRow compare_row(double x, const eis::EisensteinParams& params, const restr::TestFunction& tf,
                     double Q, const Exec& exec) {
  SweepRow row;
  row.x = x;
  row.T = params.T;
  try {
    const auto mt = restr::main_term(x, params.T, tf, Q);
    row.a = mt.approx.a;
    row.q = mt.approx.q;
    row.theta = mt.approx.theta;
    row.bq_value = mt.bq_value;
    row.main_value = mt.value;
    const auto ip = restr::I_psi(x, tf, params, exec);
    row.I_value = ip.value;
    row.quad_err = ip.quad_error_est;
    row.ratio = row.main_value != 0.0 ? row.I_value / row.main_value : std::nan("");
  } catch (const Error& e) {
    row.flag = e.kind() + ": " + e.what();
  } catch (const std::exception& e) {
    row.flag = std::string("internal: ") + e.what();
  }
  if (!row.flag.empty()) {
    row.I_value = row.main_value = row.ratio = row.quad_err = std::nan("");
  }
  return row;
}

std::vector<SweepRow> sweep(const SweepConfig& config, const Exec& exec,
                            const std::function<void(const SweepRow&)>& sink) {
  if (config.x_grid.empty() || config.T_grid.empty()) throw DomainError("sweep: grids must be nonempty");
  const restr::TestFunction tf(config.alpha, config.beta, config.quad_points);

  // Per-T setup is shared by all cells of that column. A T outside the
  // supported range turns into flagged rows.
  std::vector<std::optional<eis::EisensteinParams>> params(config.T_grid.size());
  std::vector<std::string> setup_error(config.T_grid.size());
  for (std::size_t j = 0; j < config.T_grid.size(); ++j) {
    try {
      params[j] = eis::EisensteinParams::make(config.T_grid[j], config.tol);
    } catch (const Error& e) {
      setup_error[j] = e.kind() + ": " + e.what();
    }
  }

  const std::size_t nT = config.T_grid.size();
  const std::size_t total = config.x_grid.size() * nT;
  std::vector<SweepRow> rows(total);
  const std::size_t block = static_cast<std::size_t>(std::max(1, exec.threads)) * 2;
  for (std::size_t start = 0; start < total; start += block) {
    const std::size_t stop = std::min(total, start + block);
    parallel_for(stop - start, exec, [&](std::size_t i) {
      const std::size_t cell = start + i;
      const double x = config.x_grid[cell / nT];
      const std::size_t j = cell % nT;
      if (!params[j]) {
        SweepRow row;
        row.x = x;
        row.T = config.T_grid[j];
        row.I_value = row.main_value = row.ratio = row.quad_err = std::nan("");
        row.flag = setup_error[j];
        rows[cell] = row;
        return;
      }
      rows[cell] = compare_row(x, *params[j], tf, std::pow(config.T_grid[j], config.q_exponent));
    });
    if (sink)
      for (std::size_t c = start; c < stop; ++c) sink(rows[c]);
  }
  return rows;
}

std::vector<double> parse_grid(const std::string& text) {
  std::stringstream in(text);
  std::string part;
  std::vector<double> v;
  while (std::getline(in, part, ':')) {
    std::size_t used = 0;
    double d = 0.0;
    try {
      d = std::stod(part, &used);
    } catch (const std::exception&) {
      throw DomainError("grid '" + text + "': expected lo:hi:step");
    }
    if (used != part.size()) throw DomainError("grid '" + text + "': expected lo:hi:step");
    v.push_back(d);
  }
  if (v.size() != 3) throw DomainError("grid '" + text + "': expected lo:hi:step");
  const double lo = v[0], hi = v[1], step = v[2];
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(step > 0.0) || hi < lo)
    throw DomainError("grid '" + text + "': need lo <= hi and step > 0");
  const double count = std::floor((hi - lo) / step + 0.5);
  if (count > 1e6) throw DomainError("grid '" + text + "': more than 10^6 points");
  std::vector<double> out;
  for (std::int64_t k = 0;; ++k) {
    const double g = lo + static_cast<double>(k) * step;
    if (g > hi + 0.5 * step) break;
    out.push_back(g);
  }
  return out;
}

// ---------------------------------------------------------------------------

cplx kernel_mellin_numeric(cplx s_prime, double T) {
  const double w_lo = -60.0;
  const double w_hi = std::log((T + 60.0 + 10.0 * std::cbrt(T)) / (2.0 * kPi));
  const double width = kPi / (T + std::abs(s_prime.imag()) + 1.0);
  const int panels = static_cast<int>(std::ceil((w_hi - w_lo) / width));
  const auto rule = quad::composite_gauss_legendre(w_lo, w_hi, panels);
  double re = 0.0, im = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const double w = rule.nodes[k];
    const double v = special::bessel_k_imag_scaled(T, 2.0 * kPi * std::exp(w)).value;
    const cplx ys = std::exp(s_prime * w);
    re += rule.weights[k] * v * ys.real();
    im += rule.weights[k] * v * ys.imag();
  }
  return {re, im};
}

bool CheckReport::passed() const {
  return std::all_of(items.begin(), items.end(), [](const CheckItem& c) { return c.passed; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"mellin", "parseval", "modular", "bessel_identity",
                                                 "bq", "diagonal", "arithmetic", "signchange", "all"};
  return names;
}

namespace {

void add(CheckReport& r, const std::string& suite, std::string name, double residual, double threshold,
         bool passed) {
  r.items.push_back({suite, std::move(name), residual, threshold, passed});
}

void add_le(CheckReport& r, const std::string& suite, std::string name, double residual, double threshold) {
  add(r, suite, std::move(name), residual, threshold, residual <= threshold);
}

void suite_mellin(CheckReport& r) {
  const cplx samples[] = {{0.2, 0.0}, {0.5, 1.0}, {1.0, 0.3}, {1.5, -2.0}, {2.0, 5.0}};
  for (double T : {5.0, 20.0, 50.0}) {
    for (cplx s : samples) {
      const cplx exact = special::gamma_v(s, T);
      const cplx numeric = kernel_mellin_numeric(s, T);
      add_le(r, "mellin", format("T=%g s'=%g%+gi", T, s.real(), s.imag()),
             std::abs(numeric - exact) / std::abs(exact), 1e-8);
    }
  }
}

void suite_parseval(CheckReport& r, const Exec& exec) {
  const restr::TestFunction tf;
  const auto params = eis::EisensteinParams::make(20.0);
  for (double x : {0.0, 0.35}) {
    const auto p = restr::parseval_check(x, tf, params.T + 200.0, params, exec);
    add_le(r, "parseval", format("T=20 x=%g", x), p.rel_gap, 1e-4);
  }
}

void suite_modular(CheckReport& r, const Exec& exec) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> ux(-0.5, 0.5), uy(0.8, 2.0);
  for (double T : {10.0, 30.0}) {
    const auto params = eis::EisensteinParams::make(T);
    std::vector<cplx> zs(20);
    for (auto& z : zs) {
      const double x = ux(rng);
      z = {x, uy(rng)};
    }
    std::vector<eis::ModularCheck> out(zs.size());
    parallel_for(zs.size(), exec, [&](std::size_t k) { out[k] = eis::modular_check(zs[k], params); });
    for (const auto& m : out)
      add_le(r, "modular", format("T=%g z=%.6f%+.6fi", T, m.z.real(), m.z.imag()), m.residual, 1e-6);
  }
}

void suite_bessel_identity(CheckReport& r) {
  const double grid[] = {0.0, 1.25, 2.5, 3.75, 5.0};
  for (double a : grid)
    for (double u : grid)
      add_le(r, "bessel_identity", format("a=%g u=%g", a, u), restr::j0_series_identity(a, u, 60).abs_gap,
             1e-10);
}

std::uint64_t next_prime(std::uint64_t n) {
  while (!arith::is_prime(n)) ++n;
  return n;
}

void suite_bq(CheckReport& r) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint64_t> un(2, 999'999'000ULL);
  std::uniform_real_distribution<double> uT(0.0, 1000.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    std::uint64_t p;
    if (i < 20)
      p = next_prime(2 + 7 * static_cast<std::uint64_t>(i));
    else if (i < 60)
      p = next_prime(2 + un(rng) % 10'000);
    else
      p = next_prime(un(rng));
    const double T = uT(rng);
    worst = std::max(worst, std::abs(arith::bq(p, T) - arith::bq_prime_closed_form(p, T)));
  }
  add_le(r, "bq", "100 random primes vs closed form (max abs diff)", worst, 1e-12);

  std::uniform_int_distribution<std::uint64_t> uq(2, 10'000);
  double largest = 0.0;
  for (int i = 0; i < 1000; ++i) largest = std::max(largest, std::abs(arith::bq(uq(rng), uT(rng))));
  add(r, "bq", "max |B_q(1,T)| over 1000 random q in [2,10^4]", largest, 1.0, largest < 1.0);

  const double b1 = arith::bq(1, uT(rng));
  add(r, "bq", "B_1(1,T) == 1", std::abs(b1 - 1.0), 0.0, b1 == 1.0);
}

void suite_diagonal(CheckReport& r) {
  for (int k = 10; k <= 16; ++k) {
    const auto d = restr::diagonal_sum_check(std::int64_t{1} << k, 50.0);
    r.notes.push_back(format("diagonal T=50 N=2^%g ratio=%.6f", k, d.ratio));
    if (k == 16) add(r, "diagonal", "T=50 N=2^16 ratio in [0.5,1.5]", d.ratio, 1.5, d.ratio >= 0.5 && d.ratio <= 1.5);
  }
}

void suite_arithmetic(CheckReport& r) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> uT(0.0, 1000.0);

  std::uniform_int_distribution<std::int64_t> um(1, 1'000'000);
  double mult = 0.0;
  for (int done = 0; done < 200;) {
    const std::int64_t m = um(rng), n = um(rng);
    if (std::gcd(m, n) != 1) continue;
    const double T = uT(rng);
    const double lhs = arith::tau_it(m * n, T);
    const double rhs = arith::tau_it(m, T) * arith::tau_it(n, T);
    mult = std::max(mult, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
    ++done;
  }
  add_le(r, "arithmetic", "tau multiplicativity, 200 coprime pairs", mult, 1e-12);

  double hecke = 0.0;
  const std::uint64_t primes[] = {2, 3, 5, 7, 11, 13, 97, 101, 7919};
  for (std::uint64_t p : primes) {
    const double T = uT(rng);
    for (int k = 1; k <= 10; ++k) {
      if (std::pow(static_cast<double>(p), k + 1) > 1e12) break;
      const double lhs = arith::tau_local(p, 1, T) * arith::tau_local(p, k, T);
      const double rhs = arith::tau_local(p, k + 1, T) + arith::tau_local(p, k - 1, T);
      hecke = std::max(hecke, std::abs(lhs - rhs));
    }
  }
  add_le(r, "arithmetic", "Hecke relation", hecke, 1e-12);

  std::uniform_int_distribution<std::int64_t> ubig(1, 1'000'000'000'000LL);
  double excess = -1e300;
  for (int i = 0; i < 2000; ++i) {
    const std::int64_t n = i % 2 ? ubig(rng) : um(rng);
    const double T = uT(rng);
    const auto d = static_cast<double>(arith::divisor_count(static_cast<std::uint64_t>(n)));
    excess = std::max(excess, std::abs(arith::tau_it(n, T)) - d * (1.0 + 1e-12));
  }
  add(r, "arithmetic", "|tau(n)| <= d(n), 2000 n", excess, 0.0, excess <= 0.0);

  using Quad = boost::multiprecision::cpp_bin_float_quad;
  std::uniform_real_distribution<double> ux(-1e6, 1e6), ulogQ(0.0, std::log(1e6));
  int failures = 0;
  for (int i = 0; i < 10'000; ++i) {
    const double x2 = i % 3 == 0 ? ux(rng) : ux(rng) * 1e-6;
    const double Q = std::exp(ulogQ(rng));
    const auto ra = arith::dirichlet_approx(x2, Q);
    const bool coprime = std::gcd(ra.a, ra.q) == 1;
    const bool in_range = ra.q >= 1 && static_cast<double>(ra.q) <= Q;
    // q x2 - a in 113-bit arithmetic: exact for q < 2^53.
    const Quad resid = Quad(ra.q) * Quad(x2) - Quad(ra.a);
    const bool close = abs(resid) * Quad(Q) <= Quad(1);
    if (!(coprime && in_range && close)) ++failures;
  }
  add(r, "arithmetic", "rational approximation postconditions, 10^4 inputs (failures)", failures, 0.0,
      failures == 0);
}

void suite_signchange(CheckReport& r, const Exec& exec) {
  {
    const auto params = eis::EisensteinParams::make(100.0);
    for (int k = 0; k < 16; ++k) {
      const double x = k / 16.0;
      const auto rep = find_sign_change(x, 1.0, 3.0, 1e-4, params, exec);
      const auto n = static_cast<double>(rep.brackets.size());
      add(r, "signchange", format("T=100 x=%g brackets", x), n, 1.0, n >= 1.0);
    }
  }
  const auto params = eis::EisensteinParams::make(200.0);
  const restr::TestFunction tf;
  for (double x : {0.0, 0.25, 1.0 / 3.0, 0.1234567}) {
    const double v = restr::I_psi_shifted(x, kA0, tf, params, exec).value;
    add(r, "signchange", format("T=200 x=%.7g shifted integral", x), v, 0.0, v < 0.0);
  }
}

}  // namespace

CheckReport run_check_suite(const std::string& name, const Exec& exec) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw DomainError("unknown check suite '" + name + "'");
  CheckReport r;
  const bool all = name == "all";
  if (all || name == "mellin") suite_mellin(r);
  if (all || name == "parseval") suite_parseval(r, exec);
  if (all || name == "modular") suite_modular(r, exec);
  if (all || name == "bessel_identity") suite_bessel_identity(r);
  if (all || name == "bq") suite_bq(r);
  if (all || name == "diagonal") suite_diagonal(r);
  if (all || name == "arithmetic") suite_arithmetic(r);
  if (all || name == "signchange") suite_signchange(r, exec);
  return r;
}

}  // namespace eisenrest::exper
