#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "eisenrest/arithmetic.hpp"
#include "eisenrest/eisenstein.hpp"
#include "eisenrest/parallel.hpp"
#include "eisenrest/quadrature.hpp"

namespace eisenrest::restr {

using special::cplx;

enum class TestFunctionKind { smooth_bump };

/// psi(y) = exp(1 - 1/(1 - u^2)), u = (2y - alpha - beta)/(beta - alpha),
/// supported on [alpha, beta] with peak 1 at the midpoint.
class TestFunction {
 public:
  TestFunction(double alpha = 1.0, double beta = 3.0, int quad_points = 512,
               TestFunctionKind kind = TestFunctionKind::smooth_bump);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  int quad_points() const { return quad_points_; }
  TestFunctionKind kind() const { return kind_; }

  double operator()(double y) const;

  /// int psi(y)^2 dy/y, by the composite rule with 2 * quad_points nodes.
  double c_psi() const { return c_psi_; }

  /// Composite Gauss-Legendre rule on [alpha, beta] with `nodes` nodes.
  quad::Rule rule(int nodes) const { return quad::gauss_legendre_nodes(alpha_, beta_, nodes); }

 private:
  double alpha_, beta_;
  int quad_points_;
  TestFunctionKind kind_;
  double c_psi_ = 0.0;
};

double psi_eval(const TestFunction& tf, double y);

struct RestrictionResult {
  double value = 0.0;
  double quad_error_est = 0.0;
  double eisenstein_tail_max = 0.0;
};

inline constexpr double kQuadratureRelTol = 1e-6;

/// I_psi(x,T) = int psi(y)^2 E*(x+iy)^2 dy/y. The value comes from the rule
/// with 2 * quad_points nodes; quad_error_est = |I(2n) - I(n)|.
RestrictionResult I_psi(double x, const TestFunction& tf, const eis::EisensteinParams& params,
                        const Exec& exec = {});

/// int psi(y) E*(x+iy) psi(y(1+a/T)) E*(x+iy(1+a/T)) dy/y, |a| <= 10.
RestrictionResult I_psi_shifted(double x, double a, const TestFunction& tf,
                                const eis::EisensteinParams& params, const Exec& exec = {});

/// Q = T^{1/4}.
double default_Q(double T);

struct MainTerm {
  double value = 0.0;
  arith::RationalApprox approx;
  double bq_value = 1.0;
};

/// (3/pi) log(1/4+T^2) int psi^2(y) [1 + B_q(1,T) J_0(theta T / y)] dy/y with
/// (a, q, theta) from the rational approximation of 2x at quality Q.
MainTerm main_term(double x, double T, const TestFunction& tf, double Q);

/// (3/pi) log(1/4+T^2) int psi^2(y) [J_0(a) + B_q J_0(sqrt((theta T/y)^2 + a^2))] dy/y.
MainTerm main_term_shifted(double x, double T, double a, const TestFunction& tf, double Q);

/// Samples of psi(y) E*(x+iy) w/y on a fixed rule, for evaluating the Mellin
/// transform at many t without touching E* again.
class MellinSampler {
 public:
  MellinSampler(double x, const TestFunction& tf, const eis::EisensteinParams& params,
                double t_max, const Exec& exec = {});
  /// F(it) = int psi(y) y^{it} E*(x+iy) dy/y, valid for |t| <= t_max.
  cplx operator()(double t) const;
  double t_max() const { return t_max_; }

 private:
  double t_max_;
  std::vector<double> log_y_;
  std::vector<double> weighted_;
};

/// Single F(it); |t| <= T + 200. Node count grows with |t| log(beta/alpha).
cplx mellin_F(double t, double x, const TestFunction& tf, const eis::EisensteinParams& params,
              const Exec& exec = {});

struct ParsevalResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double rel_gap = 0.0;
  double t_max = 0.0;
  double t_step = 0.0;
  double endpoint_density = 0.0;  // |F(i t_max)|^2 / (2 pi)
};

/// lhs = I_psi; rhs = (1/2pi) int_{-t_max}^{t_max} |F(it)|^2 dt by the
/// trapezoid rule with spacing <= 0.05 on t >= 0, doubled. t_max >= T + 50.
ParsevalResult parseval_check(double x, const TestFunction& tf, double t_max,
                              const eis::EisensteinParams& params, const Exec& exec = {});

/// Smooth weight supported on [1, 2] used by diagonal_sum_check.
double diagonal_window(double u);

struct DiagonalResult {
  std::int64_t N = 0;
  double T = 0.0;
  double lhs = 0.0;
  double main = 0.0;
  double ratio = 0.0;
};

/// lhs = sum_n tau_{iT}(n)^2 w(n/N); main = |zeta(1+2iT)|^2/zeta(2) w~(1) N log N.
DiagonalResult diagonal_sum_check(std::int64_t N, double T);

struct J0Identity {
  double S = 0.0;
  double J0ref = 0.0;
  double abs_gap = 0.0;
};

/// S = sum_{l <= L} (-1)^l a^{2l}/l! 2^{-2l} (u/2)^{-l} J_l(u), compared with
/// J_0(sqrt(a^2 + u^2)). |a|, |u| <= 10, L >= 40.
J0Identity j0_series_identity(double a, double u, int L);

struct RelevanceThresholds {
  double q_max_exponent = 1.0 / 36.0;
  double phase_cap = 6.0;
};

struct Relevance {
  arith::RationalApprox approx;
  double bq_value = 1.0;
  double q_threshold = 1.0;  // (log T)^{q_max_exponent}
  bool relevant = false;
};

/// relevant = q <= (log T)^{q_max_exponent} and |theta| T <= phase_cap. T >= 3.
Relevance secondary_term_relevance(double x, double T, double Q,
                                   const RelevanceThresholds& thresholds = {});

}  // namespace eisenrest::restr
