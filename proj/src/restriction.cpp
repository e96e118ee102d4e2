#include "eisenrest/restriction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "eisenrest/errors.hpp"

namespace eisenrest::restr {

namespace {

constexpr double kPi = std::numbers::pi;

double bump(double u) {
  if (!(std::abs(u) < 1.0)) return 0.0;
  return std::exp(1.0 - 1.0 / ((1.0 - u) * (1.0 + u)));
}

double log_factor(double T) { return 3.0 / kPi * std::log(0.25 + T * T); }

// Fixed-order sum of w_k f_k; also the L1 mass for a relative error scale.
struct Weighted {
  double sum = 0.0;
  double l1 = 0.0;
};

Weighted reduce(const std::vector<double>& terms) {
  Weighted out;
  double comp = 0.0;
  for (double v : terms) {
    const double t = out.sum + v;
    comp += std::abs(out.sum) >= std::abs(v) ? (out.sum - t) + v : (v - t) + out.sum;
    out.sum = t;
    out.l1 += std::abs(v);
  }
  out.sum += comp;
  return out;
}

// Integral by `rule` of psi(y) E*(x+iy) psi(y c) E*(x+iyc) / y, c = 1 + a/T.
Weighted shifted_pass(double x, double c, const TestFunction& tf, const quad::Rule& rule,
                      const eis::EisensteinParams& params, const Exec& exec, double& tail_max) {
  std::vector<double> terms(rule.size());
  std::vector<double> tails(rule.size(), 0.0);
  parallel_for(rule.size(), exec, [&](std::size_t k) {
    const double y = rule.nodes[k];
    const eis::FourierColumn col(y, params);
    const double e = col.eval(x).value;
    double partner = e;
    double tail = col.tail_bound();
    double psi_c = tf(y);
    if (c != 1.0) {
      psi_c = tf(y * c);
      if (psi_c != 0.0) {
        const eis::FourierColumn col_c(y * c, params);
        partner = col_c.eval(x).value;
        tail = std::max(tail, col_c.tail_bound());
      } else {
        partner = 0.0;
      }
    }
    terms[k] = rule.weights[k] * tf(y) * e * psi_c * partner / y;
    tails[k] = tail;
  });
  for (double t : tails) tail_max = std::max(tail_max, t);
  return reduce(terms);
}

RestrictionResult restricted(double x, double a, const TestFunction& tf,
                             const eis::EisensteinParams& params, const Exec& exec) {
  if (!std::isfinite(x)) throw DomainError("I_psi: x must be finite");
  if (!(std::abs(a) <= 10.0)) throw DomainError("I_psi_shifted: |a| must be <= 10");
  const double c = 1.0 + a / params.T;
  const int n = tf.quad_points();
  RestrictionResult out;
  const Weighted coarse = shifted_pass(x, c, tf, tf.rule(n), params, exec, out.eisenstein_tail_max);
  const Weighted fine = shifted_pass(x, c, tf, tf.rule(2 * n), params, exec, out.eisenstein_tail_max);
  out.value = fine.sum;
  out.quad_error_est = std::abs(fine.sum - coarse.sum);
  if (out.quad_error_est > kQuadratureRelTol * std::max(std::abs(fine.sum), fine.l1))
    throw ConvergenceError("I_psi: node doubling changed the integral by more than 1e-6 relative");
  return out;
}

}  // namespace

TestFunction::TestFunction(double alpha, double beta, int quad_points, TestFunctionKind kind)
    : alpha_(alpha), beta_(beta), quad_points_(quad_points), kind_(kind) {
  if (!(alpha > 0.0) || !(beta > alpha) || !std::isfinite(beta))
    throw DomainError("TestFunction: need 0 < alpha < beta");
  if (quad_points < 16) throw DomainError("TestFunction: quad_points must be >= 16");
  const auto r = rule(2 * quad_points_);
  std::vector<double> terms(r.size());
  for (std::size_t k = 0; k < r.size(); ++k) {
    const double p = (*this)(r.nodes[k]);
    terms[k] = r.weights[k] * p * p / r.nodes[k];
  }
  c_psi_ = reduce(terms).sum;
}

double TestFunction::operator()(double y) const {
  switch (kind_) {
    case TestFunctionKind::smooth_bump:
      return bump((2.0 * y - (alpha_ + beta_)) / (beta_ - alpha_));
  }
  return 0.0;
}

double psi_eval(const TestFunction& tf, double y) { return tf(y); }

RestrictionResult I_psi(double x, const TestFunction& tf, const eis::EisensteinParams& params,
                        const Exec& exec) {
  return restricted(x, 0.0, tf, params, exec);
}

RestrictionResult I_psi_shifted(double x, double a, const TestFunction& tf,
                                const eis::EisensteinParams& params, const Exec& exec) {
  return restricted(x, a, tf, params, exec);
}

double default_Q(double T) { return std::pow(T, 0.25); }

namespace {

template <class Bracket>
MainTerm main_term_impl(double x, double T, const TestFunction& tf, double Q, Bracket&& bracket) {
  if (!std::isfinite(x)) throw DomainError("main_term: x must be finite");
  if (!(T >= 1.0 && T <= 1e3)) throw DomainError("main_term: T must lie in [1, 1000]");
  MainTerm out;
  out.approx = arith::dirichlet_approx(2.0 * x, Q);
  out.bq_value = arith::bq(static_cast<std::uint64_t>(out.approx.q), T);
  const double phase = out.approx.theta * T;
  const auto r = tf.rule(2 * tf.quad_points());
  std::vector<double> terms(r.size());
  for (std::size_t k = 0; k < r.size(); ++k) {
    const double y = r.nodes[k];
    const double p = tf(y);
    terms[k] = r.weights[k] * p * p * bracket(out.bq_value, phase / y) / y;
  }
  out.value = log_factor(T) * reduce(terms).sum;
  return out;
}

}  // namespace

MainTerm main_term(double x, double T, const TestFunction& tf, double Q) {
  return main_term_impl(x, T, tf, Q, [](double b, double v) {
    return 1.0 + b * special::bessel_j(0, v);
  });
}

MainTerm main_term_shifted(double x, double T, double a, const TestFunction& tf, double Q) {
  if (!(std::abs(a) <= 10.0)) throw DomainError("main_term_shifted: |a| must be <= 10");
  const double j0a = special::bessel_j(0, a);
  return main_term_impl(x, T, tf, Q, [&](double b, double v) {
    return j0a + b * special::bessel_j(0, std::hypot(v, a));
  });
}

MellinSampler::MellinSampler(double x, const TestFunction& tf, const eis::EisensteinParams& params,
                             double t_max, const Exec& exec)
    : t_max_(t_max) {
  if (!std::isfinite(x)) throw DomainError("mellin_F: x must be finite");
  if (!(t_max >= 0.0) || t_max > params.T + 200.0) throw DomainError("mellin_F: |t| must be <= T + 200");
  // Both y^{it} and E* oscillate on [alpha, beta]; keep the phase change per
  // 16-node panel near pi.
  const double width = tf.beta() - tf.alpha();
  const double phase_rate = (t_max + params.T) / tf.alpha();
  const int panels = std::max(tf.quad_points() / quad::kPanelOrder,
                              static_cast<int>(std::ceil(phase_rate * width / kPi)) + 1);
  const auto rule = quad::composite_gauss_legendre(tf.alpha(), tf.beta(), panels);
  log_y_.resize(rule.size());
  weighted_.resize(rule.size());
  parallel_for(rule.size(), exec, [&](std::size_t k) {
    const double y = rule.nodes[k];
    log_y_[k] = std::log(y);
    weighted_[k] = rule.weights[k] * tf(y) * eis::eval_star(x, y, params).value / y;
  });
}

cplx MellinSampler::operator()(double t) const {
  if (std::abs(t) > t_max_ * (1.0 + 1e-12)) throw DomainError("MellinSampler: |t| beyond sampled range");
  double re = 0.0, im = 0.0;
  for (std::size_t k = 0; k < log_y_.size(); ++k) {
    const double ph = t * log_y_[k];
    re += weighted_[k] * std::cos(ph);
    im += weighted_[k] * std::sin(ph);
  }
  return {re, im};
}

cplx mellin_F(double t, double x, const TestFunction& tf, const eis::EisensteinParams& params,
              const Exec& exec) {
  if (!std::isfinite(t)) throw DomainError("mellin_F: t must be finite");
  return MellinSampler(x, tf, params, std::abs(t), exec)(t);
}

ParsevalResult parseval_check(double x, const TestFunction& tf, double t_max,
                              const eis::EisensteinParams& params, const Exec& exec) {
  if (!(t_max >= params.T + 50.0)) throw DomainError("parseval_check: t_max must be >= T + 50");
  ParsevalResult out;
  out.t_max = t_max;
  out.lhs = I_psi(x, tf, params, exec).value;

  const MellinSampler F(x, tf, params, t_max, exec);
  const auto steps = static_cast<std::size_t>(std::ceil(t_max / 0.05));
  out.t_step = t_max / static_cast<double>(steps);
  std::vector<double> density(steps + 1);
  parallel_for(steps + 1, exec, [&](std::size_t k) {
    density[k] = std::norm(F(out.t_step * static_cast<double>(k)));
  });
  density.front() *= 0.5;
  density.back() *= 0.5;
  // |F(it)|^2 is even in t, so the full trapezoid sum is twice the half sum.
  out.rhs = 2.0 * out.t_step * reduce(density).sum / (2.0 * kPi);
  out.endpoint_density = 2.0 * density.back() / (2.0 * kPi);
  out.rel_gap = std::abs(out.lhs - out.rhs) / out.lhs;
  return out;
}

double diagonal_window(double u) { return bump(2.0 * u - 3.0); }

DiagonalResult diagonal_sum_check(std::int64_t N, double T) {
  if (N < 2 || N > (std::int64_t{1} << 20)) throw DomainError("diagonal_sum_check: need 2 <= N <= 2^20");
  if (!(T >= 1.0 && T <= 1e3)) throw DomainError("diagonal_sum_check: T must lie in [1, 1000]");
  const auto top = static_cast<std::size_t>(2 * N);

  // Smallest prime factor sieve, then tau multiplicatively.
  std::vector<std::uint32_t> spf(top + 1, 0);
  for (std::size_t i = 2; i <= top; ++i) {
    if (spf[i] != 0) continue;
    for (std::size_t j = i; j <= top; j += i)
      if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
  }
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(N));
  for (std::size_t n = static_cast<std::size_t>(N) + 1; n < top; ++n) {
    const double w = diagonal_window(static_cast<double>(n) / static_cast<double>(N));
    if (w == 0.0) continue;
    double tau = 1.0;
    std::size_t m = n;
    while (m > 1) {
      const std::uint32_t p = spf[m];
      int k = 0;
      while (m % p == 0) {
        m /= p;
        ++k;
      }
      tau *= arith::tau_local(p, k, T);
    }
    terms.push_back(tau * tau * w);
  }

  DiagonalResult out;
  out.N = N;
  out.T = T;
  out.lhs = reduce(terms).sum;

  const auto r = quad::gauss_legendre_nodes(1.0, 2.0, 512);
  std::vector<double> wterms(r.size());
  for (std::size_t k = 0; k < r.size(); ++k) wterms[k] = r.weights[k] * diagonal_window(r.nodes[k]);
  const double w_tilde = reduce(wterms).sum;
  const double z = std::abs(special::zeta(special::cplx(1.0, 2.0 * T)));
  const double Nd = static_cast<double>(N);
  out.main = z * z / (kPi * kPi / 6.0) * w_tilde * Nd * std::log(Nd);
  out.ratio = out.lhs / out.main;
  return out;
}

J0Identity j0_series_identity(double a, double u, int L) {
  if (!(std::abs(a) <= 10.0) || !(std::abs(u) <= 10.0)) throw DomainError("j0_series_identity: |a|, |u| <= 10");
  if (L < 40) throw DomainError("j0_series_identity: L must be >= 40");
  const double qa = 0.25 * a * a;
  const double qu = 0.25 * u * u;
  double S = 0.0;
  double outer = 1.0;  // (a^2/4)^l / l!
  double inv_fact_l = 1.0;  // 1 / l!
  for (int l = 0; l <= L; ++l) {
    if (l > 0) {
      outer *= qa / l;
      inv_fact_l /= l;
    }
    // (u/2)^{-l} J_l(u) = sum_m (-1)^m (u^2/4)^m / (m! (m+l)!)
    double inner = 0.0;
    double term = inv_fact_l;
    for (int m = 0; m < 200; ++m) {
      if (m > 0) term *= -qu / (static_cast<double>(m) * (m + l));
      inner += term;
      if (std::abs(term) < 1e-20 * std::max(std::abs(inner), 1e-300) && m > qu) break;
    }
    S += (l % 2 == 0 ? 1.0 : -1.0) * outer * inner;
  }
  J0Identity out;
  out.S = S;
  out.J0ref = special::bessel_j(0, std::hypot(a, u));
  out.abs_gap = std::abs(out.S - out.J0ref);
  return out;
}

Relevance secondary_term_relevance(double x, double T, double Q, const RelevanceThresholds& th) {
  if (!(T >= 3.0)) throw DomainError("secondary_term_relevance: T must be >= 3");
  Relevance out;
  out.approx = arith::dirichlet_approx(2.0 * x, Q);
  out.bq_value = arith::bq(static_cast<std::uint64_t>(out.approx.q), T);
  out.q_threshold = std::pow(std::log(T), th.q_max_exponent);
  out.relevant = static_cast<double>(out.approx.q) <= out.q_threshold &&
                 std::abs(out.approx.theta) * T <= th.phase_cap;
  return out;
}

}  // namespace eisenrest::restr
