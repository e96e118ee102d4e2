#include "eisenrest/eisenstein.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "eisenrest/arithmetic.hpp"
#include "eisenrest/errors.hpp"

namespace eisenrest::eis {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kTailProbe = 4;

void check_point(double x, double y) {
  if (!std::isfinite(x)) throw DomainError("eisenstein: x must be finite");
  if (!(y >= 1e-3) || !std::isfinite(y)) throw DomainError("eisenstein: y must be >= 1e-3");
}

}  // namespace

std::vector<double> TauTable::prefix(std::size_t n) const {
  {
    std::shared_lock lock(mutex_);
    if (values_.size() >= n) return {values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(n)};
  }
  std::unique_lock lock(mutex_);
  for (std::size_t k = values_.size() + 1; k <= n; ++k)
    values_.push_back(arith::tau_it(static_cast<std::int64_t>(k), T_) / std::sqrt(static_cast<double>(k)));
  return {values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(n)};
}

EisensteinParams EisensteinParams::make(double T, double tol, double truncation_margin) {
  if (!(T >= 1.0 && T <= 1e3)) throw DomainError("eisenstein: T must lie in [1, 1000]");
  if (!(tol >= 1e-12)) throw DomainError("eisenstein: tol must be >= 1e-12");
  if (!(truncation_margin >= 0.0)) throw DomainError("eisenstein: truncation margin must be >= 0");
  EisensteinParams p;
  p.T = T;
  p.tol = tol;
  p.truncation_margin = truncation_margin;
  p.norm = special::normalization(T, std::min(tol, special::kDefaultTol));
  p.tau = std::make_shared<TauTable>(T);
  return p;
}

std::int64_t truncation_length(double y, const EisensteinParams& params) {
  if (!(y >= 1e-3)) throw DomainError("truncation_length: y must be >= 1e-3");
  const double T = params.T;
  const double L = std::log(1.0 / params.tol);
  const double reach = T + 3.0 * std::cbrt(T) * std::pow(L, 2.0 / 3.0) + L + params.truncation_margin;
  const double n = std::ceil(reach / (kTwoPi * y));
  if (n > static_cast<double>(kMaxTerms))
    throw TruncationError("truncation_length: more than 10^7 terms required");
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(n));
}

double cos_2pi_nx(std::int64_t n, double x) {
  const double nd = static_cast<double>(n);
  const double hi = nd * x;
  const double lo = std::fma(nd, x, -hi);
  const double frac = (hi - std::floor(hi)) + lo;
  return std::cos(kTwoPi * frac);
}

FourierColumn::FourierColumn(double y, const EisensteinParams& params) : y_(y) {
  check_point(0.0, y);
  if (!params.tau) throw DomainError("eisenstein: params not initialized (use EisensteinParams::make)");
  const double T = params.T;
  const double phase = std::arg(params.norm.mu) + T * std::log(y);
  constant_term_ = 2.0 * std::sqrt(y) * std::cos(phase);

  std::int64_t n_terms = truncation_length(y, params);
  const double scale = 2.0 * params.norm.rho_scaled;
  for (;;) {
    const auto total = static_cast<std::size_t>(n_terms + kTailProbe);
    const auto tau = params.tau->prefix(total);
    coef_.resize(total);
    for (std::size_t k = 0; k < total; ++k) {
      const double arg = kTwoPi * static_cast<double>(k + 1) * y;
      coef_[k] = scale * tau[k] * special::bessel_k_imag_scaled(T, arg, params.tol).value;
    }
    // Past the turning point the kernel decays faster than geometrically,
    // so twice the next few terms bound the rest.
    double probe = 0.0;
    for (std::size_t k = static_cast<std::size_t>(n_terms); k < total; ++k) probe += std::abs(coef_[k]);
    tail_bound_ = 2.0 * probe;
    coef_.resize(static_cast<std::size_t>(n_terms));
    if (tail_bound_ <= params.tol) break;
    if (n_terms >= kMaxTerms) throw TruncationError("eisenstein: tail not below tol within 10^7 terms");
    n_terms = std::min(kMaxTerms, n_terms + n_terms / 2 + 1);
  }
}

EvalResult FourierColumn::eval(double x) const {
  if (!std::isfinite(x)) throw DomainError("eisenstein: x must be finite");
  double sum = 0.0, comp = 0.0;
  for (std::size_t k = coef_.size(); k-- > 0;) {
    const double term = coef_[k] * cos_2pi_nx(static_cast<std::int64_t>(k + 1), x);
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  EvalResult out;
  out.value = constant_term_ + (sum + comp);
  out.terms_used = terms();
  out.tail_bound = tail_bound_;
  return out;
}

EvalResult eval_star(double x, double y, const EisensteinParams& params) {
  check_point(x, y);
  return FourierColumn(y, params).eval(x);
}

cplx eval_raw(double x, double y, const EisensteinParams& params) {
  return std::conj(params.norm.mu) * eval_star(x, y, params).value;
}

ModularCheck modular_check(cplx z, const EisensteinParams& params) {
  ModularCheck out;
  out.z = z;
  out.image = -1.0 / z;
  out.value_z = eval_star(z.real(), z.imag(), params).value;
  out.value_image = eval_star(out.image.real(), out.image.imag(), params).value;
  out.residual = std::abs(out.value_image - out.value_z) / std::max(1.0, std::abs(out.value_z));
  return out;
}

}  // namespace eisenrest::eis
