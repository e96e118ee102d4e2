#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <shared_mutex>
#include <vector>

#include "eisenrest/special_fn.hpp"

namespace eisenrest::eis {

using special::cplx;

/// Grow-only table of tau_{iT}(n)/sqrt(n) for one T. Safe for concurrent
/// readers; extension takes the writer lock.
class TauTable {
 public:
  explicit TauTable(double T) : T_(T) {}
  double T() const { return T_; }
  /// Copy of entries 1..n (index 0 holds n = 1).
  std::vector<double> prefix(std::size_t n) const;

 private:
  double T_;
  mutable std::shared_mutex mutex_;
  mutable std::vector<double> values_;
};

struct EisensteinParams {
  double T = 0.0;
  double tol = 1e-9;
  special::NormalizationData norm;
  double truncation_margin = 30.0;
  std::shared_ptr<TauTable> tau;

  /// Validates the domain (1 <= T <= 1e3, tol >= 1e-12) and fills norm/tau.
  static EisensteinParams make(double T, double tol = 1e-9, double truncation_margin = 30.0);
};

struct EvalResult {
  double value = 0.0;
  std::int64_t terms_used = 0;
  double tail_bound = 0.0;
};

inline constexpr std::int64_t kMaxTerms = 10'000'000;

/// ceil((T + 3 T^{1/3} L^{2/3} + L + margin) / (2 pi y)), L = log(1/tol).
std::int64_t truncation_length(double y, const EisensteinParams& params);

/// Everything of the expansion that depends on y only. Evaluating at many
/// x for a fixed y costs one cosine per term.
class FourierColumn {
 public:
  FourierColumn(double y, const EisensteinParams& params);

  double y() const { return y_; }
  std::int64_t terms() const { return static_cast<std::int64_t>(coef_.size()); }
  double tail_bound() const { return tail_bound_; }
  EvalResult eval(double x) const;

 private:
  double y_;
  double constant_term_;       // 2 Re(mu y^{1/2+iT})
  std::vector<double> coef_;   // 2 rho_scaled tau(n)/sqrt(n) e^{pi T/2} V_T(2 pi n y)
  double tail_bound_ = 0.0;
};

/// E*_T(x+iy), real valued. No reduction to the fundamental domain.
EvalResult eval_star(double x, double y, const EisensteinParams& params);

/// E_T(x+iy) = conj(mu) E*_T(x+iy).
cplx eval_raw(double x, double y, const EisensteinParams& params);

/// cos(2 pi n x) with n x reduced mod 1 before scaling.
double cos_2pi_nx(std::int64_t n, double x);

struct ModularCheck {
  cplx z;
  cplx image;  // -1/z
  double value_z = 0.0;
  double value_image = 0.0;
  double residual = 0.0;  // |E*(-1/z) - E*(z)| / max(1, |E*(z)|)
};

/// Compares E* at z and at S z = -1/z. Test utility.
ModularCheck modular_check(cplx z, const EisensteinParams& params);

}  // namespace eisenrest::eis
