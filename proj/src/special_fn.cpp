#include "eisenrest/special_fn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "eisenrest/errors.hpp"

namespace eisenrest::special {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// B_{2k} for k = 1..12.
constexpr std::array<double, 12> kBernoulli2k = {
    1.0 / 6.0,          -1.0 / 30.0,          1.0 / 42.0,
    -1.0 / 30.0,        5.0 / 66.0,           -691.0 / 2730.0,
    7.0 / 6.0,          -3617.0 / 510.0,      43867.0 / 798.0,
    -174611.0 / 330.0,  854513.0 / 138.0,     -236364091.0 / 2730.0};

// Neumaier-compensated complex accumulator.
struct CompensatedSum {
  double re = 0.0, im = 0.0, cre = 0.0, cim = 0.0;

  static void add(double& s, double& c, double v) {
    const double t = s + v;
    if (std::abs(s) >= std::abs(v))
      c += (s - t) + v;
    else
      c += (v - t) + s;
    s = t;
  }
  void operator+=(cplx v) {
    add(re, cre, v.real());
    add(im, cim, v.imag());
  }
  cplx value() const { return {re + cre, im + cim}; }
};

// log(sinh(x)) for x > 0 without overflow.
double log_sinh(double x) {
  if (x > 20.0) return x + std::log1p(-std::exp(-2.0 * x)) - std::numbers::ln2;
  return std::log(std::sinh(x));
}

// ---------------------------------------------------------------------------
// K_{iT}: convergent power series, T >= 1, y <= T and y^2 <= 32 T. Returns
// nothing when the cancellation in the sum is too large for `tol`.
//
//   K_{iT}(y) = -pi Im I_{iT}(y) / sinh(pi T),
//   I_{iT}(y) = (y/2)^{iT} / Gamma(1+iT) * sum_k (y^2/4)^k / (k! (1+iT)_k).
//
// The prefactor e^{pi T/2} / (sinh(pi T) |Gamma(1+iT)|) is O(T^{-1/2}), so the
// scaled value is assembled in log space and never under- or overflows.
// ---------------------------------------------------------------------------
std::optional<ScaledKernelValue> kernel_series(double T, double y, double tol) {
  const cplx lg = log_gamma(cplx(1.0, T));
  const double log_pref = std::log(kPi) + 0.5 * kPi * T - log_sinh(kPi * T) - lg.real();
  const double x = 0.25 * y * y;

  cplx sum(1.0, 0.0);
  cplx term(1.0, 0.0);
  double abs_sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= x / (static_cast<double>(k) * cplx(k, T));
    sum += term;
    abs_sum += std::abs(term);
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }

  const double raw_phase = T * std::log(0.5 * y) - lg.imag();
  const double phase = std::remainder(raw_phase, 2.0 * kPi);
  const double pref = std::exp(log_pref + 0.5 * std::log(y));
  const double value = -pref * (cplx(std::cos(phase), std::sin(phase)) * sum).imag();
  // rounding in the summation plus the absolute error carried by a phase of
  // size |raw_phase|
  const double err =
      pref * (8.0 * kEps * abs_sum + 4.0 * kEps * (std::abs(raw_phase) + 1.0) * std::abs(sum));
  // Judged against the oscillation amplitude: relative error at a zero of
  // cos(T log(y/2) - arg Gamma) is meaningless.
  if (err > tol * pref * std::abs(sum)) return std::nullopt;
  return ScaledKernelValue{value, err};
}

// ---------------------------------------------------------------------------
// K_{iT}: contour representation, valid for all T >= 0, y > 0.
//
// Starting from K_{iT}(y) = 1/2 int_R exp(-y cosh t + iTt) dt, deform R onto
//   * the segment [-u*, u*] of Im t = pi/2, where T u* = y sinh u*
//     (present only when y < T), and
//   * the two constant-phase curves sin v = T u / (y sinh u), |u| >= u*.
// On the segment the integrand is e^{-pi T/2} e^{i(Tu - y sinh u)}; on the
// curves it is real and positive. Hence
//   e^{pi T/2} K_{iT}(y) = int_0^{u*} cos(Tu - y sinh u) du
//                        + int_{u*}^inf exp(T(pi/2 - v) - y cosh u cos v) du.
// Neither piece cancels exponentially, which is what lets T reach 10^3 in
// double precision.
// ---------------------------------------------------------------------------
class ContourKernel {
 public:
  ContourKernel(double T, double y) : T_(T), y_(y) {
    if (y_ >= T_) {
      u_star_ = 0.0;
      s0_ = T_ / y_;
      c0_ = std::sqrt((1.0 - s0_) * (1.0 + s0_));
      r_ref_ = T_ * std::atan2(c0_, s0_) - y_ * c0_;
    } else {
      u_star_ = find_u_star();
      r_ref_ = 0.0;
    }
  }

  ScaledKernelValue evaluate(double tol) const {
    double osc = 0.0, osc_err = 0.0, osc_abs = 0.0;
    if (u_star_ > 0.0) oscillatory_part(osc, osc_err, osc_abs);

    double tail_err = 0.0, tail_l1 = 0.0;
    const double tail = tail_part(tol, tail_err, tail_l1);

    // All of the tail is scaled by e^{r_ref}; r_ref < 0 only when y > T.
    const double log_sqrt_y = 0.5 * std::log(y_);
    const double tail_scale = std::exp(r_ref_ + log_sqrt_y);
    const double sqrt_y = std::sqrt(y_);
    const double value = sqrt_y * osc + tail_scale * tail;
    const double err = sqrt_y * osc_err + tail_scale * tail_err +
                       4.0 * kEps * (sqrt_y * osc_abs + tail_scale * tail_l1);
    const double magnitude = sqrt_y * osc_abs + tail_scale * tail;
    if (magnitude > 1e-300 && err > tol * magnitude) {
      throw AccuracyError(u_star_ > 0.0 ? "contour-oscillatory" : "contour-decaying",
                          err / magnitude,
                          "K_iT contour quadrature could not reach the requested tolerance");
    }
    return {value, err};
  }

 private:
  double psi(double u) const { return T_ * u - y_ * std::sinh(u); }

  double find_u_star() const {
    // g(u) = y sinh u - T u has its minimum at u0 = acosh(T/y) and a single
    // root to the right of it.
    const double u0 = std::acosh(T_ / y_);
    auto g = [&](double u) { return y_ * std::sinh(u) - T_ * u; };
    double lo = u0, hi = u0 + 1.0;
    while (g(hi) <= 0.0) {
      lo = hi;
      hi = lo + 2.0 * (hi - u0);
    }
    double u = hi;
    for (int it = 0; it < 200; ++it) {
      const double gu = g(u);
      if (gu > 0.0) hi = u; else lo = u;
      double next = u - gu / (y_ * std::cosh(u) - T_);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (std::abs(next - u) <= 4.0 * kEps * u) return next;
      u = next;
    }
    return u;
  }

  void oscillatory_part(double& sum, double& err, double& abs_sum) const {
    using boost::math::quadrature::gauss_kronrod;
    constexpr double kPhaseBudget = kPi;
    auto f = [&](double u) { return std::cos(psi(u)); };
    double u = 0.0;
    // Step with phase change about kPhaseBudget, judged from both ends since
    // psi' changes sign at the stationary point acosh(T/y).
    auto step = [&](double at) {
      const double a = std::abs(T_ - y_ * std::cosh(at));
      const double b = y_ * std::sinh(at);
      return std::min(1.0, 2.0 * kPhaseBudget / (a + std::sqrt(a * a + 2.0 * b * kPhaseBudget)));
    };
    while (u < u_star_) {
      double h = step(u);
      h = std::min(h, step(std::min(u + h, u_star_)));
      double next = u + h;
      if (next >= u_star_)
        next = u_star_;
      else if (u + 1.5 * h >= u_star_)
        next = u + 0.5 * (u_star_ - u);
      double panel_err = 0.0;
      const double part = gauss_kronrod<double, 21>::integrate(f, u, next, 0, 0.0, &panel_err);
      sum += part;
      err += panel_err;
      abs_sum += std::abs(part);
      u = next;
    }
  }

  // r(u) - r_ref along the steepest-descent curve, written so that no large
  // quantities are subtracted when y >> T.
  double tail_exponent(double u) const {
    if (u_star_ > 0.0) {
      const double sh = std::sinh(u);
      double s = T_ * u / (y_ * sh);
      if (s > 1.0) s = 1.0;
      const double c = std::sqrt((1.0 - s) * (1.0 + s));
      return T_ * std::atan2(c, s) - y_ * std::cosh(u) * c;
    }
    if (u == 0.0) return 0.0;
    const double sh = std::sinh(u);
    // s0 - s = (T/y) (sinh u - u) / sinh u
    const double sinh_minus_u =
        u < 0.1 ? u * u * u / 6.0 * (1.0 + u * u / 20.0 * (1.0 + u * u / 42.0 * (1.0 + u * u / 72.0)))
                : sh - u;
    const double s = s0_ * u / sh;
    const double ds = s0_ * sinh_minus_u / sh;
    const double d = ds * (s0_ + s);  // s0^2 - s^2
    const double c = std::sqrt((1.0 - s) * (1.0 + s));
    const double half = std::sinh(0.5 * u);
    const double cc = c + c0_;
    const double dc = cc > 0.0 ? d / cc : 0.0;  // c - c0
    const double den = c * s0_ + s * c0_;
    const double dangle = std::atan2(den > 0.0 ? d / den : 0.0, s * s0_ + c * c0_);
    return T_ * dangle - y_ * (2.0 * half * half * c + dc);
  }

  double tail_part(double tol, double& err, double& l1) const {
    // Locate where the integrand has dropped below e^{-46}.
    constexpr double kCut = -46.0;
    const double start = u_star_;
    double step = 1.0 / std::sqrt(std::max(y_, 1.0));
    double hi = start + step;
    while (tail_exponent(hi) > kCut) {
      step *= 2.0;
      hi = start + step;
    }
    double lo = start;
    for (int it = 0; it < 60 && hi - lo > 1e-3 * (hi - start); ++it) {
      const double mid = 0.5 * (lo + hi);
      if (tail_exponent(mid) > kCut) lo = mid; else hi = mid;
    }
    thread_local boost::math::quadrature::tanh_sinh<double> integrator(12);
    // u = start + w^2 removes the square-root cusp at u* (cos v ~ sqrt(u - u*)).
    auto f = [&](double w) { return 2.0 * w * std::exp(tail_exponent(start + w * w)); };
    double local_err = 0.0;
    double local_l1 = 0.0;
    const double rel = std::clamp(0.01 * tol, 1e-15, 1e-12);
    const double value =
        integrator.integrate(f, 0.0, std::sqrt(hi - start), rel, &local_err, &local_l1);
    err = local_err + value * std::exp(kCut);
    l1 = local_l1;
    return value;
  }

  double T_, y_;
  double u_star_ = 0.0;
  double s0_ = 0.0, c0_ = 0.0;
  double r_ref_ = 0.0;
};

}  // namespace

// ---------------------------------------------------------------------------

cplx log_gamma(cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw DomainError("log_gamma: non-finite argument");
  if (std::abs(z) > 1e6) throw DomainError("log_gamma: |z| > 1e6");
  if (z.real() < 0.5) {
    const double k = std::round(z.real());
    if (k <= 0.0 && std::abs(z - cplx(k, 0.0)) < 1e-8)
      throw PoleError("log_gamma: argument within 1e-8 of a pole");
  }

  // Work in the upper half plane so that conj-symmetry is exact.
  const bool flip = z.imag() < 0.0;
  if (flip) z = std::conj(z);

  cplx shift(0.0, 0.0);
  while (z.real() < 15.0) {
    shift += std::log(z);
    z += 1.0;
  }

  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx series(0.0, 0.0);
  for (int k = static_cast<int>(kBernoulli2k.size()); k >= 1; --k) {
    const double coeff = kBernoulli2k[k - 1] / ((2.0 * k) * (2.0 * k - 1.0));
    series = series * inv2 + coeff;
  }
  series *= inv;

  const cplx result = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series - shift;
  return flip ? std::conj(result) : result;
}

cplx zeta(cplx s, double tol) {
  if (s == cplx(1.0, 0.0)) throw PoleError("zeta: pole at s = 1");
  if (!std::isfinite(s.real()) || !std::isfinite(s.imag()) || s.real() < 0.5 ||
      std::abs(s.imag()) > 1e5)
    throw DomainError("zeta: requires Re s >= 1/2 and |Im s| <= 1e5");

  const bool flip = s.imag() < 0.0;
  if (flip) s = std::conj(s);

  constexpr int kCorrections = 10;
  int n_terms = std::max(20, static_cast<int>(std::ceil(2.0 * std::abs(s.imag()))));
  cplx result;
  for (int attempt = 0; attempt < 4; ++attempt) {
    const double N = n_terms;
    CompensatedSum acc;
    for (int n = n_terms - 1; n >= 1; --n) acc += std::exp(-s * std::log(static_cast<double>(n)));

    const cplx N_pow = std::exp(-s * std::log(N));  // N^{-s}
    acc += N_pow * N / (s - 1.0);
    acc += 0.5 * N_pow;

    // sum_k B_{2k}/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}
    cplx rising = s;                 // s (s+1) ... (s+2k-2)
    cplx power = N_pow / N;          // N^{-s-2k+1}
    double factorial = 2.0;          // (2k)!
    double tail = 0.0;
    for (int k = 1; k <= kCorrections + 1; ++k) {
      const cplx term = kBernoulli2k[k - 1] / factorial * rising * power;
      if (k <= kCorrections)
        acc += term;
      else
        tail = std::abs(term);
      rising *= (s + (2.0 * k - 1.0)) * (s + 2.0 * k);
      power /= N * N;
      factorial *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
    }
    result = acc.value();
    if (tail <= 0.1 * tol * std::abs(result)) break;
    n_terms *= 2;
  }
  return flip ? std::conj(result) : result;
}

ScaledKernelValue bessel_k_imag_scaled(double T, double y, double tol) {
  if (!(T >= 0.0) || T > 1e4 || !std::isfinite(T))
    throw DomainError("bessel_k_imag_scaled: T must lie in [0, 1e4]");
  if (!(y > 0.0) || y > 1e6)
    throw DomainError("bessel_k_imag_scaled: y must lie in (0, 1e6]");
  if (!(tol >= 1e-12)) throw DomainError("bessel_k_imag_scaled: tol must be >= 1e-12");

  if (T >= 1.0 && y <= T && y * y <= 32.0 * T) {
    if (auto v = kernel_series(T, y, tol)) return *v;
  }
  return ContourKernel(T, y).evaluate(tol);
}

double bessel_j(int order, double u) {
  if (order < 0 || order > 64) throw DomainError("bessel_j: order must lie in [0, 64]");
  if (!std::isfinite(u) || std::abs(u) > 1e6) throw DomainError("bessel_j: |u| > 1e6");
  if (u == 0.0) return order == 0 ? 1.0 : 0.0;

  const double sign = (u < 0.0 && (order % 2 == 1)) ? -1.0 : 1.0;
  const double x = std::abs(u);
  const double nu = order;

  if (x > std::max(50.0, nu * nu)) {
    // Hankel asymptotic expansion.
    const double mu = 4.0 * nu * nu;
    double p = 1.0, q = 0.0;
    double term = 1.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 60; ++k) {
      term *= (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (k * 8.0 * x);
      if (std::abs(term) > prev) break;
      prev = std::abs(term);
      switch (k % 4) {
        case 1: q += term; break;
        case 2: p -= term; break;
        case 3: q -= term; break;
        case 0: p += term; break;
      }
      if (std::abs(term) < 1e-17) break;
    }
    const double phi = (0.5 * nu + 0.25) * kPi;
    const double cx = std::cos(x), sx = std::sin(x);
    const double cphi = std::cos(phi), sphi = std::sin(phi);
    const double cchi = cx * cphi + sx * sphi;
    const double schi = sx * cphi - cx * sphi;
    return sign * std::sqrt(2.0 / (kPi * x)) * (p * cchi - q * schi);
  }

  // Miller's backward recurrence, normalized by J_0 + 2 sum J_{2k} = 1.
  const double top = std::max(nu, x);
  int m = static_cast<int>(top + 30.0 + 12.0 * std::cbrt(top));
  m += m % 2;
  double j_next = 0.0, j_cur = 1e-300;
  double norm = 0.0, result = 0.0;
  for (int k = m; k >= 1; --k) {
    const double j_prev = 2.0 * k / x * j_cur - j_next;
    j_next = j_cur;
    j_cur = j_prev;  // now J_{k-1}
    if (k - 1 == order) result = j_cur;
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * j_cur;
    if (std::abs(j_cur) > 1e250) {
      j_cur *= 1e-250;
      j_next *= 1e-250;
      norm *= 1e-250;
      result *= 1e-250;
    }
  }
  norm += j_cur;  // J_0
  return sign * result / norm;
}

NormalizationData normalization(double T, double tol) {
  if (!(T >= 1.0 && T <= 1e3)) throw DomainError("normalization: T must lie in [1, 1e3]");
  NormalizationData out;
  out.T = T;
  out.log_scale = 0.5 * kPi * T;
  out.zeta_1_2iT = zeta(cplx(1.0, 2.0 * T), 0.1 * tol);
  const cplx lg = log_gamma(cplx(0.5, T));

  // arg theta(1/2+iT) = -T log pi + arg Gamma(1/2+iT) + arg zeta(1+2iT)
  const double phase = -T * std::log(kPi) + lg.imag() + std::arg(out.zeta_1_2iT);
  const double reduced = std::remainder(phase, 2.0 * kPi);
  out.mu = cplx(std::cos(reduced), std::sin(reduced));

  // |theta(1/2+iT)| = pi^{-1/2} |Gamma(1/2+iT)| |zeta(1+2iT)|
  const double log_abs_theta = -0.5 * std::log(kPi) + lg.real() + std::log(std::abs(out.zeta_1_2iT));
  const double log_rho = 0.5 * std::log(2.0 / kPi) - log_abs_theta;
  out.rho_scaled = std::exp(log_rho - out.log_scale);
  return out;
}

cplx gamma_v(cplx s_prime, double T) {
  if (!(s_prime.real() > -0.5 && s_prime.real() < 20.0))
    throw DomainError("gamma_v: Re s' must lie in (-1/2, 20)");
  if (!(T >= 0.0 && T <= 1e3)) throw DomainError("gamma_v: T must lie in [0, 1e3]");
  const cplx a = 0.5 * (0.5 + s_prime + cplx(0.0, T));
  const cplx b = 0.5 * (0.5 + s_prime - cplx(0.0, T));
  const cplx log_value = 0.5 * kPi * T - 1.5 * std::numbers::ln2 - s_prime * std::log(kPi) +
                         log_gamma(a) + log_gamma(b);
  return std::exp(log_value);
}

}  // namespace eisenrest::special
