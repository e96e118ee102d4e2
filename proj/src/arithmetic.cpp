#include "eisenrest/arithmetic.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "eisenrest/errors.hpp"
#include "eisenrest/special_fn.hpp"

namespace eisenrest::arith {

namespace {

constexpr std::uint32_t kSieveLimit = 1'000'000;

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kSieveLimit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= kSieveLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t{i} * i; j <= kSieveLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

// sum_j w_j a_j^2 p^{-js} over the local series, with the weights of the
// B_q numerator (num) and the plain series (den). coeff(j) returns a_j.
template <class Coeff>
double local_factor(std::uint64_t p, int qp, double s, Coeff&& coeff) {
  const double p_s = std::pow(static_cast<double>(p), -s);
  const double phi_weight = -1.0 / (static_cast<double>(p) - 1.0);
  double num = 0.0, den = 0.0;
  double pw = 1.0;  // p^{-js}
  for (int j = 0; j < 4096; ++j) {
    const double a = coeff(j);
    const double term = a * a * pw;
    den += term;
    if (j == qp - 1)
      num += phi_weight * term;
    else if (j >= qp)
      num += term;
    const double bound = (j + 1.0) * (j + 1.0) * pw;
    if (j >= qp && bound < 1e-16) break;
    pw *= p_s;
  }
  return num / den;
}

}  // namespace

Factorization factorize(std::uint64_t n) {
  if (n == 0) throw DomainError("factorize: n must be positive");
  if (n > kMaxFactorizable) throw DomainError("factorize: n exceeds 10^12");
  Factorization out;
  out.n = n;
  std::uint64_t m = n;
  for (std::uint32_t p : small_primes()) {
    if (std::uint64_t{p} * p > m) break;
    if (m % p != 0) continue;
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    out.factors.push_back({p, e});
  }
  if (m > 1) {
    // Every composite below 10^12 has a prime factor below 10^6.
    if (m > std::uint64_t{kSieveLimit} * kSieveLimit)
      throw DomainError("factorize: residual cofactor is composite");
    out.factors.push_back({m, 1});
  }
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  const auto f = factorize(n);
  return f.factors.size() == 1 && f.factors[0].exponent == 1;
}

std::uint64_t divisor_count(std::uint64_t n) {
  std::uint64_t d = 1;
  for (const auto& pp : factorize(n).factors) d *= static_cast<std::uint64_t>(pp.exponent + 1);
  return d;
}

double tau_local(std::uint64_t p, int k, double T) {
  // sin((k+1)a)/sin(a) = U_k(cos a); the three-term recurrence is the Hecke
  // relation itself and has no removable singularity.
  const double c = std::cos(T * std::log(static_cast<double>(p)));
  double prev = 1.0, cur = 2.0 * c;
  if (k == 0) return prev;
  for (int j = 1; j < k; ++j) {
    const double next = 2.0 * c * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double tau_it(const Factorization& f, double T) {
  double out = 1.0;
  for (const auto& pp : f.factors) out *= tau_local(pp.prime, pp.exponent, T);
  return out;
}

double tau_it(std::int64_t n, double T) {
  if (n == 0) throw DomainError("tau_it: n must be nonzero");
  const std::uint64_t m = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  return tau_it(factorize(m), T);
}

RationalApprox dirichlet_approx(double x2, double Q) {
  if (!std::isfinite(x2) || std::abs(x2) > 1e6) throw DomainError("dirichlet_approx: |2x| > 10^6");
  if (!(Q >= 1.0) || !std::isfinite(Q)) throw DomainError("dirichlet_approx: Q must be >= 1");

  const double whole = std::floor(x2);
  const double frac = x2 - whole;  // exact
  const auto base = static_cast<std::int64_t>(whole);

  // Convergents h/k of frac = [0; c1, c2, ...].
  std::int64_t h_prev = 1, k_prev = 0;
  std::int64_t h = 0, k = 1;
  long double rem = frac;
  while (rem != 0.0L) {
    const long double inv = 1.0L / rem;
    if (inv > 9.0e18L) break;
    const auto c = static_cast<std::int64_t>(std::floor(inv));
    const long double k_next = static_cast<long double>(c) * k + k_prev;
    if (k_next > Q) break;
    const std::int64_t h_next = c * h + h_prev;
    h_prev = h;
    k_prev = k;
    h = h_next;
    k = static_cast<std::int64_t>(k_next);
    rem = inv - c;
  }

  auto residual = [&](std::int64_t num, std::int64_t den) {
    return std::fma(static_cast<double>(den), frac, -static_cast<double>(num));
  };

  // Floating-point digits can in principle drift; fall back to the
  // intermediate fractions between the last two convergents.
  if (std::abs(residual(h, k)) > 1.0 / Q) {
    for (std::int64_t t = 1; t * k + k_prev <= Q; ++t) {
      const std::int64_t kk = t * k + k_prev, hh = t * h + h_prev;
      if (std::abs(residual(hh, kk)) <= 1.0 / Q && std::gcd(hh, kk) == 1) {
        h = hh;
        k = kk;
        break;
      }
    }
  }

  RationalApprox out;
  out.q = k;
  out.a = base * k + h;
  out.theta = residual(h, k) / static_cast<double>(k);
  out.Q = Q;
  return out;
}

double bq(std::uint64_t q, double T, double s) {
  if (q == 0 || q > 1'000'000'000ULL) throw DomainError("bq: q must lie in [1, 10^9]");
  if (!(s > 0.5) || s > 4.0) throw DomainError("bq: s must lie in (1/2, 4]");
  if (!(T >= 0.0)) throw DomainError("bq: T must be >= 0");
  double out = 1.0;
  for (const auto& pp : factorize(q).factors) {
    const std::uint64_t p = pp.prime;
    out *= local_factor(p, pp.exponent, s, [&](int j) { return tau_local(p, j, 0.5 * T); });
  }
  return out;
}

double bq_prime_closed_form(std::uint64_t p, double T) {
  if (p > 1'000'000'000ULL || !is_prime(p)) throw DomainError("bq_prime_closed_form: p must be a prime <= 10^9");
  const double pd = static_cast<double>(p);
  return (1.0 + 2.0 * std::cos(T * std::log(pd)) - 1.0 / pd) / (pd + 1.0);
}

double bq_cusp(std::uint64_t q, const CuspFormData& data, double s) {
  if (q == 0 || q > 1'000'000'000ULL) throw DomainError("bq_cusp: q must lie in [1, 10^9]");
  if (!(s > 0.5) || s > 4.0) throw DomainError("bq_cusp: s must lie in (1/2, 4]");
  double out = 1.0;
  for (const auto& pp : factorize(q).factors) {
    const std::uint64_t p = pp.prime;
    const auto it = data.lambda_p.find(p);
    if (it == data.lambda_p.end())
      throw MissingEigenvalueError("bq_cusp: no lambda(p) for p = " + std::to_string(p));
    const double lambda = it->second;
    if (data.enforce_ramanujan && std::abs(lambda) > 2.0)
      throw DomainError("bq_cusp: |lambda(p)| > 2 with the Ramanujan bound enforced");
    // Satake roots alpha, 1/alpha; the local series converges iff
    // max|alpha|^2 < p^s.
    const double disc = lambda * lambda - 4.0;
    const double alpha = disc > 0.0 ? 0.5 * (std::abs(lambda) + std::sqrt(disc)) : 1.0;
    if (alpha * alpha >= std::pow(static_cast<double>(p), s))
      throw DomainError("bq_cusp: local series diverges for this lambda(p)");

    std::vector<double> lam{1.0, lambda};
    out *= local_factor(p, pp.exponent, s, [&](int j) {
      while (static_cast<int>(lam.size()) <= j) {
        const std::size_t m = lam.size();
        lam.push_back(lambda * lam[m - 1] - lam[m - 2]);
      }
      return lam[static_cast<std::size_t>(j)];
    });
  }
  return out;
}

std::complex<double> rankin_selberg_z(std::complex<double> s, double T, double tol) {
  using special::zeta;
  const std::complex<double> shift(0.0, 2.0 * T);
  const std::complex<double> one(1.0, 0.0);
  if (s == one || s - shift == one || s + shift == one || 2.0 * s == one)
    throw PoleError("rankin_selberg_z: pole of Z(s, E_T)");
  const auto zs = zeta(s, tol);
  return zeta(s - shift, tol) * zeta(s + shift, tol) * zs * zs / zeta(2.0 * s, tol);
}

}  // namespace eisenrest::arith
