#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

namespace eisenrest::arith {

struct PrimePower {
  std::uint64_t prime = 0;
  int exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Complete factorization of n; factors sorted by prime, exponents >= 1.
struct Factorization {
  std::uint64_t n = 1;
  std::vector<PrimePower> factors;
};

inline constexpr std::uint64_t kMaxFactorizable = 1'000'000'000'000ULL;

/// Trial division by the primes below 10^6; 1 <= n <= 10^12.
Factorization factorize(std::uint64_t n);

bool is_prime(std::uint64_t n);

/// d(n), the number of divisors.
std::uint64_t divisor_count(std::uint64_t n);

/// Local factor of tau_{iT} at p^k: sum_{j=0}^{k} p^{iT(2j-k)} = U_k(cos(T log p)).
double tau_local(std::uint64_t p, int k, double T);

/// tau_{iT}(n) = sum_{ab=|n|} (a/b)^{iT}, for 1 <= |n| <= 10^12.
double tau_it(std::int64_t n, double T);
double tau_it(const Factorization& f, double T);

/// Rational approximation 2x = a/q + theta with gcd(a,q) = 1, 1 <= q <= Q
/// and |q theta| <= 1/Q.
struct RationalApprox {
  std::int64_t a = 0;
  std::int64_t q = 1;
  double theta = 0.0;
  double Q = 1.0;
};

/// Last continued-fraction convergent of x2 with denominator <= Q.
/// |x2| <= 10^6, Q >= 1.
RationalApprox dirichlet_approx(double x2, double Q);

/// Finite Euler product B_q(s,T) for the Eisenstein series.
///
/// Only two index classes survive the Moebius/phi weights in each local
/// factor at p^{q_p} || q: j = q_p - 1 (weight -1/(p-1)) and j >= q_p
/// (weight 1). The local series use tau_{iT/2}(p^j)^2, the normalization
/// under which B_p(1,T) = (1 + 2 cos(T log p) - 1/p)/(p + 1).
double bq(std::uint64_t q, double T, double s = 1.0);

/// (1 + 2 cos(T log p) - 1/p) / (p + 1); p must be prime.
double bq_prime_closed_form(std::uint64_t p, double T);

/// Hecke data of a Maass cusp form, as far as B_q needs it.
struct CuspFormData {
  int parity = 1;                              // delta = +-1
  std::map<std::uint64_t, double> lambda_p;    // lambda(p) for the primes in use
  bool enforce_ramanujan = false;              // reject |lambda(p)| > 2
};

/// Cusp-form analogue of bq with lambda(p^k)^2 in the local series,
/// lambda(p^{k+1}) = lambda(p) lambda(p^k) - lambda(p^{k-1}).
double bq_cusp(std::uint64_t q, const CuspFormData& data, double s = 1.0);

/// Z(s, E_T) = zeta(s - 2iT) zeta(s + 2iT) zeta(s)^2 / zeta(2s).
std::complex<double> rankin_selberg_z(std::complex<double> s, double T, double tol = 1e-10);

}  // namespace eisenrest::arith
