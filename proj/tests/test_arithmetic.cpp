#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "eisenrest/arithmetic.hpp"
#include "eisenrest/errors.hpp"
#include "eisenrest/special_fn.hpp"

using namespace eisenrest;
using namespace eisenrest::arith;

namespace {

// sum over divisors a of n of (a/b)^{iT}, b = n/a; real because the
// divisors pair up.
double tau_brute(std::uint64_t n, double T) {
  double out = 0.0;
  for (std::uint64_t a = 1; a <= n; ++a)
    if (n % a == 0) out += std::cos(T * std::log(static_cast<double>(a) / static_cast<double>(n / a)));
  return out;
}

int mobius(std::uint64_t n) {
  int sign = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  return n > 1 ? -sign : sign;
}

std::uint64_t totient(std::uint64_t n) {
  std::uint64_t out = 0;
  for (std::uint64_t k = 1; k <= n; ++k) out += std::gcd(k, n) == 1;
  return out;
}

// The Euler product taken straight from its definition, with tau_{iT/2}
// in the local series.
double bq_literal(std::uint64_t q, double T) {
  double out = 1.0;
  for (const auto& pp : factorize(q).factors) {
    const double p = static_cast<double>(pp.prime);
    std::uint64_t pq = 1;
    for (int i = 0; i < pp.exponent; ++i) pq *= pp.prime;
    double num = 0.0, den = 0.0;
    std::uint64_t pj = 1;
    for (int j = 0; j < 120; ++j) {
      double tau_half = 0.0;
      for (int i = 0; i <= j; ++i) tau_half += std::cos(0.5 * T * (2.0 * i - j) * std::log(p));
      const double term = tau_half * tau_half * std::pow(p, -j);
      const std::uint64_t m = pq / std::gcd(pj, pq);
      num += term * mobius(m) / static_cast<double>(totient(m));
      den += term;
      if (pj < pq) pj *= pp.prime;
    }
    out *= num / den;
  }
  return out;
}

}  // namespace

TEST_CASE("factorize") {
  const auto f = factorize(360);
  REQUIRE(f.factors.size() == 3);
  CHECK(f.factors[0] == PrimePower{2, 3});
  CHECK(f.factors[1] == PrimePower{3, 2});
  CHECK(f.factors[2] == PrimePower{5, 1});
  CHECK(factorize(1).factors.empty());
  CHECK(is_prime(999999999989ULL));
  CHECK_FALSE(is_prime(999999999991ULL));
  CHECK(divisor_count(720720) == 240);
  CHECK_THROWS_AS(factorize(0), DomainError);
  CHECK_THROWS_AS(factorize(kMaxFactorizable + 1), DomainError);
}

TEST_CASE("tau against divisor sums") {
  for (double T : {0.0, 1.7, 30.0, 412.5}) {
    for (std::uint64_t n = 1; n <= 400; ++n) {
      CAPTURE(n);
      CHECK(std::abs(tau_it(static_cast<std::int64_t>(n), T) - tau_brute(n, T)) < 1e-11);
    }
  }
  CHECK(tau_it(-12, 3.0) == tau_it(12, 3.0));
  CHECK(tau_it(2, 5.0) == doctest::Approx(2 * std::cos(5.0 * std::log(2.0))).epsilon(1e-15));
  CHECK_THROWS_AS(tau_it(0, 1.0), DomainError);
}

TEST_CASE("tau invariants") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::uint64_t> pick(1, 1'000'000);
  std::uniform_real_distribution<double> pick_T(1.0, 1000.0);
  int coprime = 0;
  while (coprime < 200) {
    const auto m = pick(rng), n = pick(rng);
    if (std::gcd(m, n) != 1) continue;
    ++coprime;
    const double T = pick_T(rng);
    const double lhs = tau_it(static_cast<std::int64_t>(m * n), T);
    const double rhs = tau_it(static_cast<std::int64_t>(m), T) * tau_it(static_cast<std::int64_t>(n), T);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    CHECK(std::abs(lhs) <= static_cast<double>(divisor_count(m * n)));
  }
  for (std::uint64_t p : {2ULL, 3ULL, 97ULL, 7919ULL}) {
    for (int k = 1; k < 30; ++k) {
      const double T = pick_T(rng);
      const double lhs = tau_local(p, 1, T) * tau_local(p, k, T);
      const double rhs = tau_local(p, k + 1, T) + tau_local(p, k - 1, T);
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  }
}

TEST_CASE("tau where sin(T log p) vanishes") {
  const double T = 3.0 * std::numbers::pi / std::log(5.0);
  for (int k = 0; k < 10; ++k) CHECK(tau_local(5, k, T) == doctest::Approx((k % 2 ? -1.0 : 1.0) * (k + 1)));
}

TEST_CASE("dirichlet approximation examples") {
  auto r = dirichlet_approx(0.0, 5.0);
  CHECK(r.a == 0);
  CHECK(r.q == 1);
  CHECK(r.theta == 0.0);
  r = dirichlet_approx(2.0 / 3.0, 10.0);
  CHECK(r.a == 2);
  CHECK(r.q == 3);
  CHECK(std::abs(r.theta) < 1e-16);
  r = dirichlet_approx(std::numbers::pi, 100.0);
  CHECK(r.a == 22);
  CHECK(r.q == 7);
  r = dirichlet_approx(-0.5, 3.0);
  CHECK(r.a == -1);
  CHECK(r.q == 2);
  CHECK_THROWS_AS(dirichlet_approx(0.1, 0.5), DomainError);
  CHECK_THROWS_AS(dirichlet_approx(2e6, 10.0), DomainError);
}

TEST_CASE("dirichlet approximation postconditions") {
  using big = boost::multiprecision::cpp_bin_float_quad;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> pick_x(-50.0, 50.0);
  std::uniform_real_distribution<double> pick_logQ(0.0, std::log(1e6));
  for (int i = 0; i < 10000; ++i) {
    const double x2 = pick_x(rng), Q = std::exp(pick_logQ(rng));
    const auto r = dirichlet_approx(x2, Q);
    REQUIRE(r.q >= 1);
    REQUIRE(static_cast<double>(r.q) <= Q);
    REQUIRE(std::gcd(r.a, r.q) == 1);
    // |q x2 - a| <= 1/Q, evaluated exactly.
    const big gap = abs(big(r.q) * big(x2) - big(r.a));
    REQUIRE(gap <= big(1) / big(Q));
  }
}

TEST_CASE("B_q") {
  CHECK(bq(1, 17.0) == 1.0);
  for (std::uint64_t p : {2ULL, 3ULL, 11ULL, 101ULL, 7919ULL})
    for (double T : {1.0, 33.3, 500.0}) CHECK(std::abs(bq(p, T) - bq_prime_closed_form(p, T)) < 1e-12);
  for (std::uint64_t q : {4ULL, 6ULL, 8ULL, 12ULL, 27ULL, 30ULL, 49ULL})
    for (double T : {2.0, 45.0}) {
      CAPTURE(q);
      CHECK(std::abs(bq(q, T) - bq_literal(q, T)) < 1e-12);
    }
  CHECK(bq(2, std::numbers::pi / std::log(2.0)) == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK_THROWS_AS(bq(0, 1.0), DomainError);
  CHECK_THROWS_AS(bq(2, 1.0, 0.5), DomainError);
}

TEST_CASE("B_q is below one in modulus for q >= 2") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::uint64_t> pick_q(2, 10000);
  std::uniform_real_distribution<double> pick_T(1.0, 1000.0);
  for (int i = 0; i < 1000; ++i) CHECK(std::abs(bq(pick_q(rng), pick_T(rng))) < 1.0);
}

TEST_CASE("B_q for cusp form data") {
  CuspFormData d;
  d.lambda_p = {{2, 0.0}, {7, 0.0}, {3, 2.0 * std::cos(0.5 * 20.0 * std::log(3.0))}};
  CHECK(bq_cusp(1, d) == 1.0);
  CHECK(bq_cusp(7, d) == doctest::Approx(-1.0 / 7.0).epsilon(1e-14));
  CHECK(std::abs(bq_cusp(3, d) - bq(3, 20.0)) < 1e-13);
  CHECK(std::abs(bq_cusp(9, d) - bq(9, 20.0)) < 1e-13);
  CHECK_THROWS_AS(bq_cusp(5, d), MissingEigenvalueError);
  d.lambda_p[5] = 2.5;
  d.enforce_ramanujan = true;
  CHECK_THROWS_AS(bq_cusp(5, d), DomainError);
  d.enforce_ramanujan = false;
  CHECK(std::isfinite(bq_cusp(5, d)));
  d.lambda_p[5] = 10.0;
  CHECK_THROWS_AS(bq_cusp(5, d), DomainError);
}

TEST_CASE("Rankin-Selberg Z") {
  const double z2 = std::numbers::pi * std::numbers::pi / 6.0;
  const double z4 = std::pow(std::numbers::pi, 4) / 90.0;
  CHECK(std::abs(rankin_selberg_z(2.0, 0.0).real() - std::pow(z2, 4) / z4) < 1e-12);

  const double T = 10.0;
  const special::cplx s(3.0, 0.7);
  special::cplx partial = 0.0;
  for (std::int64_t n = 1; n <= 100000; ++n) {
    const double t = tau_it(n, T);
    partial += t * t * std::exp(-s * std::log(static_cast<double>(n)));
  }
  CHECK(std::abs(rankin_selberg_z(s, T) - partial) < 1e-9);

  const auto a = rankin_selberg_z({1.3, 4.0}, 7.0), b = rankin_selberg_z({1.3, -4.0}, 7.0);
  CHECK(std::abs(a - std::conj(b)) <= 1e-13 * std::abs(a));
  CHECK_THROWS_AS(rankin_selberg_z({1.0, 0.0}, 3.0), PoleError);
  CHECK_THROWS_AS(rankin_selberg_z({1.0, 6.0}, 3.0), PoleError);
}
