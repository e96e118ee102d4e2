#include <doctest.h>

#include <cmath>
#include <numbers>

#include "eisenrest/arithmetic.hpp"
#include "eisenrest/errors.hpp"
#include "eisenrest/restriction.hpp"

using namespace eisenrest;
using namespace eisenrest::restr;

namespace {

double log_factor(double T) { return 3.0 / std::numbers::pi * std::log(0.25 + T * T); }

}  // namespace

TEST_CASE("test function") {
  const TestFunction tf;
  CHECK(tf(2.0) == 1.0);
  CHECK(tf(1.0) == 0.0);
  CHECK(tf(3.0) == 0.0);
  CHECK(tf(0.5) == 0.0);
  CHECK(tf(1.5) == doctest::Approx(std::exp(1.0 - 1.0 / 0.75)));
  // mpmath quad of psi^2/y.
  CHECK(std::abs(tf.c_psi() - 0.50682472638052931227) < 1e-13);
  const TestFunction narrow(0.75, 1.75);
  CHECK(std::abs(narrow.c_psi() - 0.40090410613215284592) < 1e-13);
  CHECK_THROWS_AS(TestFunction(2.0, 1.0), DomainError);
  CHECK_THROWS_AS(TestFunction(1.0, 3.0, 8), DomainError);
}

TEST_CASE("restricted integral") {
  const TestFunction tf;
  const auto p = eis::EisensteinParams::make(50.0);
  const auto r = I_psi(0.3, tf, p);
  CHECK(r.value >= 0.0);
  CHECK(r.quad_error_est <= kQuadratureRelTol * r.value);
  CHECK(r.eisenstein_tail_max <= p.tol);
  const auto s = I_psi_shifted(0.3, 0.0, tf, p);
  CHECK(std::abs(s.value - r.value) <= 1e-12 * r.value);
  CHECK_THROWS_AS(I_psi_shifted(0.3, 11.0, tf, p), DomainError);
}

TEST_CASE("too few nodes is reported, not hidden") {
  const TestFunction tf(1.0, 3.0, 16);
  const auto p = eis::EisensteinParams::make(400.0);
  CHECK_THROWS_AS(I_psi(0.0, tf, p), ConvergenceError);
}

TEST_CASE("main term") {
  const TestFunction tf;
  for (double T : {10.0, 100.0, 1000.0}) {
    const auto m = main_term(0.0, T, tf, default_Q(T));
    CHECK(m.approx.q == 1);
    CHECK(m.approx.theta == 0.0);
    CHECK(m.bq_value == 1.0);
    CHECK(m.value == doctest::Approx(2.0 * log_factor(T) * tf.c_psi()).epsilon(1e-13));
    // 2x = 1 is an integer too.
    CHECK(main_term(0.5, T, tf, default_Q(T)).value == doctest::Approx(m.value).epsilon(1e-13));
  }
  // x = 1/4 at Q >= 2: q = 2, theta = 0.
  const auto quarter = main_term(0.25, 100.0, tf, default_Q(100.0));
  CHECK(quarter.approx.q == 2);
  CHECK(quarter.value == doctest::Approx(log_factor(100.0) * tf.c_psi() * (1.0 + arith::bq(2, 100.0))));
  const auto shifted = main_term_shifted(0.25, 100.0, 0.0, tf, default_Q(100.0));
  CHECK(shifted.value == doctest::Approx(quarter.value).epsilon(1e-13));
  const auto a0 = main_term_shifted(0.0, 200.0, 3.8317059702075123, tf, default_Q(200.0));
  CHECK(a0.value == doctest::Approx(2.0 * -0.4027593957025529721 * log_factor(200.0) * tf.c_psi()));
}

TEST_CASE("Mellin sampler matches single evaluations") {
  const TestFunction tf;
  const auto p = eis::EisensteinParams::make(10.0);
  const MellinSampler sampler(0.2, tf, p, 40.0);
  for (double t : {0.0, 3.5, -12.0, 40.0}) {
    const auto a = sampler(t), b = mellin_F(t, 0.2, tf, p);
    CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(b)));
  }
  CHECK_THROWS_AS(sampler(41.0), DomainError);
}

TEST_CASE("Parseval at small T") {
  const TestFunction tf;
  const auto p = eis::EisensteinParams::make(8.0);
  const auto r = parseval_check(0.2, tf, p.T + 60.0, p);
  CHECK(r.rel_gap <= 1e-4);
  CHECK(r.t_step <= 0.05);
  CHECK_THROWS_AS(parseval_check(0.2, tf, p.T + 10.0, p), DomainError);
}

TEST_CASE("diagonal sum against a direct tau sum") {
  const double T = 50.0;
  const std::int64_t N = 1024;
  double direct = 0.0;
  for (std::int64_t n = 1; n <= 2 * N; ++n) {
    const double t = arith::tau_it(n, T);
    direct += t * t * diagonal_window(static_cast<double>(n) / N);
  }
  const auto r = diagonal_sum_check(N, T);
  CHECK(std::abs(r.lhs - direct) <= 1e-10 * direct);
  CHECK(r.ratio == doctest::Approx(r.lhs / r.main));
  CHECK(diagonal_window(0.99) == 0.0);
  CHECK(diagonal_window(2.01) == 0.0);
  CHECK(diagonal_window(1.5) > 0.0);
}

TEST_CASE("J0 series identity") {
  for (double a : {-3.0, 0.0, 1.0, 3.8317059702075123})
    for (double u : {0.5, 2.0, 9.0}) {
      const auto r = j0_series_identity(a, u, 60);
      CHECK(r.abs_gap <= 1e-10);
    }
  CHECK_THROWS_AS(j0_series_identity(1.0, 1.0, 20), DomainError);
}

TEST_CASE("secondary term relevance") {
  const auto zero = secondary_term_relevance(0.0, 200.0, default_Q(200.0));
  CHECK(zero.relevant);
  CHECK(zero.bq_value == 1.0);
  const auto generic = secondary_term_relevance(0.1234567, 200.0, default_Q(200.0));
  CHECK_FALSE(generic.relevant);
  CHECK(generic.q_threshold == doctest::Approx(std::pow(std::log(200.0), 1.0 / 36.0)));
  CHECK_THROWS_AS(secondary_term_relevance(0.0, 2.0, 1.0), DomainError);
}
