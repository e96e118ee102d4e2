#include <doctest.h>

#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "eisenrest/errors.hpp"
#include "eisenrest/experiments.hpp"
#include "eisenrest/parallel.hpp"
#include "eisenrest/restriction.hpp"

using namespace eisenrest;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("parallel_for visits every index once and rethrows") {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), Exec{4}, [&](std::size_t i) { ++hits[i]; });
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS_AS(parallel_for(100, Exec{3}, [](std::size_t i) {
                    if (i == 57) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
}

TEST_CASE("restricted integral is bit identical across thread counts") {
  const restr::TestFunction tf;
  const auto p = eis::EisensteinParams::make(60.0);
  const auto serial = restr::I_psi(0.37, tf, p, Exec{1});
  for (int threads : {2, 3, 8}) {
    const auto par = restr::I_psi(0.37, tf, p, Exec{threads});
    CHECK(same_bits(serial.value, par.value));
    CHECK(same_bits(serial.quad_error_est, par.quad_error_est));
  }
  const auto s1 = restr::I_psi_shifted(0.1, 2.0, tf, p, Exec{1});
  const auto s4 = restr::I_psi_shifted(0.1, 2.0, tf, p, Exec{4});
  CHECK(same_bits(s1.value, s4.value));
}

TEST_CASE("Mellin samples and sign scans are bit identical across thread counts") {
  const restr::TestFunction tf;
  const auto p = eis::EisensteinParams::make(20.0);
  const restr::MellinSampler a(0.35, tf, p, 70.0, Exec{1}), b(0.35, tf, p, 70.0, Exec{4});
  for (double t : {0.0, 19.5, 70.0}) {
    CHECK(same_bits(a(t).real(), b(t).real()));
    CHECK(same_bits(a(t).imag(), b(t).imag()));
  }
  const auto r1 = exper::find_sign_change(0.2, 1.0, 3.0, 1e-5, p, Exec{1});
  const auto r4 = exper::find_sign_change(0.2, 1.0, 3.0, 1e-5, p, Exec{4});
  REQUIRE(r1.brackets.size() == r4.brackets.size());
  for (std::size_t i = 0; i < r1.brackets.size(); ++i) CHECK(same_bits(r1.brackets[i].y_lo, r4.brackets[i].y_lo));
}

TEST_CASE("sweep is bit identical across thread counts") {
  exper::SweepConfig c;
  c.x_grid = {0.0, 0.25, 0.4};
  c.T_grid = {15.0, 30.0};
  c.quad_points = 256;
  const auto serial = exper::sweep(c, Exec{1});
  const auto par = exper::sweep(c, Exec{4});
  REQUIRE(serial.size() == par.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(same_bits(serial[i].I_value, par[i].I_value));
    CHECK(same_bits(serial[i].main_value, par[i].main_value));
    CHECK(serial[i].flag == par[i].flag);
  }
}

TEST_CASE("thread count from the environment") {
  unsetenv("EISENREST_THREADS");
  CHECK(threads_from_env() == 1);
  setenv("EISENREST_THREADS", "3", 1);
  CHECK(threads_from_env() == 3);
  for (const char* bad : {"0", "-2", "two", "3x"}) {
    setenv("EISENREST_THREADS", bad, 1);
    CAPTURE(bad);
    CHECK_THROWS_AS(threads_from_env(), DomainError);
  }
  unsetenv("EISENREST_THREADS");
}
