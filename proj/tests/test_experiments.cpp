#include <doctest.h>

#include <cmath>

#include "eisenrest/errors.hpp"
#include "eisenrest/experiments.hpp"

using namespace eisenrest;
using namespace eisenrest::exper;

TEST_CASE("grid parsing") {
  const auto g = parse_grid("0:1:0.25");
  REQUIRE(g.size() == 5);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 1.0);
  CHECK(parse_grid("50:100:50").size() == 2);
  CHECK(parse_grid("0.1:0.3:0.1").size() == 3);
  CHECK(parse_grid("5:5:1").size() == 1);
  CHECK_THROWS_AS(parse_grid("1:0:1"), DomainError);
  CHECK_THROWS_AS(parse_grid("0:1:0"), DomainError);
  CHECK_THROWS_AS(parse_grid("0:1"), DomainError);
  CHECK_THROWS_AS(parse_grid("a:1:2"), DomainError);
}

TEST_CASE("sign changes at T = 100 on x = 0") {
  const auto p = eis::EisensteinParams::make(100.0);
  const auto r = find_sign_change(0.0, 1.0, 3.0, 1e-5, p);
  REQUIRE_FALSE(r.brackets.empty());
  CHECK(r.grid_step <= 2.0 / 400.0 + 1e-15);
  for (const auto& b : r.brackets) {
    CHECK(b.value_lo * b.value_hi < 0.0);
    CHECK(b.y_hi - b.y_lo <= 1e-5);
    CHECK(b.y_lo >= 1.0);
    CHECK(b.y_hi <= 3.0);
  }
  CHECK_THROWS_AS(find_sign_change(0.0, 1.0, 3.0, 1e-7, p), DomainError);
}

TEST_CASE("sweep shape and row order") {
  SweepConfig c;
  c.x_grid = {0.0, 0.3};
  c.T_grid = {10.0, 20.0};
  c.quad_points = 256;
  std::vector<SweepRow> streamed;
  const auto rows = sweep(c, {}, [&](const SweepRow& r) { streamed.push_back(r); });
  REQUIRE(rows.size() == 4);
  REQUIRE(streamed.size() == 4);
  CHECK(rows[0].x == 0.0);
  CHECK(rows[0].T == 10.0);
  CHECK(rows[1].x == 0.0);
  CHECK(rows[1].T == 20.0);
  CHECK(rows[2].x == 0.3);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].flag.empty());
    CHECK(streamed[i].I_value == rows[i].I_value);
    CHECK(rows[i].ratio == doctest::Approx(rows[i].I_value / rows[i].main_value));
  }
  CHECK(rows[0].q == 1);
  CHECK(rows[0].theta == 0.0);
  CHECK(rows[0].bq_value == 1.0);
}

TEST_CASE("sweep isolates row failures") {
  SweepConfig c;
  c.x_grid = {0.0};
  c.T_grid = {20.0, 5000.0};
  const auto rows = sweep(c);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].flag.empty());
  CHECK(rows[1].flag.rfind("domain", 0) == 0);
  CHECK(std::isnan(rows[1].I_value));

  c.T_grid = {400.0};
  c.quad_points = 16;
  const auto coarse = sweep(c);
  CHECK(coarse[0].flag.rfind("convergence", 0) == 0);
}

TEST_CASE("numerical kernel Mellin transform matches gamma_v") {
  for (double T : {5.0, 20.0}) {
    for (special::cplx s : {special::cplx(0.3, 1.0), special::cplx(1.5, -4.0)}) {
      const auto a = kernel_mellin_numeric(s, T), b = special::gamma_v(s, T);
      CHECK(std::abs(a - b) <= 1e-8 * std::abs(b));
    }
  }
}

TEST_CASE("check suites") {
  CHECK_THROWS_AS(run_check_suite("nope"), DomainError);
  for (const char* name : {"bq", "bessel_identity", "arithmetic"}) {
    const auto r = run_check_suite(name);
    CAPTURE(name);
    CHECK_FALSE(r.items.empty());
    CHECK(r.passed());
    for (const auto& item : r.items) CHECK(item.suite == name);
  }
}
