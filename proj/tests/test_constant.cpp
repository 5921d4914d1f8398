#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ysys/constant.hpp"
#include "ysys/errors.hpp"

using namespace ysys;
using dynkin::parse_diagram;

TEST_CASE("rank-1 level-2 solution is exactly one") {
  auto s = constant::solve_constant(parse_diagram("A1"), 2);
  CHECK(s.residual < 1e-13);
  CHECK(s.y[0][0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rank-1 level-3 solution is the golden ratio conjugate") {
  auto s = constant::solve_constant(parse_diagram("A1"), 3);
  CHECK(s.residual < 1e-13);
  CHECK(std::abs(s.y[0][0] - 0.6180339887498948482) < 1e-10);
  CHECK(std::abs(s.y[0][1] - 0.6180339887498948482) < 1e-10);
}

TEST_CASE("rank-1 solutions match the closed form for every level") {
  for (int level = 2; level <= 10; ++level) {
    auto s = constant::solve_constant(parse_diagram("A1"), level);
    CHECK(s.residual < 1e-13);
    for (int m = 1; m < level; ++m) {
      CHECK(std::abs(s.y[0][m - 1] - constant::rank1_closed_form(level, m)) <
            1e-10);
      // reflection symmetry m <-> level - m of the closed form
      CHECK(s.y[0][m - 1] ==
            doctest::Approx(s.y[0][level - m - 1]).epsilon(1e-10));
    }
  }
}

TEST_CASE("identity values for the rank-1 family") {
  for (int level = 2; level <= 10; ++level) {
    auto s = constant::solve_constant(parse_diagram("A1"), level);
    auto r = constant::verify_level_identity(s);
    CHECK(r.ok());
    CHECK(r.rhs == doctest::Approx(3.0 * level / (2.0 + level) - 1.0)
                       .epsilon(1e-12));
  }
  auto l2 = constant::verify_level_identity(
      constant::solve_constant(parse_diagram("A1"), 2));
  CHECK(l2.lhs == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(l2.rhs == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("rank-2 level-2 identity value") {
  auto s = constant::solve_constant(parse_diagram("A2"), 2);
  auto r = constant::verify_level_identity(s);
  CHECK(r.ok());
  CHECK(r.rhs == doctest::Approx(6.0 / 5.0).epsilon(1e-14));
  CHECK(r.rhs_alt == doctest::Approx(6.0 / 5.0).epsilon(1e-14));
}

TEST_CASE("solution is independent of the starting point") {
  std::mt19937_64 rng(13);
  auto diagram = parse_diagram("A3");
  auto reference = constant::solve_constant(diagram, 4);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<std::vector<double>> start(diagram.rank,
                                           std::vector<double>(3));
    for (auto& row : start)
      for (double& x : row)
        x = 0.1 + static_cast<double>(rng() % 1000) / 250.0;
    auto other = constant::solve_constant_from(diagram, 4, start);
    for (int a = 0; a < diagram.rank; ++a)
      for (int m = 0; m < 3; ++m)
        CHECK(std::abs(other.y[a][m] - reference.y[a][m]) < 1e-10);
  }
}

TEST_CASE("solution respects the diagram automorphism") {
  for (const char* spec : {"A3", "D5", "E6"}) {
    auto diagram = parse_diagram(spec);
    auto s = constant::solve_constant(diagram, 3);
    for (int a = 0; a < diagram.rank; ++a)
      for (int m = 0; m < 2; ++m)
        CHECK(std::abs(s.y[a][m] - s.y[diagram.omega[a]][m]) < 1e-10);
  }
}

TEST_CASE("identity across the acceptance grid") {
  for (const char* spec : {"A1", "A2", "A3", "A4", "D4", "D5", "E6"}) {
    for (int level = 2; level <= 5; ++level) {
      auto s = constant::solve_constant(parse_diagram(spec), level);
      CHECK(s.residual < 1e-13);
      auto r = constant::verify_level_identity(s);
      CHECK(r.ok());
      CHECK(std::abs(r.lhs - r.rhs) < 1e-8);
    }
  }
}

TEST_CASE("bridge into the functional system") {
  auto s12 = constant::solve_constant(parse_diagram("A1"), 2);
  auto b12 = constant::constant_frame_bridge(s12);
  CHECK(b12.ok());
  CHECK(b12.functional_expected == doctest::Approx(4.0));
  CHECK(b12.functional_sum == doctest::Approx(4.0).epsilon(1e-10));

  auto s13 = constant::solve_constant(parse_diagram("A1"), 3);
  auto b13 = constant::constant_frame_bridge(s13);
  CHECK(b13.ok());
  CHECK(b13.functional_expected == doctest::Approx(8.0));

  auto s32 = constant::solve_constant(parse_diagram("A3"), 2);
  auto b32 = constant::constant_frame_bridge(s32);
  CHECK(b32.ok());
  CHECK(b32.max_relation_residual < 1e-10);
}

TEST_CASE("the rank-2 level-3 system is solved by all ones") {
  auto s = constant::solve_constant(parse_diagram("A2"), 3);
  CHECK(s.iterations == 0);
  for (int a = 0; a < 2; ++a)
    for (int m = 0; m < 2; ++m) CHECK(s.y[a][m] == doctest::Approx(1.0));
}

TEST_CASE("solver failure modes are typed errors") {
  CHECK_THROWS_AS(constant::solve_constant(parse_diagram("A2"), 1),
                  domain_error);
  CHECK_THROWS_AS(constant::solve_constant(parse_diagram("A3"), 3, 1e-13, 2),
                  numeric_error);
  try {
    constant::solve_constant(parse_diagram("A3"), 3, 1e-13, 2);
  } catch (const numeric_error& e) {
    CHECK(std::string(e.what()).find("residual") != std::string::npos);
  }
}
