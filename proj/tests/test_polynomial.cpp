#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ysys/errors.hpp"
#include "ysys/polynomial.hpp"

using ysys::poly::BigInt;
using ysys::poly::Exponents;
using ysys::poly::Polynomial;

namespace {

Polynomial random_poly(std::mt19937_64& rng, int nvars, int max_terms) {
  Polynomial p(nvars);
  const int terms = 1 + static_cast<int>(rng() % max_terms);
  for (int t = 0; t < terms; ++t) {
    Exponents e(nvars);
    for (int v = 0; v < nvars; ++v) e[v] = static_cast<int>(rng() % 3);
    p.add_term(e, BigInt(1 + rng() % 5));
  }
  return p;
}

}  // namespace

TEST_CASE("constant and variable constructors") {
  auto one = Polynomial::constant(2, 1);
  CHECK(one.is_one());
  CHECK(one.constant_term() == 1);
  auto zero = Polynomial::constant(2, 0);
  CHECK(zero.is_zero());
  auto y0 = Polynomial::variable(2, 0);
  CHECK(y0.term_count() == 1);
  CHECK(y0.constant_term() == 0);
}

TEST_CASE("arithmetic basics") {
  auto y = Polynomial::variable(1, 0);
  auto one = Polynomial::constant(1, 1);
  auto p = y + one;           // 1 + y
  auto q = p * p;             // 1 + 2y + y^2
  CHECK(q.term_count() == 3);
  CHECK(q.constant_term() == 1);
  CHECK((q - p * p).is_zero());
  CHECK(p.pow(3).term_count() == 4);
  CHECK(p.pow(0).is_one());
}

TEST_CASE("exact division succeeds exactly when divisible") {
  auto y = Polynomial::variable(2, 0);
  auto z = Polynomial::variable(2, 1);
  auto one = Polynomial::constant(2, 1);
  auto a = y + one;
  auto b = y * z + z + one;
  auto prod = a * b;
  auto q = Polynomial::exact_div(prod, a);
  REQUIRE(q.has_value());
  CHECK(*q == b);
  CHECK_FALSE(Polynomial::exact_div(prod + one, a).has_value());
  CHECK_FALSE(Polynomial::exact_div(y, z).has_value());
}

TEST_CASE("exact division round-trips on random products") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_poly(rng, 3, 4);
    auto b = random_poly(rng, 3, 4);
    auto q = Polynomial::exact_div(a * b, b);
    REQUIRE(q.has_value());
    CHECK(*q == a);
  }
}

TEST_CASE("content and monomial extraction") {
  Polynomial p(2);
  p.add_term({1, 1}, 6);
  p.add_term({2, 1}, 9);
  CHECK(p.content() == 3);
  p.divide_by_integer(3);
  CHECK(p.min_exponents() == Exponents{1, 1});
  p.divide_by_monomial({1, 1});
  CHECK(p.constant_term() == 2);
}

TEST_CASE("evaluate") {
  auto y = Polynomial::variable(2, 0);
  auto z = Polynomial::variable(2, 1);
  auto p = y * z + Polynomial::constant(2, 1);  // 1 + yz
  const double values[] = {2.0, 3.0};
  CHECK(p.evaluate(values) == doctest::Approx(7.0).epsilon(1e-15));
}

TEST_CASE("to_string is readable") {
  auto y = Polynomial::variable(2, 0);
  auto z = Polynomial::variable(2, 1);
  auto p = y * z * Polynomial::constant(2, 2) + Polynomial::constant(2, 1);
  const std::string names[] = {"a", "b"};
  CHECK(p.to_string(names) == "2*a*b + 1");
}

TEST_CASE("nvars mismatch is a typed error") {
  auto a = Polynomial::variable(2, 0);
  auto b = Polynomial::variable(3, 0);
  CHECK_THROWS_AS(a * b, ysys::domain_error);
}
