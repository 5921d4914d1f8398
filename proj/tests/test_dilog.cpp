#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ysys/dilog.hpp"
#include "ysys/errors.hpp"

using namespace ysys;
using cluster::parse_pair;
using dilog::Domain;

namespace {

constexpr double pi_sq_6 = std::numbers::pi * std::numbers::pi / 6.0;

/// Test-only oracle: the raw dilogarithm series summed without any
/// argument reduction, so the reflection path of the implementation is
/// cross-checked against an independent route.
double li2_long_series(double x) {
  double sum = 0.0, p = x;
  for (int k = 1; k < 20000 && p > 1e-18; ++k) {
    sum += p / (static_cast<double>(k) * k);
    p *= x;
  }
  return sum;
}

double unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

TEST_CASE("endpoint values") {
  CHECK(dilog::rogers_l(0.0) == 0.0);
  CHECK(dilog::rogers_l(1.0) == doctest::Approx(pi_sq_6).epsilon(1e-15));
  CHECK(dilog::rogers_l(0.5) == doctest::Approx(pi_sq_6 / 2.0).epsilon(1e-14));
  CHECK_THROWS_AS(dilog::rogers_l(-0.1), domain_error);
  CHECK_THROWS_AS(dilog::rogers_l(1.1), domain_error);
}

TEST_CASE("frozen reference values") {
  // High-precision reference values computed independently.
  CHECK(std::abs(dilog::rogers_l(0.05) - 0.12746978117134148988) < 1e-13);
  CHECK(std::abs(dilog::rogers_l(0.25) - 0.46705865650032646982) < 1e-13);
  CHECK(std::abs(dilog::rogers_l(0.37) - 0.64109017216749573305) < 1e-13);
  CHECK(std::abs(dilog::rogers_l(0.50) - 0.82246703342411321824) < 1e-13);
  CHECK(std::abs(dilog::rogers_l(0.73) - 1.14808842998337080130) < 1e-13);
  CHECK(std::abs(dilog::rogers_l(0.95) - 1.51746428567688494660) < 1e-13);
  CHECK(std::abs(dilog::rogers_l(0.999) - 1.64047821100658526400) < 1e-13);
}

TEST_CASE("implementation agrees with the unreduced series") {
  std::mt19937_64 rng(3);
  for (int s = 0; s < 500; ++s) {
    const double x = 0.995 * unit(rng);
    const double direct = li2_long_series(x) + 0.5 * std::log(x) * std::log1p(-x);
    CHECK(std::abs(dilog::rogers_l(x) - direct) < 5e-13);
  }
}

TEST_CASE("reflection identity on 1000 random points") {
  std::mt19937_64 rng(5);
  double worst = 0.0;
  for (int s = 0; s < 1000; ++s) {
    const double x = unit(rng);
    worst = std::max(worst,
                     std::abs(dilog::rogers_l(x) + dilog::rogers_l(1.0 - x) -
                              pi_sq_6));
  }
  CHECK(worst < 1e-12);
  CHECK(std::abs(dilog::rogers_l(0.37) + dilog::rogers_l(0.63) - pi_sq_6) <
        1e-13);
}

TEST_CASE("five-term relation") {
  CHECK(dilog::five_term_sum(0.0, 0.0) ==
        doctest::Approx(3.0 * pi_sq_6).epsilon(1e-14));
  CHECK(dilog::five_term_sum(1.0, 0.3) ==
        doctest::Approx(3.0 * pi_sq_6).epsilon(1e-14));
  auto report = dilog::verify_five_term(1000, 2026);
  CHECK(report.ok());
  CHECK(report.max_abs_error < 1e-12);
}

TEST_CASE("domain sizes") {
  auto pair = parse_pair("A3xA2");
  CHECK(dilog::domain_points(pair, Domain::s_plus).size() ==
        static_cast<std::size_t>(6 * 7));
  CHECK(dilog::domain_points(pair, Domain::s_minus).size() ==
        static_cast<std::size_t>(6 * 7));
  CHECK(dilog::domain_points(pair, Domain::h_plus).size() ==
        static_cast<std::size_t>(6 * 7 / 2));
  // ordering is (i, i', u)
  auto points = dilog::domain_points(pair, Domain::s_plus);
  CHECK(std::is_sorted(points.begin(), points.end()));
}

TEST_CASE("domain sums at explicit points") {
  auto a11 = parse_pair("A1xA1");
  auto any = semifield::PosRealAssignment({3.7});
  CHECK(dilog::dilog_sum(a11, any, Domain::s_plus) ==
        doctest::Approx(2.0).epsilon(1e-10));
  auto a21 = parse_pair("A2xA1");
  auto a21_assignment = cluster::random_assignment(2, 8);
  CHECK(dilog::dilog_sum(a21, a21_assignment, Domain::s_plus) ==
        doctest::Approx(6.0).epsilon(1e-10));
  auto a12 = parse_pair("A1xA2");
  auto a12_assignment = cluster::random_assignment(2, 9);
  CHECK(dilog::dilog_sum(a12, a12_assignment, Domain::h_minus) ==
        doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("expected values per domain") {
  auto a22 = parse_pair("A2xA2");
  CHECK(dilog::expected_value(a22, Domain::s_plus) == 12.0);
  auto d42 = parse_pair("D4xA2");
  CHECK(dilog::expected_value(d42, Domain::s_plus) == 48.0);
  auto a12 = parse_pair("A1xA2");
  CHECK(dilog::expected_value(a12, Domain::s_plus) == 4.0);
  CHECK(dilog::expected_value(a12, Domain::s_minus) == 6.0);
}

TEST_CASE("identity suite on small pairs") {
  for (const char* spec : {"A1xA1", "A1xA2", "A2xA2", "A3xA1", "D4xA2"}) {
    auto suite = dilog::verify_identities(parse_pair(spec), 5);
    CHECK(suite.ok());
    for (const auto& d : suite.domains) CHECK(d.max_abs_error < 1e-8);
    CHECK(suite.pairing_max_error < 1e-8);
  }
}

TEST_CASE("identity suite is reproducible for a fixed seed") {
  auto a = dilog::verify_identities(parse_pair("A2xA1"), 3, 1e-8, 77);
  auto b = dilog::verify_identities(parse_pair("A2xA1"), 3, 1e-8, 77);
  for (int d = 0; d < 4; ++d) CHECK(a.domains[d].measured == b.domains[d].measured);
}

TEST_CASE("constancy of the full-window sum") {
  auto r11 = dilog::verify_constancy(parse_pair("A1xA1"), 10);
  CHECK(r11.ok());
  CHECK(r11.range < 1e-12);
  auto r32 = dilog::verify_constancy(parse_pair("A3xA2"), 10);
  CHECK(r32.ok());
  CHECK(r32.range < 1e-10);
}

TEST_CASE("constancy at hand-picked extreme assignments") {
  auto pair = parse_pair("A2xA2");
  auto low = semifield::PosRealAssignment::constant(pair.size(), 0.05);
  auto high = semifield::PosRealAssignment::constant(pair.size(), 20.0);
  const double a = dilog::dilog_sum(pair, low, Domain::s_plus);
  const double b = dilog::dilog_sum(pair, high, Domain::s_plus);
  CHECK(std::abs(a - b) < 1e-10);
}

TEST_CASE("limit toward 0/infinity") {
  auto r21 = dilog::zero_infinity_limit(parse_pair("A2xA1"), {0.1, 0.01, 0.001});
  CHECK(r21.ok());
  CHECK(r21.expected == 6.0);
  CHECK(std::abs(r21.final_sum - 6.0) <= 1e-3 * 6.0);
  auto r12 = dilog::zero_infinity_limit(parse_pair("A1xA2"), {0.1, 0.01, 0.001});
  CHECK(r12.ok());
  CHECK(r12.expected == 4.0);
  CHECK_THROWS_AS(
      dilog::zero_infinity_limit(parse_pair("A1xA1"), {0.001, 0.01}),
      domain_error);
}

TEST_CASE("single vertex terms hug the endpoint at small t") {
  auto pair = parse_pair("A1xA1");
  auto assignment = semifield::PosRealAssignment::constant(1, 0.001);
  auto frame = cluster::numeric_frame(pair, assignment, 0, pair.full_period() - 1);
  auto trop = cluster::tropical_frame(pair, 0, pair.full_period() - 1);
  int negatives = 0;
  for (auto [v, u] : dilog::domain_points(pair, Domain::s_plus)) {
    if (semifield::monomial_sign(trop.at(v, u)) !=
        semifield::MonomialSign::negative)
      continue;
    ++negatives;
    const double x = frame.at(v, u) / (1.0 + frame.at(v, u));
    CHECK(x > 0.999);
  }
  CHECK(negatives == 2);
}
