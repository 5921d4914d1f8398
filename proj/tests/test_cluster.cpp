#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <random>

#include "ysys/cluster.hpp"
#include "ysys/errors.hpp"

using namespace ysys;
using namespace ysys::cluster;
using semifield::TropMonomial;

namespace {

TropMonomial mono(std::vector<int> e) { return TropMonomial(std::move(e)); }

}  // namespace

TEST_CASE("pair parsing and vertex bookkeeping") {
  auto pair = parse_pair("a3Xa2");
  CHECK(pair.label() == "A3xA2");
  CHECK(pair.size() == 6);
  CHECK(pair.h() == 4);
  CHECK(pair.h_prime() == 3);
  CHECK(pair.half_period() == 7);
  CHECK(pair.full_period() == 14);
  CHECK(pair.flat(1, 0) == 2);
  CHECK(pair.unflat(5) == std::pair<int, int>{2, 1});
  CHECK_THROWS_AS(parse_pair("A3A2"), diagram_error);
  CHECK_THROWS_AS(parse_pair("xA2"), diagram_error);
}

TEST_CASE("parity condition") {
  CHECK(parity(+1, 0) == +1);
  CHECK(parity(+1, 1) == -1);
  CHECK(parity(-1, 1) == +1);
  CHECK(parity(-1, -3) == +1);
  CHECK(parity(+1, -2) == +1);
}

TEST_CASE("square product of A1 and A2") {
  auto pair = parse_pair("A1xA2");
  auto b = square_product(pair);
  REQUIRE(b.n == 2);
  CHECK(b.at(0, 0) == 0);
  CHECK(b.at(0, 1) == 1);
  CHECK(b.at(1, 0) == -1);
  CHECK(b.at(1, 1) == 0);
  CHECK(b.parts == std::vector<int>{1, -1});
}

TEST_CASE("square product of A1 and A1 is the zero matrix") {
  auto b = square_product(parse_pair("A1xA1"));
  REQUIRE(b.n == 1);
  CHECK(b.at(0, 0) == 0);
}

TEST_CASE("square product of A2 and A1") {
  auto b = square_product(parse_pair("A2xA1"));
  REQUIRE(b.n == 2);
  // (1,1') sits in the ++ class, (2,1') in -+; the entry between them
  // comes from the left diagram's Cartan matrix.
  CHECK(b.at(0, 1) == -1);
  CHECK(b.at(1, 0) == 1);
}

TEST_CASE("square products are skew-symmetric and bipartite") {
  for (const char* spec : {"A1xA1", "A2xA3", "A3xA2", "D4xA2", "E6xA2", "D5xD4"}) {
    auto b = square_product(parse_pair(spec));
    CHECK(b.is_skew_symmetric());
    CHECK(b.is_bipartite());
  }
}

TEST_CASE("matrix mutation is an involution") {
  std::mt19937_64 rng(5);
  auto b = square_product(parse_pair("A3xA2"));
  for (int trial = 0; trial < 40; ++trial) {
    const int k = static_cast<int>(rng() % b.n);
    auto twice = mutate_matrix(mutate_matrix(b, k), k);
    CHECK(twice.entries == b.entries);
    b = mutate_matrix(b, static_cast<int>(rng() % b.n));
    CHECK(b.is_skew_symmetric());
  }
}

TEST_CASE("one explicit matrix mutation") {
  auto b = square_product(parse_pair("A1xA2"));
  auto m = mutate_matrix(b, 0);
  CHECK(m.at(0, 1) == -1);
  CHECK(m.at(1, 0) == 1);
}

TEST_CASE("mutating a whole part negates the matrix, in any order") {
  for (const char* spec : {"A1xA2", "A3xA2", "D4xA3"}) {
    auto b = square_product(parse_pair(spec));
    for (int sign : {+1, -1}) {
      auto forward = mutate_matrix_part(b, sign);
      for (int i = 0; i < b.n; ++i)
        for (int j = 0; j < b.n; ++j) CHECK(forward.at(i, j) == -b.at(i, j));
      // reversed order
      auto reversed = b;
      for (int k = b.n - 1; k >= 0; --k)
        if (reversed.parts[k] == sign) reversed = mutate_matrix(reversed, k);
      CHECK(reversed.entries == forward.entries);
    }
  }
}

TEST_CASE("coefficient mutation matches the worked tropical example") {
  auto pair = parse_pair("A1xA2");
  auto b = square_product(pair);
  TropicalBackend backend{2};
  std::vector<TropMonomial> y = {backend.generator(0), backend.generator(1)};
  auto out = mutate_coefficients(backend, b, y, 0);
  CHECK(out[0] == mono({-1, 0}));
  CHECK(out[1] == mono({1, 1}));
}

TEST_CASE("coefficient mutation matches the worked numeric example") {
  auto pair = parse_pair("A1xA2");
  auto b = square_product(pair);
  NumericBackend backend{2};
  std::vector<double> y = {2.0, 3.0};
  auto out = mutate_coefficients(backend, b, y, 0);
  CHECK(out[0] == doctest::Approx(0.5));
  CHECK(out[1] == doctest::Approx(2.0));
}

TEST_CASE("coefficient mutation is an involution in every backend") {
  auto pair = parse_pair("A3xA2");
  auto b = square_product(pair);
  std::mt19937_64 rng(17);
  TropicalBackend trop{pair.size()};
  RationalBackend rat(pair.size());
  NumericBackend num{pair.size()};
  std::vector<TropMonomial> yt;
  std::vector<semifield::PosRational> yr;
  std::vector<double> yn;
  for (int v = 0; v < pair.size(); ++v) {
    yt.push_back(trop.generator(v));
    yr.push_back(rat.generator(v).one_plus());  // something non-monomial
    yn.push_back(0.5 + static_cast<double>(rng() % 100) / 25.0);
  }
  for (int k = 0; k < pair.size(); ++k) {
    // Seed mutation is involutive: the second application sees the
    // mutated exchange matrix.
    auto bk = mutate_matrix(b, k);
    auto t2 = mutate_coefficients(trop, bk, mutate_coefficients(trop, b, yt, k), k);
    for (int v = 0; v < pair.size(); ++v) CHECK(t2[v] == yt[v]);
    auto r2 = mutate_coefficients(rat, bk, mutate_coefficients(rat, b, yr, k), k);
    for (int v = 0; v < pair.size(); ++v) CHECK(rat_equal(r2[v], yr[v]));
    auto n2 = mutate_coefficients(num, bk, mutate_coefficients(num, b, yn, k), k);
    for (int v = 0; v < pair.size(); ++v)
      CHECK(n2[v] == doctest::Approx(yn[v]).epsilon(1e-12));
  }
}

TEST_CASE("tropical frame reproduces the rank-1 x rank-2 table") {
  auto pair = parse_pair("A1xA2");
  auto frame = tropical_frame(pair, 0, 5);
  // v0 = (1,1'), v1 = (1,2'); columns u = 0..5.
  const std::vector<std::vector<TropMonomial>> expected = {
      {mono({1, 0}), mono({0, 1})},  {mono({-1, 0}), mono({1, 1})},
      {mono({0, 1}), mono({-1, -1})}, {mono({0, -1}), mono({-1, 0})},
      {mono({0, -1}), mono({1, 0})}, {mono({0, 1}), mono({1, 0})}};
  for (int u = 0; u <= 5; ++u) {
    CHECK(frame.at(0, u) == expected[u][0]);
    CHECK(frame.at(1, u) == expected[u][1]);
  }
}

TEST_CASE("tropical frame reproduces the rank-3 x rank-1 backward table") {
  auto pair = parse_pair("A3xA1");
  auto frame = tropical_frame(pair, -6, 0);
  auto row = [&](int u) {
    std::vector<std::vector<int>> out;
    for (int v = 0; v < 3; ++v) out.push_back(frame.at(v, u).exponents);
    return out;
  };
  using T = std::vector<std::vector<int>>;
  CHECK(row(0) == T{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(row(-1) == T{{1, 1, 0}, {0, -1, 0}, {0, 1, 1}});
  CHECK(row(-2) == T{{-1, -1, 0}, {1, 1, 1}, {0, -1, -1}});
  CHECK(row(-3) == T{{0, 0, 1}, {-1, -1, -1}, {1, 0, 0}});
  CHECK(row(-4) == T{{0, 0, -1}, {0, -1, 0}, {-1, 0, 0}});
  CHECK(row(-5) == T{{0, 0, -1}, {0, 1, 0}, {-1, 0, 0}});
  CHECK(row(-6) == T{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
}

TEST_CASE("single vertex frame inverts at the first step") {
  auto pair = parse_pair("A1xA1");
  auto frame = tropical_frame(pair, 0, 2);
  CHECK(frame.at(0, 1) == frame.at(0, 0).inverse());
}

TEST_CASE("time neighbors of matching parity are inverse to each other") {
  for (const char* spec : {"A1xA2", "A2xA2", "A3xA2"}) {
    auto pair = parse_pair(spec);
    auto frame = tropical_frame(pair, -4, pair.full_period());
    for (int u = -4; u < pair.full_period(); ++u)
      for (int v = 0; v < pair.size(); ++v)
        if (parity(pair.epsilon(v), u) > 0)
          CHECK(frame.at(v, u + 1) == frame.at(v, u).inverse());
    auto assignment = random_assignment(pair.size(), 99);
    auto numeric = numeric_frame(pair, assignment, -4, pair.full_period());
    for (int u = -4; u < pair.full_period(); ++u)
      for (int v = 0; v < pair.size(); ++v)
        if (parity(pair.epsilon(v), u) > 0)
          CHECK(numeric.at(v, u + 1) ==
                doctest::Approx(1.0 / numeric.at(v, u)).epsilon(1e-12));
  }
}

TEST_CASE("tropical projection of the symbolic frame matches the tropical frame") {
  for (const char* spec : {"A1xA2", "A2xA1", "A2xA2", "A3xA2"}) {
    auto pair = parse_pair(spec);
    const int hi = pair.full_period();
    auto sym = rational_frame(pair, -2, hi);
    auto trop = tropical_frame(pair, -2, hi);
    for (int u = -2; u <= hi; ++u)
      for (int v = 0; v < pair.size(); ++v)
        CHECK(sym.at(v, u).tropical() == trop.at(v, u));
  }
}

TEST_CASE("symbolic budget gate names the override") {
  auto pair = parse_pair("E6xA2");
  CHECK_THROWS_WITH_AS(rational_frame(pair, 0, 4),
                       doctest::Contains("--budget-rr"), budget_error);
}

TEST_CASE("incidence matrices") {
  auto p12 = parse_pair("A1xA2");
  auto m12 = incidence_matrices(p12);
  CHECK(m12.m(0, 1) == 0);
  CHECK(m12.mp(0, 1) == 1);
  auto p21 = parse_pair("A2xA1");
  auto m21 = incidence_matrices(p21);
  CHECK(m21.m(0, 1) == 1);
  CHECK(m21.mp(0, 1) == 0);
  for (const char* spec : {"A3xA2", "D4xA3"}) {
    auto pair = parse_pair(spec);
    auto inc = incidence_matrices(pair);
    for (int i = 0; i < pair.size(); ++i)
      for (int j = 0; j < pair.size(); ++j) {
        CHECK(inc.m(i, j) == inc.m(j, i));
        CHECK(inc.mp(i, j) == inc.mp(j, i));
      }
  }
}

TEST_CASE("F-polynomials of the single vertex pair") {
  auto pair = parse_pair("A1xA1");
  auto fam = f_polynomials(pair, -3, 9);
  const auto& f1 = fam.at(0, 1);
  auto expected = poly::Polynomial::variable(1, 0) + poly::Polynomial::constant(1, 1);
  CHECK(f1 == expected);
  CHECK(fam.at(0, 0).is_one());
  CHECK(fam.at(0, 2) == expected);
  CHECK(fam.at(0, 3).is_one());
  // interning collapses equal polynomials across (v,u)
  CHECK(fam.atom_id(0, 1) == fam.atom_id(0, 2));
  CHECK(fam.atom_id(0, 0) == -1);
}

TEST_CASE("F-polynomial family properties over the symbolic budget") {
  for (const char* spec : {"A1xA2", "A2xA2", "A3xA2", "A5xA1", "D4xA1"}) {
    auto pair = parse_pair(spec);
    const int period = pair.full_period();
    auto fam = f_polynomials(pair, -2, 2 * period);
    for (int u = -2; u <= 2 * period; ++u)
      for (int v = 0; v < pair.size(); ++v) {
        CHECK(fam.at(v, u).constant_term() == 1);
        CHECK(fam.at(v, u).nonnegative());
        if (u > -2 && parity(pair.epsilon(v), u) > 0)
          CHECK(fam.at(v, u) == fam.at(v, u - 1));
        if (u + period <= 2 * period) CHECK(fam.at(v, u + period) == fam.at(v, u));
      }
  }
}

TEST_CASE("tropical periodicity reports") {
  auto r12 = verify_periodicity_tropical(parse_pair("A1xA2"));
  CHECK(r12.ok());
  CHECK(r12.full_period == 10);
  CHECK(r12.half_period == 5);
  CHECK(verify_periodicity_tropical(parse_pair("A1xA1")).ok());
  auto r32 = verify_periodicity_tropical(parse_pair("A3xA2"));
  CHECK(r32.ok());
  CHECK(r32.full_period == 14);
}

TEST_CASE("numeric periodicity over random assignments") {
  for (const char* spec : {"A1xA2", "A2xA2", "A3xA1"}) {
    auto r = verify_periodicity_numeric(parse_pair(spec), 5, 424242);
    CHECK(r.ok());
    CHECK(r.max_rel_err < 1e-9);
  }
}

TEST_CASE("functional relations hold on numeric and symbolic frames") {
  auto pair = parse_pair("A2xA1");
  auto assignment = random_assignment(pair.size(), 7);
  auto frame = numeric_frame(pair, assignment, -3, 8);
  auto report = verify_y_system(frame);
  CHECK(report.ok());
  CHECK(report.max_residual < 1e-9);
  CHECK(report.checked > 0);

  auto sym = rational_frame(parse_pair("A1xA2"), -3, 8);
  CHECK(verify_y_system(sym).ok());

  auto trop = tropical_frame(parse_pair("A3xA2"), -3, 8);
  CHECK(verify_y_system(trop).ok());
}

TEST_CASE("cluster exchange in the universal semifield") {
  // Shared variable context: index 0 is the coefficient, index 1 the
  // cluster variable.
  auto pair = parse_pair("A1xA1");
  auto b = square_product(pair);
  RationalBackend backend(2);
  auto y = std::vector<semifield::PosRational>{backend.generator(0)};
  auto x = std::vector<semifield::PosRational>{backend.generator(1)};
  auto out = mutate_cluster(b, x, y, 0);
  // (y+1)/((1+y) x) collapses to 1/x
  CHECK(rat_equal(out[0], x[0].inverse()));
  auto y_after = mutate_coefficients(backend, b, y, 0);
  auto back = mutate_cluster(mutate_matrix(b, 0), out, y_after, 0);
  CHECK(rat_equal(back[0], x[0]));
}

TEST_CASE("cluster exchange over the positive reals") {
  auto pair = parse_pair("A2xA1");
  auto b = square_product(pair);
  std::vector<double> x = {1.5, 0.7}, y = {2.0, 3.0};
  auto out = mutate_cluster(b, x, y, 0);
  // x'_0 = (y_0 * x_1^{B_{10}} + 1)/((1+y_0) x_0) with B_{10} = 1
  CHECK(out[0] == doctest::Approx((2.0 * 0.7 + 1.0) / (3.0 * 1.5)));
  CHECK(out[1] == doctest::Approx(0.7));
  auto y_after = mutate_coefficients(NumericBackend{2}, b, y, 0);
  auto back = mutate_cluster(mutate_matrix(b, 0), out, y_after, 0);
  CHECK(back[0] == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("random assignments are reproducible and in range") {
  auto a = random_assignment(6, 123);
  auto b = random_assignment(6, 123);
  CHECK(a.values == b.values);
  auto c = random_assignment(6, 124);
  CHECK(a.values != c.values);
  for (double v : a.values) {
    CHECK(v >= 0.05);
    CHECK(v <= 20.0);
  }
}

TEST_CASE("frame JSON export shape") {
  auto pair = parse_pair("A1xA2");
  auto frame = tropical_frame(pair, 0, 1);
  auto j = frame_to_json(frame);
  CHECK(j["pair"] == "A1xA2");
  CHECK(j["backend"] == "tropical");
  CHECK(j["u_range"] == nlohmann::json({0, 1}));
  REQUIRE(j["entries"].size() == 4);
  CHECK(j["entries"][0]["i"] == 1);
  CHECK(j["entries"][0]["value"] == nlohmann::json({{"y_(1,1)", 1}}));
}

TEST_CASE("assignments parse from JSON maps and arrays") {
  auto pair = parse_pair("A1xA2");
  nlohmann::json m = {{"y_(1,1)", 2.0}, {"y_(1,2)", 3.0}};
  auto a = assignment_from_json(pair, m);
  CHECK(a.values == std::vector<double>{2.0, 3.0});
  auto b = assignment_from_json(pair, nlohmann::json::array({4.0, 5.0}));
  CHECK(b.values == std::vector<double>{4.0, 5.0});
  nlohmann::json missing = {{"y_(1,1)", 2.0}};
  CHECK_THROWS_AS(assignment_from_json(pair, missing), domain_error);
}
