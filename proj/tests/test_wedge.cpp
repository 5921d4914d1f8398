#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <random>

#include "ysys/errors.hpp"
#include "ysys/wedge.hpp"

using namespace ysys;
using cluster::parse_pair;

TEST_CASE("factor lists of the single vertex pair") {
  auto ctx = wedge::make_wedge_context(parse_pair("A1xA1"));
  // slice 0: the coefficient itself
  CHECK(wedge::factorize_y(ctx, 0, 0) == wedge::FactorList{{0, 1}});
  // slice 2: its inverse
  CHECK(wedge::factorize_y(ctx, 0, 2) == wedge::FactorList{{0, -1}});
  // 1 + y at slice 0 is a single F atom
  auto p0 = wedge::factorize_one_plus_y(ctx, 0, 0);
  REQUIRE(p0.size() == 1);
  const int f_atom = p0.begin()->first;
  CHECK_FALSE(ctx.is_var_atom(f_atom));
  CHECK(p0.begin()->second == 1);
  // 1 + y^-1 at slice 2 is y^-1 times the same F atom
  auto p2 = wedge::factorize_one_plus_y(ctx, 0, 2);
  CHECK(p2 == wedge::FactorList{{0, -1}, {f_atom, 1}});
  CHECK_THROWS_AS(wedge::factorize_y(ctx, 0, 1), domain_error);
}

TEST_CASE("factor lists multiply back to the frame entries") {
  for (const char* spec : {"A1xA2", "A2xA1", "A2xA2", "A3xA2"}) {
    auto report = wedge::verify_factorizations(parse_pair(spec));
    CHECK(report.ok());
    CHECK(report.checked > 0);
    CHECK(report.numeric_max_err < 1e-10);
  }
}

TEST_CASE("wedge sum antisymmetry is structural") {
  wedge::WedgeSum s;
  s.add(3, 3, 5);
  CHECK(s.is_zero());
  s.add(1, 2, 4);
  s.add(2, 1, 4);
  CHECK(s.is_zero());
  wedge::FactorList g{{0, 2}, {1, -1}};
  wedge::FactorList h{{0, 1}, {2, 3}};
  wedge::WedgeSum gh, hg;
  gh.add_product(g, h);
  hg.add_product(h, g, -1);
  CHECK(gh == hg);
  wedge::WedgeSum self;
  self.add_product(g, g);
  CHECK(self.is_zero());
}

TEST_CASE("vanishing for the minimum pair set") {
  for (const char* spec :
       {"A1xA1", "A2xA1", "A1xA2", "A3xA1", "A2xA2", "A3xA2"}) {
    auto report = wedge::wedge_vanishing(parse_pair(spec));
    CHECK(report.ok());
    CHECK(report.total_zero);
    CHECK(report.tropical_zero);
    CHECK(report.symmetric_zero);
    for (bool b : report.mixed_ok) CHECK(b);
    CHECK(report.mixed_sum_zero);
    CHECK(report.decomposition_consistent);
    CHECK(report.surviving_pairs.empty());
  }
}

TEST_CASE("vanishing agrees across the duality swap") {
  auto a = wedge::wedge_vanishing(parse_pair("A1xA2"));
  auto b = wedge::wedge_vanishing(parse_pair("A2xA1"));
  CHECK(a.total_zero == b.total_zero);
  CHECK(a.ok());
  CHECK(b.ok());
}

TEST_CASE("expansion order does not matter") {
  auto pair = parse_pair("A2xA2");
  auto ctx = wedge::make_wedge_context(pair);
  std::vector<std::pair<int, int>> points;
  for (int v = 0; v < pair.size(); ++v)
    for (int u = 0; u < pair.full_period(); ++u)
      if (cluster::parity(pair.epsilon(v), u) > 0) points.emplace_back(v, u);
  wedge::WedgeSum forward, shuffled;
  for (const auto& [v, u] : points)
    forward.add_product(wedge::factorize_y(ctx, v, u),
                        wedge::factorize_one_plus_y(ctx, v, u));
  std::mt19937_64 rng(31);
  std::shuffle(points.begin(), points.end(), rng);
  for (const auto& [v, u] : points)
    shuffled.add_product(wedge::factorize_y(ctx, v, u),
                         wedge::factorize_one_plus_y(ctx, v, u));
  CHECK(forward == shuffled);
  CHECK(forward.is_zero());
}

TEST_CASE("budget gate names the override flag") {
  CHECK_THROWS_WITH_AS(wedge::wedge_vanishing(parse_pair("A3xA3"), 6),
                       doctest::Contains("--budget-rr"), budget_error);
  CHECK(wedge::wedge_vanishing(parse_pair("A3xA3"), 9).ok());
}

TEST_CASE("report JSON shape") {
  auto j = wedge::to_json(wedge::wedge_vanishing(parse_pair("A1xA1")));
  CHECK(j["pair"] == "A1xA1");
  CHECK(j["total_zero"] == true);
  CHECK(j["blocks"]["tropical"] == true);
  CHECK(j["blocks"]["symmetric"] == true);
  CHECK(j["blocks"]["mixed_1"] == true);
  CHECK(j["blocks"]["mixed_5"] == true);
  CHECK(j["surviving_pairs"].empty());
}
