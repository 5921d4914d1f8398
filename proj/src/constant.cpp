#include "ysys/constant.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ysys/cluster.hpp"
#include "ysys/dilog.hpp"
#include "ysys/errors.hpp"

namespace ysys::constant {

namespace {

constexpr double pi = std::numbers::pi;

/// Right-hand side of the defining relation at (a, m), with the two
/// boundary factors literally omitted.
double relation_rhs(const LevelSystem& s, int a, int m) {
  double num = 1.0;
  for (int b = 0; b < s.diagram.rank; ++b)
    if (s.diagram.adjacency[a][b]) num *= 1.0 + s.y[b][m];
  double den = 1.0;
  if (m > 0) den *= 1.0 + 1.0 / s.y[a][m - 1];
  if (m + 1 < s.level - 1) den *= 1.0 + 1.0 / s.y[a][m + 1];
  return num / den;
}

}  // namespace

double system_residual(const LevelSystem& s) {
  double worst = 0.0;
  for (int a = 0; a < s.diagram.rank; ++a)
    for (int m = 0; m < s.level - 1; ++m) {
      const double lhs = s.y[a][m] * s.y[a][m];
      worst = std::max(worst, std::abs(lhs / relation_rhs(s, a, m) - 1.0));
    }
  return worst;
}

LevelSystem solve_constant_from(const dynkin::DynkinDiagram& diagram, int level,
                                std::vector<std::vector<double>> start,
                                double tol, int max_iter) {
  if (level < 2) throw domain_error("level must be at least 2");
  if (tol <= 0) throw domain_error("tolerance must be positive");
  LevelSystem s;
  s.diagram = diagram;
  s.level = level;
  s.y = std::move(start);
  if (static_cast<int>(s.y.size()) != diagram.rank)
    throw domain_error("start has the wrong shape");
  for (const auto& row : s.y)
    if (static_cast<int>(row.size()) != level - 1)
      throw domain_error("start has the wrong shape");

  double lambda = 0.5;
  double last_residual = system_residual(s);
  for (s.iterations = 0; s.iterations < max_iter; ++s.iterations) {
    if (last_residual < tol) {
      s.residual = last_residual;
      return s;
    }
    auto next = s.y;
    for (int a = 0; a < diagram.rank; ++a)
      for (int m = 0; m < level - 1; ++m) {
        const double g = std::sqrt(relation_rhs(s, a, m));
        next[a][m] = (1.0 - lambda) * s.y[a][m] + lambda * g;
        if (!(next[a][m] > 0.0) || !std::isfinite(next[a][m]))
          throw numeric_error("fixed-point iterate left the positive range");
      }
    s.y = std::move(next);
    const double residual = system_residual(s);
    if (residual >= last_residual && lambda > 1e-3) lambda *= 0.5;
    last_residual = residual;
  }
  throw numeric_error("constant solver did not converge within " +
                      std::to_string(max_iter) +
                      " iterations; last residual " +
                      std::to_string(last_residual));
}

LevelSystem solve_constant(const dynkin::DynkinDiagram& diagram, int level,
                           double tol, int max_iter) {
  if (level < 2) throw domain_error("level must be at least 2");
  std::vector<std::vector<double>> ones(
      diagram.rank, std::vector<double>(static_cast<std::size_t>(level - 1), 1.0));
  return solve_constant_from(diagram, level, std::move(ones), tol, max_iter);
}

double rank1_closed_form(int level, int m) {
  if (m < 1 || m > level - 1) throw domain_error("m out of range");
  const double base = pi / (level + 2);
  const double s1 = std::sin(base);
  return s1 * s1 / (std::sin(m * base) * std::sin((m + 2) * base));
}

nlohmann::json to_json(const LevelSystem& s) {
  nlohmann::json values = nlohmann::json::array();
  for (int a = 0; a < s.diagram.rank; ++a)
    for (int m = 0; m < s.level - 1; ++m)
      values.push_back(nlohmann::json{{"a", a + 1}, {"m", m + 1},
                                      {"value", s.y[a][m]}});
  return nlohmann::json{{"type", s.diagram.label()},
                        {"level", s.level},
                        {"Y", values},
                        {"residual", s.residual},
                        {"iterations", s.iterations}};
}

LevelIdentityReport verify_level_identity(const LevelSystem& s, double tol) {
  LevelIdentityReport r;
  r.type = s.diagram.label();
  r.level = s.level;
  r.residual = s.residual;
  r.tol = tol;
  double sum = 0.0;
  for (int a = 0; a < s.diagram.rank; ++a)
    for (int m = 0; m < s.level - 1; ++m)
      sum += dilog::rogers_l(s.y[a][m] / (1.0 + s.y[a][m]));
  r.lhs = sum * 6.0 / (pi * pi);
  const double h = s.diagram.coxeter_number;
  const double rank = s.diagram.rank;
  r.rhs = s.level * s.diagram.dim_g() / (h + s.level) - rank;
  r.rhs_alt = (s.level - 1) * rank * h / (h + s.level);
  return r;
}

nlohmann::json to_json(const LevelIdentityReport& r) {
  return nlohmann::json{{"type", r.type},          {"level", r.level},
                        {"identity_lhs", r.lhs},   {"identity_rhs", r.rhs},
                        {"identity_rhs_alt", r.rhs_alt},
                        {"residual", r.residual},  {"tol", r.tol},
                        {"ok", r.ok()}};
}

nlohmann::json to_json(const BridgeReport& r) {
  return nlohmann::json{{"type", r.type},
                        {"level", r.level},
                        {"max_relation_residual", r.max_relation_residual},
                        {"functional_sum", r.functional_sum},
                        {"functional_expected", r.functional_expected},
                        {"relations_ok", r.relations_ok},
                        {"sum_ok", r.sum_ok},
                        {"ok", r.ok()}};
}

BridgeReport constant_frame_bridge(const LevelSystem& s, double relation_tol,
                                   double sum_tol) {
  BridgeReport r;
  r.type = s.diagram.label();
  r.level = s.level;
  r.tol = relation_tol;
  auto pair = cluster::make_diagram_pair(
      s.diagram, dynkin::build_diagram(dynkin::Family::A, s.level - 1));

  // The constant values solve the functional system with the second
  // index read as the level index; the boundary omission matches the
  // chain diagram's missing neighbors.
  for (int i = 0; i < pair.left.rank; ++i) {
    for (int ip = 0; ip < pair.right.rank; ++ip) {
      const double lhs = s.y[i][ip] * s.y[i][ip];
      double num = 1.0;
      for (int j = 0; j < pair.left.rank; ++j)
        if (pair.left.adjacency[i][j]) num *= 1.0 + s.y[j][ip];
      double den = 1.0;
      for (int jp = 0; jp < pair.right.rank; ++jp)
        if (pair.right.adjacency[ip][jp]) den *= 1.0 + 1.0 / s.y[i][jp];
      r.max_relation_residual = std::max(
          r.max_relation_residual, std::abs(lhs * den / num - 1.0));
    }
  }
  r.relations_ok = r.max_relation_residual < relation_tol;

  double inner = 0.0;
  for (int i = 0; i < pair.left.rank; ++i)
    for (int ip = 0; ip < pair.right.rank; ++ip)
      inner += dilog::rogers_l(s.y[i][ip] / (1.0 + s.y[i][ip]));
  r.functional_sum = pair.full_period() * inner * 6.0 / (pi * pi);
  r.functional_expected = 2.0 * pair.h() * pair.left.rank * pair.right.rank;
  r.sum_ok = std::abs(r.functional_sum - r.functional_expected) < sum_tol;
  return r;
}

}  // namespace ysys::constant
