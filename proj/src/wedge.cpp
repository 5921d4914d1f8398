#include "ysys/wedge.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>

#include "ysys/dilog.hpp"
#include "ysys/errors.hpp"

namespace ysys::wedge {

std::string WedgeContext::atom_name(int atom) const {
  if (atom < pair.size()) return pair.variable_names()[atom];
  return "F#" + std::to_string(atom - pair.size());
}

WedgeContext make_wedge_context(const cluster::DiagramPair& pair,
                                par::Exec exec) {
  const int period = pair.full_period();
  auto trop = cluster::tropical_frame(pair, -1, period + 1, exec);
  auto fpolys = cluster::f_polynomials(pair, trop, -1, period + 1);
  return WedgeContext{pair, std::move(trop), std::move(fpolys)};
}

namespace {

void require_plus_parity(const cluster::DiagramPair& pair, int v, int u) {
  if (cluster::parity(pair.epsilon(v), u) <= 0)
    throw domain_error("factorization is defined at plus-parity points only");
}

void push(FactorList& f, int atom, int exponent) {
  if (atom < 0 || exponent == 0) return;
  auto [it, inserted] = f.try_emplace(atom, exponent);
  if (!inserted) {
    it->second += exponent;
    if (it->second == 0) f.erase(it);
  }
}

}  // namespace

FactorList factorize_y(const WedgeContext& ctx, int v, int u) {
  require_plus_parity(ctx.pair, v, u);
  FactorList f;
  const auto& e = ctx.trop.at(v, u).exponents;
  for (int w = 0; w < ctx.pair.size(); ++w) push(f, w, e[w]);
  const auto& inc = ctx.fpolys.incidence();
  for (int j = 0; j < ctx.pair.size(); ++j) {
    if (inc.m(j, v)) push(f, ctx.f_atom(j, u), 1);
    if (inc.mp(j, v)) push(f, ctx.f_atom(j, u), -1);
  }
  return f;
}

FactorList factorize_one_plus_y(const WedgeContext& ctx, int v, int u) {
  require_plus_parity(ctx.pair, v, u);
  FactorList f;
  const auto& e = ctx.trop.at(v, u).exponents;
  for (int w = 0; w < ctx.pair.size(); ++w) push(f, w, std::min(e[w], 0));
  push(f, ctx.f_atom(v, u - 1), 1);
  push(f, ctx.f_atom(v, u + 1), 1);
  const auto& inc = ctx.fpolys.incidence();
  for (int j = 0; j < ctx.pair.size(); ++j)
    if (inc.mp(j, v)) push(f, ctx.f_atom(j, u), -1);
  return f;
}

std::pair<poly::Polynomial, poly::Polynomial> expand_factors(
    const WedgeContext& ctx, const FactorList& f) {
  const int n = ctx.pair.size();
  poly::Polynomial num = poly::Polynomial::constant(n, 1);
  poly::Polynomial den = poly::Polynomial::constant(n, 1);
  poly::Exponents num_mono(n, 0), den_mono(n, 0);
  for (const auto& [atom, e] : f) {
    if (ctx.is_var_atom(atom)) {
      (e > 0 ? num_mono[atom] : den_mono[atom]) += std::abs(e);
      continue;
    }
    const auto& p = ctx.fpolys.atom_polynomial(atom - n);
    poly::Polynomial& side = e > 0 ? num : den;
    for (int k = 0; k < std::abs(e); ++k) side = side * p;
  }
  return {num.shifted(num_mono), den.shifted(den_mono)};
}

double evaluate_factors(const WedgeContext& ctx, const FactorList& f,
                        const semifield::PosRealAssignment& assignment) {
  double out = 1.0;
  for (const auto& [atom, e] : f) {
    const double base =
        ctx.is_var_atom(atom)
            ? assignment.values[atom]
            : ctx.fpolys.atom_polynomial(atom - ctx.pair.size())
                  .evaluate(assignment.values);
    out *= std::pow(base, e);
  }
  return out;
}

void WedgeSum::add(int a, int b, long long c) {
  if (a == b || c == 0) return;
  if (a > b) {
    std::swap(a, b);
    c = -c;
  }
  auto [it, inserted] = coef_.try_emplace({a, b}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) coef_.erase(it);
  }
}

void WedgeSum::add_product(const FactorList& g, const FactorList& h, int scale) {
  for (const auto& [a, ea] : g)
    for (const auto& [b, eb] : h)
      add(a, b, static_cast<long long>(ea) * eb * scale);
}

WedgeSum& WedgeSum::operator+=(const WedgeSum& rhs) {
  for (const auto& [key, c] : rhs.coef_) add(key.first, key.second, c);
  return *this;
}

WedgeSum& WedgeSum::operator-=(const WedgeSum& rhs) {
  for (const auto& [key, c] : rhs.coef_) add(key.first, key.second, -c);
  return *this;
}

bool WedgeReport::ok() const {
  if (!total_zero || !tropical_zero || !symmetric_zero) return false;
  if (!mixed_sum_zero || !decomposition_consistent) return false;
  return std::all_of(std::begin(mixed_ok), std::end(mixed_ok),
                     [](bool b) { return b; });
}

nlohmann::json to_json(const WedgeReport& r) {
  nlohmann::json blocks{{"tropical", r.tropical_zero},
                        {"symmetric", r.symmetric_zero}};
  for (int k = 0; k < 5; ++k)
    blocks["mixed_" + std::to_string(k + 1)] = r.mixed_ok[k];
  return nlohmann::json{{"pair", r.pair},
                        {"total_zero", r.total_zero},
                        {"blocks", blocks},
                        {"mixed_sum_zero", r.mixed_sum_zero},
                        {"decomposition_consistent", r.decomposition_consistent},
                        {"surviving_pairs", r.surviving_pairs},
                        {"ok", r.ok()}};
}

namespace {

/// Sub-lists of the two factorizations used by the cancellation blocks.
struct TermParts {
  FactorList trop_y;        // variable atoms of the first factor
  FactorList trop_one_plus; // variable atoms of the second factor
  FactorList f_y;           // F atoms of the first factor
  FactorList f_one_plus;    // F atoms of the second factor
  FactorList m_col;         // F_j(u) over vertical neighbors
  FactorList mp_col;        // F_j(u) over horizontal neighbors
  FactorList f_prev, f_next;
};

TermParts term_parts(const WedgeContext& ctx, int v, int u) {
  TermParts t;
  const auto y = factorize_y(ctx, v, u);
  const auto p = factorize_one_plus_y(ctx, v, u);
  for (const auto& [atom, e] : y)
    push(ctx.is_var_atom(atom) ? t.trop_y : t.f_y, atom, e);
  for (const auto& [atom, e] : p)
    push(ctx.is_var_atom(atom) ? t.trop_one_plus : t.f_one_plus, atom, e);
  const auto& inc = ctx.fpolys.incidence();
  for (int j = 0; j < ctx.pair.size(); ++j) {
    if (inc.m(j, v)) push(t.m_col, ctx.f_atom(j, u), 1);
    if (inc.mp(j, v)) push(t.mp_col, ctx.f_atom(j, u), 1);
  }
  push(t.f_prev, ctx.f_atom(v, u - 1), 1);
  push(t.f_next, ctx.f_atom(v, u + 1), 1);
  return t;
}

FactorList trop_list(const WedgeContext& ctx, int v, int u) {
  FactorList f;
  const auto& e = ctx.trop.at(v, u).exponents;
  for (int w = 0; w < ctx.pair.size(); ++w) push(f, w, e[w]);
  return f;
}

FactorList trop_one_plus_list(const WedgeContext& ctx, int v, int u) {
  FactorList f;
  const auto& e = ctx.trop.at(v, u).exponents;
  for (int w = 0; w < ctx.pair.size(); ++w) push(f, w, std::min(e[w], 0));
  return f;
}

}  // namespace

WedgeReport wedge_vanishing(const cluster::DiagramPair& pair, int budget_rr,
                            par::Exec exec) {
  const int rr = pair.left.rank * pair.right.rank;
  if (rr > budget_rr)
    throw budget_error("wedge expansion for " + pair.label() + " needs rr'=" +
                       std::to_string(rr) + " > budget " +
                       std::to_string(budget_rr) +
                       "; raise --budget-rr or YSYSLAB_BUDGET_RR to override");
  WedgeReport report;
  report.pair = pair.label();
  const auto ctx = make_wedge_context(pair, exec);
  const auto plus_points = dilog::domain_points(pair, dilog::Domain::s_plus);
  const auto minus_points = dilog::domain_points(pair, dilog::Domain::s_minus);

  // Per-point partial sums, merged in a fixed order afterwards.
  struct Partial {
    WedgeSum total, tropical, symmetric;
    WedgeSum mixed_lhs[5];
  };
  std::vector<Partial> partials(plus_points.size());
  par::for_range_dynamic(plus_points.size(), exec, [&](std::size_t k) {
    const auto [v, u] = plus_points[k];
    Partial& p = partials[k];
    const auto t = term_parts(ctx, v, u);
    p.total.add_product(factorize_y(ctx, v, u), factorize_one_plus_y(ctx, v, u));
    p.tropical.add_product(t.trop_y, t.trop_one_plus);
    p.symmetric.add_product(t.f_y, t.f_one_plus);
    p.mixed_lhs[0].add_product(t.trop_y, t.f_prev);
    p.mixed_lhs[1].add_product(t.trop_y, t.f_next);
    p.mixed_lhs[2].add_product(t.trop_y, t.mp_col, -1);
    p.mixed_lhs[3].add_product(t.trop_one_plus, t.m_col, -1);
    p.mixed_lhs[4].add_product(t.trop_one_plus, t.mp_col, +1);
  });
  WedgeSum total, tropical, symmetric;
  WedgeSum mixed_lhs[5];
  for (const auto& p : partials) {
    total += p.total;
    tropical += p.tropical;
    symmetric += p.symmetric;
    for (int m = 0; m < 5; ++m) mixed_lhs[m] += p.mixed_lhs[m];
  }

  // Minus-domain forms of the five mixed identities.
  WedgeSum mixed_rhs[5];
  const auto& inc = ctx.fpolys.incidence();
  for (const auto& [v, u] : minus_points) {
    FactorList f_here;
    push(f_here, ctx.f_atom(v, u), 1);
    mixed_rhs[0].add_product(trop_list(ctx, v, u + 1), f_here);
    mixed_rhs[1].add_product(trop_list(ctx, v, u - 1), f_here);
    FactorList y_neighbors, edge_m, edge_mp;
    for (int j = 0; j < pair.size(); ++j) {
      if (inc.mp(j, v))
        for (const auto& [atom, e] : trop_list(ctx, j, u))
          push(y_neighbors, atom, -e);
      if (inc.m(j, v))
        for (const auto& [atom, e] : trop_one_plus_list(ctx, j, u))
          push(edge_m, atom, -e);
      if (inc.mp(j, v))
        for (const auto& [atom, e] : trop_one_plus_list(ctx, j, u))
          push(edge_mp, atom, e);
    }
    mixed_rhs[2].add_product(y_neighbors, f_here);
    mixed_rhs[3].add_product(edge_m, f_here);
    mixed_rhs[4].add_product(edge_mp, f_here);
  }

  report.total_zero = total.is_zero();
  report.tropical_zero = tropical.is_zero();
  report.symmetric_zero = symmetric.is_zero();
  WedgeSum mixed_total;
  for (int m = 0; m < 5; ++m) {
    WedgeSum diff = mixed_lhs[m];
    diff -= mixed_rhs[m];
    report.mixed_ok[m] = diff.is_zero();
    mixed_total += mixed_rhs[m];
  }
  report.mixed_sum_zero = mixed_total.is_zero();

  WedgeSum recombined = tropical;
  recombined += symmetric;
  for (int m = 0; m < 5; ++m) recombined += mixed_lhs[m];
  report.decomposition_consistent = recombined == total;

  for (const auto& [key, c] : total.coefficients())
    report.surviving_pairs.push_back(ctx.atom_name(key.first) + "^" +
                                     ctx.atom_name(key.second) + ":" +
                                     std::to_string(c));
  return report;
}

nlohmann::json to_json(const FactorizationReport& r) {
  nlohmann::json j{{"pair", r.pair},
                   {"checked", r.checked},
                   {"numeric_max_err", r.numeric_max_err},
                   {"ok", r.ok()}};
  j["witnesses"] = nlohmann::json::array();
  for (const auto& w : r.witnesses) j["witnesses"].push_back(cluster::to_json(w));
  return j;
}

FactorizationReport verify_factorizations(const cluster::DiagramPair& pair,
                                          int budget_rr, std::uint64_t seed,
                                          par::Exec exec) {
  FactorizationReport report;
  report.pair = pair.label();
  const auto ctx = make_wedge_context(pair, exec);
  const int period = pair.full_period();
  auto sym = cluster::rational_frame(pair, -1, period, budget_rr, exec);
  auto assignment = cluster::random_assignment(pair.size(), seed);
  auto numeric = cluster::numeric_frame(pair, assignment, -1, period, exec);

  const auto points = dilog::domain_points(pair, dilog::Domain::s_plus);
  std::vector<cluster::Witness> witnesses(points.size());
  std::vector<char> bad(points.size(), 0);
  std::vector<double> errs(points.size(), 0.0);
  par::for_range_dynamic(points.size(), exec, [&](std::size_t k) {
    const auto [v, u] = points[k];
    auto [i, ip] = pair.unflat(v);
    const auto fy = factorize_y(ctx, v, u);
    const auto fp = factorize_one_plus_y(ctx, v, u);
    auto [ny, dy] = expand_factors(ctx, fy);
    auto [sy_n, sy_d] = sym.at(v, u).expand();
    if (!semifield::rat_equal(ny, dy, sy_n, sy_d)) {
      bad[k] = 1;
      witnesses[k] = cluster::Witness{i + 1, ip + 1, u,
          "product form disagrees with the frame"};
      return;
    }
    auto [np, dp] = expand_factors(ctx, fp);
    auto [sp_n, sp_d] = sym.at(v, u).one_plus().expand();
    if (!semifield::rat_equal(np, dp, sp_n, sp_d)) {
      bad[k] = 1;
      witnesses[k] = cluster::Witness{i + 1, ip + 1, u,
          "shifted product form disagrees with the frame"};
      return;
    }
    const double want = 1.0 + numeric.at(v, u);
    errs[k] = std::abs(evaluate_factors(ctx, fp, assignment) / want - 1.0);
  });
  report.checked = static_cast<int>(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (bad[k]) report.witnesses.push_back(witnesses[k]);
    report.numeric_max_err = std::max(report.numeric_max_err, errs[k]);
    if (errs[k] > 1e-10) {
      const auto [v, u] = points[k];
      auto [i, ip] = pair.unflat(v);
      report.witnesses.push_back(
          {i + 1, ip + 1, u, "numeric evaluation off by " + std::to_string(errs[k])});
    }
  }
  return report;
}

}  // namespace ysys::wedge
