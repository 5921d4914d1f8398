#include "ysys/cluster.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace ysys::cluster {

std::vector<std::string> DiagramPair::variable_names() const {
  std::vector<std::string> names;
  names.reserve(size());
  for (int i = 0; i < left.rank; ++i)
    for (int ip = 0; ip < right.rank; ++ip)
      names.push_back("y_(" + std::to_string(i + 1) + "," +
                      std::to_string(ip + 1) + ")");
  return names;
}

DiagramPair make_diagram_pair(dynkin::DynkinDiagram left,
                              dynkin::DynkinDiagram right) {
  return DiagramPair{std::move(left), std::move(right)};
}

DiagramPair parse_pair(std::string_view spec) {
  auto split = spec.find_first_of("xX");
  if (split == std::string_view::npos || split == 0 || split + 1 >= spec.size())
    throw diagram_error("unparsable pair spec '" + std::string(spec) +
                        "' (expected e.g. A3xA2)");
  return make_diagram_pair(dynkin::parse_diagram(spec.substr(0, split)),
                           dynkin::parse_diagram(spec.substr(split + 1)));
}

bool ExchangeMatrix::is_skew_symmetric() const {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (at(i, j) != -at(j, i)) return false;
  return true;
}

bool ExchangeMatrix::is_bipartite() const {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (at(i, j) != 0 && parts[i] == parts[j]) return false;
  return true;
}

ExchangeMatrix square_product(const DiagramPair& pair) {
  const int n = pair.size();
  ExchangeMatrix b;
  b.n = n;
  b.entries.assign(static_cast<std::size_t>(n) * n, 0);
  b.parts.resize(n);
  for (int v = 0; v < n; ++v) b.parts[v] = pair.epsilon(v);
  for (int vi = 0; vi < n; ++vi) {
    auto [i, ip] = pair.unflat(vi);
    const int si = pair.left.part[i], sip = pair.right.part[ip];
    for (int vj = 0; vj < n; ++vj) {
      auto [j, jp] = pair.unflat(vj);
      const int sj = pair.left.part[j], sjp = pair.right.part[jp];
      int value = 0;
      if (ip == jp) {
        const int c = pair.left.cartan(i, j);
        if ((si < 0 && sip > 0 && sj > 0 && sjp > 0) ||
            (si > 0 && sip < 0 && sj < 0 && sjp < 0))
          value = -c;
        else if ((si > 0 && sip > 0 && sj < 0 && sjp > 0) ||
                 (si < 0 && sip < 0 && sj > 0 && sjp < 0))
          value = c;
      }
      if (i == j && value == 0) {
        const int cp = pair.right.cartan(ip, jp);
        if ((si > 0 && sip > 0 && sj > 0 && sjp < 0) ||
            (si < 0 && sip < 0 && sj < 0 && sjp > 0))
          value = -cp;
        else if ((si > 0 && sip < 0 && sj > 0 && sjp > 0) ||
                 (si < 0 && sip > 0 && sj < 0 && sjp < 0))
          value = cp;
      }
      if (vi == vj) value = 0;
      b.at(vi, vj) = value;
    }
  }
  if (!b.is_skew_symmetric() || !b.is_bipartite())
    throw invariant_error("square product matrix failed its structure checks");
  return b;
}

ExchangeMatrix mutate_matrix(ExchangeMatrix B, int k) {
  if (k < 0 || k >= B.n) throw domain_error("mutation vertex out of range");
  ExchangeMatrix out = B;
  for (int i = 0; i < B.n; ++i) {
    for (int j = 0; j < B.n; ++j) {
      if (i == k || j == k) {
        out.at(i, j) = -B.at(i, j);
      } else {
        const int bik = B.at(i, k), bkj = B.at(k, j);
        out.at(i, j) = B.at(i, j) + (std::abs(bik) * bkj + bik * std::abs(bkj)) / 2;
      }
    }
  }
  return out;
}

ExchangeMatrix mutate_matrix_part(ExchangeMatrix B, int part_sign) {
  for (int k = 0; k < B.n; ++k)
    if (B.parts[k] == part_sign) B = mutate_matrix(std::move(B), k);
  return B;
}

double NumericBackend::pow(Elem a, int k) { return std::pow(a, k); }

CoefficientFrame<TropicalBackend> tropical_frame(const DiagramPair& pair,
                                                 int u_min, int u_max,
                                                 par::Exec exec) {
  TropicalBackend backend{pair.size()};
  std::vector<semifield::TropMonomial> initial;
  initial.reserve(pair.size());
  for (int v = 0; v < pair.size(); ++v) initial.push_back(backend.generator(v));
  return build_frame(pair, backend, initial, u_min, u_max, exec);
}

CoefficientFrame<NumericBackend> numeric_frame(
    const DiagramPair& pair, const semifield::PosRealAssignment& assignment,
    int u_min, int u_max, par::Exec exec) {
  if (assignment.nvars() != pair.size())
    throw domain_error("assignment does not cover the index set");
  NumericBackend backend{pair.size()};
  return build_frame(pair, backend, assignment.values, u_min, u_max, exec);
}

CoefficientFrame<RationalBackend> rational_frame(const DiagramPair& pair,
                                                 int u_min, int u_max,
                                                 int budget_rr, par::Exec exec) {
  const int rr = pair.left.rank * pair.right.rank;
  if (rr > budget_rr)
    throw budget_error("symbolic frame for " + pair.label() + " needs rr'=" +
                       std::to_string(rr) + " > budget " +
                       std::to_string(budget_rr) +
                       "; raise --budget-rr or YSYSLAB_BUDGET_RR to override");
  const int window_cap = 2 * pair.full_period() + 4;
  if (u_max - u_min > window_cap)
    throw budget_error("symbolic window for " + pair.label() +
                       " exceeds two full periods");
  RationalBackend backend(pair.size());
  std::vector<semifield::PosRational> initial;
  initial.reserve(pair.size());
  for (int v = 0; v < pair.size(); ++v) initial.push_back(backend.generator(v));
  return build_frame(pair, backend, initial, u_min, u_max, exec);
}

IncidenceMatrices incidence_matrices(const DiagramPair& pair) {
  const int n = pair.size();
  IncidenceMatrices m;
  m.n = n;
  m.vertical.assign(static_cast<std::size_t>(n) * n, 0);
  m.horizontal.assign(static_cast<std::size_t>(n) * n, 0);
  for (int vi = 0; vi < n; ++vi) {
    auto [i, ip] = pair.unflat(vi);
    for (int vj = 0; vj < n; ++vj) {
      auto [j, jp] = pair.unflat(vj);
      if (ip == jp && pair.left.adjacency[i][j]) m.vertical[vi * n + vj] = 1;
      if (i == j && pair.right.adjacency[ip][jp]) m.horizontal[vi * n + vj] = 1;
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// F-polynomials

FPolyFamily::FPolyFamily(DiagramPair pair, int u_min, int u_max)
    : pair_(std::move(pair)),
      u_min_(u_min),
      u_max_(u_max),
      incidence_(incidence_matrices(pair_)),
      polys_(static_cast<std::size_t>(u_max - u_min) + 1),
      ids_(static_cast<std::size_t>(u_max - u_min) + 1) {}

const poly::Polynomial& FPolyFamily::at(int v, int u) const {
  if (u < u_min_ || u > u_max_) throw domain_error("F-polynomial slice out of range");
  return polys_[slot(u)].at(v);
}

int FPolyFamily::atom_id(int v, int u) const {
  if (u < u_min_ || u > u_max_) throw domain_error("F-polynomial slice out of range");
  return ids_[slot(u)].at(v);
}

int FPolyFamily::intern_atom(const poly::Polynomial& p) {
  if (p.is_one()) return -1;
  auto it = intern_.find(p);
  if (it != intern_.end()) return it->second;
  const int id = static_cast<int>(atom_polys_.size());
  intern_.emplace(p, id);
  atom_polys_.push_back(p);
  return id;
}

namespace {

/// Right-hand side of the three-term relation at an active point (v,u):
/// the two tropical coefficients are the positive and negative exponent
/// parts of the tropical value of y_v(u), so both summands are genuine
/// polynomials.
poly::Polynomial recurrence_rhs(const DiagramPair& pair,
                                const IncidenceMatrices& inc,
                                const CoefficientFrame<TropicalBackend>& trop,
                                const std::vector<poly::Polynomial>& slice,
                                int v, int u) {
  const int n = pair.size();
  const auto& e = trop.at(v, u).exponents;
  poly::Exponents pos(n, 0), neg(n, 0);
  for (int w = 0; w < n; ++w) {
    pos[w] = std::max(e[w], 0);
    neg[w] = std::max(-e[w], 0);
  }
  poly::Polynomial prod_m = poly::Polynomial::constant(n, 1);
  poly::Polynomial prod_mp = poly::Polynomial::constant(n, 1);
  for (int j = 0; j < n; ++j) {
    if (inc.m(j, v)) prod_m = prod_m * slice[j];
    if (inc.mp(j, v)) prod_mp = prod_mp * slice[j];
  }
  return prod_m.shifted(pos) + prod_mp.shifted(neg);
}

}  // namespace

FPolyFamily f_polynomials(const DiagramPair& pair,
                          const CoefficientFrame<TropicalBackend>& trop,
                          int u_min, int u_max) {
  if (u_min > 0 || u_max < 0)
    throw domain_error("F-polynomial range must contain u = 0");
  if (trop.u_min() > u_min || trop.u_max() < u_max)
    throw domain_error("tropical frame does not cover the requested range");
  const int n = pair.size();
  FPolyFamily fam(pair, u_min, u_max);
  auto& polys = fam.polys_;
  auto& ids = fam.ids_;
  const auto& inc = fam.incidence_;

  auto finish_slice = [&](int u) {
    ids[fam.slot(u)].resize(n);
    for (int v = 0; v < n; ++v) {
      const auto& p = polys[fam.slot(u)][v];
      if (p.constant_term() != 1)
        throw invariant_error("F-polynomial without constant term 1 at u=" +
                              std::to_string(u));
      if (!p.nonnegative())
        throw invariant_error("F-polynomial with a negative coefficient at u=" +
                              std::to_string(u));
      ids[fam.slot(u)][v] = fam.intern_atom(p);
    }
  };

  std::vector<poly::Polynomial> ones(n, poly::Polynomial::constant(n, 1));
  polys[fam.slot(0)] = ones;
  finish_slice(0);

  for (int u = 1; u <= u_max; ++u) {
    auto& slice = polys[fam.slot(u)];
    const auto& prev = polys[fam.slot(u - 1)];
    slice.reserve(n);
    for (int v = 0; v < n; ++v) {
      if (parity(pair.epsilon(v), u) > 0) {
        slice.push_back(prev[v]);  // passive parity copies the last slice
        continue;
      }
      auto rhs = recurrence_rhs(pair, inc, trop, prev, v, u - 1);
      auto q = poly::Polynomial::exact_div(rhs, prev[v]);
      if (!q)
        throw invariant_error("three-term recurrence division failed at u=" +
                              std::to_string(u));
      slice.push_back(std::move(*q));
    }
    finish_slice(u);
  }

  for (int u = -1; u >= u_min; --u) {
    auto& slice = polys[fam.slot(u)];
    const auto& next = polys[fam.slot(u + 1)];
    slice.assign(n, poly::Polynomial(n));
    for (int v = 0; v < n; ++v)
      if (parity(pair.epsilon(v), u + 1) > 0) slice[v] = next[v];
    for (int v = 0; v < n; ++v) {
      if (parity(pair.epsilon(v), u + 1) > 0) continue;
      // Here (v,u) has active parity; its edge neighbors in this slice
      // were just filled by the copy rule.
      auto rhs = recurrence_rhs(pair, inc, trop, slice, v, u);
      auto q = poly::Polynomial::exact_div(rhs, next[v]);
      if (!q)
        throw invariant_error("three-term recurrence division failed at u=" +
                              std::to_string(u));
      slice[v] = std::move(*q);
    }
    finish_slice(u);
  }
  return fam;
}

FPolyFamily f_polynomials(const DiagramPair& pair, int u_min, int u_max) {
  auto trop = tropical_frame(pair, u_min, u_max);
  return f_polynomials(pair, trop, u_min, u_max);
}

// ---------------------------------------------------------------------------
// Periodicity

nlohmann::json to_json(const Witness& w) {
  return nlohmann::json{{"i", w.i}, {"i_prime", w.i_prime}, {"u", w.u},
                        {"detail", w.detail}};
}

nlohmann::json to_json(const PeriodicityReport& r) {
  nlohmann::json j{{"pair", r.pair},          {"backend", r.backend},
                   {"full_period", r.full_period}, {"half_period", r.half_period},
                   {"full_ok", r.full_ok},    {"half_ok", r.half_ok},
                   {"samples", r.samples},    {"ok", r.ok()}};
  if (r.backend == "numeric") j["max_rel_err"] = r.max_rel_err;
  j["witnesses"] = nlohmann::json::array();
  for (const auto& w : r.witnesses) j["witnesses"].push_back(to_json(w));
  return j;
}

namespace {

template <class Frame, class Equal>
void check_periods(const Frame& frame, Equal&& equal, PeriodicityReport& report) {
  const auto& pair = frame.pair();
  const int full = pair.full_period();
  const int half = pair.half_period();
  for (int u = 0; u < full; ++u) {
    for (int v = 0; v < pair.size(); ++v) {
      if (!equal(frame.at(v, u + full), frame.at(v, u))) {
        report.full_ok = false;
        auto [i, ip] = pair.unflat(v);
        report.witnesses.push_back(
            {i + 1, ip + 1, u, "full period violated"});
      }
      if (u < half && !equal(frame.at(pair.omega_flat(v), u + half), frame.at(v, u))) {
        report.half_ok = false;
        auto [i, ip] = pair.unflat(v);
        report.witnesses.push_back(
            {i + 1, ip + 1, u, "half period violated"});
      }
    }
  }
}

}  // namespace

PeriodicityReport verify_periodicity_tropical(const DiagramPair& pair,
                                              par::Exec exec) {
  PeriodicityReport report;
  report.pair = pair.label();
  report.backend = "tropical";
  report.full_period = pair.full_period();
  report.half_period = pair.half_period();
  report.full_ok = report.half_ok = true;
  auto frame = tropical_frame(pair, 0, 2 * pair.full_period(), exec);
  check_periods(frame, [](const semifield::TropMonomial& a,
                          const semifield::TropMonomial& b) { return a == b; },
                report);
  return report;
}

PeriodicityReport verify_periodicity_numeric(const DiagramPair& pair, int trials,
                                             std::uint64_t seed, double tol,
                                             par::Exec exec) {
  PeriodicityReport report;
  report.pair = pair.label();
  report.backend = "numeric";
  report.full_period = pair.full_period();
  report.half_period = pair.half_period();
  report.full_ok = report.half_ok = true;
  report.samples = trials;
  for (int t = 0; t < trials; ++t) {
    auto assignment = random_assignment(pair.size(), seed + static_cast<std::uint64_t>(t));
    auto frame = numeric_frame(pair, assignment, 0, 2 * pair.full_period(), exec);
    auto equal = [&](double a, double b) {
      const double rel = std::abs(a / b - 1.0);
      report.max_rel_err = std::max(report.max_rel_err, rel);
      return rel < tol;
    };
    check_periods(frame, equal, report);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Y-system relations

nlohmann::json to_json(const YSystemReport& r) {
  nlohmann::json j{{"pair", r.pair},
                   {"backend", r.backend},
                   {"checked", r.checked},
                   {"ok", r.ok()}};
  if (r.backend == "numeric") j["max_residual"] = r.max_residual;
  j["witnesses"] = nlohmann::json::array();
  for (const auto& w : r.witnesses) j["witnesses"].push_back(to_json(w));
  return j;
}

template <class B>
YSystemReport verify_y_system(const CoefficientFrame<B>& frame, double tol) {
  using Elem = typename B::Elem;
  const auto& pair = frame.pair();
  const auto& backend = frame.backend();
  YSystemReport report;
  report.pair = pair.label();
  report.backend = B::name();
  for (int u = frame.u_min() + 1; u < frame.u_max(); ++u) {
    for (int v = 0; v < pair.size(); ++v) {
      auto [i, ip] = pair.unflat(v);
      // The family with the anchor's opposite parity is evaluated here:
      // at a P- anchor the plus family, inverted at a P+ anchor.
      const bool invert = parity(pair.epsilon(v), u) > 0;
      auto value = [&](int w, int uu) -> Elem {
        return invert ? B::inverse(frame.at(w, uu)) : frame.at(w, uu);
      };
      Elem lhs = B::mul(value(v, u - 1), value(v, u + 1));
      Elem num = backend.one();
      for (int j = 0; j < pair.left.rank; ++j)
        if (pair.left.adjacency[i][j])
          num = B::mul(num, backend.one_plus(value(pair.flat(j, ip), u)));
      Elem den = backend.one();
      for (int jp = 0; jp < pair.right.rank; ++jp)
        if (pair.right.adjacency[ip][jp])
          den = B::mul(den, backend.one_plus(B::inverse(value(pair.flat(i, jp), u))));
      ++report.checked;
      if constexpr (std::is_same_v<Elem, double>) {
        const double residual = std::abs(lhs * den / num - 1.0);
        report.max_residual = std::max(report.max_residual, residual);
        if (!(residual < tol))
          report.witnesses.push_back({i + 1, ip + 1, u,
                                      "residual " + std::to_string(residual)});
      } else {
        if (!B::equal(B::mul(lhs, den), num))
          report.witnesses.push_back({i + 1, ip + 1, u, "relation violated"});
      }
    }
  }
  return report;
}

template YSystemReport verify_y_system<TropicalBackend>(
    const CoefficientFrame<TropicalBackend>&, double);
template YSystemReport verify_y_system<RationalBackend>(
    const CoefficientFrame<RationalBackend>&, double);
template YSystemReport verify_y_system<NumericBackend>(
    const CoefficientFrame<NumericBackend>&, double);

// ---------------------------------------------------------------------------
// Cluster exchange

std::vector<semifield::PosRational> mutate_cluster(
    const ExchangeMatrix& m, const std::vector<semifield::PosRational>& x,
    const std::vector<semifield::PosRational>& y, int k) {
  if (k < 0 || k >= m.n) throw domain_error("mutation vertex out of range");
  auto out = x;
  semifield::PosRational pos = y[k];
  semifield::PosRational neg = semifield::PosRational::one(y[k].context());
  for (int j = 0; j < m.n; ++j) {
    const int b = m.at(j, k);
    if (b > 0) pos = pos * x[j].pow(b);
    if (b < 0) neg = neg * x[j].pow(-b);
  }
  out[k] = pos.add(neg) * (y[k].one_plus() * x[k]).inverse();
  return out;
}

std::vector<double> mutate_cluster(const ExchangeMatrix& m,
                                   const std::vector<double>& x,
                                   const std::vector<double>& y, int k) {
  if (k < 0 || k >= m.n) throw domain_error("mutation vertex out of range");
  auto out = x;
  double pos = y[k], neg = 1.0;
  for (int j = 0; j < m.n; ++j) {
    const int b = m.at(j, k);
    if (b > 0) pos *= std::pow(x[j], b);
    if (b < 0) neg *= std::pow(x[j], -b);
  }
  out[k] = (pos + neg) / ((1.0 + y[k]) * x[k]);
  if (!std::isfinite(out[k]) || out[k] <= 0.0)
    throw numeric_error("cluster exchange left the positive double range");
  return out;
}

// ---------------------------------------------------------------------------
// Assignments and export

semifield::PosRealAssignment random_assignment(int nvars, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double lo = std::log(0.05), hi = std::log(20.0);
  std::vector<double> values(nvars);
  for (double& x : values) {
    // 53-bit uniform in [0,1); identical across platforms.
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    x = std::exp(lo + (hi - lo) * u);
  }
  return semifield::PosRealAssignment(std::move(values));
}

namespace {

template <class Frame, class ValueFn>
nlohmann::json frame_json(const Frame& frame, const char* backend,
                          ValueFn&& value) {
  nlohmann::json j;
  j["pair"] = frame.pair().label();
  j["backend"] = backend;
  j["u_range"] = {frame.u_min(), frame.u_max()};
  auto entries = nlohmann::json::array();
  for (int u = frame.u_min(); u <= frame.u_max(); ++u) {
    for (int v = 0; v < frame.pair().size(); ++v) {
      auto [i, ip] = frame.pair().unflat(v);
      entries.push_back(nlohmann::json{{"i", i + 1},
                                       {"i_prime", ip + 1},
                                       {"u", u},
                                       {"value", value(frame.at(v, u))}});
    }
  }
  j["entries"] = std::move(entries);
  return j;
}

}  // namespace

nlohmann::json frame_to_json(const CoefficientFrame<TropicalBackend>& frame) {
  auto names = frame.pair().variable_names();
  return frame_json(frame, "tropical", [&](const semifield::TropMonomial& m) {
    return semifield::to_json(m, names);
  });
}

nlohmann::json frame_to_json(const CoefficientFrame<NumericBackend>& frame) {
  return frame_json(frame, "numeric", [](double x) { return x; });
}

nlohmann::json frame_to_json(const CoefficientFrame<RationalBackend>& frame) {
  auto names = frame.pair().variable_names();
  return frame_json(frame, "rational", [&](const semifield::PosRational& f) {
    auto [num, den] = f.expand();
    return nlohmann::json{{"num", num.to_string(names)},
                          {"den", den.to_string(names)}};
  });
}

semifield::PosRealAssignment assignment_from_json(const DiagramPair& pair,
                                                  const nlohmann::json& j) {
  if (j.is_array()) {
    std::vector<double> values = j.get<std::vector<double>>();
    if (static_cast<int>(values.size()) != pair.size())
      throw domain_error("assignment array has the wrong length");
    return semifield::PosRealAssignment(std::move(values));
  }
  if (!j.is_object()) throw domain_error("assignment must be a map or array");
  std::vector<double> values(pair.size(), 0.0);
  std::vector<bool> seen(pair.size(), false);
  auto names = pair.variable_names();
  for (int v = 0; v < pair.size(); ++v) {
    auto it = j.find(names[v]);
    if (it == j.end())
      throw domain_error("assignment is missing key " + names[v]);
    values[v] = it->get<double>();
    seen[v] = true;
  }
  return semifield::PosRealAssignment(std::move(values));
}

}  // namespace ysys::cluster
