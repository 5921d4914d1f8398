#include "ysys/dynkin.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>

#include "ysys/errors.hpp"

namespace ysys::dynkin {

char family_letter(Family f) {
  switch (f) {
    case Family::A: return 'A';
    case Family::D: return 'D';
    case Family::E: return 'E';
  }
  return '?';
}

std::string DynkinDiagram::label() const {
  return std::string(1, family_letter(family)) + std::to_string(rank);
}

std::vector<int> DynkinDiagram::plus_nodes() const {
  std::vector<int> out;
  for (int i = 0; i < rank; ++i)
    if (part[i] > 0) out.push_back(i);
  return out;
}

std::vector<int> DynkinDiagram::minus_nodes() const {
  std::vector<int> out;
  for (int i = 0; i < rank; ++i)
    if (part[i] < 0) out.push_back(i);
  return out;
}

DynkinDiagram DynkinDiagram::with_swapped_bipartition() const {
  DynkinDiagram d = *this;
  for (int& p : d.part) p = -p;
  d.omega_swaps_parts = omega_swaps_parts;
  return d;
}

namespace {

std::vector<std::vector<int>> make_adjacency(Family family, int rank) {
  auto bad = [&] {
    return diagram_error("invalid simply laced diagram " +
                         std::string(1, family_letter(family)) +
                         std::to_string(rank));
  };
  std::vector<std::vector<int>> adj(rank, std::vector<int>(rank, 0));
  auto link = [&](int a, int b) { adj[a][b] = adj[b][a] = 1; };
  switch (family) {
    case Family::A:
      if (rank < 1) throw bad();
      for (int i = 0; i + 1 < rank; ++i) link(i, i + 1);
      break;
    case Family::D:
      if (rank < 4) throw bad();
      for (int i = 0; i + 1 < rank - 1; ++i) link(i, i + 1);
      link(rank - 3, rank - 1);
      break;
    case Family::E:
      if (rank < 6 || rank > 8) throw bad();
      // Bourbaki labels: chain 1-3-4-5-...-rank, with 2 attached to 4.
      link(0, 2);
      for (int i = 2; i + 1 < rank; ++i) link(i, i + 1);
      link(1, 3);
      break;
  }
  return adj;
}

std::vector<int> bipartition_from_node0(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> dist(n, -1);
  std::deque<int> queue{0};
  dist[0] = 0;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w = 0; w < n; ++w)
      if (adj[v][w] && dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
  }
  std::vector<int> part(n);
  for (int v = 0; v < n; ++v) {
    if (dist[v] < 0) throw invariant_error("diagram is not connected");
    part[v] = dist[v] % 2 == 0 ? 1 : -1;
  }
  return part;
}

/// All graph automorphisms, by backtracking on the node images.
std::vector<std::vector<int>> graph_automorphisms(
    const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> degree(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) degree[i] += adj[i][j];
  std::vector<std::vector<int>> found;
  std::vector<int> image(n, -1);
  std::vector<bool> used(n, false);
  std::function<void(int)> extend = [&](int v) {
    if (v == n) {
      found.push_back(image);
      return;
    }
    for (int w = 0; w < n; ++w) {
      if (used[w] || degree[w] != degree[v]) continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u)
        if (adj[v][u] != adj[w][image[u]]) ok = false;
      if (!ok) continue;
      used[w] = true;
      image[v] = w;
      extend(v + 1);
      used[w] = false;
      image[v] = -1;
    }
  };
  extend(0);
  return found;
}

std::vector<int> select_omega(Family family, int rank,
                              const std::vector<std::vector<int>>& adj) {
  std::vector<int> identity(rank);
  for (int i = 0; i < rank; ++i) identity[i] = i;
  const bool wants_nontrivial = (family == Family::A && rank >= 2) ||
                                (family == Family::D && rank % 2 == 1) ||
                                (family == Family::E && rank == 6);
  if (!wants_nontrivial) return identity;
  std::vector<std::vector<int>> involutions;
  for (const auto& sigma : graph_automorphisms(adj)) {
    if (sigma == identity) continue;
    bool involutive = true;
    for (int i = 0; i < rank; ++i)
      if (sigma[sigma[i]] != i) involutive = false;
    if (involutive) involutions.push_back(sigma);
  }
  if (involutions.size() != 1)
    throw invariant_error("expected a unique nontrivial involutive diagram "
                          "automorphism for " +
                          std::string(1, family_letter(family)) +
                          std::to_string(rank));
  return involutions.front();
}

}  // namespace

DynkinDiagram build_diagram(Family family, int rank) {
  DynkinDiagram d;
  d.family = family;
  d.rank = rank;
  d.adjacency = make_adjacency(family, rank);
  d.part = bipartition_from_node0(d.adjacency);
  d.omega = select_omega(family, rank, d.adjacency);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j)
      if (d.adjacency[i][j] != d.adjacency[d.omega[i]][d.omega[j]])
        throw invariant_error("omega is not a diagram automorphism");
  d.coxeter_number = coxeter_number(d);
  // Whether omega preserves or exchanges the two parts is a computed
  // fact; mixed behavior would break the half-periodicity bookkeeping.
  bool preserves = true, swaps = true;
  for (int i = 0; i < rank; ++i) {
    if (d.part[d.omega[i]] != d.part[i]) preserves = false;
    if (d.part[d.omega[i]] != -d.part[i]) swaps = false;
  }
  if (!preserves && !swaps)
    throw invariant_error("omega neither preserves nor swaps the bipartition");
  d.omega_swaps_parts = !preserves;
  return d;
}

DynkinDiagram parse_diagram(std::string_view spec) {
  if (spec.size() < 2) throw diagram_error("unparsable diagram spec '" +
                                           std::string(spec) + "'");
  char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(spec[0])));
  Family family;
  switch (letter) {
    case 'A': family = Family::A; break;
    case 'D': family = Family::D; break;
    case 'E': family = Family::E; break;
    default:
      throw diagram_error("unknown diagram family '" + std::string(1, spec[0]) +
                          "' (expected A, D, or E)");
  }
  int rank = 0;
  for (std::size_t k = 1; k < spec.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(spec[k])))
      throw diagram_error("unparsable diagram rank in '" + std::string(spec) + "'");
    rank = rank * 10 + (spec[k] - '0');
  }
  return build_diagram(family, rank);
}

namespace {

/// Matrix of the product of simple reflections over one part, acting on
/// root coordinates (columns are images of the simple roots).
std::vector<std::vector<int>> half_coxeter_matrix(const DynkinDiagram& d,
                                                  int sign) {
  const int n = d.rank;
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
  for (int j = 0; j < n; ++j) {
    RootVector v(n, 0);
    v[j] = 1;
    v = half_coxeter(d, sign, std::move(v));
    for (int i = 0; i < n; ++i) m[i][j] = v[i];
  }
  return m;
}

std::vector<std::vector<int>> mat_mul(const std::vector<std::vector<int>>& a,
                                      const std::vector<std::vector<int>>& b) {
  const int n = static_cast<int>(a.size());
  std::vector<std::vector<int>> c(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (int j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

bool is_identity(const std::vector<std::vector<int>>& m) {
  const int n = static_cast<int>(m.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (m[i][j] != (i == j ? 1 : 0)) return false;
  return true;
}

}  // namespace

int coxeter_number(const DynkinDiagram& d) {
  const auto tp = half_coxeter_matrix(d, +1);
  const auto tm = half_coxeter_matrix(d, -1);
  const auto c = mat_mul(tp, tm);
  auto power = c;
  int order = 1;
  constexpr int order_bound = 256;
  while (!is_identity(power)) {
    power = mat_mul(power, c);
    if (++order > order_bound)
      throw invariant_error("Coxeter element order exceeds bound");
  }
  RootSystem rs(d);
  if (2 * static_cast<int>(rs.positive_roots().size()) != d.rank * order)
    throw invariant_error("positive root count disagrees with Coxeter number");
  return order;
}

RootSystem::RootSystem(const DynkinDiagram& d) : rank_(d.rank) {
  std::deque<RootVector> frontier;
  for (int i = 0; i < rank_; ++i) {
    RootVector alpha(rank_, 0);
    alpha[i] = 1;
    all_.insert(alpha);
    frontier.push_back(std::move(alpha));
  }
  while (!frontier.empty()) {
    RootVector v = std::move(frontier.front());
    frontier.pop_front();
    for (int i = 0; i < rank_; ++i) {
      RootVector w = simple_reflection(d, i, v);
      if (all_.insert(w).second) frontier.push_back(std::move(w));
    }
  }
  for (const auto& v : all_) {
    bool pos = std::all_of(v.begin(), v.end(), [](int x) { return x >= 0; });
    if (pos) positive_.push_back(v);
  }
}

bool RootSystem::is_positive_root(const RootVector& v) const {
  if (static_cast<int>(v.size()) != rank_) return false;
  return all_.count(v) &&
         std::all_of(v.begin(), v.end(), [](int x) { return x >= 0; });
}

bool RootSystem::in_admissible_set(const RootVector& v) const {
  if (is_positive_root(v)) return true;
  int negatives = 0, at = -1;
  for (int i = 0; i < rank_; ++i) {
    if (v[i] == -1) {
      ++negatives;
      at = i;
    } else if (v[i] != 0) {
      return false;
    }
  }
  return negatives == 1 && at >= 0;
}

RootVector simple_reflection(const DynkinDiagram& d, int i, RootVector v) {
  int pairing = 0;
  for (int k = 0; k < d.rank; ++k) pairing += d.cartan(i, k) * v[k];
  v[i] -= pairing;
  return v;
}

RootVector half_coxeter(const DynkinDiagram& d, int sign, RootVector v) {
  for (int i = 0; i < d.rank; ++i)
    if (d.part[i] == sign) v = simple_reflection(d, i, std::move(v));
  return v;
}

RootVector tau(const DynkinDiagram& d, const RootSystem& rs, int sign,
               const RootVector& v) {
  if (!rs.in_admissible_set(v))
    throw domain_error("tau: vector is not a positive root or negated simple root");
  for (int i = 0; i < d.rank; ++i) {
    if (v[i] == -1 && d.part[i] == -sign) return v;  // fixed point
  }
  RootVector out = half_coxeter(d, sign, v);
  if (!rs.in_admissible_set(out))
    throw invariant_error("tau left the admissible set");
  return out;
}

RootVector d_vector(const DynkinDiagram& d, const RootSystem& rs, int i, int u) {
  if (i < 0 || i >= d.rank) throw domain_error("d_vector: node out of range");
  if (u < 0) throw domain_error("d_vector: negative time");
  const bool plus_case = d.part[i] > 0 && u % 2 == 0;
  const bool minus_case = d.part[i] < 0 && u % 2 == 1;
  if (!plus_case && !minus_case)
    throw domain_error("d_vector: node part and time parity do not match");
  RootVector v(d.rank, 0);
  v[i] = -1;
  int steps = u;
  if (minus_case) {
    v = tau(d, rs, -1, v);
    --steps;
  }
  for (int k = 0; k < steps / 2; ++k) {
    v = tau(d, rs, +1, v);
    v = tau(d, rs, -1, v);
  }
  if (u >= 1 && u <= d.coxeter_number && !rs.is_positive_root(v))
    throw invariant_error("d_vector did not land on a positive root");
  return v;
}

nlohmann::json to_json(const DynkinDiagram& d) {
  nlohmann::json j;
  j["family"] = std::string(1, family_letter(d.family));
  j["rank"] = d.rank;
  j["h"] = d.coxeter_number;
  auto labels = [](const std::vector<int>& nodes) {
    std::vector<int> out;
    out.reserve(nodes.size());
    for (int v : nodes) out.push_back(v + 1);
    return out;
  };
  j["I_plus"] = labels(d.plus_nodes());
  j["I_minus"] = labels(d.minus_nodes());
  std::vector<int> omega;
  omega.reserve(d.rank);
  for (int i = 0; i < d.rank; ++i) omega.push_back(d.omega[i] + 1);
  j["omega"] = omega;
  return j;
}

}  // namespace ysys::dynkin
