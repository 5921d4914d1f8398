#pragma once

#include <nlohmann/json_fwd.hpp>

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ysys/dynkin.hpp"
#include "ysys/errors.hpp"
#include "ysys/parallel.hpp"
#include "ysys/semifield.hpp"

namespace ysys::cluster {

inline bool even(int u) { return ((u % 2) + 2) % 2 == 0; }

/// An ordered pair of simply laced diagrams with the flattened vertex
/// set I x I', ordered lexicographically by (i, i').
struct DiagramPair {
  dynkin::DynkinDiagram left;   // index i
  dynkin::DynkinDiagram right;  // index i'

  int size() const { return left.rank * right.rank; }
  int flat(int i, int ip) const { return i * right.rank + ip; }
  std::pair<int, int> unflat(int v) const {
    return {v / right.rank, v % right.rank};
  }
  /// +1 when the two node colors agree, -1 otherwise.
  int epsilon(int v) const {
    auto [i, ip] = unflat(v);
    return left.part[i] * right.part[ip];
  }
  int omega_flat(int v) const {
    auto [i, ip] = unflat(v);
    return flat(left.omega[i], right.omega[ip]);
  }
  int h() const { return left.coxeter_number; }
  int h_prime() const { return right.coxeter_number; }
  int half_period() const { return h() + h_prime(); }
  int full_period() const { return 2 * half_period(); }
  std::string label() const { return left.label() + "x" + right.label(); }
  std::vector<std::string> variable_names() const;
};

DiagramPair make_diagram_pair(dynkin::DynkinDiagram left,
                              dynkin::DynkinDiagram right);
DiagramPair parse_pair(std::string_view spec);  // "A3xA2", case-insensitive

/// P+ or P- as +1 / -1: the sign of eps * (-1)^u.
inline int parity(int eps, int u) { return even(u) ? eps : -eps; }

struct ExchangeMatrix {
  int n = 0;
  std::vector<int> entries;  // row-major n x n
  std::vector<int> parts;    // epsilon per vertex

  int at(int i, int j) const { return entries[i * n + j]; }
  int& at(int i, int j) { return entries[i * n + j]; }
  bool is_skew_symmetric() const;
  /// Nonzero entries only between opposite parts.
  bool is_bipartite() const;
};

/// The exchange matrix of the square product of the two alternating
/// quivers, with the orientation running I+x I'+ -> I- x I'+ ->
/// I- x I'- -> I+ x I'- -> I+ x I'+ around each square.
ExchangeMatrix square_product(const DiagramPair& pair);

ExchangeMatrix mutate_matrix(ExchangeMatrix B, int k);

/// Composite mutation over all vertices of one part (they are pairwise
/// disconnected, so the order is immaterial; a dedicated test checks
/// order independence).
ExchangeMatrix mutate_matrix_part(ExchangeMatrix B, int part_sign);

// ---------------------------------------------------------------------------
// Semifield backends

struct TropicalBackend {
  using Elem = semifield::TropMonomial;
  int nvars = 0;

  Elem one() const { return Elem(nvars); }
  Elem generator(int v) const { return Elem::generator(nvars, v); }
  static Elem inverse(const Elem& a) { return a.inverse(); }
  static Elem mul(const Elem& a, const Elem& b) { return a * b; }
  static Elem pow(const Elem& a, int k) { return a.pow(k); }
  Elem one_plus(const Elem& a) const { return trop_add(a, one()); }
  static bool equal(const Elem& a, const Elem& b) { return a == b; }
  static const char* name() { return "tropical"; }
};

struct RationalBackend {
  using Elem = semifield::PosRational;
  std::shared_ptr<semifield::PolyInterner> ctx;

  explicit RationalBackend(int nvars)
      : ctx(std::make_shared<semifield::PolyInterner>(nvars)) {}

  Elem one() const { return Elem::one(ctx); }
  Elem generator(int v) const { return Elem::generator(ctx, v); }
  static Elem inverse(const Elem& a) { return a.inverse(); }
  static Elem mul(const Elem& a, const Elem& b) { return a * b; }
  static Elem pow(const Elem& a, int k) { return a.pow(k); }
  static Elem one_plus(const Elem& a) { return a.one_plus(); }
  static bool equal(const Elem& a, const Elem& b) { return rat_equal(a, b); }
  static const char* name() { return "rational"; }
};

struct NumericBackend {
  using Elem = double;
  int nvars = 0;

  static Elem one() { return 1.0; }
  static Elem inverse(Elem a) { return 1.0 / a; }
  static Elem mul(Elem a, Elem b) { return a * b; }
  static Elem pow(Elem a, int k);
  static Elem one_plus(Elem a) { return 1.0 + a; }
  static bool equal(Elem a, Elem b) { return a == b; }
  static const char* name() { return "numeric"; }
};

/// Exchange relation for the coefficient tuple at one vertex.
template <class B>
std::vector<typename B::Elem> mutate_coefficients(
    const B& backend, const ExchangeMatrix& m,
    const std::vector<typename B::Elem>& y, int k) {
  if (k < 0 || k >= m.n) throw domain_error("mutation vertex out of range");
  std::vector<typename B::Elem> out = y;
  out[k] = B::inverse(y[k]);
  const auto one_plus_yk = backend.one_plus(y[k]);
  for (int i = 0; i < m.n; ++i) {
    if (i == k) continue;
    const int b = m.at(k, i);
    if (b > 0) {
      out[i] = B::mul(out[i], B::pow(B::mul(y[k], B::inverse(one_plus_yk)), b));
    } else if (b < 0) {
      out[i] = B::mul(out[i], B::pow(one_plus_yk, -b));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Coefficient frames

/// Coefficient tuples y(u) over a contiguous time range, produced from
/// slice 0 by mutating one part at a time: the plus part between even u
/// and u+1, the minus part between odd u and u+1, with the exchange
/// matrix alternating between B and -B along the way.
template <class B>
class CoefficientFrame {
 public:
  using Elem = typename B::Elem;

  CoefficientFrame(DiagramPair pair, B backend, int u_min, int u_max)
      : pair_(std::move(pair)),
        backend_(std::move(backend)),
        u_min_(u_min),
        u_max_(u_max),
        slices_(static_cast<std::size_t>(u_max - u_min) + 1) {}

  const DiagramPair& pair() const { return pair_; }
  const B& backend() const { return backend_; }
  int u_min() const { return u_min_; }
  int u_max() const { return u_max_; }
  int matrix_sign(int u) const { return even(u) ? +1 : -1; }

  const Elem& at(int v, int u) const { return slice(u)[v]; }
  const std::vector<Elem>& slice(int u) const {
    if (u < u_min_ || u > u_max_)
      throw domain_error("frame slice out of range");
    return slices_[static_cast<std::size_t>(u - u_min_)];
  }
  std::vector<Elem>& slice(int u) {
    if (u < u_min_ || u > u_max_)
      throw domain_error("frame slice out of range");
    return slices_[static_cast<std::size_t>(u - u_min_)];
  }

 private:
  DiagramPair pair_;
  B backend_;
  int u_min_, u_max_;
  std::vector<std::vector<Elem>> slices_;
};

namespace detail {

/// One composite mutation step applied to a whole slice. The vertices
/// of the mutating part are pairwise disconnected, so all per-vertex
/// updates read the same input slice and may run in parallel.
template <class B>
std::vector<typename B::Elem> frame_step(const B& backend,
                                         const ExchangeMatrix& base,
                                         const std::vector<typename B::Elem>& y,
                                         int mut_sign, int matrix_sign,
                                         par::Exec exec) {
  using Elem = typename B::Elem;
  const int n = base.n;
  std::vector<Elem> pos_factor(n, backend.one());
  std::vector<Elem> neg_factor(n, backend.one());
  std::vector<char> mutating(n, 0);
  for (int k = 0; k < n; ++k) {
    if (base.parts[k] != mut_sign) continue;
    mutating[k] = 1;
    neg_factor[k] = backend.one_plus(y[k]);
    pos_factor[k] = B::mul(y[k], B::inverse(neg_factor[k]));
  }
  std::vector<Elem> out(n, backend.one());
  std::mutex error_mutex;
  std::string error;
  par::for_range(static_cast<std::size_t>(n), exec, [&](std::size_t iv) {
    try {
      const int i = static_cast<int>(iv);
      if (mutating[i]) {
        out[i] = B::inverse(y[i]);
        return;
      }
      Elem acc = y[i];
      for (int k = 0; k < n; ++k) {
        if (!mutating[k]) continue;
        const int b = matrix_sign * base.at(k, i);
        if (b > 0)
          acc = B::mul(acc, B::pow(pos_factor[k], b));
        else if (b < 0)
          acc = B::mul(acc, B::pow(neg_factor[k], -b));
      }
      out[i] = std::move(acc);
    } catch (const std::exception& e) {
      std::scoped_lock lock(error_mutex);
      error = e.what();
    }
  });
  if (!error.empty()) throw numeric_error(error);
  return out;
}

inline void check_numeric_slice(const std::vector<double>& slice,
                                const DiagramPair& pair, int u) {
  for (int v = 0; v < static_cast<int>(slice.size()); ++v) {
    if (std::isfinite(slice[v]) && slice[v] > 0.0) continue;
    auto [i, ip] = pair.unflat(v);
    throw numeric_error("numeric frame overflowed at (" +
                        std::to_string(i + 1) + "," + std::to_string(ip + 1) +
                        "," + std::to_string(u) +
                        "); retry with a tamer assignment");
  }
}

}  // namespace detail

template <class B>
CoefficientFrame<B> build_frame(const DiagramPair& pair, B backend,
                                const std::vector<typename B::Elem>& initial,
                                int u_min, int u_max,
                                par::Exec exec = par::default_exec()) {
  if (u_min > 0 || u_max < 0)
    throw domain_error("frame range must contain u = 0");
  if (static_cast<int>(initial.size()) != pair.size())
    throw domain_error("initial tuple has the wrong size");
  const ExchangeMatrix base = square_product(pair);
  CoefficientFrame<B> frame(pair, backend, u_min, u_max);
  frame.slice(0) = initial;
  constexpr bool is_numeric = std::is_same_v<typename B::Elem, double>;
  for (int u = 0; u < u_max; ++u) {
    // Forward step u -> u+1 mutates the plus part at even u.
    const int mut_sign = even(u) ? +1 : -1;
    frame.slice(u + 1) = detail::frame_step(backend, base, frame.slice(u),
                                            mut_sign, frame.matrix_sign(u), exec);
    if constexpr (is_numeric)
      detail::check_numeric_slice(frame.slice(u + 1), pair, u + 1);
  }
  for (int u = 0; u > u_min; --u) {
    // Backward step u -> u-1 re-applies the involutive mutation that
    // connects the two slices, using the matrix at slice u.
    const int mut_sign = even(u - 1) ? +1 : -1;
    frame.slice(u - 1) = detail::frame_step(backend, base, frame.slice(u),
                                            mut_sign, frame.matrix_sign(u), exec);
    if constexpr (is_numeric)
      detail::check_numeric_slice(frame.slice(u - 1), pair, u - 1);
  }
  return frame;
}

CoefficientFrame<TropicalBackend> tropical_frame(
    const DiagramPair& pair, int u_min, int u_max,
    par::Exec exec = par::default_exec());

CoefficientFrame<NumericBackend> numeric_frame(
    const DiagramPair& pair, const semifield::PosRealAssignment& assignment,
    int u_min, int u_max, par::Exec exec = par::default_exec());

/// Budget gate for subtraction-free symbolic frames; throws budget_error
/// when the pair or the window is too large.
CoefficientFrame<RationalBackend> rational_frame(
    const DiagramPair& pair, int u_min, int u_max, int budget_rr = 6,
    par::Exec exec = par::default_exec());

// ---------------------------------------------------------------------------
// Incidence matrices

/// vertical(i,j) = 1 iff i~j in the left diagram and the right indices
/// agree; horizontal(i,j) = 1 iff the left indices agree and i'~j' in
/// the right diagram. Both symmetric.
struct IncidenceMatrices {
  int n = 0;
  std::vector<int> vertical;
  std::vector<int> horizontal;

  int m(int i, int j) const { return vertical[i * n + j]; }
  int mp(int i, int j) const { return horizontal[i * n + j]; }
};

IncidenceMatrices incidence_matrices(const DiagramPair& pair);

// ---------------------------------------------------------------------------
// F-polynomials

/// The family F_v(u) over a time window, computed from the coupled
/// three-term recurrence seeded by F_v(0) = 1, with the slice-copy rule
/// filling the passive parity and exact polynomial division filling the
/// active one. Every stored polynomial has nonnegative coefficients and
/// constant term 1; distinct (v,u) with equal polynomials share one
/// interned atom id.
class FPolyFamily {
 public:
  FPolyFamily(DiagramPair pair, int u_min, int u_max);

  const DiagramPair& pair() const { return pair_; }
  int u_min() const { return u_min_; }
  int u_max() const { return u_max_; }
  const IncidenceMatrices& incidence() const { return incidence_; }

  const poly::Polynomial& at(int v, int u) const;
  /// Interned atom id of F_v(u), or -1 when the polynomial is 1.
  int atom_id(int v, int u) const;
  int atom_count() const { return static_cast<int>(atom_polys_.size()); }
  const poly::Polynomial& atom_polynomial(int id) const {
    return atom_polys_.at(id);
  }

  friend FPolyFamily f_polynomials(
      const DiagramPair& pair,
      const CoefficientFrame<TropicalBackend>& trop, int u_min, int u_max);

 private:
  int slot(int u) const { return u - u_min_; }
  int intern_atom(const poly::Polynomial& p);

  DiagramPair pair_;
  int u_min_, u_max_;
  IncidenceMatrices incidence_;
  std::vector<std::vector<poly::Polynomial>> polys_;
  std::vector<std::vector<int>> ids_;
  std::map<poly::Polynomial, int> intern_;
  std::vector<poly::Polynomial> atom_polys_;
};

/// Requires a tropical frame covering [u_min, u_max].
FPolyFamily f_polynomials(const DiagramPair& pair,
                          const CoefficientFrame<TropicalBackend>& trop,
                          int u_min, int u_max);
FPolyFamily f_polynomials(const DiagramPair& pair, int u_min, int u_max);

// ---------------------------------------------------------------------------
// Verification reports

struct Witness {
  int i = 0;       // 1-based left index
  int i_prime = 0; // 1-based right index
  int u = 0;
  std::string detail;
};

nlohmann::json to_json(const Witness& w);

struct PeriodicityReport {
  std::string pair;
  std::string backend;
  int full_period = 0;
  int half_period = 0;
  bool full_ok = false;
  bool half_ok = false;
  int samples = 0;
  double max_rel_err = 0.0;
  std::vector<Witness> witnesses;

  bool ok() const { return full_ok && half_ok; }
};

nlohmann::json to_json(const PeriodicityReport& r);

/// Exact periodicity of the tropical frame: full period 2(h+h') and the
/// half period twisted by the diagram automorphisms.
PeriodicityReport verify_periodicity_tropical(
    const DiagramPair& pair, par::Exec exec = par::default_exec());

/// Numeric periodicity over `trials` random assignments, relative
/// tolerance `tol` per entry.
PeriodicityReport verify_periodicity_numeric(
    const DiagramPair& pair, int trials, std::uint64_t seed, double tol = 1e-9,
    par::Exec exec = par::default_exec());

struct YSystemReport {
  std::string pair;
  std::string backend;
  int checked = 0;
  double max_residual = 0.0;  // numeric backends only
  std::vector<Witness> witnesses;

  bool ok() const { return witnesses.empty(); }
};

nlohmann::json to_json(const YSystemReport& r);

/// Checks the defining relations of the Y-system on a built frame: at
/// every interior anchor the product of the two time-neighbors of the
/// family of matching parity equals the edge-product of the orthogonal
/// neighbors. Exact backends compare exactly; the numeric backend uses
/// |lhs/rhs - 1| < tol.
template <class B>
YSystemReport verify_y_system(const CoefficientFrame<B>& frame,
                              double tol = 1e-9);

/// Exchange relation for the cluster tuple, coefficients in the
/// universal semifield: x and y share one variable context.
std::vector<semifield::PosRational> mutate_cluster(
    const ExchangeMatrix& m, const std::vector<semifield::PosRational>& x,
    const std::vector<semifield::PosRational>& y, int k);

/// Same relation over the positive reals.
std::vector<double> mutate_cluster(const ExchangeMatrix& m,
                                   const std::vector<double>& x,
                                   const std::vector<double>& y, int k);

// ---------------------------------------------------------------------------
// Random assignments and frame export

/// Log-uniform assignment on [0.05, 20], reproducible across platforms.
semifield::PosRealAssignment random_assignment(int nvars, std::uint64_t seed);

nlohmann::json frame_to_json(const CoefficientFrame<TropicalBackend>& frame);
nlohmann::json frame_to_json(const CoefficientFrame<NumericBackend>& frame);
nlohmann::json frame_to_json(const CoefficientFrame<RationalBackend>& frame);

/// Reads {"y_(i,i')": value} or a plain array into an assignment.
semifield::PosRealAssignment assignment_from_json(const DiagramPair& pair,
                                                  const nlohmann::json& j);

}  // namespace ysys::cluster
