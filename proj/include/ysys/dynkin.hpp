#pragma once

#include <nlohmann/json_fwd.hpp>

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ysys::dynkin {

enum class Family { A, D, E };

char family_letter(Family f);

/// Coordinates of a lattice vector in the simple-root basis.
using RootVector = std::vector<int>;

/// A simply laced Dynkin diagram with its derived combinatorial data:
/// Cartan matrix, bipartite 2-coloring of the nodes, Coxeter number
/// (computed as the order of the Coxeter element), and the involutive
/// diagram automorphism used by the half-periodicity statement.
///
/// Node indices are 0-based internally; serialization uses the 1-based
/// Bourbaki labels.
struct DynkinDiagram {
  Family family;
  int rank = 0;
  std::vector<std::vector<int>> adjacency;  // symmetric 0/1, zero diagonal
  std::vector<int> part;                    // +1 for I+, -1 for I-
  std::vector<int> omega;                   // involutive diagram automorphism
  int coxeter_number = 0;
  bool omega_swaps_parts = false;  // computed fact, never assumed

  int cartan(int i, int j) const {
    return i == j ? 2 : -adjacency[i][j];
  }
  int dim_g() const { return rank * (coxeter_number + 1); }
  std::string label() const;

  std::vector<int> plus_nodes() const;
  std::vector<int> minus_nodes() const;

  /// Copy with I+ and I- exchanged. The reflection maps and denominator
  /// vectors depend on the 2-coloring; everything else is unchanged.
  DynkinDiagram with_swapped_bipartition() const;
};

DynkinDiagram build_diagram(Family family, int rank);
DynkinDiagram parse_diagram(std::string_view spec);  // "A3", case-insensitive

/// Order of the product of all simple reflections (plus part first) as a
/// linear map on the root lattice. Cross-checked against the positive
/// root count r*h/2 from brute-force enumeration.
int coxeter_number(const DynkinDiagram& d);

/// Root system data obtained by closing the simple roots under the
/// simple reflections. Small ranks only; everything is explicit.
class RootSystem {
 public:
  explicit RootSystem(const DynkinDiagram& d);

  const std::vector<RootVector>& positive_roots() const { return positive_; }
  bool is_positive_root(const RootVector& v) const;
  /// Positive roots together with the negated simple roots.
  bool in_admissible_set(const RootVector& v) const;

 private:
  int rank_;
  std::set<RootVector> all_;
  std::vector<RootVector> positive_;
};

RootVector simple_reflection(const DynkinDiagram& d, int i, RootVector v);

/// Product of the simple reflections over one part of the bipartition
/// (they commute, so no order is involved).
RootVector half_coxeter(const DynkinDiagram& d, int sign, RootVector v);

/// Piecewise-linear analogue of the half Coxeter element acting on the
/// set of positive roots and negated simple roots: negated simple roots
/// of the opposite part are fixed, everything else maps linearly.
/// Throws domain_error if v is not in the admissible set.
RootVector tau(const DynkinDiagram& d, const RootSystem& rs, int sign,
               const RootVector& v);

/// Denominator vector at (node i, time u >= 0). Defined for i in I+ with
/// u even and i in I- with u odd; anything else is a parity error.
RootVector d_vector(const DynkinDiagram& d, const RootSystem& rs, int i, int u);

nlohmann::json to_json(const DynkinDiagram& d);

}  // namespace ysys::dynkin
