#pragma once

#include <nlohmann/json_fwd.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ysys/cluster.hpp"

namespace ysys::wedge {

/// Atoms of the factor group: ids 0..n-1 are the initial variables, and
/// n + k is the k-th interned F-polynomial. The unit polynomial has no
/// atom. The id order is the total order used to store wedge pairs.
struct WedgeContext {
  cluster::DiagramPair pair;
  cluster::CoefficientFrame<cluster::TropicalBackend> trop;
  cluster::FPolyFamily fpolys;

  int f_atom(int v, int u) const {
    const int id = fpolys.atom_id(v, u);
    return id < 0 ? -1 : pair.size() + id;
  }
  bool is_var_atom(int atom) const { return atom < pair.size(); }
  std::string atom_name(int atom) const;
};

/// Frames cover [-1, full_period]; interning collapses the periodic
/// overlap to shared atoms.
WedgeContext make_wedge_context(const cluster::DiagramPair& pair,
                                par::Exec exec = par::default_exec());

/// Finitely supported exponent map over atoms: a product of atoms.
using FactorList = std::map<int, int>;

FactorList factorize_y(const WedgeContext& ctx, int v, int u);
FactorList factorize_one_plus_y(const WedgeContext& ctx, int v, int u);

/// Expands a factor list into an explicit numerator/denominator pair.
std::pair<poly::Polynomial, poly::Polynomial> expand_factors(
    const WedgeContext& ctx, const FactorList& f);
double evaluate_factors(const WedgeContext& ctx, const FactorList& f,
                        const semifield::PosRealAssignment& assignment);

/// Integer combination of ordered atom pairs. Only pairs (a,b) with
/// a < b are stored; adding g^e ∧ h^d expands bilinearly, flips sign on
/// reordering and drops equal atoms, so antisymmetry is structural.
class WedgeSum {
 public:
  void add(int a, int b, long long c);
  void add_product(const FactorList& g, const FactorList& h, int scale = 1);
  WedgeSum& operator+=(const WedgeSum& rhs);
  WedgeSum& operator-=(const WedgeSum& rhs);
  bool is_zero() const { return coef_.empty(); }
  bool operator==(const WedgeSum& rhs) const { return coef_ == rhs.coef_; }
  const std::map<std::pair<int, int>, long long>& coefficients() const {
    return coef_;
  }

 private:
  std::map<std::pair<int, int>, long long> coef_;
};

struct WedgeReport {
  std::string pair;
  bool total_zero = false;
  bool tropical_zero = false;   // block of tropical-tropical pairs
  bool symmetric_zero = false;  // block of F-only pairs
  bool mixed_ok[5] = {false, false, false, false, false};
  bool mixed_sum_zero = false;  // the five right-hand sides cancel
  bool decomposition_consistent = false;
  std::vector<std::string> surviving_pairs;

  bool ok() const;
};

nlohmann::json to_json(const WedgeReport& r);

/// Expands the full plus-domain wedge sum through the two factorization
/// formulas and checks that it vanishes, along with each cancellation
/// mechanism separately: the tropical block, the F-only block (by the
/// reindexing symmetry), and the five mixed-term identities that match
/// plus-domain sums with minus-domain sums.
WedgeReport wedge_vanishing(const cluster::DiagramPair& pair, int budget_rr = 6,
                            par::Exec exec = par::default_exec());

struct FactorizationReport {
  std::string pair;
  int checked = 0;
  double numeric_max_err = 0.0;
  std::vector<cluster::Witness> witnesses;
  bool ok() const { return witnesses.empty(); }
};

nlohmann::json to_json(const FactorizationReport& r);

/// Validates both factorization formulas against an independently built
/// subtraction-free frame (exact cross-multiplication equality) and
/// against a numeric frame at a random assignment.
FactorizationReport verify_factorizations(const cluster::DiagramPair& pair,
                                          int budget_rr = 6,
                                          std::uint64_t seed = 20260810,
                                          par::Exec exec = par::default_exec());

}  // namespace ysys::wedge
