#pragma once

#include <nlohmann/json_fwd.hpp>

#include <map>
#include <string>
#include <vector>

#include "ysys/cluster.hpp"

namespace ysys::tropical {

/// Sign of every plus-parity tropical value over one full period,
/// together with the two counts. Construction fails loudly if any value
/// is mixed or zero.
struct SignTable {
  std::string pair;
  std::map<std::pair<int, int>, semifield::MonomialSign> signs;  // (v,u)
  long long n_plus = 0;
  long long n_minus = 0;
  long long expected_plus = 0;   // h' r r'
  long long expected_minus = 0;  // h r r'

  bool ok() const {
    return n_plus == expected_plus && n_minus == expected_minus;
  }
};

nlohmann::json to_json(const SignTable& t);

SignTable sign_counts(const cluster::DiagramPair& pair,
                      par::Exec exec = par::default_exec());

struct RegionReport {
  std::string pair;
  int checked = 0;
  std::vector<cluster::Witness> witnesses;
  bool ok() const { return witnesses.empty(); }
};

nlohmann::json to_json(const RegionReport& r);

/// Plus-parity tropical values are positive monomials on the leading
/// window [0, h'-1] and negative monomials on [-h, -1].
RegionReport verify_sign_regions(const cluster::DiagramPair& pair,
                                 par::Exec exec = par::default_exec());

/// Cross-checks every tropical value on [-h, h'-1] against the
/// denominator-vector formulas from the root systems of the two
/// diagrams (using both 2-colorings of each). The root-system side is
/// computed independently of the mutation dynamics.
RegionReport verify_dvector_factorization(const cluster::DiagramPair& pair,
                                          par::Exec exec = par::default_exec());

/// During each composite mutation step, a neighbor with an arrow from
/// the mutation point keeps its tropical value whenever the mutated
/// value's sign points the passive way; checked over one full period.
RegionReport verify_mutation_invariance(const cluster::DiagramPair& pair,
                                        par::Exec exec = par::default_exec());

}  // namespace ysys::tropical
