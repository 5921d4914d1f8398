#pragma once

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "ysys/cluster.hpp"

namespace ysys::dilog {

/// Dilogarithm series value on [0,1], argument-reduced to [0,1/2].
double li2(double x);

/// Rogers dilogarithm on [0,1]; absolute error below 1e-13.
/// Throws domain_error outside [0,1].
double rogers_l(double x);

/// Five-term sum L(x)+L(y)+L(1-xy)+L((1-x)/(1-xy))+L((1-y)/(1-xy)),
/// which must equal pi^2/2.
double five_term_sum(double x, double y);

struct FiveTermReport {
  int samples = 0;
  double max_abs_error = 0.0;
  double tol = 1e-12;
  bool ok() const { return max_abs_error < tol; }
};

FiveTermReport verify_five_term(int samples, std::uint64_t seed,
                                double tol = 1e-12);

enum class Domain { s_plus, s_minus, h_plus, h_minus };

const char* domain_name(Domain d);
Domain parse_domain(const std::string& name);

/// Summation points of a domain, ordered by (i, i', u) so floating-point
/// reductions are reproducible.
std::vector<std::pair<int, int>> domain_points(const cluster::DiagramPair& pair,
                                               Domain domain);

/// Exact rational value the domain sum must take, as a double.
double expected_value(const cluster::DiagramPair& pair, Domain domain);

/// (6/pi^2) * sum of L(y/(1+y)) over the domain, evaluated on the
/// numeric frame generated by the assignment.
double dilog_sum(const cluster::DiagramPair& pair,
                 const semifield::PosRealAssignment& assignment, Domain domain,
                 par::Exec exec = par::default_exec());

struct IdentityReport {
  std::string pair;
  Domain domain = Domain::s_plus;
  double expected = 0.0;
  std::vector<double> measured;  // one value per sample
  double max_abs_error = 0.0;
  int samples = 0;
  double tol = 0.0;
  std::uint64_t seed = 0;
  bool ok = false;
};

nlohmann::json to_json(const IdentityReport& r);

struct IdentitySuiteReport {
  std::string pair;
  std::vector<IdentityReport> domains;  // S+, S-, H+, H-
  double pairing_max_error = 0.0;  // |S+ + S- sums - (h+h') r r'|
  bool pairing_ok = false;
  std::uint64_t seed = 0;

  bool ok() const;
};

nlohmann::json to_json(const IdentitySuiteReport& r);

/// Checks all four domain sums against their exact values on n_samples
/// log-uniform random assignments, plus the complementarity of the two
/// full-window sums.
IdentitySuiteReport verify_identities(const cluster::DiagramPair& pair,
                                      int n_samples, double tol = 1e-8,
                                      std::uint64_t seed = 20260810,
                                      par::Exec exec = par::default_exec());

struct ConstancyReport {
  std::string pair;
  int samples = 0;
  double min_value = 0.0;
  double max_value = 0.0;
  double range = 0.0;
  double tol = 1e-10;
  std::uint64_t seed = 0;
  std::uint64_t min_seed = 0;  // seeds of the two extreme assignments
  std::uint64_t max_seed = 0;
  bool ok() const { return range < tol; }
};

nlohmann::json to_json(const ConstancyReport& r);

/// The full-window plus-parity sum must not depend on the assignment:
/// verified directly, independently of the expected value.
ConstancyReport verify_constancy(const cluster::DiagramPair& pair, int n_samples,
                                 std::uint64_t seed = 20260810,
                                 double tol = 1e-10,
                                 par::Exec exec = par::default_exec());

struct LimitReport {
  std::string pair;
  std::vector<double> t_sequence;
  double expected = 0.0;   // count of negative tropical values
  double final_sum = 0.0;  // plus-domain sum at the smallest t
  double final_max_term_dev = 0.0;  // on the summand scale, reported only
  double final_max_arg_dev = 0.0;   // dilogarithm argument distance to 0 or 1
  double term_tol = 0.0;            // 2 * smallest t; the distance is t(1+O(t))
  bool trend_ok = false;  // every term moves toward its tropical limit
  bool final_ok = false;  // per-term argument deviation below term_tol
  bool sum_ok = false;    // |final_sum - expected| <= 1e-3 * expected
  std::vector<cluster::Witness> witnesses;

  bool ok() const { return trend_ok && final_ok && sum_ok; }
};

nlohmann::json to_json(const LimitReport& r);

/// Sends every initial coefficient to t for a decreasing sequence of t:
/// each summand tends to 0 or 1 according to the sign of its tropical
/// value, and the total approaches the negative-monomial count.
LimitReport zero_infinity_limit(const cluster::DiagramPair& pair,
                                const std::vector<double>& t_sequence,
                                par::Exec exec = par::default_exec());

}  // namespace ysys::dilog
