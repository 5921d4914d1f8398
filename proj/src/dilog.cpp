#include "ysys/dilog.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <random>

#include "ysys/errors.hpp"

namespace ysys::dilog {

namespace {

constexpr double pi_sq_over_6 = std::numbers::pi * std::numbers::pi / 6.0;

double li2_series(double x) {
  // x in [0, 1/2]: geometric decay makes ~60 terms enough for 1e-17.
  double terms[64];
  int count = 0;
  double p = x;
  for (int k = 1; k <= 64 && p > 1e-19; ++k) {
    terms[count++] = p / (static_cast<double>(k) * k);
    p *= x;
  }
  double sum = 0.0;
  for (int k = count - 1; k >= 0; --k) sum += terms[k];
  return sum;
}

}  // namespace

double li2(double x) {
  if (x < 0.0 || x > 1.0) throw domain_error("li2 argument outside [0,1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return pi_sq_over_6;
  if (x <= 0.5) return li2_series(x);
  return pi_sq_over_6 - std::log(x) * std::log1p(-x) - li2_series(1.0 - x);
}

double rogers_l(double x) {
  if (x < 0.0 || x > 1.0) throw domain_error("rogers_l argument outside [0,1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return pi_sq_over_6;
  return li2(x) + 0.5 * std::log(x) * std::log1p(-x);
}

double five_term_sum(double x, double y) {
  if (x < 0.0 || x > 1.0 || y < 0.0 || y > 1.0)
    throw domain_error("five_term_sum arguments outside [0,1]");
  const double xy = x * y;
  const double a = xy == 1.0 ? 1.0 : (1.0 - x) / (1.0 - xy);
  const double b = xy == 1.0 ? 1.0 : (1.0 - y) / (1.0 - xy);
  return rogers_l(x) + rogers_l(y) + rogers_l(1.0 - xy) + rogers_l(a) +
         rogers_l(b);
}

FiveTermReport verify_five_term(int samples, std::uint64_t seed, double tol) {
  FiveTermReport report;
  report.samples = samples;
  report.tol = tol;
  std::mt19937_64 rng(seed);
  auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  const double target = 3.0 * pi_sq_over_6;
  for (int s = 0; s < samples; ++s) {
    const double x = unit(), y = unit();
    report.max_abs_error =
        std::max(report.max_abs_error, std::abs(five_term_sum(x, y) - target));
  }
  return report;
}

const char* domain_name(Domain d) {
  switch (d) {
    case Domain::s_plus: return "S+";
    case Domain::s_minus: return "S-";
    case Domain::h_plus: return "H+";
    case Domain::h_minus: return "H-";
  }
  return "?";
}

Domain parse_domain(const std::string& name) {
  if (name == "S+" || name == "s+") return Domain::s_plus;
  if (name == "S-" || name == "s-") return Domain::s_minus;
  if (name == "H+" || name == "h+") return Domain::h_plus;
  if (name == "H-" || name == "h-") return Domain::h_minus;
  throw domain_error("unknown domain '" + name + "' (expected S+,S-,H+,H-)");
}

std::vector<std::pair<int, int>> domain_points(const cluster::DiagramPair& pair,
                                               Domain domain) {
  const bool half = domain == Domain::h_plus || domain == Domain::h_minus;
  const bool plus = domain == Domain::s_plus || domain == Domain::h_plus;
  const int window = half ? pair.half_period() : pair.full_period();
  std::vector<std::pair<int, int>> points;
  for (int v = 0; v < pair.size(); ++v)
    for (int u = 0; u < window; ++u)
      if (cluster::parity(pair.epsilon(v), u) == (plus ? +1 : -1))
        points.emplace_back(v, u);
  return points;
}

double expected_value(const cluster::DiagramPair& pair, Domain domain) {
  const double rr = static_cast<double>(pair.left.rank) * pair.right.rank;
  switch (domain) {
    case Domain::s_plus: return pair.h() * rr;
    case Domain::s_minus: return pair.h_prime() * rr;
    case Domain::h_plus: return pair.h() * rr / 2.0;
    case Domain::h_minus: return pair.h_prime() * rr / 2.0;
  }
  return 0.0;
}

namespace {

double sum_over_points(const cluster::CoefficientFrame<cluster::NumericBackend>& frame,
                       const std::vector<std::pair<int, int>>& points) {
  double total = 0.0;
  for (const auto& [v, u] : points) {
    const double y = frame.at(v, u);
    total += rogers_l(y / (1.0 + y));
  }
  return total / pi_sq_over_6;
}

}  // namespace

double dilog_sum(const cluster::DiagramPair& pair,
                 const semifield::PosRealAssignment& assignment, Domain domain,
                 par::Exec exec) {
  const auto points = domain_points(pair, domain);
  int u_max = 0;
  for (const auto& [v, u] : points) u_max = std::max(u_max, u);
  auto frame = cluster::numeric_frame(pair, assignment, 0, u_max, exec);
  return sum_over_points(frame, points);
}

nlohmann::json to_json(const IdentityReport& r) {
  return nlohmann::json{{"pair", r.pair},
                        {"domain", domain_name(r.domain)},
                        {"expected", r.expected},
                        {"measured", r.measured},
                        {"max_abs_error", r.max_abs_error},
                        {"samples", r.samples},
                        {"tol", r.tol},
                        {"seed", r.seed},
                        {"status", r.ok ? "pass" : "fail"}};
}

bool IdentitySuiteReport::ok() const {
  if (!pairing_ok) return false;
  return std::all_of(domains.begin(), domains.end(),
                     [](const IdentityReport& r) { return r.ok; });
}

nlohmann::json to_json(const IdentitySuiteReport& r) {
  nlohmann::json j{{"pair", r.pair},
                   {"seed", r.seed},
                   {"pairing_max_error", r.pairing_max_error},
                   {"pairing_ok", r.pairing_ok},
                   {"ok", r.ok()}};
  j["domains"] = nlohmann::json::array();
  for (const auto& d : r.domains) j["domains"].push_back(to_json(d));
  return j;
}

IdentitySuiteReport verify_identities(const cluster::DiagramPair& pair,
                                      int n_samples, double tol,
                                      std::uint64_t seed, par::Exec exec) {
  if (n_samples < 1) throw domain_error("verify_identities needs n_samples >= 1");
  IdentitySuiteReport suite;
  suite.pair = pair.label();
  suite.seed = seed;
  const Domain all[4] = {Domain::s_plus, Domain::s_minus, Domain::h_plus,
                         Domain::h_minus};
  std::vector<std::vector<std::pair<int, int>>> points;
  for (Domain d : all) points.push_back(domain_points(pair, d));

  std::vector<std::array<double, 4>> sums(n_samples);
  std::string error;
  std::mutex error_mutex;
  par::for_range_dynamic(static_cast<std::size_t>(n_samples), exec,
                         [&](std::size_t s) {
    try {
      auto assignment = cluster::random_assignment(
          pair.size(), seed + static_cast<std::uint64_t>(s));
      auto frame = cluster::numeric_frame(pair, assignment, 0,
                                          pair.full_period() - 1,
                                          par::Exec::serial);
      for (int d = 0; d < 4; ++d) sums[s][d] = sum_over_points(frame, points[d]);
    } catch (const std::exception& e) {
      std::scoped_lock lock(error_mutex);
      error = e.what();
    }
  });
  if (!error.empty()) throw numeric_error(error);

  for (int d = 0; d < 4; ++d) {
    IdentityReport r;
    r.pair = pair.label();
    r.domain = all[d];
    r.expected = expected_value(pair, all[d]);
    r.samples = n_samples;
    r.tol = tol;
    r.seed = seed;
    for (int s = 0; s < n_samples; ++s) {
      r.measured.push_back(sums[s][d]);
      r.max_abs_error = std::max(r.max_abs_error, std::abs(sums[s][d] - r.expected));
    }
    r.ok = r.max_abs_error < tol;
    suite.domains.push_back(std::move(r));
  }
  const double pairing_target =
      static_cast<double>(pair.half_period()) * pair.left.rank * pair.right.rank;
  for (int s = 0; s < n_samples; ++s)
    suite.pairing_max_error = std::max(
        suite.pairing_max_error, std::abs(sums[s][0] + sums[s][1] - pairing_target));
  suite.pairing_ok = suite.pairing_max_error < tol;
  return suite;
}

nlohmann::json to_json(const ConstancyReport& r) {
  return nlohmann::json{{"pair", r.pair},       {"samples", r.samples},
                        {"min_value", r.min_value}, {"max_value", r.max_value},
                        {"range", r.range},     {"tol", r.tol},
                        {"seed", r.seed},       {"min_seed", r.min_seed},
                        {"max_seed", r.max_seed}, {"ok", r.ok()}};
}

ConstancyReport verify_constancy(const cluster::DiagramPair& pair, int n_samples,
                                 std::uint64_t seed, double tol, par::Exec exec) {
  if (n_samples < 2) throw domain_error("verify_constancy needs n_samples >= 2");
  ConstancyReport report;
  report.pair = pair.label();
  report.samples = n_samples;
  report.seed = seed;
  report.tol = tol;
  const auto points = domain_points(pair, Domain::s_plus);
  std::vector<double> values(n_samples);
  std::string error;
  std::mutex error_mutex;
  par::for_range_dynamic(static_cast<std::size_t>(n_samples), exec,
                         [&](std::size_t s) {
    try {
      auto assignment = cluster::random_assignment(
          pair.size(), seed + static_cast<std::uint64_t>(s));
      auto frame = cluster::numeric_frame(pair, assignment, 0,
                                          pair.full_period() - 1,
                                          par::Exec::serial);
      values[s] = sum_over_points(frame, points);
    } catch (const std::exception& e) {
      std::scoped_lock lock(error_mutex);
      error = e.what();
    }
  });
  if (!error.empty()) throw numeric_error(error);
  report.min_value = values[0];
  report.max_value = values[0];
  report.min_seed = report.max_seed = seed;
  for (int s = 1; s < n_samples; ++s) {
    if (values[s] < report.min_value) {
      report.min_value = values[s];
      report.min_seed = seed + static_cast<std::uint64_t>(s);
    }
    if (values[s] > report.max_value) {
      report.max_value = values[s];
      report.max_seed = seed + static_cast<std::uint64_t>(s);
    }
  }
  report.range = report.max_value - report.min_value;
  return report;
}

nlohmann::json to_json(const LimitReport& r) {
  nlohmann::json j{{"pair", r.pair},
                   {"t_sequence", r.t_sequence},
                   {"expected", r.expected},
                   {"final_sum", r.final_sum},
                   {"final_max_term_dev", r.final_max_term_dev},
                   {"final_max_arg_dev", r.final_max_arg_dev},
                   {"term_tol", r.term_tol},
                   {"trend_ok", r.trend_ok},
                   {"final_ok", r.final_ok},
                   {"sum_ok", r.sum_ok},
                   {"ok", r.ok()}};
  j["witnesses"] = nlohmann::json::array();
  for (const auto& w : r.witnesses) j["witnesses"].push_back(cluster::to_json(w));
  return j;
}

LimitReport zero_infinity_limit(const cluster::DiagramPair& pair,
                                const std::vector<double>& t_sequence,
                                par::Exec exec) {
  if (t_sequence.empty())
    throw domain_error("zero_infinity_limit needs a nonempty t sequence");
  for (std::size_t k = 1; k < t_sequence.size(); ++k)
    if (!(t_sequence[k] < t_sequence[k - 1]))
      throw domain_error("t sequence must decrease toward 0");
  LimitReport report;
  report.pair = pair.label();
  report.t_sequence = t_sequence;
  const auto points = domain_points(pair, Domain::s_plus);
  auto trop = cluster::tropical_frame(pair, 0, pair.full_period() - 1, exec);

  std::vector<double> limits;  // 0 for positive tropical sign, 1 for negative
  limits.reserve(points.size());
  double negative_count = 0.0;
  for (const auto& [v, u] : points) {
    const auto sign = semifield::monomial_sign(trop.at(v, u));
    if (sign == semifield::MonomialSign::negative) {
      limits.push_back(1.0);
      negative_count += 1.0;
    } else if (sign == semifield::MonomialSign::positive) {
      limits.push_back(0.0);
    } else {
      throw invariant_error("tropical value is neither positive nor negative");
    }
  }
  report.expected = negative_count;

  report.trend_ok = true;
  report.term_tol = 2.0 * t_sequence.back();
  std::vector<double> prev_dev(points.size(),
                               std::numeric_limits<double>::infinity());
  for (double t : t_sequence) {
    auto assignment = semifield::PosRealAssignment::constant(pair.size(), t);
    auto frame =
        cluster::numeric_frame(pair, assignment, 0, pair.full_period() - 1, exec);
    double total = 0.0;
    double max_dev = 0.0, max_arg_dev = 0.0;
    for (std::size_t k = 0; k < points.size(); ++k) {
      const auto& [v, u] = points[k];
      const double y = frame.at(v, u);
      const double x = y / (1.0 + y);
      const double term = rogers_l(x) / pi_sq_over_6;
      const double dev = std::abs(term - limits[k]);
      if (dev > prev_dev[k] + 1e-12) {
        report.trend_ok = false;
        auto [i, ip] = pair.unflat(v);
        report.witnesses.push_back({i + 1, ip + 1, u,
                                    "term moved away from its tropical limit at t=" +
                                        std::to_string(t)});
      }
      prev_dev[k] = dev;
      max_dev = std::max(max_dev, dev);
      max_arg_dev = std::max(max_arg_dev, std::abs(x - limits[k]));
      total += term;
    }
    report.final_sum = total;
    report.final_max_term_dev = max_dev;
    report.final_max_arg_dev = max_arg_dev;
  }
  report.final_ok = report.final_max_arg_dev < report.term_tol;
  report.sum_ok =
      std::abs(report.final_sum - report.expected) <= 1e-3 * report.expected;
  return report;
}

}  // namespace ysys::dilog
