// Command-line front end: runs the verification suites and emits
// machine-readable reports. Exit codes: 0 all-pass, 1 any check failed,
// 2 usage/config error (including symbolic budget exceedance).

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "ysys/cluster.hpp"
#include "ysys/constant.hpp"
#include "ysys/dilog.hpp"
#include "ysys/dynkin.hpp"
#include "ysys/errors.hpp"
#include "ysys/tropical.hpp"
#include "ysys/version.hpp"
#include "ysys/wedge.hpp"

namespace {

using nlohmann::json;

struct CommonOpts {
  std::string pair_spec;
  std::string type_spec;
  int level = 2;
  int samples = 5;
  double tol = 1e-8;
  std::uint64_t seed = 20260810;
  int budget_rr = 6;
  std::string out_path;
  std::string format = "json";
  std::string domain;
  std::string pairs_csv;
  bool pairs_given = false;
};

int env_budget() {
  if (const char* env = std::getenv("YSYSLAB_BUDGET_RR")) {
    try {
      return std::stoi(env);
    } catch (...) {
      throw ysys::domain_error("YSYSLAB_BUDGET_RR is not an integer");
    }
  }
  return 6;
}

void flatten_csv(const json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten_csv(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(),
                  os);
  } else if (j.is_array()) {
    for (std::size_t k = 0; k < j.size(); ++k)
      flatten_csv(j[k], prefix + "[" + std::to_string(k) + "]", os);
  } else {
    os << prefix << "," << j.dump() << "\n";
  }
}

void emit(const json& report, const CommonOpts& opts) {
  std::ostringstream body;
  if (opts.format == "csv") {
    body << "key,value\n";
    flatten_csv(report, "", body);
  } else {
    body << report.dump(2) << "\n";
  }
  if (opts.out_path.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream out(opts.out_path);
    if (!out) throw ysys::domain_error("cannot open output file " + opts.out_path);
    out << body.str();
  }
}

json envelope(const std::string& command, const CommonOpts& opts) {
  json j;
  j["command"] = command;
  j["library_version"] = ysys::library_version;
  j["seed"] = opts.seed;
  j["tolerances"] = {{"tol", opts.tol}};
  return j;
}

json run_tropical(const ysys::cluster::DiagramPair& pair, ysys::par::Exec exec) {
  auto counts = ysys::tropical::sign_counts(pair, exec);
  auto regions = ysys::tropical::verify_sign_regions(pair, exec);
  auto dvec = ysys::tropical::verify_dvector_factorization(pair, exec);
  json j = ysys::tropical::to_json(counts);
  j["regions"] = ysys::tropical::to_json(regions);
  j["d_vector_factorization"] = ysys::tropical::to_json(dvec);
  j["ok"] = counts.ok() && regions.ok() && dvec.ok();
  return j;
}

json run_periodicity(const ysys::cluster::DiagramPair& pair, const CommonOpts& o,
                     ysys::par::Exec exec) {
  auto trop = ysys::cluster::verify_periodicity_tropical(pair, exec);
  auto num = ysys::cluster::verify_periodicity_numeric(pair, o.samples, o.seed,
                                                       1e-9, exec);
  json j;
  j["tropical"] = ysys::cluster::to_json(trop);
  j["numeric"] = ysys::cluster::to_json(num);
  j["ok"] = trop.ok() && num.ok();
  return j;
}

json run_dilog(const ysys::cluster::DiagramPair& pair, const CommonOpts& o,
               ysys::par::Exec exec) {
  if (!o.domain.empty()) {
    const auto domain = ysys::dilog::parse_domain(o.domain);
    json j;
    j["pair"] = pair.label();
    j["domain"] = ysys::dilog::domain_name(domain);
    j["expected"] = ysys::dilog::expected_value(pair, domain);
    json measured = json::array();
    double max_err = 0.0;
    for (int s = 0; s < o.samples; ++s) {
      auto assignment = ysys::cluster::random_assignment(
          pair.size(), o.seed + static_cast<std::uint64_t>(s));
      const double value = ysys::dilog::dilog_sum(pair, assignment, domain, exec);
      measured.push_back(value);
      max_err = std::max(max_err,
                         std::abs(value - j["expected"].get<double>()));
    }
    j["measured"] = measured;
    j["max_abs_error"] = max_err;
    j["ok"] = max_err < o.tol;
    return j;
  }
  auto suite = ysys::dilog::verify_identities(pair, o.samples, o.tol, o.seed, exec);
  json j = ysys::dilog::to_json(suite);
  j["ok"] = suite.ok();
  return j;
}

json run_constancy(const ysys::cluster::DiagramPair& pair, const CommonOpts& o,
                   ysys::par::Exec exec) {
  auto r = ysys::dilog::verify_constancy(pair, std::max(o.samples, 2), o.seed,
                                         1e-10, exec);
  return ysys::dilog::to_json(r);
}

json run_limit(const ysys::cluster::DiagramPair& pair, ysys::par::Exec exec) {
  auto r = ysys::dilog::zero_infinity_limit(pair, {0.1, 0.01, 0.001}, exec);
  return ysys::dilog::to_json(r);
}

json run_wedge(const ysys::cluster::DiagramPair& pair, const CommonOpts& o,
               ysys::par::Exec exec) {
  auto report = ysys::wedge::wedge_vanishing(pair, o.budget_rr, exec);
  auto factor = ysys::wedge::verify_factorizations(pair, o.budget_rr, o.seed, exec);
  json j = ysys::wedge::to_json(report);
  j["factorizations"] = ysys::wedge::to_json(factor);
  j["ok"] = report.ok() && factor.ok();
  return j;
}

json run_constant(const CommonOpts& o) {
  auto diagram = ysys::dynkin::parse_diagram(o.type_spec);
  auto solved = ysys::constant::solve_constant(diagram, o.level, 1e-13);
  auto identity = ysys::constant::verify_level_identity(solved, o.tol);
  auto bridge = ysys::constant::constant_frame_bridge(solved);
  json j = ysys::constant::to_json(solved);
  j["identity_lhs"] = identity.lhs;
  j["identity_rhs"] = identity.rhs;
  j["identity_rhs_alt"] = identity.rhs_alt;
  j["bridge"] = ysys::constant::to_json(bridge);
  j["ok"] = identity.ok() && bridge.ok();
  return j;
}

std::vector<std::string> default_suite_pairs() {
  std::vector<std::string> out;
  for (const char* left : {"A1", "A2", "A3", "A4", "D4"})
    for (const char* right : {"A1", "A2", "A3"})
      out.push_back(std::string(left) + "x" + right);
  return out;
}

json run_suite(const CommonOpts& o) {
  std::vector<std::string> pair_specs;
  if (o.pairs_given) {
    std::stringstream ss(o.pairs_csv);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) pair_specs.push_back(item);
  } else {
    pair_specs = default_suite_pairs();
  }
  json rows = json::array();
  std::vector<json> results(pair_specs.size());
  // Fan out across pairs; each pair's checks run serially inside.
  ysys::par::for_range_dynamic(pair_specs.size(), ysys::par::default_exec(),
                               [&](std::size_t k) {
    json row;
    try {
      auto pair = ysys::cluster::parse_pair(pair_specs[k]);
      const auto exec = ysys::par::Exec::serial;
      row["pair"] = pair.label();
      row["tropical"] = run_tropical(pair, exec)["ok"];
      row["periodicity"] = run_periodicity(pair, o, exec)["ok"];
      row["dilog"] = run_dilog(pair, o, exec)["ok"];
      row["constancy"] = run_constancy(pair, o, exec)["ok"];
      row["limit"] = run_limit(pair, exec)["ok"];
      if (pair.left.rank * pair.right.rank <= o.budget_rr)
        row["wedge"] = run_wedge(pair, o, exec)["ok"];
      bool ok = true;
      for (const auto& [key, value] : row.items())
        if (value.is_boolean()) ok = ok && value.get<bool>();
      row["ok"] = ok;
    } catch (const std::exception& e) {
      row["pair"] = pair_specs[k];
      row["error"] = e.what();
      row["ok"] = false;
    }
    results[k] = std::move(row);
  });
  bool all_ok = true;
  for (auto& row : results) {
    if (!row["ok"].get<bool>()) all_ok = false;
    rows.push_back(std::move(row));
  }
  json j;
  j["pairs"] = rows;
  j["ok"] = all_ok;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Y-system verifier: tropical sign counts, periodicity,\n"
               "functional dilogarithm identities, constant-level identities,\n"
               "and the symbolic wedge cancellation, for pairs of simply laced\n"
               "Dynkin diagrams."};
  app.require_subcommand(1);
  CommonOpts opts;
  try {
    opts.budget_rr = env_budget();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  auto add_common = [&](CLI::App* cmd, bool wants_pair) {
    if (wants_pair)
      cmd->add_option("--pair", opts.pair_spec, "diagram pair, e.g. A3xA2")
          ->required();
    cmd->add_option("--samples", opts.samples, "random assignments to test");
    cmd->add_option("--tol", opts.tol, "identity tolerance");
    cmd->add_option("--seed", opts.seed, "RNG seed (reports embed it)");
    cmd->add_option("--budget-rr", opts.budget_rr,
                    "symbolic budget on the rank product");
    cmd->add_option("--out", opts.out_path, "write the report to this path");
    cmd->add_option("--format", opts.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  auto* tropical_cmd = app.add_subcommand("tropical", "sign counts and regions");
  add_common(tropical_cmd, true);
  auto* period_cmd = app.add_subcommand("periodicity", "full and half periods");
  add_common(period_cmd, true);
  auto* dilog_cmd = app.add_subcommand("dilog", "functional identities");
  add_common(dilog_cmd, true);
  dilog_cmd->add_option("--domain", opts.domain, "restrict to S+, S-, H+ or H-");
  auto* constancy_cmd = app.add_subcommand("constancy", "assignment independence");
  add_common(constancy_cmd, true);
  auto* limit_cmd = app.add_subcommand("limit", "limit toward 0/infinity");
  add_common(limit_cmd, true);
  auto* wedge_cmd = app.add_subcommand("wedge", "symbolic wedge cancellation");
  add_common(wedge_cmd, true);
  auto* constant_cmd = app.add_subcommand("constant", "constant-level system");
  constant_cmd->add_option("--type", opts.type_spec, "diagram, e.g. A3")
      ->required();
  constant_cmd->add_option("--level", opts.level, "level >= 2")->required();
  add_common(constant_cmd, false);
  auto* all_cmd = app.add_subcommand("all", "full suite over a pair list");
  add_common(all_cmd, false);
  all_cmd->add_option("--pairs", opts.pairs_csv,
                      "comma-separated pair list (default: builtin sweep)");

  CLI11_PARSE(app, argc, argv);
  opts.pairs_given = all_cmd->count("--pairs") > 0;

  try {
    const auto exec = ysys::par::default_exec();
    json report;
    std::string command;
    if (app.got_subcommand(tropical_cmd)) {
      command = "tropical";
      report = run_tropical(ysys::cluster::parse_pair(opts.pair_spec), exec);
    } else if (app.got_subcommand(period_cmd)) {
      command = "periodicity";
      report = run_periodicity(ysys::cluster::parse_pair(opts.pair_spec), opts, exec);
    } else if (app.got_subcommand(dilog_cmd)) {
      command = "dilog";
      report = run_dilog(ysys::cluster::parse_pair(opts.pair_spec), opts, exec);
    } else if (app.got_subcommand(constancy_cmd)) {
      command = "constancy";
      report = run_constancy(ysys::cluster::parse_pair(opts.pair_spec), opts, exec);
    } else if (app.got_subcommand(limit_cmd)) {
      command = "limit";
      report = run_limit(ysys::cluster::parse_pair(opts.pair_spec), exec);
    } else if (app.got_subcommand(wedge_cmd)) {
      command = "wedge";
      report = run_wedge(ysys::cluster::parse_pair(opts.pair_spec), opts, exec);
    } else if (app.got_subcommand(constant_cmd)) {
      command = "constant";
      report = run_constant(opts);
    } else if (app.got_subcommand(all_cmd)) {
      command = "all";
      report = run_suite(opts);
    }
    json out = envelope(command, opts);
    out["report"] = report;
    const bool ok = report.value("ok", false);
    out["ok"] = ok;
    emit(out, opts);
    return ok ? 0 : 1;
  } catch (const ysys::budget_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ysys::diagram_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ysys::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
