#pragma once

#include <nlohmann/json_fwd.hpp>

#include <cmath>
#include <string>
#include <vector>

#include "ysys/dynkin.hpp"

namespace ysys::constant {

/// Positive solution of the algebraic system attached to a diagram and
/// a level: the squares of the unknowns balance the neighbor products,
/// with the two boundary factors omitted.
struct LevelSystem {
  dynkin::DynkinDiagram diagram;
  int level = 0;
  std::vector<std::vector<double>> y;  // [node][m-1], m = 1..level-1
  double residual = 0.0;
  int iterations = 0;
};

nlohmann::json to_json(const LevelSystem& s);

/// Relative defect of the defining relations at the current values.
double system_residual(const LevelSystem& s);

/// Damped fixed-point iteration from the all-ones start; the damping is
/// halved when the residual stops decreasing. Uniqueness of the positive
/// solution makes any converged point the right one.
LevelSystem solve_constant(const dynkin::DynkinDiagram& diagram, int level,
                           double tol = 1e-13, int max_iter = 100000);

/// Same iteration from a caller-supplied start (solver-robustness tests).
LevelSystem solve_constant_from(const dynkin::DynkinDiagram& diagram, int level,
                                std::vector<std::vector<double>> start,
                                double tol = 1e-13, int max_iter = 100000);

/// Closed-form solution values for the rank-1 diagram.
double rank1_closed_form(int level, int m);

struct LevelIdentityReport {
  std::string type;
  int level = 0;
  double lhs = 0.0;        // scaled dilogarithm sum
  double rhs = 0.0;        // level * dim g / (h + level) - r
  double rhs_alt = 0.0;    // (level-1) r h / (h + level)
  double residual = 0.0;   // solver residual
  double tol = 1e-8;
  bool ok() const {
    return std::abs(lhs - rhs) < tol && std::abs(rhs - rhs_alt) < 1e-12;
  }
};

nlohmann::json to_json(const LevelIdentityReport& r);

LevelIdentityReport verify_level_identity(const LevelSystem& solved,
                                          double tol = 1e-8);

struct BridgeReport {
  std::string type;
  int level = 0;
  double max_relation_residual = 0.0;  // defect in the functional system
  double functional_sum = 0.0;         // full-window dilogarithm sum
  double functional_expected = 0.0;    // 2 h r r'
  double tol = 1e-10;
  bool relations_ok = false;
  bool sum_ok = false;
  bool ok() const { return relations_ok && sum_ok; }
};

nlohmann::json to_json(const BridgeReport& r);

/// Embeds the solved constant values as a u-independent solution of the
/// functional system for the pair (X, A_{level-1}) and evaluates the
/// full-window dilogarithm sum against its exact value.
BridgeReport constant_frame_bridge(const LevelSystem& solved,
                                   double relation_tol = 1e-10,
                                   double sum_tol = 1e-8);

}  // namespace ysys::constant
