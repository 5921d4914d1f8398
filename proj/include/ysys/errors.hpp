#pragma once

#include <stdexcept>
#include <string>

namespace ysys {

/// Invalid Dynkin family/rank combination or unparsable diagram spec.
struct diagram_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An operation was called outside its domain (bad index parity,
/// vector not in the admissible root set, argument out of range, ...).
struct domain_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Floating-point overflow/underflow, non-finite intermediate, or a
/// solver that failed to converge.
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A structural property that must hold by theorem failed to hold.
/// Signals an implementation bug, never bad user input.
struct invariant_error : std::logic_error {
  using std::logic_error::logic_error;
};

/// A symbolic computation was requested beyond the configured budget.
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ysys
