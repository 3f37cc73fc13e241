#pragma once

#include <stdexcept>
#include <string>

namespace satake {

// Error categories mapped to process exit codes by the CLI:
// MathError -> 1 (a verified identity failed), UsageError -> 2, BudgetError -> 3.
struct MathError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace satake
