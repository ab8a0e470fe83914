#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace karamata::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// One closed-form value against its interval_max oracle.
struct OracleRow {
  std::string name;
  std::string params;
  double closed_form = 0.0;
  double oracle_value = 0.0;
  double abs_diff = 0.0;
};

inline constexpr double kOracleTol = 1e-7;

/// Closed form vs oracle over the default grid, or a single point.
/// fault is added to every closed form (harness self-test).
std::vector<OracleRow> oracle_sweep(bool single_point, double fault = 0.0);

/// Entry point shared by the executable and the tests. Returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace karamata::cli
