#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rankpc::cli {

struct OracleCheckReport {
  int trials = 0;
  int exact = 0;
  /// Trials whose largest queried |S| exceeded deg(G).
  int cond_size_violations = 0;
  /// One line per failing trial, with its seed and graph.
  std::vector<std::string> failures;

  bool ok() const { return exact == trials && cond_size_violations == 0; }
};

/// Runs PC with the d-separation oracle on `trials` random DAGs with
/// 1 <= p <= p_max and edge probability cycling through 0.2, 0.4, 0.6, and
/// compares the output with cpdag(G). Throws std::invalid_argument unless
/// 1 <= p_max <= 8 and trials >= 0.
OracleCheckReport cmd_oracle_check(int p_max, int trials, std::uint64_t seed);

/// "200/200 exact, max |S| ≤ deg(G) in all trials", or the failure counts.
std::string format_report(const OracleCheckReport& report);

}  // namespace rankpc::cli
