#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rankpc/correlation.hpp"
#include "rankpc/simulate.hpp"

namespace rankpc::cli {

/// log10 alpha values searched per (p, n, d, regime, method) cell.
std::vector<double> default_log10_alpha_grid();

/// One simulation study. Every list is a grid axis; the study runs the full
/// cross product.
struct ExperimentConfig {
  std::vector<int> p_values{10};
  std::vector<long long> n_values{100, 1000};
  /// Expected node degree d; each edge is present with probability d / (p - 1).
  std::vector<double> degrees{3.0};
  std::vector<Regime> regimes{Regime::normal};
  std::vector<CorrelationMethod> methods{CorrelationMethod::pearson, CorrelationMethod::spearman};
  std::vector<double> log10_alpha = default_log10_alpha_grid();
  int replicates = 10;
  std::uint64_t seed = 1;

  std::optional<int> max_cond;
  bool stable = false;
  /// 0 lets the scheduler pick.
  int threads = 0;
  /// When false, runtime_ms is written as 0 so records are byte-reproducible.
  bool timing = true;

  /// Throws ConfigError describing the first violated constraint.
  void validate() const;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// INI-style text:
///
///   [experiment]
///   p = 10, 22
///   n = 100, 1000
///   degree = 3
///   regimes = normal, f11, contaminated
///   methods = pearson, spearman
///   log10_alpha = -4, -2        (optional; defaults to the 10-point grid)
///   replicates = 50
///   seed = 42
///
///   [run]
///   max_cond = 3                (optional)
///   stable = false
///   threads = 0
///   timing = true
///
/// Unknown sections or keys are rejected. The result is validated.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace rankpc::cli
