#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "rankpc/correlation.hpp"
#include "rankpc/graph.hpp"
#include "rankpc/simulate.hpp"
#include "rankpc_cli/config.hpp"

namespace rankpc::cli {

/// Coordinates of one simulated dataset.
struct ReplicateKey {
  int p;
  long long n;
  double d;
  Regime regime;
  int replicate;
};

/// hash(base seed, p, n, d, regime, replicate). Independent of the method and
/// alpha, so every method in a cell sees the same data.
std::uint64_t replicate_seed(std::uint64_t base_seed, const ReplicateKey& key);

struct Replicate {
  ReplicateKey key;
  std::uint64_t seed;
  SemModel model;
  Dataset data;
  Pdag truth;
};

/// Draws the DAG, the edge weights and the data, in that order, from one stream.
Replicate generate_replicate(std::uint64_t base_seed, const ReplicateKey& key);

struct ExperimentRecord {
  int p = 0;
  long long n = 0;
  double d = 0.0;
  Regime regime = Regime::normal;
  CorrelationMethod method = CorrelationMethod::pearson;
  double alpha = 0.0;
  int replicate = 0;
  std::uint64_t seed = 0;
  std::size_t shd = 0;
  std::size_t tests_run = 0;
  int max_cond_used = -1;
  double runtime_ms = 0.0;

  friend bool operator==(const ExperimentRecord&, const ExperimentRecord&) = default;
};

/// A run that threw; recorded instead of aborting the study.
struct ExperimentFailure {
  ReplicateKey key;
  std::uint64_t seed;
  std::string method;  // empty when data generation itself failed
  std::string message;
};

struct ExperimentResult {
  std::vector<ExperimentRecord> records;
  std::vector<ExperimentFailure> failures;
};

/// Runs every (p, n, d, regime, replicate) cell in parallel; within a cell the
/// correlation matrix is estimated once per method and PC runs once per alpha.
/// Output is sorted canonically, so it does not depend on scheduling.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Mean SHD at the best alpha for one (p, n, d, regime, method) group.
struct SummaryRow {
  int p;
  long long n;
  double d;
  Regime regime;
  CorrelationMethod method;
  double best_alpha;
  double mean_shd;
  std::size_t replicates;
};

/// Best alpha minimizes mean SHD across replicates; ties go to the smaller alpha.
std::vector<SummaryRow> summarize(const std::vector<ExperimentRecord>& records);

/// Canonical order: p, n, d, regime, method, alpha, replicate.
void sort_records(std::vector<ExperimentRecord>& records);

void write_records_csv(std::ostream& out, const std::vector<ExperimentRecord>& records);
/// Throws std::runtime_error naming the line of a malformed row.
std::vector<ExperimentRecord> read_records_csv(std::istream& in);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
void write_failures_csv(std::ostream& out, const std::vector<ExperimentFailure>& failures);

/// Rows of one plot: a (regime, d, p) group of the summary.
struct PlotTable {
  Regime regime;
  double d;
  int p;
  std::vector<SummaryRow> rows;  // sorted by (method, n)
};

std::vector<PlotTable> plot_tables(const std::vector<ExperimentRecord>& records);
/// e.g. "f11_d3_p10.dat".
std::string plot_file_name(const PlotTable& table);
/// Whitespace-delimited, header "n method mean_shd".
void write_plot_table(std::ostream& out, const PlotTable& table);

/// Subcommand bodies. Each writes into `out_dir`, creating it if needed, and
/// returns the list of files written.
std::vector<std::filesystem::path> cmd_simulate(const ExperimentConfig& config, const std::filesystem::path& out_dir);
std::vector<std::filesystem::path> cmd_experiment(const ExperimentConfig& config,
                                                  const std::filesystem::path& out_dir);
/// An empty record set yields a single header-only "plotdata.dat".
std::vector<std::filesystem::path> cmd_plotdata(const std::filesystem::path& records_file,
                                                const std::filesystem::path& out_dir);

}  // namespace rankpc::cli
