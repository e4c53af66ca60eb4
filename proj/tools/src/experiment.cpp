#include "rankpc_cli/experiment.hpp"

#include <tbb/blocked_range.h>
#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

#include <algorithm>
#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "rankpc/citest.hpp"
#include "rankpc/graph_io.hpp"
#include "rankpc/pc.hpp"
#include "rankpc/text.hpp"

namespace rankpc::cli {

namespace fs = std::filesystem;

std::uint64_t replicate_seed(std::uint64_t base_seed, const ReplicateKey& key) {
  return derive_seed(base_seed, {static_cast<std::uint64_t>(key.p), static_cast<std::uint64_t>(key.n),
                                 std::bit_cast<std::uint64_t>(key.d), static_cast<std::uint64_t>(key.regime),
                                 static_cast<std::uint64_t>(key.replicate)});
}

Replicate generate_replicate(std::uint64_t base_seed, const ReplicateKey& key) {
  const std::uint64_t seed = replicate_seed(base_seed, key);
  RngStream rng(seed);
  const double s = key.p > 1 ? key.d / (key.p - 1) : 0.0;
  Dag dag = random_dag(key.p, s, rng);
  Eigen::MatrixXd weights = random_weights(dag, rng);
  Pdag truth = cpdag(dag);
  SemModel model = make_sem(std::move(dag), std::move(weights), key.regime);
  Dataset data = sample_sem(model, static_cast<std::size_t>(key.n), rng);
  return {key, seed, std::move(model), std::move(data), std::move(truth)};
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<ReplicateKey> replicate_keys(const ExperimentConfig& config) {
  std::vector<ReplicateKey> keys;
  for (int p : config.p_values) {
    for (long long n : config.n_values) {
      for (double d : config.degrees) {
        for (Regime regime : config.regimes) {
          for (int r = 0; r < config.replicates; ++r) keys.push_back({p, n, d, regime, r});
        }
      }
    }
  }
  return keys;
}

struct CellOutput {
  std::vector<ExperimentRecord> records;
  std::vector<ExperimentFailure> failures;
};

CellOutput run_cell(const ExperimentConfig& config, const ReplicateKey& key) {
  CellOutput out;
  const std::uint64_t seed = replicate_seed(config.seed, key);
  std::optional<Replicate> rep;
  try {
    rep = generate_replicate(config.seed, key);
  } catch (const std::exception& e) {
    out.failures.push_back({key, seed, "", std::string("data generation: ") + e.what()});
    return out;
  }

  PcOptions options;
  options.max_cond = config.max_cond;
  options.stable = config.stable;

  for (CorrelationMethod method : config.methods) {
    try {
      const auto start = Clock::now();
      auto sigma = std::make_shared<const CorrelationMatrix>(estimate_correlation_matrix(rep->data, method));
      const double estimate_ms = elapsed_ms(start);
      for (double x : config.log10_alpha) {
        const double alpha = std::pow(10.0, x);
        const auto pc_start = Clock::now();
        const auto decider = make_correlation_ci_decider(sigma, key.n, FisherZRule{alpha});
        const PcResult result = run_pc(*decider, key.p, options);
        const double runtime = estimate_ms + elapsed_ms(pc_start);

        ExperimentRecord rec;
        rec.p = key.p;
        rec.n = key.n;
        rec.d = key.d;
        rec.regime = key.regime;
        rec.method = method;
        rec.alpha = alpha;
        rec.replicate = key.replicate;
        rec.seed = seed;
        rec.shd = shd(result.pdag, rep->truth);
        rec.tests_run = result.diagnostics.tests_run;
        rec.max_cond_used = result.diagnostics.max_cond_used;
        rec.runtime_ms = config.timing ? runtime : 0.0;
        out.records.push_back(rec);
      }
    } catch (const std::exception& e) {
      out.failures.push_back({key, seed, std::string(to_string(method)), e.what()});
    }
  }
  return out;
}

auto record_key(const ExperimentRecord& r) {
  return std::tuple(r.p, r.n, r.d, static_cast<int>(r.regime), static_cast<int>(r.method), r.alpha, r.replicate);
}

std::string stem(const ReplicateKey& key) {
  return "p" + std::to_string(key.p) + "_n" + std::to_string(key.n) + "_d" + text::format_double(key.d) + "_" +
         std::string(to_string(key.regime)) + "_r" + std::to_string(key.replicate);
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

void sort_records(std::vector<ExperimentRecord>& records) {
  std::sort(records.begin(), records.end(),
            [](const ExperimentRecord& a, const ExperimentRecord& b) { return record_key(a) < record_key(b); });
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  const std::vector<ReplicateKey> keys = replicate_keys(config);
  std::vector<CellOutput> cells(keys.size());

  tbb::task_arena arena(config.threads > 0 ? config.threads : tbb::task_arena::automatic);
  arena.execute([&] {
    tbb::parallel_for(tbb::blocked_range<std::size_t>(0, keys.size()), [&](const tbb::blocked_range<std::size_t>& range) {
      for (std::size_t i = range.begin(); i != range.end(); ++i) cells[i] = run_cell(config, keys[i]);
    });
  });

  // Each cell owns its slot, so collection order is the key order regardless of scheduling.
  ExperimentResult result;
  for (auto& cell : cells) {
    result.records.insert(result.records.end(), cell.records.begin(), cell.records.end());
    result.failures.insert(result.failures.end(), cell.failures.begin(), cell.failures.end());
  }
  sort_records(result.records);
  return result;
}

std::vector<SummaryRow> summarize(const std::vector<ExperimentRecord>& records) {
  using GroupKey = std::tuple<int, long long, double, int, int>;
  struct Tally {
    double sum = 0.0;
    std::size_t count = 0;
  };
  std::map<GroupKey, std::map<double, Tally>> groups;
  for (const auto& r : records) {
    auto& tally = groups[{r.p, r.n, r.d, static_cast<int>(r.regime), static_cast<int>(r.method)}][r.alpha];
    tally.sum += static_cast<double>(r.shd);
    ++tally.count;
  }

  std::vector<SummaryRow> rows;
  for (const auto& [key, by_alpha] : groups) {
    const auto& [p, n, d, regime, method] = key;
    SummaryRow row{p, n, d, static_cast<Regime>(regime), static_cast<CorrelationMethod>(method), 0.0, 0.0, 0};
    bool first = true;
    for (const auto& [alpha, tally] : by_alpha) {  // ascending alpha
      const double mean = tally.sum / static_cast<double>(tally.count);
      if (first || mean < row.mean_shd) {
        row.best_alpha = alpha;
        row.mean_shd = mean;
        row.replicates = tally.count;
        first = false;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

constexpr std::string_view kRecordsHeader = "p,n,d,regime,method,alpha,replicate,seed,shd,tests_run,max_cond_used,runtime_ms";

}  // namespace

void write_records_csv(std::ostream& out, const std::vector<ExperimentRecord>& records) {
  out << kRecordsHeader << '\n';
  for (const auto& r : records) {
    out << r.p << ',' << r.n << ',' << text::format_double(r.d) << ',' << to_string(r.regime) << ','
        << to_string(r.method) << ',' << text::format_double(r.alpha) << ',' << r.replicate << ',' << r.seed << ','
        << r.shd << ',' << r.tests_run << ',' << r.max_cond_used << ',' << text::format_double(r.runtime_ms) << '\n';
  }
}

std::vector<ExperimentRecord> read_records_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || text::trim(line) != kRecordsHeader) {
    throw std::runtime_error("records file must start with the header '" + std::string(kRecordsHeader) + "'");
  }
  std::vector<ExperimentRecord> out;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    const auto fields = text::split(text::trim(line), ',');
    try {
      if (fields.size() != 12) throw std::invalid_argument("expected 12 fields, got " + std::to_string(fields.size()));
      ExperimentRecord r;
      r.p = static_cast<int>(text::parse_int(fields[0]));
      r.n = text::parse_int(fields[1]);
      r.d = text::parse_double(fields[2]);
      r.regime = parse_regime(fields[3]);
      r.method = parse_correlation_method(fields[4]);
      r.alpha = text::parse_double(fields[5]);
      r.replicate = static_cast<int>(text::parse_int(fields[6]));
      std::uint64_t seed = 0;
      const auto [ptr, ec] = std::from_chars(fields[7].data(), fields[7].data() + fields[7].size(), seed);
      if (ec != std::errc{} || ptr != fields[7].data() + fields[7].size()) {
        throw std::invalid_argument("bad seed '" + std::string(fields[7]) + "'");
      }
      r.seed = seed;
      const long long shd_value = text::parse_int(fields[8]);
      const long long tests = text::parse_int(fields[9]);
      if (shd_value < 0 || tests < 0) throw std::invalid_argument("negative count");
      r.shd = static_cast<std::size_t>(shd_value);
      r.tests_run = static_cast<std::size_t>(tests);
      r.max_cond_used = static_cast<int>(text::parse_int(fields[10]));
      r.runtime_ms = text::parse_double(fields[11]);
      out.push_back(r);
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error("records line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "p,n,d,regime,method,best_alpha,mean_shd,replicates\n";
  for (const auto& r : rows) {
    out << r.p << ',' << r.n << ',' << text::format_double(r.d) << ',' << to_string(r.regime) << ','
        << to_string(r.method) << ',' << text::format_double(r.best_alpha) << ',' << text::format_double(r.mean_shd)
        << ',' << r.replicates << '\n';
  }
}

void write_failures_csv(std::ostream& out, const std::vector<ExperimentFailure>& failures) {
  out << "p,n,d,regime,replicate,seed,method,message\n";
  for (const auto& f : failures) {
    std::string message = f.message;
    std::replace(message.begin(), message.end(), '"', '\'');
    std::replace(message.begin(), message.end(), '\n', ' ');
    out << f.key.p << ',' << f.key.n << ',' << text::format_double(f.key.d) << ',' << to_string(f.key.regime) << ','
        << f.key.replicate << ',' << f.seed << ',' << f.method << ",\"" << message << "\"\n";
  }
}

// ---------------------------------------------------------------------------
// Plot data

std::vector<PlotTable> plot_tables(const std::vector<ExperimentRecord>& records) {
  std::map<std::tuple<int, double, int>, PlotTable> tables;
  for (const SummaryRow& row : summarize(records)) {
    auto [it, inserted] = tables.try_emplace({static_cast<int>(row.regime), row.d, row.p},
                                             PlotTable{row.regime, row.d, row.p, {}});
    it->second.rows.push_back(row);
  }
  std::vector<PlotTable> out;
  for (auto& [key, table] : tables) {
    std::sort(table.rows.begin(), table.rows.end(), [](const SummaryRow& a, const SummaryRow& b) {
      return std::tuple(to_string(a.method), a.n) < std::tuple(to_string(b.method), b.n);
    });
    out.push_back(std::move(table));
  }
  return out;
}

std::string plot_file_name(const PlotTable& table) {
  return std::string(to_string(table.regime)) + "_d" + text::format_double(table.d) + "_p" + std::to_string(table.p) +
         ".dat";
}

void write_plot_table(std::ostream& out, const PlotTable& table) {
  out << "n method mean_shd\n";
  for (const auto& row : table.rows) {
    out << row.n << ' ' << to_string(row.method) << ' ' << text::format_double(row.mean_shd) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Subcommands

std::vector<fs::path> cmd_simulate(const ExperimentConfig& config, const fs::path& out_dir) {
  config.validate();
  fs::create_directories(out_dir);
  std::vector<fs::path> written;
  const fs::path manifest_path = out_dir / "manifest.csv";
  std::ofstream manifest = open_output(manifest_path);
  manifest << "p,n,d,regime,replicate,seed,data_file,model_file,cpdag_file\n";

  for (const ReplicateKey& key : replicate_keys(config)) {
    const Replicate rep = generate_replicate(config.seed, key);
    const std::string base = stem(key);
    const fs::path data_path = out_dir / ("data_" + base + ".csv");
    const fs::path model_path = out_dir / ("model_" + base + ".txt");
    const fs::path cpdag_path = out_dir / ("cpdag_" + base + ".txt");
    {
      auto out = open_output(data_path);
      write_csv(out, rep.data);
    }
    {
      auto out = open_output(model_path);
      out << "# seed=" << rep.seed << '\n';
      write_sem(out, rep.model);
    }
    {
      auto out = open_output(cpdag_path);
      write_edge_list(out, rep.truth);
    }
    manifest << key.p << ',' << key.n << ',' << text::format_double(key.d) << ',' << to_string(key.regime) << ','
             << key.replicate << ',' << rep.seed << ',' << data_path.filename().string() << ','
             << model_path.filename().string() << ',' << cpdag_path.filename().string() << '\n';
    written.insert(written.end(), {data_path, model_path, cpdag_path});
  }
  written.push_back(manifest_path);
  return written;
}

std::vector<fs::path> cmd_experiment(const ExperimentConfig& config, const fs::path& out_dir) {
  const ExperimentResult result = run_experiment(config);
  fs::create_directories(out_dir);
  const fs::path records_path = out_dir / "records.csv";
  const fs::path summary_path = out_dir / "summary.csv";
  const fs::path failures_path = out_dir / "failures.csv";
  {
    auto out = open_output(records_path);
    write_records_csv(out, result.records);
  }
  {
    auto out = open_output(summary_path);
    write_summary_csv(out, summarize(result.records));
  }
  {
    auto out = open_output(failures_path);
    write_failures_csv(out, result.failures);
  }
  return {records_path, summary_path, failures_path};
}

std::vector<fs::path> cmd_plotdata(const fs::path& records_file, const fs::path& out_dir) {
  std::ifstream in(records_file);
  if (!in) throw std::runtime_error("cannot open records file " + records_file.string());
  const auto tables = plot_tables(read_records_csv(in));
  fs::create_directories(out_dir);
  std::vector<fs::path> written;
  if (tables.empty()) {
    const fs::path path = out_dir / "plotdata.dat";
    auto out = open_output(path);
    out << "n method mean_shd\n";
    return {path};
  }
  for (const auto& table : tables) {
    const fs::path path = out_dir / plot_file_name(table);
    auto out = open_output(path);
    write_plot_table(out, table);
    written.push_back(path);
  }
  return written;
}

}  // namespace rankpc::cli
