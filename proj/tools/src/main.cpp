#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "rankpc/citest.hpp"
#include "rankpc/correlation.hpp"
#include "rankpc/dataset.hpp"
#include "rankpc/pc.hpp"
#include "rankpc_cli/config.hpp"
#include "rankpc_cli/experiment.hpp"
#include "rankpc_cli/oracle_check.hpp"

namespace {

namespace cli = rankpc::cli;

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<int> max_cond;
};

cli::ExperimentConfig load_with_overrides(const std::string& path, const Overrides& o) {
  cli::ExperimentConfig config = path.empty() ? cli::ExperimentConfig{} : cli::load_config(path);
  if (o.seed) config.seed = *o.seed;
  if (o.threads) config.threads = *o.threads;
  if (o.max_cond) config.max_cond = *o.max_cond;
  config.validate();
  return config;
}

void list_files(const std::vector<std::filesystem::path>& files) {
  for (const auto& f : files) std::cout << f.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rank PC: causal structure learning with rank correlations"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  Overrides overrides;

  auto* oracle = app.add_subcommand("oracle-check", "Run PC with the d-separation oracle against cpdag(G)");
  int p_max = 6;
  int trials = 200;
  std::uint64_t oracle_seed = 42;
  oracle->add_option("--p-max", p_max, "Largest number of nodes (at most 8)")->capture_default_str();
  oracle->add_option("--trials", trials, "Number of random DAGs")->capture_default_str();
  oracle->add_option("--seed", oracle_seed, "Base seed")->capture_default_str();

  auto* simulate = app.add_subcommand("simulate", "Write simulated datasets, true DAGs and CPDAGs");
  auto* experiment = app.add_subcommand("experiment", "Run the simulation study and write records and summary");
  for (auto* sub : {simulate, experiment}) {
    sub->add_option("--config", config_path, "Experiment config file (INI)");
    sub->add_option("--out", out_dir, "Output directory")->capture_default_str();
    sub->add_option("--seed", overrides.seed, "Override the base seed");
  }
  experiment->add_option("--threads", overrides.threads, "Worker threads (0 = automatic)");
  experiment->add_option("--max-cond", overrides.max_cond, "Largest conditioning-set size");

  auto* plotdata = app.add_subcommand("plotdata", "Turn a records file into per-plot data tables");
  std::string records_path;
  plotdata->add_option("--records", records_path, "records.csv written by 'experiment'")->required();
  plotdata->add_option("--out", out_dir, "Output directory")->capture_default_str();

  auto* pc = app.add_subcommand("pc", "Run PC on a CSV dataset");
  std::string data_path;
  std::string method_name = "spearman";
  double alpha = 0.01;
  bool stable = false;
  std::string pc_out;
  pc->add_option("--data", data_path, "CSV with a header row")->required();
  pc->add_option("--method", method_name, "pearson, spearman or kendall")->capture_default_str();
  pc->add_option("--alpha", alpha, "Fisher-z test level")->capture_default_str();
  pc->add_option("--max-cond", overrides.max_cond, "Largest conditioning-set size");
  pc->add_flag("--stable", stable, "Order-independent skeleton search");
  pc->add_option("--out", pc_out, "Output file (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*oracle) {
      const auto report = cli::cmd_oracle_check(p_max, trials, oracle_seed);
      std::cout << cli::format_report(report) << '\n';
      return report.ok() ? 0 : 1;
    }
    if (*simulate) {
      list_files(cli::cmd_simulate(load_with_overrides(config_path, overrides), out_dir));
    } else if (*experiment) {
      list_files(cli::cmd_experiment(load_with_overrides(config_path, overrides), out_dir));
    } else if (*plotdata) {
      list_files(cli::cmd_plotdata(records_path, out_dir));
    } else if (*pc) {
      std::ifstream in(data_path);
      if (!in) throw std::runtime_error("cannot open " + data_path);
      const rankpc::Dataset data = rankpc::read_csv(in);
      rankpc::TestConfig test{rankpc::parse_correlation_method(method_name), rankpc::FisherZRule{alpha}};
      const auto decider = rankpc::make_rank_ci_decider(data, test);
      rankpc::PcOptions options{overrides.max_cond, stable};
      const auto result = rankpc::run_pc(*decider, static_cast<int>(data.p()), options);
      if (pc_out.empty()) {
        rankpc::write_pc_result(std::cout, result);
      } else {
        std::ofstream out(pc_out);
        if (!out) throw std::runtime_error("cannot write " + pc_out);
        rankpc::write_pc_result(out, result);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
