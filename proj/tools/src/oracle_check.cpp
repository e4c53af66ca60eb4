#include "rankpc_cli/oracle_check.hpp"

#include <array>
#include <sstream>
#include <stdexcept>

#include "rankpc/citest.hpp"
#include "rankpc/graph_io.hpp"
#include "rankpc/pc.hpp"
#include "rankpc/simulate.hpp"
#include "rankpc/text.hpp"

namespace rankpc::cli {

OracleCheckReport cmd_oracle_check(int p_max, int trials, std::uint64_t seed) {
  if (p_max < 1 || p_max > 8) throw std::invalid_argument("p_max must lie in [1, 8]");
  if (trials < 0) throw std::invalid_argument("trials must be nonnegative");
  constexpr std::array<double, 3> kDensities{0.2, 0.4, 0.6};

  OracleCheckReport report;
  report.trials = trials;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = derive_seed(seed, {static_cast<std::uint64_t>(t)});
    RngStream rng(trial_seed);
    const int p = 1 + static_cast<int>(rng.uniform() * p_max);
    const double s = kDensities[static_cast<std::size_t>(t) % kDensities.size()];
    const Dag dag = random_dag(p, s, rng);

    const auto oracle = make_oracle_decider(dag);
    const PcResult result = run_pc(*oracle, p);
    const bool exact = result.pdag == cpdag(dag);
    const bool within_degree = result.diagnostics.max_cond_used <= static_cast<int>(degree(dag));
    if (exact) ++report.exact;
    if (!within_degree) ++report.cond_size_violations;
    if (!exact || !within_degree) {
      std::ostringstream line;
      line << "trial " << t << " seed=" << trial_seed << " p=" << p << " s=" << text::format_double(s)
           << (exact ? "" : " cpdag-mismatch") << (within_degree ? "" : " max|S|>deg") << " edges:";
      for (const Edge& e : dag.edges()) line << ' ' << e.from << "->" << e.to;
      report.failures.push_back(line.str());
    }
  }
  return report;
}

std::string format_report(const OracleCheckReport& report) {
  if (report.trials == 0) return "0 trials";
  std::ostringstream out;
  out << report.exact << '/' << report.trials << " exact, ";
  if (report.cond_size_violations == 0) {
    out << "max |S| ≤ deg(G) in all trials";
  } else {
    out << report.cond_size_violations << " trials with max |S| > deg(G)";
  }
  for (const auto& line : report.failures) out << '\n' << line;
  return out.str();
}

}  // namespace rankpc::cli
