#include "rankpc/pc.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "rankpc/combinations.hpp"
#include "rankpc/graph_io.hpp"

namespace rankpc {

namespace {

bool has_eligible_pair(const UndirectedGraph& g, std::size_t level) {
  for (Node u = 0; u < g.node_count(); ++u) {
    if (g.degree(u) >= level + 1) return true;
  }
  return false;
}

std::vector<Node> pool_without(const UndirectedGraph& g, Node x, Node y) {
  std::vector<Node> pool = g.neighbors(x);
  pool.erase(std::remove(pool.begin(), pool.end(), y), pool.end());
  return pool;
}

}  // namespace

SkeletonResult pc_skeleton(const CiDecider& decider, int p, const PcOptions& options) {
  if (p < 1) throw std::invalid_argument("PC needs at least one node");
  if (decider.node_count() != p) throw std::invalid_argument("decider node count does not match p");
  if (options.max_cond && *options.max_cond < 0) throw std::invalid_argument("max_cond must be nonnegative");

  SkeletonResult result{UndirectedGraph::complete(p), {}, {}};
  UndirectedGraph& g = result.skeleton;
  PcDiagnostics& diag = result.diagnostics;
  const int decider_limit = decider.max_conditioning_size();

  for (std::size_t level = 0;; ++level) {
    if (options.max_cond && static_cast<int>(level) > *options.max_cond) break;
    if (!has_eligible_pair(g, level)) break;
    if (static_cast<int>(level) > decider_limit) {
      diag.warnings.push_back("conditioning sets of size " + std::to_string(level) +
                              " exceed what the test supports; search stopped");
      break;
    }
    const UndirectedGraph frozen = g;
    const UndirectedGraph& adjacency = options.stable ? frozen : g;

    for (Node u = 0; u < p; ++u) {
      for (Node v = u + 1; v < p; ++v) {
        if (!g.adjacent(u, v)) continue;
        std::vector<std::vector<Node>> tried;
        for (auto [x, y] : {std::pair{u, v}, std::pair{v, u}}) {
          const std::vector<Node> pool = pool_without(adjacency, x, y);
          const bool removed = for_each_combination(pool, level, [&](const std::vector<Node>& subset) {
            if (std::find(tried.begin(), tried.end(), subset) != tried.end()) return false;
            tried.push_back(subset);
            const NodeSet s(subset);
            const CiOutcome outcome = decider.decide(u, v, s);
            ++diag.tests_run;
            diag.max_cond_used = std::max(diag.max_cond_used, static_cast<int>(level));
            if (outcome.degenerate) {
              ++diag.degenerate_tests;
              diag.warnings.push_back("ill-conditioned test " + std::to_string(u) + " _|_ " + std::to_string(v) +
                                      " | " + s.to_string() + " treated as dependent");
            }
            if (outcome.decision == CiDecision::independent) {
              g.remove_edge(u, v);
              result.sepsets.set(u, v, s);
              return true;
            }
            return false;
          });
          if (removed) break;
        }
      }
    }
  }
  return result;
}

PcResult run_pc(const CiDecider& decider, int p, const PcOptions& options) {
  SkeletonResult skel = pc_skeleton(decider, p, options);
  PcResult result{Pdag(p), std::move(skel.sepsets), std::move(skel.diagnostics)};
  result.pdag = meek_closure(orient_colliders(skel.skeleton, result.sepsets, &result.diagnostics.warnings));
  if (result.pdag.has_directed_cycle()) {
    result.diagnostics.warnings.push_back("output contains a directed cycle (faithfulness violated in the sample)");
  }
  return result;
}

void write_pc_result(std::ostream& out, const PcResult& result) {
  write_edge_list(out, result.pdag);
  const PcDiagnostics& d = result.diagnostics;
  out << "# tests_run=" << d.tests_run << '\n';
  out << "# max_cond_used=" << d.max_cond_used << '\n';
  out << "# degenerate_tests=" << d.degenerate_tests << '\n';
  for (const auto& [pair, s] : result.sepsets) {
    out << "# sepset=" << pair.first << ',' << pair.second << ':' << s.to_string() << '\n';
  }
  for (const auto& w : d.warnings) out << "# warning=" << w << '\n';
}

}  // namespace rankpc
