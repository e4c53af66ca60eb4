#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rankpc/citest.hpp"
#include "rankpc/graph.hpp"
#include "rankpc/orientation.hpp"

namespace rankpc {

struct PcOptions {
  /// Largest conditioning-set size to try; unlimited when empty.
  std::optional<int> max_cond;
  /// Order-independent variant: adjacencies are frozen at the start of each level.
  bool stable = false;
};

struct PcDiagnostics {
  std::size_t tests_run = 0;
  /// Largest |S| actually queried; -1 when no test ran.
  int max_cond_used = -1;
  std::size_t degenerate_tests = 0;
  std::vector<std::string> warnings;

  friend bool operator==(const PcDiagnostics&, const PcDiagnostics&) = default;
};

struct SkeletonResult {
  UndirectedGraph skeleton;
  SepsetTable sepsets;
  PcDiagnostics diagnostics;
};

struct PcResult {
  Pdag pdag;
  SepsetTable sepsets;
  PcDiagnostics diagnostics;

  friend bool operator==(const PcResult&, const PcResult&) = default;
};

/// Adjacency search. Starts from the complete graph and, for |S| = 0, 1, ...,
/// removes u - v as soon as some S drawn from the current neighbours of u (then
/// of v) tests independent. Pairs are visited in lexicographic order and
/// candidate sets in lexicographic order over sorted neighbour lists.
SkeletonResult pc_skeleton(const CiDecider& decider, int p, const PcOptions& options = {});

/// Skeleton search, collider orientation and Meek closure.
PcResult run_pc(const CiDecider& decider, int p, const PcOptions& options = {});

/// Edge list followed by '#'-prefixed key=value diagnostics, so the output is
/// still readable by read_pdag.
void write_pc_result(std::ostream& out, const PcResult& result);

}  // namespace rankpc
