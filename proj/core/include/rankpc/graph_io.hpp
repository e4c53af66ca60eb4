#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "rankpc/graph.hpp"

namespace rankpc {

// Edge-list text format:
//
//   p=<node count>
//   0 -> 1
//   1 -- 2
//   2 -> 3 : 0.75        (optional weight, used for SEM models)
//
// Blank lines and lines starting with '#' are ignored.

struct EdgeListEntry {
  Node from;
  Node to;
  bool directed;
  std::optional<double> weight;
};

struct EdgeList {
  int node_count = 0;
  std::vector<EdgeListEntry> entries;
};

/// Throws std::runtime_error with the offending line number on malformed input.
EdgeList parse_edge_list(std::istream& in);

Dag to_dag(const EdgeList& list);
Pdag to_pdag(const EdgeList& list);

Dag read_dag(std::istream& in);
Pdag read_pdag(std::istream& in);

void write_edge_list(std::ostream& out, const Dag& g);
void write_edge_list(std::ostream& out, const Pdag& g);

}  // namespace rankpc
