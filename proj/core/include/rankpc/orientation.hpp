#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rankpc/graph.hpp"

namespace rankpc {

/// Separating sets recorded for node pairs removed during skeleton search.
class SepsetTable {
 public:
  void set(Node a, Node b, NodeSet s);
  /// nullptr when the pair was never separated.
  const NodeSet* find(Node a, Node b) const;
  bool contains(Node a, Node b) const { return find(a, b) != nullptr; }
  std::size_t size() const noexcept { return table_.size(); }

  auto begin() const noexcept { return table_.begin(); }
  auto end() const noexcept { return table_.end(); }

  friend bool operator==(const SepsetTable&, const SepsetTable&) = default;

 private:
  static std::pair<Node, Node> key(Node a, Node b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

  std::map<std::pair<Node, Node>, NodeSet> table_;
};

/// Orients u -> v <- w for every unshielded triple u - v - w whose middle node
/// is absent from sepset(u, w). All other edges stay undirected. Conflicting
/// orientations are resolved last-write-wins and reported through `warnings`.
/// Throws std::invalid_argument if a nonadjacent pair has no sepset.
Pdag orient_colliders(const UndirectedGraph& skeleton, const SepsetTable& sepsets,
                      std::vector<std::string>* warnings = nullptr);

/// Applies Meek's rules R1-R3 until no undirected edge can be oriented.
/// Adjacencies are never added or removed.
Pdag meek_closure(Pdag g);

}  // namespace rankpc
