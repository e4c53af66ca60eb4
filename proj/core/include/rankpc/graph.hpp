#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rankpc {

/// Nodes are 0-indexed; labels only exist at the CLI boundary.
using Node = int;

/// Sorted, duplicate-free set of node indices (a conditioning set S).
class NodeSet {
 public:
  NodeSet() = default;
  NodeSet(std::initializer_list<Node> nodes);
  explicit NodeSet(std::vector<Node> nodes);

  bool contains(Node v) const;
  std::size_t size() const noexcept { return nodes_.size(); }
  bool empty() const noexcept { return nodes_.empty(); }

  auto begin() const noexcept { return nodes_.begin(); }
  auto end() const noexcept { return nodes_.end(); }
  Node operator[](std::size_t i) const { return nodes_[i]; }
  const std::vector<Node>& values() const noexcept { return nodes_; }

  NodeSet without(Node v) const;
  NodeSet with(Node v) const;

  /// Throws std::out_of_range unless every element lies in [0, p).
  void check_bounds(int p) const;

  std::string to_string() const;

  friend bool operator==(const NodeSet&, const NodeSet&) = default;
  friend auto operator<=>(const NodeSet&, const NodeSet&) = default;

 private:
  std::vector<Node> nodes_;
};

struct Edge {
  Node from;
  Node to;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Directed acyclic graph. Immutable once constructed.
class Dag {
 public:
  explicit Dag(int node_count);
  /// Throws std::invalid_argument on self loops, duplicate or antiparallel
  /// edges, and directed cycles.
  Dag(int node_count, std::span<const Edge> edges);

  int node_count() const noexcept { return p_; }
  std::size_t edge_count() const noexcept { return edge_count_; }

  bool has_edge(Node from, Node to) const;
  bool adjacent(Node a, Node b) const { return has_edge(a, b) || has_edge(b, a); }

  const std::vector<Node>& parents(Node v) const { return parents_.at(v); }
  const std::vector<Node>& children(Node v) const { return children_.at(v); }
  const std::vector<Node>& topological_order() const noexcept { return topo_; }

  /// All edges, sorted lexicographically by (from, to).
  std::vector<Edge> edges() const;

  friend bool operator==(const Dag& a, const Dag& b) { return a.p_ == b.p_ && a.matrix_ == b.matrix_; }

 private:
  int p_;
  std::size_t edge_count_ = 0;
  std::vector<std::uint8_t> matrix_;  // row-major, matrix_[from * p + to]
  std::vector<std::vector<Node>> parents_;
  std::vector<std::vector<Node>> children_;
  std::vector<Node> topo_;
};

/// Simple undirected graph; the skeleton representation used by the PC search.
class UndirectedGraph {
 public:
  explicit UndirectedGraph(int node_count);
  static UndirectedGraph complete(int node_count);

  int node_count() const noexcept { return p_; }
  bool adjacent(Node a, Node b) const;
  void add_edge(Node a, Node b);
  void remove_edge(Node a, Node b);

  std::vector<Node> neighbors(Node v) const;
  std::size_t degree(Node v) const;
  /// Edges as (a, b) with a < b, sorted.
  std::vector<std::pair<Node, Node>> edges() const;
  std::size_t edge_count() const;

  friend bool operator==(const UndirectedGraph&, const UndirectedGraph&) = default;

 private:
  std::size_t index(Node a, Node b) const;

  int p_;
  std::vector<std::uint8_t> matrix_;
};

/// State of the unordered pair {a, b} with a < b.
enum class EdgeMark : std::uint8_t {
  none,
  forward,     // a -> b
  backward,    // b -> a
  undirected,  // a -- b
};

/// Partially directed graph storing one 4-valued state per unordered pair.
class Pdag {
 public:
  explicit Pdag(int node_count);
  static Pdag from_skeleton(const UndirectedGraph& g);
  static Pdag from_dag(const Dag& g);

  int node_count() const noexcept { return p_; }

  /// Canonical state of {a, b}, read as if a < b.
  EdgeMark mark(Node a, Node b) const;
  bool adjacent(Node a, Node b) const { return mark(a, b) != EdgeMark::none; }
  bool has_directed(Node from, Node to) const;
  bool has_undirected(Node a, Node b) const { return mark(a, b) == EdgeMark::undirected; }

  void set_directed(Node from, Node to);
  void set_undirected(Node a, Node b);
  void remove(Node a, Node b);

  std::vector<Node> parents(Node v) const;
  std::vector<Node> children(Node v) const;
  /// Nodes joined to v by an undirected edge.
  std::vector<Node> undirected_neighbors(Node v) const;
  std::vector<Node> adjacents(Node v) const;

  std::size_t edge_count() const;
  std::size_t directed_edge_count() const;
  bool has_directed_cycle() const;

  friend bool operator==(const Pdag&, const Pdag&) = default;

 private:
  friend std::size_t shd(const Pdag& a, const Pdag& b);
  std::size_t pair_index(Node a, Node b) const;
  void set_mark(Node a, Node b, EdgeMark m);

  int p_;
  std::vector<EdgeMark> marks_;
};

/// Unshielded collider u -> v <- w with u < w.
struct Collider {
  Node u;
  Node v;
  Node w;

  friend bool operator==(const Collider&, const Collider&) = default;
  friend auto operator<=>(const Collider&, const Collider&) = default;
};

/// Maximum over nodes of in-degree plus out-degree.
std::size_t degree(const Dag& g);

/// Bayes-ball reachability. Throws std::invalid_argument when u == v or either
/// endpoint lies in s, std::out_of_range on invalid indices.
bool d_separated(const Dag& g, Node u, Node v, const NodeSet& s);

/// True iff s d-separates every pair in a x b. Sets must be pairwise disjoint.
bool d_separated_sets(const Dag& g, const NodeSet& a, const NodeSet& b, const NodeSet& s);

UndirectedGraph skeleton(const Dag& g);
UndirectedGraph skeleton(const Pdag& g);

/// Sorted list of unshielded colliders.
std::vector<Collider> unshielded_colliders(const Dag& g);

bool markov_equivalent(const Dag& g, const Dag& h);

/// CPDAG of the Markov equivalence class of g: skeleton, then colliders, then
/// Meek closure.
Pdag cpdag(const Dag& g);

/// Structural Hamming distance: number of unordered pairs whose state differs.
std::size_t shd(const Pdag& a, const Pdag& b);

}  // namespace rankpc
