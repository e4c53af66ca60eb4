#include "rankpc/graph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

#include "rankpc/orientation.hpp"

namespace rankpc {

namespace {

void check_node(Node v, int p) {
  if (v < 0 || v >= p) {
    throw std::out_of_range("node " + std::to_string(v) + " outside [0, " + std::to_string(p) + ")");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// NodeSet

NodeSet::NodeSet(std::initializer_list<Node> nodes) : NodeSet(std::vector<Node>(nodes)) {}

NodeSet::NodeSet(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
  std::sort(nodes_.begin(), nodes_.end());
  if (std::adjacent_find(nodes_.begin(), nodes_.end()) != nodes_.end()) {
    throw std::invalid_argument("duplicate node in NodeSet");
  }
  if (!nodes_.empty() && nodes_.front() < 0) {
    throw std::out_of_range("negative node index in NodeSet");
  }
}

bool NodeSet::contains(Node v) const { return std::binary_search(nodes_.begin(), nodes_.end(), v); }

NodeSet NodeSet::without(Node v) const {
  NodeSet out;
  out.nodes_.reserve(nodes_.size());
  for (Node x : nodes_) {
    if (x != v) out.nodes_.push_back(x);
  }
  return out;
}

NodeSet NodeSet::with(Node v) const {
  if (v < 0) throw std::out_of_range("negative node index in NodeSet");
  if (contains(v)) return *this;
  NodeSet out = *this;
  out.nodes_.insert(std::upper_bound(out.nodes_.begin(), out.nodes_.end(), v), v);
  return out;
}

void NodeSet::check_bounds(int p) const {
  if (!nodes_.empty()) {
    check_node(nodes_.front(), p);
    check_node(nodes_.back(), p);
  }
}

std::string NodeSet::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (i) os << ',';
    os << nodes_[i];
  }
  os << '}';
  return os.str();
}

// ---------------------------------------------------------------------------
// Dag

Dag::Dag(int node_count) : Dag(node_count, std::span<const Edge>{}) {}

Dag::Dag(int node_count, std::span<const Edge> edges)
    : p_(node_count),
      matrix_(static_cast<std::size_t>(std::max(node_count, 0)) * std::max(node_count, 0), 0),
      parents_(std::max(node_count, 0)),
      children_(std::max(node_count, 0)) {
  if (node_count < 0) throw std::invalid_argument("negative node count");
  for (const Edge& e : edges) {
    check_node(e.from, p_);
    check_node(e.to, p_);
    if (e.from == e.to) throw std::invalid_argument("self loop at node " + std::to_string(e.from));
    if (matrix_[e.from * p_ + e.to]) {
      throw std::invalid_argument("duplicate edge " + std::to_string(e.from) + " -> " + std::to_string(e.to));
    }
    if (matrix_[e.to * p_ + e.from]) {
      throw std::invalid_argument("edges in both directions between " + std::to_string(e.from) + " and " +
                                  std::to_string(e.to));
    }
    matrix_[e.from * p_ + e.to] = 1;
    parents_[e.to].push_back(e.from);
    children_[e.from].push_back(e.to);
    ++edge_count_;
  }
  for (auto& ps : parents_) std::sort(ps.begin(), ps.end());
  for (auto& cs : children_) std::sort(cs.begin(), cs.end());

  // Kahn's algorithm; the smallest available node goes first so the order is canonical.
  std::vector<std::size_t> indegree(p_);
  for (int v = 0; v < p_; ++v) indegree[v] = parents_[v].size();
  std::vector<Node> ready;
  for (int v = 0; v < p_; ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  std::make_heap(ready.begin(), ready.end(), std::greater<>{});
  topo_.reserve(p_);
  while (!ready.empty()) {
    std::pop_heap(ready.begin(), ready.end(), std::greater<>{});
    Node v = ready.back();
    ready.pop_back();
    topo_.push_back(v);
    for (Node c : children_[v]) {
      if (--indegree[c] == 0) {
        ready.push_back(c);
        std::push_heap(ready.begin(), ready.end(), std::greater<>{});
      }
    }
  }
  if (static_cast<int>(topo_.size()) != p_) throw std::invalid_argument("edge set contains a directed cycle");
}

bool Dag::has_edge(Node from, Node to) const {
  check_node(from, p_);
  check_node(to, p_);
  return matrix_[from * p_ + to] != 0;
}

std::vector<Edge> Dag::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Node u = 0; u < p_; ++u) {
    for (Node c : children_[u]) out.push_back({u, c});
  }
  return out;
}

// ---------------------------------------------------------------------------
// UndirectedGraph

UndirectedGraph::UndirectedGraph(int node_count)
    : p_(node_count), matrix_(static_cast<std::size_t>(std::max(node_count, 0)) * std::max(node_count, 0), 0) {
  if (node_count < 0) throw std::invalid_argument("negative node count");
}

UndirectedGraph UndirectedGraph::complete(int node_count) {
  UndirectedGraph g(node_count);
  for (Node a = 0; a < node_count; ++a) {
    for (Node b = a + 1; b < node_count; ++b) g.add_edge(a, b);
  }
  return g;
}

std::size_t UndirectedGraph::index(Node a, Node b) const {
  check_node(a, p_);
  check_node(b, p_);
  return static_cast<std::size_t>(a) * p_ + b;
}

bool UndirectedGraph::adjacent(Node a, Node b) const { return matrix_[index(a, b)] != 0; }

void UndirectedGraph::add_edge(Node a, Node b) {
  if (a == b) throw std::invalid_argument("self loop at node " + std::to_string(a));
  matrix_[index(a, b)] = 1;
  matrix_[index(b, a)] = 1;
}

void UndirectedGraph::remove_edge(Node a, Node b) {
  matrix_[index(a, b)] = 0;
  matrix_[index(b, a)] = 0;
}

std::vector<Node> UndirectedGraph::neighbors(Node v) const {
  check_node(v, p_);
  std::vector<Node> out;
  for (Node w = 0; w < p_; ++w) {
    if (matrix_[static_cast<std::size_t>(v) * p_ + w]) out.push_back(w);
  }
  return out;
}

std::size_t UndirectedGraph::degree(Node v) const {
  check_node(v, p_);
  auto row = matrix_.begin() + static_cast<std::ptrdiff_t>(v) * p_;
  return static_cast<std::size_t>(std::count(row, row + p_, std::uint8_t{1}));
}

std::vector<std::pair<Node, Node>> UndirectedGraph::edges() const {
  std::vector<std::pair<Node, Node>> out;
  for (Node a = 0; a < p_; ++a) {
    for (Node b = a + 1; b < p_; ++b) {
      if (matrix_[static_cast<std::size_t>(a) * p_ + b]) out.emplace_back(a, b);
    }
  }
  return out;
}

std::size_t UndirectedGraph::edge_count() const {
  return static_cast<std::size_t>(std::count(matrix_.begin(), matrix_.end(), std::uint8_t{1})) / 2;
}

// ---------------------------------------------------------------------------
// Pdag

Pdag::Pdag(int node_count) : p_(node_count) {
  if (node_count < 0) throw std::invalid_argument("negative node count");
  marks_.assign(static_cast<std::size_t>(p_) * (p_ > 0 ? p_ - 1 : 0) / 2, EdgeMark::none);
}

Pdag Pdag::from_skeleton(const UndirectedGraph& g) {
  Pdag out(g.node_count());
  for (auto [a, b] : g.edges()) out.set_undirected(a, b);
  return out;
}

Pdag Pdag::from_dag(const Dag& g) {
  Pdag out(g.node_count());
  for (const Edge& e : g.edges()) out.set_directed(e.from, e.to);
  return out;
}

std::size_t Pdag::pair_index(Node a, Node b) const {
  check_node(a, p_);
  check_node(b, p_);
  if (a == b) throw std::invalid_argument("no edge state for a node with itself");
  if (a > b) std::swap(a, b);
  // Row-wise packed upper triangle.
  return static_cast<std::size_t>(a) * (2 * p_ - a - 1) / 2 + (b - a - 1);
}

EdgeMark Pdag::mark(Node a, Node b) const { return marks_[pair_index(a, b)]; }

bool Pdag::has_directed(Node from, Node to) const {
  EdgeMark m = mark(from, to);
  return from < to ? m == EdgeMark::forward : m == EdgeMark::backward;
}

void Pdag::set_mark(Node a, Node b, EdgeMark m) { marks_[pair_index(a, b)] = m; }

void Pdag::set_directed(Node from, Node to) {
  set_mark(from, to, from < to ? EdgeMark::forward : EdgeMark::backward);
}

void Pdag::set_undirected(Node a, Node b) { set_mark(a, b, EdgeMark::undirected); }

void Pdag::remove(Node a, Node b) { set_mark(a, b, EdgeMark::none); }

std::vector<Node> Pdag::parents(Node v) const {
  std::vector<Node> out;
  for (Node w = 0; w < p_; ++w) {
    if (w != v && has_directed(w, v)) out.push_back(w);
  }
  return out;
}

std::vector<Node> Pdag::children(Node v) const {
  std::vector<Node> out;
  for (Node w = 0; w < p_; ++w) {
    if (w != v && has_directed(v, w)) out.push_back(w);
  }
  return out;
}

std::vector<Node> Pdag::undirected_neighbors(Node v) const {
  std::vector<Node> out;
  for (Node w = 0; w < p_; ++w) {
    if (w != v && has_undirected(v, w)) out.push_back(w);
  }
  return out;
}

std::vector<Node> Pdag::adjacents(Node v) const {
  std::vector<Node> out;
  for (Node w = 0; w < p_; ++w) {
    if (w != v && adjacent(v, w)) out.push_back(w);
  }
  return out;
}

std::size_t Pdag::edge_count() const {
  return marks_.size() - static_cast<std::size_t>(std::count(marks_.begin(), marks_.end(), EdgeMark::none));
}

std::size_t Pdag::directed_edge_count() const {
  return static_cast<std::size_t>(std::count_if(marks_.begin(), marks_.end(), [](EdgeMark m) {
    return m == EdgeMark::forward || m == EdgeMark::backward;
  }));
}

bool Pdag::has_directed_cycle() const {
  std::vector<std::size_t> indegree(p_, 0);
  for (Node v = 0; v < p_; ++v) indegree[v] = parents(v).size();
  std::vector<Node> ready;
  for (Node v = 0; v < p_; ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  std::size_t seen = 0;
  while (!ready.empty()) {
    Node v = ready.back();
    ready.pop_back();
    ++seen;
    for (Node c : children(v)) {
      if (--indegree[c] == 0) ready.push_back(c);
    }
  }
  return seen != static_cast<std::size_t>(p_);
}

// ---------------------------------------------------------------------------
// Free functions

std::size_t degree(const Dag& g) {
  std::size_t best = 0;
  for (Node v = 0; v < g.node_count(); ++v) {
    best = std::max(best, g.parents(v).size() + g.children(v).size());
  }
  return best;
}

bool d_separated(const Dag& g, Node u, Node v, const NodeSet& s) {
  const int p = g.node_count();
  check_node(u, p);
  check_node(v, p);
  s.check_bounds(p);
  if (u == v) throw std::invalid_argument("d-separation needs two distinct nodes");
  if (s.contains(u) || s.contains(v)) throw std::invalid_argument("endpoints must not be in the conditioning set");

  // Nodes in S or with a descendant in S: colliders there are open.
  std::vector<char> in_s(p, 0);
  std::vector<char> opens_collider(p, 0);
  std::vector<Node> stack(s.begin(), s.end());
  for (Node x : s) in_s[x] = 1;
  while (!stack.empty()) {
    Node x = stack.back();
    stack.pop_back();
    if (opens_collider[x]) continue;
    opens_collider[x] = 1;
    for (Node parent : g.parents(x)) stack.push_back(parent);
  }

  // State (node, arrived_from_child). Arriving from a child means the trail
  // continues upward through x; arriving from a parent means it came down into x.
  enum : int { kFromChild = 0, kFromParent = 1 };
  std::vector<char> visited(2 * static_cast<std::size_t>(p), 0);
  std::deque<std::pair<Node, int>> queue{{u, kFromChild}};
  while (!queue.empty()) {
    auto [x, dir] = queue.front();
    queue.pop_front();
    char& mark = visited[2 * static_cast<std::size_t>(x) + dir];
    if (mark) continue;
    mark = 1;
    if (x == v) return false;
    if (dir == kFromChild) {
      if (in_s[x]) continue;
      for (Node parent : g.parents(x)) queue.emplace_back(parent, kFromChild);
      for (Node child : g.children(x)) queue.emplace_back(child, kFromParent);
    } else {
      if (!in_s[x]) {
        for (Node child : g.children(x)) queue.emplace_back(child, kFromParent);
      }
      if (opens_collider[x]) {
        for (Node parent : g.parents(x)) queue.emplace_back(parent, kFromChild);
      }
    }
  }
  return true;
}

bool d_separated_sets(const Dag& g, const NodeSet& a, const NodeSet& b, const NodeSet& s) {
  if (a.empty() || b.empty()) throw std::invalid_argument("d_separated_sets needs nonempty endpoint sets");
  for (Node x : a) {
    if (b.contains(x) || s.contains(x)) throw std::invalid_argument("node sets must be pairwise disjoint");
  }
  for (Node y : b) {
    if (s.contains(y)) throw std::invalid_argument("node sets must be pairwise disjoint");
  }
  for (Node x : a) {
    for (Node y : b) {
      if (!d_separated(g, x, y, s)) return false;
    }
  }
  return true;
}

UndirectedGraph skeleton(const Dag& g) {
  UndirectedGraph out(g.node_count());
  for (const Edge& e : g.edges()) out.add_edge(e.from, e.to);
  return out;
}

UndirectedGraph skeleton(const Pdag& g) {
  UndirectedGraph out(g.node_count());
  for (Node a = 0; a < g.node_count(); ++a) {
    for (Node b = a + 1; b < g.node_count(); ++b) {
      if (g.adjacent(a, b)) out.add_edge(a, b);
    }
  }
  return out;
}

std::vector<Collider> unshielded_colliders(const Dag& g) {
  std::vector<Collider> out;
  for (Node v = 0; v < g.node_count(); ++v) {
    const auto& ps = g.parents(v);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      for (std::size_t j = i + 1; j < ps.size(); ++j) {
        if (!g.adjacent(ps[i], ps[j])) out.push_back({ps[i], v, ps[j]});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool markov_equivalent(const Dag& g, const Dag& h) {
  if (g.node_count() != h.node_count()) throw std::invalid_argument("graphs have different node counts");
  return skeleton(g) == skeleton(h) && unshielded_colliders(g) == unshielded_colliders(h);
}

Pdag cpdag(const Dag& g) {
  Pdag out = Pdag::from_skeleton(skeleton(g));
  for (const Collider& c : unshielded_colliders(g)) {
    out.set_directed(c.u, c.v);
    out.set_directed(c.w, c.v);
  }
  return meek_closure(std::move(out));
}

std::size_t shd(const Pdag& a, const Pdag& b) {
  if (a.node_count() != b.node_count()) throw std::invalid_argument("graphs have different node counts");
  std::size_t distance = 0;
  for (std::size_t i = 0; i < a.marks_.size(); ++i) {
    if (a.marks_[i] != b.marks_[i]) ++distance;
  }
  return distance;
}

}  // namespace rankpc
