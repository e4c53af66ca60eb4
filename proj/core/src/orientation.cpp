#include "rankpc/orientation.hpp"

#include <stdexcept>

namespace rankpc {

void SepsetTable::set(Node a, Node b, NodeSet s) { table_.insert_or_assign(key(a, b), std::move(s)); }

const NodeSet* SepsetTable::find(Node a, Node b) const {
  auto it = table_.find(key(a, b));
  return it == table_.end() ? nullptr : &it->second;
}

Pdag orient_colliders(const UndirectedGraph& skeleton, const SepsetTable& sepsets,
                      std::vector<std::string>* warnings) {
  Pdag out = Pdag::from_skeleton(skeleton);
  const int p = skeleton.node_count();
  auto orient = [&](Node from, Node to) {
    if (out.has_directed(to, from) && warnings) {
      warnings->push_back("collider conflict on " + std::to_string(from) + "--" + std::to_string(to) +
                          ": overriding " + std::to_string(to) + "->" + std::to_string(from));
    }
    out.set_directed(from, to);
  };
  for (Node v = 0; v < p; ++v) {
    const std::vector<Node> nbrs = skeleton.neighbors(v);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
        const Node u = nbrs[i];
        const Node w = nbrs[j];
        if (skeleton.adjacent(u, w)) continue;
        const NodeSet* sep = sepsets.find(u, w);
        if (sep == nullptr) {
          throw std::invalid_argument("no separating set recorded for nonadjacent pair " + std::to_string(u) +
                                      ", " + std::to_string(w));
        }
        if (!sep->contains(v)) {
          orient(u, v);
          orient(w, v);
        }
      }
    }
  }
  return out;
}

namespace {

// R1: some z -> x with z and y nonadjacent.
bool rule1(const Pdag& g, Node x, Node y) {
  for (Node z : g.parents(x)) {
    if (z != y && !g.adjacent(z, y)) return true;
  }
  return false;
}

// R2: a directed path x -> z -> y.
bool rule2(const Pdag& g, Node x, Node y) {
  for (Node z : g.children(x)) {
    if (g.has_directed(z, y)) return true;
  }
  return false;
}

// R3: x - z1 -> y and x - z2 -> y with z1, z2 nonadjacent.
bool rule3(const Pdag& g, Node x, Node y) {
  std::vector<Node> candidates;
  for (Node z : g.undirected_neighbors(x)) {
    if (z != y && g.has_directed(z, y)) candidates.push_back(z);
  }
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      if (!g.adjacent(candidates[i], candidates[j])) return true;
    }
  }
  return false;
}

bool forced(const Pdag& g, Node x, Node y) { return rule1(g, x, y) || rule2(g, x, y) || rule3(g, x, y); }

}  // namespace

Pdag meek_closure(Pdag g) {
  const int p = g.node_count();
  bool changed = true;
  while (changed) {
    changed = false;
    for (Node a = 0; a < p; ++a) {
      for (Node b = a + 1; b < p; ++b) {
        if (!g.has_undirected(a, b)) continue;
        if (forced(g, a, b)) {
          g.set_directed(a, b);
          changed = true;
        } else if (forced(g, b, a)) {
          g.set_directed(b, a);
          changed = true;
        }
      }
    }
  }
  return g;
}

}  // namespace rankpc
