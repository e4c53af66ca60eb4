#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>

namespace rankpc::testing {

namespace {

int sign(double x) { return (x > 0) - (x < 0); }

std::vector<double> count_ranks(const std::vector<double>& x) {
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::size_t smaller = 0;
    for (double other : x) smaller += other < x[i];
    r[i] = static_cast<double>(smaller + 1);
  }
  return r;
}

bool is_descendant_or_self(const Dag& g, Node from, Node target) {
  if (from == target) return true;
  for (Node c : g.children(from)) {
    if (is_descendant_or_self(g, c, target)) return true;
  }
  return false;
}

bool triple_blocks(const Dag& g, Node a, Node m, Node b, const NodeSet& s) {
  const bool collider = g.has_edge(a, m) && g.has_edge(b, m);
  if (!collider) return s.contains(m);
  for (Node z : s) {
    if (is_descendant_or_self(g, m, z)) return false;
  }
  return true;
}

bool search(const Dag& g, std::vector<Node>& path, std::vector<char>& on_path, Node v, const NodeSet& s) {
  const Node last = path.back();
  if (last == v) {
    for (std::size_t k = 1; k + 1 < path.size(); ++k) {
      if (triple_blocks(g, path[k - 1], path[k], path[k + 1], s)) return false;
    }
    return true;  // an open path
  }
  for (Node next = 0; next < g.node_count(); ++next) {
    if (on_path[next] || !g.adjacent(last, next)) continue;
    path.push_back(next);
    on_path[next] = 1;
    const bool open = search(g, path, on_path, v, s);
    on_path[next] = 0;
    path.pop_back();
    if (open) return true;
  }
  return false;
}

std::set<std::tuple<Node, Node, Node>> colliders_of(int p, const std::vector<std::pair<Node, Node>>& directed,
                                                      const std::vector<std::vector<char>>& adj) {
  std::vector<std::vector<Node>> parents(p);
  for (auto [a, b] : directed) parents[b].push_back(a);
  std::set<std::tuple<Node, Node, Node>> out;
  for (Node v = 0; v < p; ++v) {
    for (Node a : parents[v]) {
      for (Node b : parents[v]) {
        if (a < b && !adj[a][b]) out.insert({a, v, b});
      }
    }
  }
  return out;
}

}  // namespace

double naive_kendall(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  long long sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) sum += sign(x[i] - x[j]) * sign(y[i] - y[j]);
  }
  return 2.0 * static_cast<double>(sum) / (static_cast<double>(n) * static_cast<double>(n - 1));
}

double spearman_ratio_form(const std::vector<double>& x, const std::vector<double>& y) {
  const auto rx = count_ranks(x);
  const auto ry = count_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

bool d_separated_by_paths(const Dag& g, Node u, Node v, const NodeSet& s) {
  std::vector<Node> path{u};
  std::vector<char> on_path(g.node_count(), 0);
  on_path[u] = 1;
  return !search(g, path, on_path, v, s);
}

std::vector<Dag> brute_force_equivalence_class(const Dag& g) {
  const int p = g.node_count();
  if (p > 7) throw std::invalid_argument("brute force limited to p <= 7");
  std::vector<std::vector<char>> adj(p, std::vector<char>(p, 0));
  std::vector<std::pair<Node, Node>> true_edges;
  for (const Edge& e : g.edges()) {
    adj[e.from][e.to] = adj[e.to][e.from] = 1;
    true_edges.emplace_back(e.from, e.to);
  }
  const auto target = colliders_of(p, true_edges, adj);

  std::vector<Node> order(p);
  std::iota(order.begin(), order.end(), 0);
  std::set<std::vector<Edge>> seen;
  std::vector<Dag> members;
  do {
    std::vector<int> position(p);
    for (int k = 0; k < p; ++k) position[order[k]] = k;
    std::vector<std::pair<Node, Node>> directed;
    std::vector<Edge> edges;
    for (Node a = 0; a < p; ++a) {
      for (Node b = a + 1; b < p; ++b) {
        if (!adj[a][b]) continue;
        const Node from = position[a] < position[b] ? a : b;
        const Node to = from == a ? b : a;
        directed.emplace_back(from, to);
        edges.push_back({from, to});
      }
    }
    std::sort(edges.begin(), edges.end());
    if (colliders_of(p, directed, adj) == target && seen.insert(edges).second) members.emplace_back(p, edges);
  } while (std::next_permutation(order.begin(), order.end()));
  return members;
}

Pdag brute_force_cpdag(const Dag& g) {
  const auto members = brute_force_equivalence_class(g);
  const int p = g.node_count();
  Pdag out(p);
  for (Node a = 0; a < p; ++a) {
    for (Node b = a + 1; b < p; ++b) {
      if (!g.adjacent(a, b)) continue;
      bool forward = false;
      bool backward = false;
      for (const Dag& h : members) {
        forward = forward || h.has_edge(a, b);
        backward = backward || h.has_edge(b, a);
      }
      if (forward && backward) {
        out.set_undirected(a, b);
      } else {
        out.set_directed(forward ? a : b, forward ? b : a);
      }
    }
  }
  return out;
}

Dag random_permuted_dag(int p, double s, std::mt19937_64& rng) {
  std::vector<Node> perm(p);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::bernoulli_distribution coin(s);
  std::vector<Edge> edges;
  for (int i = 0; i < p; ++i) {
    for (int j = i + 1; j < p; ++j) {
      if (coin(rng)) edges.push_back({perm[i], perm[j]});
    }
  }
  return Dag(p, edges);
}

Eigen::MatrixXd random_correlation(int p, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd factor(p, p + 5);
  for (Eigen::Index i = 0; i < factor.rows(); ++i) {
    for (Eigen::Index j = 0; j < factor.cols(); ++j) factor(i, j) = normal(rng);
  }
  const Eigen::MatrixXd gram = factor * factor.transpose();
  const Eigen::VectorXd inv_sd = gram.diagonal().cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd corr = inv_sd.asDiagonal() * gram * inv_sd.asDiagonal();
  corr = (0.5 * (corr + corr.transpose())).eval();
  corr.diagonal().setOnes();
  return corr;
}

std::vector<double> random_distinct(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::vector<double> out;
  std::set<double> used;
  while (out.size() < n) {
    const double x = normal(rng);
    if (used.insert(x).second) out.push_back(x);
  }
  return out;
}

}  // namespace rankpc::testing
