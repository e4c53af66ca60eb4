#include "rankpc/graph_io.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "rankpc/text.hpp"

namespace rankpc {

namespace {

[[noreturn]] void fail(std::size_t line_no, const std::string& msg) {
  throw std::runtime_error("edge list line " + std::to_string(line_no) + ": " + msg);
}

Node parse_node(std::string_view token, int p, std::size_t line_no) {
  long long v = 0;
  try {
    v = text::parse_int(token);
  } catch (const std::invalid_argument&) {
    fail(line_no, "bad node '" + std::string(token) + "'");
  }
  if (v < 0 || v >= p) fail(line_no, "node " + std::to_string(v) + " out of range");
  return static_cast<Node>(v);
}

}  // namespace

EdgeList parse_edge_list(std::istream& in) {
  EdgeList out;
  bool have_header = false;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (!have_header) {
      if (!line.starts_with("p=")) fail(line_no, "expected header 'p=<n>'");
      long long p = 0;
      try {
        p = text::parse_int(line.substr(2));
      } catch (const std::invalid_argument&) {
        fail(line_no, "bad node count");
      }
      if (p < 0) fail(line_no, "negative node count");
      out.node_count = static_cast<int>(p);
      have_header = true;
      continue;
    }
    EdgeListEntry entry{};
    std::string_view body = line;
    if (const auto colon = line.find(':'); colon != std::string_view::npos) {
      body = text::trim(line.substr(0, colon));
      try {
        entry.weight = text::parse_double(line.substr(colon + 1));
      } catch (const std::invalid_argument&) {
        fail(line_no, "bad weight");
      }
    }
    std::size_t op = body.find("->");
    entry.directed = true;
    if (op == std::string_view::npos) {
      op = body.find("--");
      entry.directed = false;
    }
    if (op == std::string_view::npos) fail(line_no, "expected 'u -> v' or 'u -- v'");
    entry.from = parse_node(body.substr(0, op), out.node_count, line_no);
    entry.to = parse_node(body.substr(op + 2), out.node_count, line_no);
    if (entry.from == entry.to) fail(line_no, "self loop");
    out.entries.push_back(entry);
  }
  if (!have_header) throw std::runtime_error("edge list: missing 'p=<n>' header");
  return out;
}

Dag to_dag(const EdgeList& list) {
  std::vector<Edge> edges;
  for (const auto& e : list.entries) {
    if (!e.directed) throw std::invalid_argument("a DAG cannot contain undirected edges");
    edges.push_back({e.from, e.to});
  }
  return Dag(list.node_count, edges);
}

Pdag to_pdag(const EdgeList& list) {
  Pdag out(list.node_count);
  for (const auto& e : list.entries) {
    if (out.adjacent(e.from, e.to)) {
      throw std::invalid_argument("pair " + std::to_string(e.from) + ", " + std::to_string(e.to) +
                                  " listed twice");
    }
    if (e.directed) {
      out.set_directed(e.from, e.to);
    } else {
      out.set_undirected(e.from, e.to);
    }
  }
  return out;
}

Dag read_dag(std::istream& in) { return to_dag(parse_edge_list(in)); }

Pdag read_pdag(std::istream& in) { return to_pdag(parse_edge_list(in)); }

void write_edge_list(std::ostream& out, const Dag& g) {
  out << "p=" << g.node_count() << '\n';
  for (const Edge& e : g.edges()) out << e.from << " -> " << e.to << '\n';
}

void write_edge_list(std::ostream& out, const Pdag& g) {
  out << "p=" << g.node_count() << '\n';
  for (Node a = 0; a < g.node_count(); ++a) {
    for (Node b = a + 1; b < g.node_count(); ++b) {
      switch (g.mark(a, b)) {
        case EdgeMark::none:
          break;
        case EdgeMark::forward:
          out << a << " -> " << b << '\n';
          break;
        case EdgeMark::backward:
          out << b << " -> " << a << '\n';
          break;
        case EdgeMark::undirected:
          out << a << " -- " << b << '\n';
          break;
      }
    }
  }
}

}  // namespace rankpc
