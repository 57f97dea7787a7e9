#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lcflow/rational.hpp"

namespace lcf {

struct InvalidInstance : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// thrown by gated exact computations (oracles, verifiers) on big instances
struct OracleGateExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class GraphMode {
  vertex_weighted,  // undirected, lengths/capacities on vertices
  edge_weighted,    // directed, lengths/capacities on edges
};

struct EdgeRec {
  int u = -1;
  int v = -1;
  Int len = 1;
  Int cap = 1;
  bool connector = false;  // zero-length connectors from vertex splitting
};

// Graph in one of the two modes of the instance format. Lengths and
// capacities are positive integers; connectors are the only edges allowed
// length zero.
struct Graph {
  GraphMode mode = GraphMode::edge_weighted;
  int n = 0;
  std::vector<Int> vlen;  // vertex mode only
  std::vector<Int> vcap;  // vertex mode only
  std::vector<EdgeRec> edges;

  // adjacency: edge-mode out/in by edge id; vertex mode stores incident ids
  std::vector<std::vector<int>> out_edges;
  std::vector<std::vector<int>> in_edges;

  static Graph make_vertex_weighted(int n);
  static Graph make_edge_weighted(int n);

  bool directed() const { return mode == GraphMode::edge_weighted; }
  int m() const { return static_cast<int>(edges.size()); }

  int add_edge(int u, int v);                                  // vertex mode
  int add_edge(int u, int v, const Int& len, const Int& cap);  // edge mode
  int add_connector(int u, int v, const Int& cap);             // edge mode, len 0

  void set_vertex(int v, const Int& len, const Int& cap);

  // Directed slot encoding for edge representations of flows:
  // edge mode: slot == edge id. vertex mode: slot == 2*eid + dir, where
  // dir 0 traverses u->v and dir 1 traverses v->u.
  int num_slots() const { return directed() ? m() : 2 * m(); }
  // endpoints of a slot in traversal order
  std::pair<int, int> slot_ends(int slot) const;
  Int slot_cap(int slot) const;

  void validate() const;  // throws InvalidInstance

  // Largest scalar in the instance (lengths, capacities), used as N.
  Int value_bound() const;
};

// Multi-commodity demand: at most one ordered pair per commodity.
struct DemandEntry {
  int u = -1;
  int v = -1;
  Rat value = 0;
  bool infinite = false;
};

struct Demand {
  std::vector<DemandEntry> entries;

  int k() const { return static_cast<int>(entries.size()); }
  Rat total() const;  // |D|, infinite entries rejected
  bool integral() const;
  void validate(const Graph& g) const;
};

struct NodeWeighting {
  std::vector<Rat> w;

  explicit NodeWeighting(int n = 0) : w(n, Rat(0)) {}
  Rat size() const;
  void validate() const;
};

// Extended DIMACS-ish text format, see README. Throws InvalidInstance with
// a line number on the first malformed line.
Graph parse_graph(std::istream& in);
Demand parse_demand(std::istream& in, const Graph& g);
std::string write_graph(const Graph& g);
std::string write_demand(const Demand& d);

Int instance_value_bound(const Graph& g, const Demand* d = nullptr);

}  // namespace lcf
