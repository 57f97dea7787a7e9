#pragma once

#include <map>
#include <optional>
#include <vector>

#include "lcflow/graph.hpp"

namespace lcf {

// One flow path: a vertex walk with a positive value. Walks produced by
// projecting expanded-DAG paths back to the original graph may revisit
// vertices; edge representations count multiplicity.
struct PathFlow {
  int commodity = 0;
  std::vector<int> verts;
  Rat value = 0;
};

enum class FlowRep { path, edge };

struct MultiFlow {
  FlowRep rep = FlowRep::path;
  int k = 0;

  // path form
  std::vector<PathFlow> paths;

  // edge form: per commodity, value per directed slot (see Graph::slot_ends)
  std::vector<std::vector<Rat>> edge_flow;
  // routed demand per commodity, (u,v) -> value
  std::vector<std::map<std::pair<int, int>, Rat>> routed;

  // fractionality denominator when known (power of two or 1); 0 = unreported
  Int frac_den = 0;

  static MultiFlow zero_path(int k) {
    MultiFlow f;
    f.rep = FlowRep::path;
    f.k = k;
    return f;
  }
  static MultiFlow zero_edge(int k, int slots) {
    MultiFlow f;
    f.rep = FlowRep::edge;
    f.k = k;
    f.edge_flow.assign(k, std::vector<Rat>(slots, Rat(0)));
    f.routed.assign(k, {});
    return f;
  }

  Rat value() const;
};

struct FlowStats {
  Rat value = 0;
  Rat congestion = 0;
  Rat totlen = 0;
  std::optional<Int> length;  // path form only
  std::optional<long> step;   // path form only
};

// Length of a vertex walk: vertex mode sums vertex lengths including both
// endpoints; edge mode sums edge lengths.
Int walk_length(const Graph& g, const std::vector<int>& verts);
long walk_steps(const std::vector<int>& verts);
bool walk_is_simple(const std::vector<int>& verts);

// Finds the directed slot for step u->v, throws if absent.
int slot_for_step(const Graph& g, int u, int v);

void validate_path_flow(const Graph& g, const MultiFlow& f, bool require_simple = false);

MultiFlow to_edge_representation(const MultiFlow& f, const Graph& g);

FlowStats flow_stats(const MultiFlow& f, const Graph& g);

// Path-form-only statistics; throw InvalidInstance("path-form-required") on
// edge representations.
Int flow_length(const MultiFlow& f, const Graph& g);
long flow_step(const MultiFlow& f, const Graph& g);

// Per-vertex flow units F(v) (vertex mode; counts walk multiplicity).
std::vector<Rat> vertex_loads(const Graph& g, const MultiFlow& f);

// Conservation check for an edge-form commodity: net flow is zero outside
// the commodity's recorded sources/sinks. Returns the offending vertex.
std::optional<int> conservation_violation(const Graph& g, const MultiFlow& f, int commodity);

MultiFlow add_flows(const MultiFlow& a, const MultiFlow& b, const Graph& g);
void scale_flow(MultiFlow& f, const Rat& c);

}  // namespace lcf
