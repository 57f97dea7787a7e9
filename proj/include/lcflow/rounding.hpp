#pragma once

#include <optional>
#include <vector>

#include "lcflow/flow.hpp"
#include "lcflow/graph.hpp"

namespace lcf {

// Generic arc-list view used by rounding and DAG decomposition; nodes are
// 0..n-1, arcs directed.
struct ArcGraph {
  int n = 0;
  std::vector<std::pair<int, int>> arcs;

  int add_arc(int u, int v) {
    arcs.push_back({u, v});
    return static_cast<int>(arcs.size()) - 1;
  }
  int m() const { return static_cast<int>(arcs.size()); }
};

// Rounds a conserved single-commodity flow to (1/mu)-fractional by
// sequential fractional-cycle cancellation on the mu-scaled flow.
//
// Without costs, the value rounds up: ceil(mu*v) <= mu*v' <= ceil(mu*v)
// whenever mu*v is fractional, and v' = v otherwise. With costs, cycles are
// cancelled in a cost-nonincreasing direction, so totlen never increases and
// the value lands in [floor(mu*v), ceil(mu*v)]/mu.
//
// Every arc obeys floor(mu*f(a)) <= mu*out(a) <= ceil(mu*f(a)).
std::vector<Rat> round_flow_arcs(const ArcGraph& g, const std::vector<Rat>& f, const Int& mu,
                                 const std::vector<int>& sources, const std::vector<int>& sinks,
                                 const std::vector<Rat>* costs);

// round_flow on a Graph in edge mode, single commodity of a MultiFlow.
// costs_from_lengths enables the mincost (cost-nonincreasing) mode with
// edge lengths as costs. mu must be a power of two.
MultiFlow round_flow(const MultiFlow& f, const Int& mu, const Graph& g, bool costs_from_lengths);

// Path decomposition of a conserved DAG flow. Arcs must be consistent with
// some topological order; throws on cycles among positive-flow arcs.
// Returns (node path, value) pairs whose edge representation equals f
// exactly; each path has at most max_steps arcs when the DAG has that many
// layers.
struct DagPath {
  std::vector<int> nodes;
  Rat value;
};
std::vector<DagPath> decompose_dag_flow_arcs(const ArcGraph& g, const std::vector<Rat>& f,
                                             const std::vector<int>& sources,
                                             const std::vector<int>& sinks);

// decompose_dag_flow per the graph-core contract: single-commodity edge-form
// flow on an acyclic edge-mode Graph with <= h+1 layers.
MultiFlow decompose_dag_flow(const MultiFlow& f, const Graph& g, long h);

// Path decomposition on a general directed arc list; directed cycles in the
// support are cancelled and dropped (they carry no demand).
std::vector<DagPath> decompose_flow_paths(const ArcGraph& g, const std::vector<Rat>& f,
                                          const std::vector<int>& sources,
                                          const std::vector<int>& sinks);

}  // namespace lcf
