#pragma once

#include <cstdint>
#include <vector>

#include "lcflow/graph.hpp"
#include "lcflow/rounding.hpp"

namespace lcf {

// Generic layered DAG with integral arc capacities and per-commodity
// source/sink node sets. Arcs must respect the node order (topological).
struct FlowDag {
  int n = 0;
  struct Arc {
    int from = -1;
    int to = -1;
    int orig_edge = -1;  // original-graph edge this arc copies, -1 if none
    Int cap = 1;
  };
  std::vector<Arc> arcs;
  std::vector<std::vector<int>> out, in;
  std::vector<std::vector<int>> sources, sinks;  // per commodity

  int k() const { return static_cast<int>(sources.size()); }
  int m() const { return static_cast<int>(arcs.size()); }

  int add_arc(int from, int to, const Int& cap, int orig_edge = -1);
  void check_topological() const;  // throws on a back arc
};

// Exact ceiling of w to multiples of (eps/h)*lambda.
Rat discretize_weight(const Rat& w, const Rat& lambda, long h, const Rat& eps);
std::vector<Rat> discretize_weights(const std::vector<Rat>& w, const Rat& lambda, long h,
                                    const Rat& eps);

// Length-weight expanded DAG. Copies are materialized lazily: only states
// (v, j, h') reachable from a source copy and reaching a sink copy exist.
struct ExpandedDag {
  FlowDag dag;
  Rat unit;         // (eps/h)*lambda
  int64_t j_max;    // floor((1+2eps)h/eps)
  long h = 0;
  Int kappa = 0;    // (h+1)*(j_max+1), the per-vertex copy bound
  // per dag-node bookkeeping
  std::vector<int> node_orig;     // original vertex
  std::vector<int64_t> node_j;    // weight coordinate
  std::vector<int64_t> node_hp;   // consumed length
};

struct CommodityPairs {
  std::vector<std::vector<int>> sources, sinks;  // per commodity vertex sets
  int k() const { return static_cast<int>(sources.size()); }
};

// Requires positive weights, integral lengths <= h on the edges considered;
// edges longer than h never enter. lambda must be positive.
ExpandedDag build_expanded_dag(const Graph& g, const std::vector<Rat>& w, long h,
                               const Rat& lambda, const Rat& eps, const CommodityPairs& pairs);

// Commodity-i path-count flow w.r.t. fractional capacities ucur.
// Returns per-arc flows U'(a)*c(a,i)/c_max; also exposes the counts.
struct PathCountResult {
  std::vector<std::vector<Rat>> flow;    // [commodity][arc]
  std::vector<Rat> total_count;          // c(a) = sum_i c(a,i)
  Rat c_max = 0;
};
PathCountResult path_count_flow(const FlowDag& dag, const std::vector<Rat>& ucur);

// Multi-commodity (1/(2mu))-fractional alpha-blocking flow; mu is the
// smallest power of two >= 4k/(1-alpha).
struct BlockingFlowResult {
  std::vector<std::vector<Rat>> flow;  // [commodity][arc]
  Int mu = 1;
  long iterations = 0;
};
BlockingFlowResult blocking_flow(const FlowDag& dag, const Rat& alpha);

}  // namespace lcf
