#pragma once

#include <optional>
#include <vector>

#include "lcflow/flow.hpp"
#include "lcflow/graph.hpp"

namespace lcf {

// Exact small-instance reference solvers. Deliberately exponential and
// gated on instance size; they anchor expected values in tests and the
// acceptance suite and are never part of a production solve path.

inline constexpr int kOracleVertexGate = 14;

// All simple u->v paths (vertex mode: either traversal direction of each
// edge) with walk_length <= h and, when given, step count <= t_step.
// Sources/sinks may be sets; paths from any s in S to any t in T.
std::vector<std::vector<int>> enumerate_paths(const Graph& g, const std::vector<int>& sources,
                                              const std::vector<int>& sinks, const Int& h,
                                              std::optional<long> t_step = std::nullopt);

struct SourceSinkPair {
  std::vector<int> sources;
  std::vector<int> sinks;
};

struct ExactFlowResult {
  Rat value = 0;
  MultiFlow flow;  // path representation on the input graph
};

// Optimal h-length multi-commodity maxflow by exact LP over enumerated
// simple paths.
ExactFlowResult exact_lc_maxflow(const Graph& g, const std::vector<SourceSinkPair>& pairs,
                                 const Int& h);

struct ExactMincostResult {
  bool feasible = false;
  Rat totlen = 0;     // optimal total length of a value-tau flow
  MultiFlow flow;
};

// Exact t-step-constrained min-total-length flow of value tau partially
// routing D. Set t_step empty for unconstrained step.
ExactMincostResult exact_mincost(const Graph& g, const Demand& d, const Rat& tau,
                                 std::optional<long> t_step);

// Exact lambda* of the budgeted concurrent problem: max lambda s.t. a
// capacity-respecting flow routes lambda*D with cost(F) <= B. Costs are
// per-vertex (vertex mode). B empty = no budget.
Rat exact_concurrent_lambda(const Graph& g, const Demand& d, const std::vector<Rat>& vertex_cost,
                            std::optional<Rat> budget);

// Exact optimum of the budgeted non-concurrent problem: max total value over
// flows with supp(Dem) in the pair set.
Rat exact_nonconcurrent_value(const Graph& g, const Demand& d, const std::vector<Rat>& vertex_cost,
                              std::optional<Rat> budget);

// Classical single-commodity maxflow by augmenting paths (self-check oracle).
Rat augmenting_path_maxflow(const Graph& g, int s, int t);

}  // namespace lcf
