#pragma once

#include <functional>
#include <optional>

#include "lcflow/flow.hpp"
#include "lcflow/graph.hpp"

namespace lcf {

struct OracleContractViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flow boosting template over an (s, kappa)-slack oracle. The oracle maps
// integral vertex lengths to an edge-representation flow in the convex set
// described by (demand, tau, concurrent). The loop keeps two exact
// certificates per iteration: lambda_meas, the largest feasible scaling of
// the running convex combination, and upper_bound = min_i D(i)/alpha(i), a
// dual bound on lambda*. It stops once lambda_meas >= target * upper_bound
// (or at the classical D >= 1 exit).
struct BoostInput {
  const Graph* g = nullptr;  // vertex-weighted; capacities already tau-scaled
  std::vector<Rat> cost;     // b(v) >= 0
  std::optional<Rat> budget; // B; empty = unbudgeted
  Demand demand;
  Rat tau = 1;
  bool concurrent = false;   // Dem == demand vs Dem <= demand with value == tau
  Rat eps = Rat(1, 4);
  Rat kappa_declared = 4;    // congestion slack the oracle promises
  std::function<MultiFlow(const std::vector<Int>&)> oracle;
  long max_iterations = 0;   // 0 = derived from kappa and eps
  bool keep_flows = false;   // retain per-iteration flows for reconstruction
};

struct BoostResult {
  MultiFlow flow;             // F_bar, edge representation
  std::vector<Rat> combo;     // convex coefficients z_i / sum z
  Rat lambda = 0;             // measured feasible scaling of F_bar
  Rat upper_bound = 0;        // exact bound on lambda*
  Rat target = 0;             // (1 - 10 eps) / (1 + eps/100)
  bool certified = false;
  long oracle_calls = 0;
  Rat kappa_update = 1;       // denominator used in the multiplicative updates
  std::vector<Rat> d_history; // D(i), non-decreasing
  std::vector<Rat> total_load;  // per-vertex flow routed over the run (z-scaled)
  Rat load_bound = 0;           // kappa * ceil(log_{1+eps} 1/delta)
  std::vector<MultiFlow> flows; // filled when keep_flows
};

BoostResult boost(const BoostInput& in);

// Exact min-length flow in F cap K under per-vertex lengths (the alpha of
// the boosting dual), solved as a polynomial-size edge LP.
Rat min_length_flow_value(const Graph& g, const std::vector<Rat>& length, const Demand& demand,
                          const Rat& tau, bool concurrent);

enum class MincostMode { concurrent, non_concurrent };

struct MincostProblem {
  Graph g;                 // vertex-weighted undirected
  std::vector<Rat> cost;   // vertex costs
  std::optional<Rat> budget;
  Demand demand;           // concurrent: integral demand; non-concurrent: unit pairs
  MincostMode mode = MincostMode::concurrent;
};

struct MincostResult {
  MultiFlow flow;       // edge representation of lambda * F_bar in original units
  Rat lambda = 0;       // concurrent: routed fraction of D; non-concurrent: value
  Rat cost = 0;
  Rat upper_bound = 0;  // on lambda*
  bool certified = false;
  long oracle_calls = 0;
};

// (1+eps)-approximate concurrent / non-concurrent mincost flow via boosting
// over the min-total-length oracle.
MincostResult solve_mincost(const MincostProblem& problem, const Rat& eps);

}  // namespace lcf
