#pragma once

#include <optional>

#include "lcflow/dag.hpp"
#include "lcflow/flow.hpp"
#include "lcflow/graph.hpp"

namespace lcf {

// Lightest h-length path weight per commodity (min over source/sink pairs),
// exact DP over (vertex, consumed length). nullopt = no h-length path.
std::vector<std::optional<Rat>> lightest_hlen_paths(const Graph& g, const std::vector<Rat>& w,
                                                    long h, const CommodityPairs& pairs);

struct PathBlockerResult {
  MultiFlow flow;  // path form; walks satisfy w(P) <= (1+2eps)lambda, leng <= h
  Int kappa = 0;   // copy bound; alpha = 1/(2 kappa)
  Rat divisor = 1; // measured projection divisor (<= kappa)
  long dag_nodes = 0;
  long dag_arcs = 0;
  long blocking_iterations = 0;
};

// (1+eps)-lightest path alpha-blocker with alpha = 1/(2 kappa) via a
// 0.5-blocking flow on the expanded DAG.
PathBlockerResult path_blocker(const Graph& g, const std::vector<Rat>& w, long h,
                               const Rat& lambda, const Rat& eps, const CommodityPairs& pairs);

struct MaxflowOptions {
  Rat eps_step = 0;  // internal MWU step; 0 picks eps/2
  long max_iterations = 100000;
  int max_restarts = 6;
};

struct MaxflowCertificate {
  Rat value = 0;       // value of the emitted feasible flow
  Rat dual_value = 0;  // |w_best|
  Rat gap = 1;         // dual/primal; 1 for the zero instance
  bool certified = false;
  long iterations = 0;
  long phases = 0;
  int restarts = 0;
  long flow_paths = 0;
  Int measured_frac_den = 0;
};

struct MaxflowResult {
  MultiFlow flow;         // path form on the input graph
  std::vector<Rat> dual;  // normalized moving cut, one weight per edge
  MaxflowCertificate cert;
};

// (1+eps)-approximate h-length multi-commodity maxflow with moving-cut dual
// (MWU over lightest-path blockers). The returned pair is exactly
// verifiable: the flow is feasible and h-length, the dual covers every
// h-length source-sink path, and cert.gap = dual/value.
MaxflowResult lc_mc_maxflow(const Graph& g, const CommodityPairs& pairs, long h, const Rat& eps,
                            const MaxflowOptions& opt = {});

// 0.5-approximate single-commodity wrapper (eps = 1/3).
MaxflowResult lc_st_maxflow(const Graph& g, int s, int t, long h);

}  // namespace lcf
