#pragma once

#include "lcflow/flow.hpp"
#include "lcflow/graph.hpp"
#include "lcflow/split.hpp"

namespace lcf {

struct PremiseViolated : std::runtime_error {
  Rat achieved;
  explicit PremiseViolated(const Rat& v)
      : std::runtime_error("premise-violated: achieved value " + rat_str(v)), achieved(v) {}
};

struct LowStepConfig {
  long t = 1;        // step bound
  Rat tau = 1;       // 1 or |D|
  Rat eps = Rat(1, 2);
  // mu is derived: smallest power of two >= n^4
};

struct BucketLedgerRow {
  long p = 0;
  Rat h_p = 0;
  Rat value_gained = 0;
  Rat totlen_gained = 0;
  long maxflow_calls = 0;
};

struct LowStepResult {
  MultiFlow flow;  // path form
  std::vector<BucketLedgerRow> ledger;
  Rat value = 0;
  long maxflow_calls = 0;
};

// Greedy length-bucketed low-step min-total-length flow (directed core).
// Requires a feasible t-step flow of value tau partially routing D; throws
// PremiseViolated with the achieved value otherwise.
LowStepResult lowstep_directed(const Graph& g, const Demand& d, const LowStepConfig& cfg);

// Undirected vertex-capacitated wrapper: split, solve with step 2t+1,
// project back, rescale per commodity so value(F) = tau exactly.
LowStepResult lowstep_undirected(const Graph& g, const Demand& d, const LowStepConfig& cfg);

// Shortcut provider for the min-total-length driver. The identity provider
// adds nothing and reports step bound n-1; a real shortcut construction can
// plug in here.
struct ShortcutProvider {
  virtual ~ShortcutProvider() = default;
  virtual Graph shortcut_graph(const Graph& g) const = 0;
  virtual long step_bound(const Graph& g) const = 0;
  // map a flow on the shortcut graph back to the original graph
  virtual MultiFlow map_back(const Graph& g, const MultiFlow& f) const = 0;
};

struct IdentityShortcut final : ShortcutProvider {
  Graph shortcut_graph(const Graph& g) const override { return g; }
  long step_bound(const Graph& g) const override { return g.n - 1; }
  MultiFlow map_back(const Graph&, const MultiFlow& f) const override { return f; }
};

// (1+eps)-approximate min-total-length flow of value tau (edge form).
// Internal precision eps/100, clamped up to the smallest valid lowstep
// precision 10/n_dir when the instance is too small for the literal value.
MultiFlow approx_mtl_flow(const Graph& g, const Demand& d, const Rat& tau, const Rat& eps,
                          const ShortcutProvider* shortcut = nullptr);

}  // namespace lcf
