#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lcflow/graph.hpp"

namespace lcf {

// h_C-length vertex moving cut: values are exact multiples of 1/h_C in [0,1].
struct MovingCut {
  Int h_c = 1;
  std::vector<Int> numer;  // C(v) = numer[v]/h_c

  explicit MovingCut(int n = 0, Int h = 1) : h_c(std::move(h)), numer(n, Int(0)) {}

  Rat value(int v) const { return Rat(numer[v]) / Rat(h_c); }
  Int length_increase(int v) const { return numer[v]; }  // h_c * C(v)
  Rat size(const Graph& g) const;
  void validate(const Graph& g) const;
};

// G - C: lengths increased by h_C*C(v); capacities unchanged.
Graph apply_cut(const Graph& g, const MovingCut& c);

// All-pairs shortest vertex-path distances (lengths include endpoints).
std::vector<std::vector<Int>> all_pairs_dist(const Graph& g);

// Separated demand sep_h(C, D): sum of D(u,v) over pairs with
// dist_{G-C}(u,v) > h.
Rat separated_demand(const Graph& g, const MovingCut& c, const Demand& d, const Int& h);

// (h,s)-length sparsity of C w.r.t. A by exact b-matching LP over h-close,
// hs-separated pairs. Returns nullopt for "no-separated-demand" (+inf).
// Gated at n <= 16.
std::optional<Rat> cut_sparsity(const Graph& g, const MovingCut& c, const NodeWeighting& a,
                                const Int& h, const Int& s);

// ---- Appendix machinery ----

struct DemandMatchingGraph {
  // copies of v are ids copy_base[v] .. copy_base[v] + 2A(v) - 1
  std::vector<int> copy_base;
  std::vector<int> copy_owner;  // copy id -> original vertex
  int num_copies = 0;
  // one matching per input demand, in order; edges are copy-id pairs
  std::vector<std::vector<std::pair<int, int>>> matchings;
};

DemandMatchingGraph build_demand_matching_graph(const NodeWeighting& a,
                                                const std::vector<Demand>& ds);

// s-pg check: every edge of batch i has hop-distance > s in the union of
// earlier batches. Returns (ok, offending batch, offending edge).
struct SpgReport {
  bool ok = true;
  int batch = -1;
  std::pair<int, int> edge{-1, -1};
};
SpgReport check_spg(int num_vertices, const std::vector<std::vector<std::pair<int, int>>>& batches,
                    const Int& s);

// Deterministic tree-matching demand: per internal vertex, children (plus the
// vertex itself when odd) paired by sorted id.
struct TreeMatchingDemand {
  std::vector<std::pair<int, int>> pairs;  // unit-demand pairs (unordered)
};
struct Forest {
  // adjacency over copy ids; a forest of the demand matching graph
  std::vector<std::pair<int, int>> edges;
};
TreeMatchingDemand tree_matching_demand(int num_vertices,
                                        const std::vector<std::pair<int, int>>& tree_edges);

// Greedy edge-peeling forest cover: repeatedly extract a maximal spanning
// forest of the remaining edges.
std::vector<Forest> forest_cover(int num_vertices,
                                 const std::vector<std::pair<int, int>>& edges);

// Matching-dispersed demand MD(u,v) from the forest cover of the demand
// matching graph. Returned as a symmetric sparse map scaled by 1/(4*alpha).
struct SparseDemand {
  std::vector<std::tuple<int, int, Rat>> entries;  // (u, v, value), u <= v
  Rat total() const;
};
SparseDemand matching_dispersed_demand(const Graph& g, const NodeWeighting& a,
                                       const std::vector<Demand>& ds, int* alpha_out = nullptr);

// ---- Union-of-cuts verifier ----

struct CutSequenceWitness {
  std::vector<MovingCut> cuts;
  std::vector<Demand> demands;   // witnessing demands, integral
  std::vector<Rat> sparsities;   // phi_i
};

struct UnionWitnessReport {
  bool input_consistent = true;
  std::string inconsistency;
  // assertions for the union cut
  bool md_is_2h_length = false;
  bool md_a_respecting = false;
  bool md_separated = false;       // union cut h(s-2)-separates MD
  bool md_size_bound = false;      // |MD| >= (1/4a) sum |D_i|
  bool sparsity_bound = false;     // spars <= s^3 log^3 n * n^(c/s) * ratio
  int alpha = 0;
  Rat md_size = 0;
  Rat union_size = 0;              // |C_hat| after rescale
  std::optional<Rat> union_sparsity;  // empty = no separated demand
  Rat sparsity_bound_value = 0;
  std::pair<int, int> violating_pair{-1, -1};
  bool passed() const {
    return input_consistent && md_is_2h_length && md_a_respecting && md_separated &&
           md_size_bound && sparsity_bound;
  }
};

UnionWitnessReport verify_union_witness(const Graph& g, const NodeWeighting& a,
                                        const CutSequenceWitness& w, const Int& h, const Int& s,
                                        int c_exponent = 4);

}  // namespace lcf
