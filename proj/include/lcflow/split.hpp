#pragma once

#include "lcflow/flow.hpp"
#include "lcflow/graph.hpp"

namespace lcf {

// Vertex-splitting reduction: vertex-weighted undirected -> edge-weighted
// directed. Each v becomes v_in -> v_out with the vertex's length and
// capacity; each undirected edge becomes two zero-length connectors with
// capacity 10*m*N.
struct SplitMap {
  Graph dir;            // the split graph
  int orig_n = 0;

  int in_of(int v) const { return 2 * v; }
  int out_of(int v) const { return 2 * v + 1; }
  int orig_of(int dv) const { return dv / 2; }
  bool is_in(int dv) const { return dv % 2 == 0; }

  // Translate a directed walk (alternating vertex-edges and connectors)
  // back to the original vertex walk. Requires the walk to start at some
  // u_in and end at some v_out.
  std::vector<int> project_walk(const std::vector<int>& dir_verts) const;

  // Map an original flow into the split graph (forward mapping).
  MultiFlow lift_flow(const MultiFlow& f) const;
  // Map a split-graph path flow back (backward mapping); totlen and
  // congestion are preserved exactly.
  MultiFlow project_flow(const MultiFlow& f) const;
};

SplitMap split_vertices(const Graph& g);

}  // namespace lcf
