#pragma once

#include <vector>

#include "lcflow/graph.hpp"

namespace lcf {

struct NeighborhoodCover {
  Int h_cov = 1;
  Int h_diam = 1;
  std::vector<std::vector<std::vector<int>>> clusterings;

  int width() const { return static_cast<int>(clusterings.size()); }
};

// Seeded sequential ball-carving. Guarantees the three cover invariants:
// disjoint clusters per clustering, cluster diameter <= beta*h_cov, and
// every radius-h_cov ball inside some cluster. Width is whatever the
// carving needed.
NeighborhoodCover build_cover(const Graph& g, const Int& h_cov, long beta, uint64_t seed);

// Exhaustive validation of the three invariants; throws on violation.
// Gated at n <= 10^4.
void validate_cover(const Graph& g, const NeighborhoodCover& nc);

}  // namespace lcf
