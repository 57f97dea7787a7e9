#include "lcflow/cover.hpp"

#include <algorithm>
#include <numeric>

#include "lcflow/cuts.hpp"
#include "lcflow/rng.hpp"

namespace lcf {

namespace {

// ball of radius r around v under vertex-length distances
std::vector<int> ball(const std::vector<std::vector<Int>>& dist, int v, const Int& r) {
  std::vector<int> out;
  for (int u = 0; u < static_cast<int>(dist.size()); ++u)
    if (dist[v][u] >= 0 && dist[v][u] <= r) out.push_back(u);
  return out;
}

}  // namespace

NeighborhoodCover build_cover(const Graph& g, const Int& h_cov, long beta, uint64_t seed) {
  if (g.mode != GraphMode::vertex_weighted)
    throw InvalidInstance("covers are built on vertex-weighted graphs");
  if (beta < 2) throw InvalidInstance("beta must be at least 2");
  g.validate();
  NeighborhoodCover nc;
  nc.h_cov = h_cov;
  nc.h_diam = Int(beta) * h_cov;

  auto dist = all_pairs_dist(g);
  Rng rng(seed);

  // satisfied[v]: some cluster already contains Ball(v, h_cov)
  std::vector<bool> satisfied(g.n, false);
  auto ball_covered = [&](int v, const std::vector<int>& cluster_mask_of,
                          const std::vector<std::vector<int>>& clusters) {
    for (int u = 0; u < g.n; ++u) {
      if (!(dist[v][u] >= 0 && dist[v][u] <= h_cov)) continue;
      if (cluster_mask_of[u] < 0) return false;
    }
    // all ball members share one cluster?
    int c = -1;
    for (int u = 0; u < g.n; ++u) {
      if (!(dist[v][u] >= 0 && dist[v][u] <= h_cov)) continue;
      if (c < 0) c = cluster_mask_of[u];
      if (cluster_mask_of[u] != c) return false;
    }
    (void)clusters;
    return true;
  };

  // carving radius range: centers claim balls of radius in
  // [h_cov, beta*h_cov/2] so diameters stay within beta*h_cov
  const Int rmin = h_cov;
  const Int rmax = (Int(beta) * h_cov) / 2;
  const int max_rounds = 64;

  for (int round = 0; round < max_rounds; ++round) {
    bool all = true;
    for (int v = 0; v < g.n; ++v) all = all && satisfied[v];
    if (all) break;

    std::vector<int> perm(g.n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = g.n - 1; i > 0; --i)
      std::swap(perm[i], perm[rng.below(static_cast<uint64_t>(i + 1))]);

    std::vector<int> owner(g.n, -1);
    std::vector<std::vector<int>> clusters;
    for (int c : perm) {
      if (owner[c] >= 0) continue;
      // geometric radius, truncated into [rmin, rmax]
      Int r = rmin;
      while (r < rmax && rng.chance(1, 2)) r += h_cov;
      if (r > rmax) r = rmax;
      std::vector<int> cl;
      for (int u : ball(dist, c, r))
        if (owner[u] < 0) {
          owner[u] = static_cast<int>(clusters.size());
          cl.push_back(u);
        }
      if (!cl.empty()) clusters.push_back(std::move(cl));
    }
    bool useful = false;
    for (int v = 0; v < g.n; ++v) {
      if (satisfied[v]) continue;
      if (ball_covered(v, owner, clusters)) {
        satisfied[v] = true;
        useful = true;
      }
    }
    if (useful) nc.clusterings.push_back(std::move(clusters));
  }

  // fallback: any still-unsatisfied vertex gets a dedicated clustering of
  // its own ball (diameter <= 2*h_cov <= beta*h_cov)
  for (int v = 0; v < g.n; ++v) {
    if (satisfied[v]) continue;
    std::vector<int> b = ball(dist, v, h_cov);
    if (b.empty()) {  // h_cov below the vertex's own length
      satisfied[v] = true;
      continue;
    }
    nc.clusterings.push_back({b});
    satisfied[v] = true;
  }
  return nc;
}

void validate_cover(const Graph& g, const NeighborhoodCover& nc) {
  if (g.n > 10000) throw OracleGateExceeded("oracle-bound-exceeded");
  auto dist = all_pairs_dist(g);
  for (const auto& clustering : nc.clusterings) {
    std::vector<int> owner(g.n, -1);
    for (size_t c = 0; c < clustering.size(); ++c)
      for (int v : clustering[c]) {
        if (owner[v] >= 0) throw InvalidInstance("clusters overlap within a clustering");
        owner[v] = static_cast<int>(c);
      }
    for (const auto& cl : clustering)
      for (int u : cl)
        for (int v : cl) {
          if (dist[u][v] < 0 || dist[u][v] > nc.h_diam)
            throw InvalidInstance("cluster diameter exceeds h_diam");
        }
  }
  // covering: every ball of radius h_cov inside some cluster
  for (int v = 0; v < g.n; ++v) {
    std::vector<int> b;
    for (int u = 0; u < g.n; ++u)
      if (dist[v][u] >= 0 && dist[v][u] <= nc.h_cov) b.push_back(u);
    if (b.empty()) continue;
    bool covered = false;
    for (const auto& clustering : nc.clusterings) {
      for (const auto& cl : clustering) {
        std::vector<bool> in(g.n, false);
        for (int x : cl) in[x] = true;
        bool all = true;
        for (int x : b) all = all && in[x];
        if (all) {
          covered = true;
          break;
        }
      }
      if (covered) break;
    }
    if (!covered) throw InvalidInstance("ball of vertex " + std::to_string(v) + " not covered");
  }
}

}  // namespace lcf
