#include "lcflow/dag.hpp"

#include <algorithm>
#include <unordered_map>

namespace lcf {

int FlowDag::add_arc(int from, int to, const Int& cap, int orig_edge) {
  Arc a;
  a.from = from;
  a.to = to;
  a.cap = cap;
  a.orig_edge = orig_edge;
  int id = m();
  arcs.push_back(a);
  if (static_cast<int>(out.size()) < n) out.resize(n);
  if (static_cast<int>(in.size()) < n) in.resize(n);
  out[from].push_back(id);
  in[to].push_back(id);
  return id;
}

void FlowDag::check_topological() const {
  for (const Arc& a : arcs)
    if (a.from >= a.to) throw InvalidInstance("cycle: arc violates node order");
}

Rat discretize_weight(const Rat& w, const Rat& lambda, long h, const Rat& eps) {
  if (lambda <= 0) throw InvalidInstance("lambda must be positive");
  if (w < 0) throw InvalidInstance("negative weight");
  Rat unit = eps / Rat(h) * lambda;
  return Rat(rat_ceil(w / unit)) * unit;
}

std::vector<Rat> discretize_weights(const std::vector<Rat>& w, const Rat& lambda, long h,
                                    const Rat& eps) {
  std::vector<Rat> out;
  out.reserve(w.size());
  for (const Rat& x : w) out.push_back(discretize_weight(x, lambda, h, eps));
  return out;
}

ExpandedDag build_expanded_dag(const Graph& g, const std::vector<Rat>& w, long h,
                               const Rat& lambda, const Rat& eps, const CommodityPairs& pairs) {
  if (!g.directed()) throw InvalidInstance("expanded DAG needs an edge-weighted directed graph");
  if (lambda <= 0) throw InvalidInstance("lambda must be positive");
  if (h < 1) throw InvalidInstance("h must be at least 1");

  ExpandedDag ed;
  ed.h = h;
  ed.unit = eps / Rat(h) * lambda;
  Int jmax = rat_floor((1 + 2 * eps) * Rat(h) / eps);
  // states are packed into 64-bit keys: v | j | h'
  if (g.n >= (1 << 24) || jmax >= (1 << 24) || h >= (1 << 16))
    throw InvalidInstance("expanded DAG parameters exceed the supported range");
  ed.j_max = static_cast<int64_t>(jmax.get_si());
  ed.kappa = Int(h + 1) * Int(ed.j_max + 1);

  // integer weight steps; edges longer than h or heavier than the budget
  // can never appear on a copy arc
  const int m = g.m();
  std::vector<int64_t> wstep(m, -1), elen(m, -1);
  for (int e = 0; e < m; ++e) {
    if (g.edges[e].len > h) continue;
    if (w[e] <= 0) throw InvalidInstance("expanded DAG needs positive weights");
    Int steps = rat_ceil(w[e] / ed.unit);
    if (steps > ed.j_max) continue;
    wstep[e] = steps.get_si();
    elen[e] = g.edges[e].len.get_si();
  }

  // forward reachability over states (v, j, hp)
  struct KeyHash {
    size_t operator()(uint64_t x) const { return std::hash<uint64_t>()(x); }
  };
  auto key = [&](int v, int64_t j, int64_t hp) {
    return (static_cast<uint64_t>(v) << 40) | (static_cast<uint64_t>(j) << 16) |
           static_cast<uint64_t>(hp);
  };
  std::unordered_map<uint64_t, int, KeyHash> id_of;
  std::vector<std::array<int64_t, 3>> states;  // (v, j, hp)
  auto intern = [&](int v, int64_t j, int64_t hp) {
    uint64_t kk = key(v, j, hp);
    auto it = id_of.find(kk);
    if (it != id_of.end()) return it->second;
    int id = static_cast<int>(states.size());
    id_of.emplace(kk, id);
    states.push_back({v, j, hp});
    return id;
  };

  std::vector<bool> is_source(g.n, false);
  for (const auto& sv : pairs.sources)
    for (int v : sv) is_source[v] = true;
  for (int v = 0; v < g.n; ++v)
    if (is_source[v]) intern(v, 0, 0);

  // BFS in j-order: arcs strictly increase j, so processing states sorted
  // by (j, hp, v) visits each once
  std::vector<std::array<int64_t, 4>> edges_tmp;  // (from, to, e, unused)
  for (size_t idx = 0; idx < states.size(); ++idx) {
    auto [v, j, hp] = states[idx];
    for (int e : g.out_edges[static_cast<int>(v)]) {
      if (wstep[e] < 0) continue;
      int64_t nj = j + wstep[e];
      int64_t nhp = hp + elen[e];
      if (nj > ed.j_max || nhp > h) continue;
      int to = intern(g.edges[e].v, nj, nhp);
      edges_tmp.push_back({static_cast<int64_t>(idx), to, e, 0});
    }
  }

  // backward pruning: keep states that reach some sink copy
  std::vector<bool> is_sink(g.n, false);
  for (const auto& tv : pairs.sinks)
    for (int v : tv) is_sink[v] = true;
  int ns = static_cast<int>(states.size());
  std::vector<std::vector<int>> radj(ns);
  for (auto& [f, t, e, u] : edges_tmp) radj[static_cast<int>(t)].push_back(static_cast<int>(f));
  std::vector<bool> keep(ns, false);
  std::vector<int> stack;
  for (int i = 0; i < ns; ++i)
    if (is_sink[static_cast<int>(states[i][0])]) {
      keep[i] = true;
      stack.push_back(i);
    }
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : radj[x])
      if (!keep[y]) {
        keep[y] = true;
        stack.push_back(y);
      }
  }

  // order kept states by (j, hp, v): topological since arcs increase j
  std::vector<int> kept;
  for (int i = 0; i < ns; ++i)
    if (keep[i]) kept.push_back(i);
  std::sort(kept.begin(), kept.end(), [&](int a, int b) {
    const auto& A = states[a];
    const auto& B = states[b];
    if (A[1] != B[1]) return A[1] < B[1];
    if (A[2] != B[2]) return A[2] < B[2];
    return A[0] < B[0];
  });
  std::vector<int> newid(ns, -1);
  for (size_t i = 0; i < kept.size(); ++i) newid[kept[i]] = static_cast<int>(i);

  ed.dag.n = static_cast<int>(kept.size());
  ed.dag.out.assign(ed.dag.n, {});
  ed.dag.in.assign(ed.dag.n, {});
  ed.node_orig.resize(ed.dag.n);
  ed.node_j.resize(ed.dag.n);
  ed.node_hp.resize(ed.dag.n);
  for (size_t i = 0; i < kept.size(); ++i) {
    ed.node_orig[i] = static_cast<int>(states[kept[i]][0]);
    ed.node_j[i] = states[kept[i]][1];
    ed.node_hp[i] = states[kept[i]][2];
  }
  for (auto& [f, t, e, u] : edges_tmp) {
    int nf = newid[static_cast<int>(f)], nt = newid[static_cast<int>(t)];
    if (nf < 0 || nt < 0) continue;
    ed.dag.add_arc(nf, nt, g.edges[static_cast<int>(e)].cap, static_cast<int>(e));
  }

  ed.dag.sources.assign(pairs.k(), {});
  ed.dag.sinks.assign(pairs.k(), {});
  for (int c = 0; c < pairs.k(); ++c) {
    for (int v : pairs.sources[c]) {
      auto it = id_of.find(key(v, 0, 0));
      if (it == id_of.end()) continue;
      int ni = newid[it->second];
      if (ni >= 0) ed.dag.sources[c].push_back(ni);
    }
    std::vector<bool> sink_v(g.n, false);
    for (int v : pairs.sinks[c]) sink_v[v] = true;
    for (int i = 0; i < ed.dag.n; ++i)
      if (sink_v[ed.node_orig[i]]) ed.dag.sinks[c].push_back(i);
  }
  ed.dag.check_topological();
  return ed;
}

PathCountResult path_count_flow(const FlowDag& dag, const std::vector<Rat>& ucur) {
  dag.check_topological();
  const int k = dag.k();
  const int m = dag.m();
  PathCountResult res;
  res.flow.assign(k, std::vector<Rat>(m, Rat(0)));
  res.total_count.assign(m, Rat(0));

  std::vector<std::vector<Rat>> cminus(k), cplus(k);
  for (int c = 0; c < k; ++c) {
    cminus[c].assign(dag.n, Rat(0));
    cplus[c].assign(dag.n, Rat(0));
    for (int s : dag.sources[c]) cminus[c][s] = 1;
    for (int v = 0; v < dag.n; ++v) {
      if (cminus[c][v] == 0) continue;
      for (int a : dag.out[v]) {
        if (ucur[a] == 0) continue;
        cminus[c][dag.arcs[a].to] += cminus[c][v] * ucur[a];
      }
    }
    for (int t : dag.sinks[c]) cplus[c][t] = 1;
    for (int v = dag.n - 1; v >= 0; --v) {
      // note: cplus[v] may pick up [v in T] plus downstream continuations
      Rat add = 0;
      for (int a : dag.out[v]) {
        if (ucur[a] == 0) continue;
        add += ucur[a] * cplus[c][dag.arcs[a].to];
      }
      cplus[c][v] += add;
    }
  }

  for (int a = 0; a < m; ++a) {
    if (ucur[a] == 0) continue;
    for (int c = 0; c < k; ++c) {
      Rat cnt = cminus[c][dag.arcs[a].from] * ucur[a] * cplus[c][dag.arcs[a].to];
      res.total_count[a] += cnt;
    }
  }
  // Normalize by the largest count relative to capacity. Scaling each
  // commodity's flow proportionally to its counts keeps conservation, and
  // dividing by max c(a)/U'(a) keeps the sum within capacity; arcs with
  // c(a) >= c(a*)/2 relative to their capacity still carry >= U'(a)/2.
  Rat rmax = 0;
  for (int a = 0; a < m; ++a) {
    if (res.total_count[a] > res.c_max) res.c_max = res.total_count[a];
    if (ucur[a] == 0) continue;
    Rat r = res.total_count[a] / ucur[a];
    if (r > rmax) rmax = r;
  }
  if (rmax > 0) {
    for (int a = 0; a < m; ++a) {
      if (ucur[a] == 0) continue;
      for (int c = 0; c < k; ++c) {
        Rat cnt = cminus[c][dag.arcs[a].from] * ucur[a] * cplus[c][dag.arcs[a].to];
        if (cnt == 0) continue;
        res.flow[c][a] = cnt / rmax;
      }
    }
  }
  return res;
}

BlockingFlowResult blocking_flow(const FlowDag& dag, const Rat& alpha) {
  if (alpha <= 0 || alpha >= 1) throw InvalidInstance("alpha must be in (0,1)");
  dag.check_topological();
  const int k = dag.k();
  const int m = dag.m();
  for (const auto& a : dag.arcs)
    if (!rat_is_integer(Rat(a.cap)) || a.cap < 0)
      throw InvalidInstance("blocking flow needs integral capacities");

  BlockingFlowResult res;
  res.mu = pow2_at_least(Rat(4 * k) / (1 - alpha));
  res.flow.assign(k, std::vector<Rat>(m, Rat(0)));

  std::vector<Rat> ucur(m);
  for (int a = 0; a < m; ++a) ucur[a] = Rat(dag.arcs[a].cap);

  ArcGraph ag;
  ag.n = dag.n;
  for (const auto& a : dag.arcs) ag.add_arc(a.from, a.to);

  const Rat one_minus_alpha = 1 - alpha;
  const long cap_iters = 100000;
  for (;;) {
    if (++res.iterations > cap_iters) throw std::runtime_error("blocking flow did not terminate");
    PathCountResult pc = path_count_flow(dag, ucur);
    if (pc.c_max == 0) break;
    // round each commodity to (1/mu)-fractional, halve, subtract
    std::vector<Rat> used(m, Rat(0));
    for (int c = 0; c < k; ++c) {
      std::vector<Rat> rounded =
          round_flow_arcs(ag, pc.flow[c], res.mu, dag.sources[c], dag.sinks[c], nullptr);
      for (int a = 0; a < m; ++a) {
        Rat half = rounded[a] / 2;
        res.flow[c][a] += half;
        used[a] += half;
      }
    }
    for (int a = 0; a < m; ++a) {
      Rat rem = ucur[a] - used[a];
      if (rem <= one_minus_alpha)
        ucur[a] = 0;
      else
        ucur[a] = rem;
    }
  }
  return res;
}

}  // namespace lcf
