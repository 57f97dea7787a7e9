#include "lcflow/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "lcflow/lp.hpp"

namespace lcf {

namespace {

void gate(const Graph& g) {
  if (g.n > kOracleVertexGate) throw OracleGateExceeded("oracle-bound-exceeded");
}

std::vector<std::pair<int, Int>> neighbors(const Graph& g, int u) {
  std::vector<std::pair<int, Int>> out;  // (vertex, step length in edge mode)
  if (g.directed()) {
    for (int e : g.out_edges[u]) out.push_back({g.edges[e].v, g.edges[e].len});
  } else {
    for (int e : g.out_edges[u]) {
      const EdgeRec& r = g.edges[e];
      out.push_back({r.u == u ? r.v : r.u, Int(0)});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<std::vector<int>> enumerate_paths(const Graph& g, const std::vector<int>& sources,
                                              const std::vector<int>& sinks, const Int& h,
                                              std::optional<long> t_step) {
  gate(g);
  std::set<int> sinkset(sinks.begin(), sinks.end());
  std::vector<std::vector<int>> result;
  std::vector<bool> onpath(g.n, false);
  std::vector<int> cur;

  std::function<void(int, Int)> dfs = [&](int u, Int len) {
    if (sinkset.count(u)) result.push_back(cur);
    if (t_step && walk_steps(cur) >= *t_step) return;
    for (auto& [v, elen] : neighbors(g, u)) {
      if (onpath[v]) continue;
      Int nlen = len + elen + (g.mode == GraphMode::vertex_weighted ? g.vlen[v] : Int(0));
      if (nlen > h) continue;
      onpath[v] = true;
      cur.push_back(v);
      dfs(v, nlen);
      cur.pop_back();
      onpath[v] = false;
    }
  };

  std::vector<int> srt = sources;
  std::sort(srt.begin(), srt.end());
  srt.erase(std::unique(srt.begin(), srt.end()), srt.end());
  for (int s : srt) {
    Int slen = g.mode == GraphMode::vertex_weighted ? g.vlen[s] : Int(0);
    if (slen > h) continue;
    onpath[s] = true;
    cur.push_back(s);
    dfs(s, slen);
    cur.pop_back();
    onpath[s] = false;
  }
  return result;
}

namespace {

struct PathVars {
  // one LP variable per (commodity, path)
  std::vector<int> commodity;
  std::vector<std::vector<int>> verts;
};

// capacity rows shared by all path LPs: vertex mode constrains vertices,
// edge mode constrains edges
void add_capacity_rows(LinearProgram& lp, const Graph& g, const PathVars& pv) {
  if (g.mode == GraphMode::vertex_weighted) {
    for (int v = 0; v < g.n; ++v) {
      LpRow& row = lp.add_row(RowSense::le, Rat(g.vcap[v]));
      for (size_t i = 0; i < pv.verts.size(); ++i) {
        long uses = std::count(pv.verts[i].begin(), pv.verts[i].end(), v);
        if (uses) row.a[i] = Rat(uses);
      }
    }
  } else {
    for (int e = 0; e < g.m(); ++e) {
      LpRow& row = lp.add_row(RowSense::le, Rat(g.edges[e].cap));
      for (size_t i = 0; i < pv.verts.size(); ++i) {
        const std::vector<int>& p = pv.verts[i];
        long uses = 0;
        for (size_t j = 0; j + 1 < p.size(); ++j)
          if (g.edges[e].u == p[j] && g.edges[e].v == p[j + 1]) ++uses;
        if (uses) row.a[i] = Rat(uses);
      }
    }
  }
}

MultiFlow assemble(const PathVars& pv, const std::vector<Rat>& x, int k) {
  MultiFlow f = MultiFlow::zero_path(k);
  for (size_t i = 0; i < pv.verts.size(); ++i) {
    if (x[i] == 0) continue;
    PathFlow p;
    p.commodity = pv.commodity[i];
    p.verts = pv.verts[i];
    p.value = x[i];
    f.paths.push_back(p);
  }
  return f;
}

}  // namespace

ExactFlowResult exact_lc_maxflow(const Graph& g, const std::vector<SourceSinkPair>& pairs,
                                 const Int& h) {
  gate(g);
  PathVars pv;
  for (size_t i = 0; i < pairs.size(); ++i) {
    auto paths = enumerate_paths(g, pairs[i].sources, pairs[i].sinks, h);
    for (auto& p : paths) {
      pv.commodity.push_back(static_cast<int>(i));
      pv.verts.push_back(std::move(p));
    }
  }
  LinearProgram lp(static_cast<int>(pv.verts.size()), true);
  for (int i = 0; i < lp.nvars; ++i) lp.objective[i] = 1;
  add_capacity_rows(lp, g, pv);
  LpResult res = solve_lp(lp);
  if (!res.ok()) throw std::runtime_error("maxflow path LP failed unexpectedly");
  ExactFlowResult out;
  out.value = res.objective;
  out.flow = assemble(pv, res.x, static_cast<int>(pairs.size()));
  return out;
}

ExactMincostResult exact_mincost(const Graph& g, const Demand& d, const Rat& tau,
                                 std::optional<long> t_step) {
  gate(g);
  Int farlen = 0;  // no length bound: sum of everything is a safe cap
  if (g.mode == GraphMode::vertex_weighted)
    for (int v = 0; v < g.n; ++v) farlen += g.vlen[v];
  else
    for (const EdgeRec& e : g.edges) farlen += e.len;

  PathVars pv;
  for (int i = 0; i < d.k(); ++i) {
    auto paths = enumerate_paths(g, {d.entries[i].u}, {d.entries[i].v}, farlen, t_step);
    for (auto& p : paths) {
      pv.commodity.push_back(i);
      pv.verts.push_back(std::move(p));
    }
  }
  LinearProgram lp(static_cast<int>(pv.verts.size()), false);
  for (int i = 0; i < lp.nvars; ++i)
    lp.objective[i] = Rat(walk_length(g, pv.verts[i]));
  add_capacity_rows(lp, g, pv);
  {  // value(F) = tau
    LpRow& row = lp.add_row(RowSense::eq, tau);
    for (int i = 0; i < lp.nvars; ++i) row.a[i] = 1;
  }
  for (int c = 0; c < d.k(); ++c) {  // Dem(F) <= D per commodity
    if (d.entries[c].infinite) continue;
    LpRow& row = lp.add_row(RowSense::le, d.entries[c].value);
    for (int i = 0; i < lp.nvars; ++i)
      if (pv.commodity[i] == c) row.a[i] = 1;
  }
  LpResult res = solve_lp(lp);
  ExactMincostResult out;
  if (res.status == LpResult::Status::infeasible) {
    out.feasible = false;
    return out;
  }
  if (!res.ok()) throw std::runtime_error("mincost path LP failed unexpectedly");
  out.feasible = true;
  out.totlen = res.objective;
  out.flow = assemble(pv, res.x, d.k());
  return out;
}

namespace {

Rat path_cost(const std::vector<Rat>& vertex_cost, const std::vector<int>& p) {
  Rat c = 0;
  for (int v : p) c += vertex_cost[v];
  return c;
}

}  // namespace

Rat exact_concurrent_lambda(const Graph& g, const Demand& d, const std::vector<Rat>& vertex_cost,
                            std::optional<Rat> budget) {
  gate(g);
  Int farlen = 0;
  for (int v = 0; v < g.n; ++v) farlen += g.vlen[v];

  PathVars pv;
  for (int i = 0; i < d.k(); ++i) {
    auto paths = enumerate_paths(g, {d.entries[i].u}, {d.entries[i].v}, farlen);
    for (auto& p : paths) {
      pv.commodity.push_back(i);
      pv.verts.push_back(std::move(p));
    }
  }
  // vars: paths..., lambda
  int nv = static_cast<int>(pv.verts.size());
  LinearProgram lp(nv + 1, true);
  lp.objective[nv] = 1;
  add_capacity_rows(lp, g, pv);
  for (int c = 0; c < d.k(); ++c) {  // sum of commodity-c paths == lambda*D_c
    LpRow& row = lp.add_row(RowSense::eq, Rat(0));
    for (int i = 0; i < nv; ++i)
      if (pv.commodity[i] == c) row.a[i] = 1;
    row.a[nv] = -d.entries[c].value;
  }
  if (budget) {
    LpRow& row = lp.add_row(RowSense::le, *budget);
    for (int i = 0; i < nv; ++i) row.a[i] = path_cost(vertex_cost, pv.verts[i]);
  }
  LpResult res = solve_lp(lp);
  if (!res.ok()) throw std::runtime_error("concurrent lambda LP failed");
  return res.objective;
}

Rat exact_nonconcurrent_value(const Graph& g, const Demand& d, const std::vector<Rat>& vertex_cost,
                              std::optional<Rat> budget) {
  gate(g);
  Int farlen = 0;
  for (int v = 0; v < g.n; ++v) farlen += g.vlen[v];

  PathVars pv;
  for (int i = 0; i < d.k(); ++i) {
    auto paths = enumerate_paths(g, {d.entries[i].u}, {d.entries[i].v}, farlen);
    for (auto& p : paths) {
      pv.commodity.push_back(i);
      pv.verts.push_back(std::move(p));
    }
  }
  LinearProgram lp(static_cast<int>(pv.verts.size()), true);
  for (int i = 0; i < lp.nvars; ++i) lp.objective[i] = 1;
  add_capacity_rows(lp, g, pv);
  if (budget) {
    LpRow& row = lp.add_row(RowSense::le, *budget);
    for (int i = 0; i < lp.nvars; ++i) row.a[i] = path_cost(vertex_cost, pv.verts[i]);
  }
  LpResult res = solve_lp(lp);
  if (!res.ok()) throw std::runtime_error("nonconcurrent value LP failed");
  return res.objective;
}

Rat augmenting_path_maxflow(const Graph& g, int s, int t) {
  if (!g.directed()) throw InvalidInstance("augmenting-path oracle needs edge mode");
  // residual over edges and their reversals
  std::vector<Rat> fwd(g.m(), Rat(0));
  Rat total = 0;
  for (;;) {
    // BFS for an augmenting path
    std::vector<int> pred_edge(g.n, -1), pred_dir(g.n, 0);
    std::vector<bool> vis(g.n, false);
    std::vector<int> queue{s};
    vis[s] = true;
    for (size_t qi = 0; qi < queue.size() && !vis[t]; ++qi) {
      int u = queue[qi];
      for (int e : g.out_edges[u]) {
        int v = g.edges[e].v;
        if (!vis[v] && Rat(g.edges[e].cap) - fwd[e] > 0) {
          vis[v] = true;
          pred_edge[v] = e;
          pred_dir[v] = 0;
          queue.push_back(v);
        }
      }
      for (int e : g.in_edges[u]) {
        int v = g.edges[e].u;
        if (!vis[v] && fwd[e] > 0) {
          vis[v] = true;
          pred_edge[v] = e;
          pred_dir[v] = 1;
          queue.push_back(v);
        }
      }
    }
    if (!vis[t]) break;
    // bottleneck
    Rat aug;
    bool first = true;
    for (int v = t; v != s;) {
      int e = pred_edge[v];
      Rat room = pred_dir[v] == 0 ? Rat(g.edges[e].cap) - fwd[e] : fwd[e];
      if (first || room < aug) aug = room;
      first = false;
      v = pred_dir[v] == 0 ? g.edges[e].u : g.edges[e].v;
    }
    for (int v = t; v != s;) {
      int e = pred_edge[v];
      if (pred_dir[v] == 0) {
        fwd[e] += aug;
        v = g.edges[e].u;
      } else {
        fwd[e] -= aug;
        v = g.edges[e].v;
      }
    }
    total += aug;
  }
  return total;
}

}  // namespace lcf
