#include "lcflow/maxflow.hpp"

#include <algorithm>
#include <map>

namespace lcf {

namespace {

constexpr long kNoEdge = -1;

struct LevelDp {
  // dist[l][v]: lightest weight among walks from the seed set with total
  // edge length <= l; connectors (length 0) relax within a level.
  std::vector<std::vector<std::optional<Rat>>> dist;
};

LevelDp weight_dp(const Graph& g, const std::vector<Rat>& w, long h,
                  const std::vector<int>& seeds, bool forward) {
  LevelDp dp;
  dp.dist.assign(h + 1, std::vector<std::optional<Rat>>(g.n));
  for (int s : seeds) dp.dist[0][s] = Rat(0);
  for (long l = 0; l <= h; ++l) {
    auto& cur = dp.dist[l];
    if (l > 0)
      for (int v = 0; v < g.n; ++v) {
        const auto& prev = dp.dist[l - 1][v];
        if (prev && (!cur[v] || *prev < *cur[v])) cur[v] = prev;
      }
    // positive-length arcs landing on level l
    for (int e = 0; e < g.m(); ++e) {
      if (g.edges[e].len == 0 || g.edges[e].len > l) continue;
      long len = g.edges[e].len.get_si();
      int from = forward ? g.edges[e].u : g.edges[e].v;
      int to = forward ? g.edges[e].v : g.edges[e].u;
      const auto& src = dp.dist[l - len][from];
      if (!src) continue;
      Rat cand = *src + w[e];
      if (!cur[to] || cand < *cur[to]) cur[to] = cand;
    }
    // zero-length arcs within the level, to fixpoint
    bool changed = true;
    int guard = 0;
    while (changed) {
      if (++guard > g.n + 2) throw std::logic_error("zero-length relaxation did not settle");
      changed = false;
      for (int e = 0; e < g.m(); ++e) {
        if (g.edges[e].len != 0) continue;
        int from = forward ? g.edges[e].u : g.edges[e].v;
        int to = forward ? g.edges[e].v : g.edges[e].u;
        const auto& src = cur[from];
        if (!src) continue;
        Rat cand = *src + w[e];
        if (!cur[to] || cand < *cur[to]) {
          cur[to] = cand;
          changed = true;
        }
      }
    }
  }
  return dp;
}

}  // namespace

std::vector<std::optional<Rat>> lightest_hlen_paths(const Graph& g, const std::vector<Rat>& w,
                                                    long h, const CommodityPairs& pairs) {
  if (!g.directed()) throw InvalidInstance("lightest-path DP needs a directed graph");
  std::vector<std::optional<Rat>> out(pairs.k());
  for (int c = 0; c < pairs.k(); ++c) {
    LevelDp dp = weight_dp(g, w, h, pairs.sources[c], true);
    std::optional<Rat> best;
    for (int t : pairs.sinks[c]) {
      const auto& d = dp.dist[h][t];
      if (d && (!best || *d < *best)) best = d;
    }
    out[c] = best;
  }
  return out;
}

PathBlockerResult path_blocker(const Graph& g, const std::vector<Rat>& w, long h,
                               const Rat& lambda, const Rat& eps, const CommodityPairs& pairs) {
  if (lambda <= 0) throw InvalidInstance("lambda must be positive");
  ExpandedDag ed = build_expanded_dag(g, w, h, lambda, eps, pairs);
  PathBlockerResult res;
  res.kappa = ed.kappa;
  res.dag_nodes = ed.dag.n;
  res.dag_arcs = ed.dag.m();
  res.flow = MultiFlow::zero_path(pairs.k());
  if (ed.dag.m() == 0) return res;  // no copies: vacuously blocking

  BlockingFlowResult bf = blocking_flow(ed.dag, Rat(1, 2));
  res.blocking_iterations = bf.iterations;

  // decompose per commodity, project to original walks
  ArcGraph ag;
  ag.n = ed.dag.n;
  for (const auto& a : ed.dag.arcs) ag.add_arc(a.from, a.to);
  std::vector<Rat> orig_load(g.m(), Rat(0));
  std::vector<PathFlow> raw;
  for (int c = 0; c < pairs.k(); ++c) {
    bool any = false;
    for (const Rat& x : bf.flow[c])
      if (x != 0) any = true;
    if (!any) continue;
    auto dps = decompose_dag_flow_arcs(ag, bf.flow[c], ed.dag.sources[c], ed.dag.sinks[c]);
    for (auto& dp : dps) {
      PathFlow p;
      p.commodity = c;
      p.value = dp.value;
      p.verts.push_back(ed.node_orig[dp.nodes.front()]);
      for (size_t i = 0; i + 1 < dp.nodes.size(); ++i) {
        // arc between consecutive dag nodes recovers the original edge
        int from = dp.nodes[i], to = dp.nodes[i + 1];
        int found = kNoEdge;
        for (int a : ed.dag.out[from])
          if (ed.dag.arcs[a].to == to) {
            found = ed.dag.arcs[a].orig_edge;
            break;
          }
        if (found == kNoEdge) throw std::logic_error("dag path lost its arc");
        p.verts.push_back(g.edges[found].v);
        orig_load[found] += p.value;
      }
      raw.push_back(std::move(p));
    }
  }
  // divide by the measured congestion of the projection (<= kappa), so the
  // emitted flow is feasible and still 1/(2 kappa)-saturates blocked edges
  Rat cong = 1;
  for (int e = 0; e < g.m(); ++e) {
    Rat c = orig_load[e] / Rat(g.edges[e].cap);
    if (c > cong) cong = c;
  }
  res.divisor = cong;
  for (PathFlow& p : raw) {
    p.value /= cong;
    res.flow.paths.push_back(std::move(p));
  }
  res.flow.frac_den = Int(2) * bf.mu;  // before the divisor
  return res;
}

namespace {

struct ActiveView {
  Graph sub;                  // active subgraph (same vertex ids)
  std::vector<int> to_orig;   // active edge id -> original edge id
  CommodityPairs pairs;       // surviving commodities
  std::vector<int> comm_map;  // surviving commodity -> original commodity
};

// Keep edges that lie on some h-length source-sink path and commodities
// that have one.
ActiveView restrict_active(const Graph& g, const CommodityPairs& pairs, long h) {
  ActiveView av;
  av.sub = Graph::make_edge_weighted(g.n);
  std::vector<Rat> zero(g.m(), Rat(0));
  // integer length DP: use weights 0 and ask for reachability
  std::vector<bool> edge_active(g.m(), false);
  for (int c = 0; c < pairs.k(); ++c) {
    LevelDp fwd = weight_dp(g, zero, h, pairs.sources[c], true);
    LevelDp bwd = weight_dp(g, zero, h, pairs.sinks[c], false);
    // commodity alive iff some sink reachable within h
    bool alive = false;
    for (int t : pairs.sinks[c])
      if (fwd.dist[h][t]) alive = true;
    if (!alive) continue;
    av.pairs.sources.push_back(pairs.sources[c]);
    av.pairs.sinks.push_back(pairs.sinks[c]);
    av.comm_map.push_back(c);
    // smallest l with dist set, per vertex, forward and backward
    std::vector<long> fmin(g.n, -1), bmin(g.n, -1);
    for (long l = 0; l <= h; ++l)
      for (int v = 0; v < g.n; ++v) {
        if (fmin[v] < 0 && fwd.dist[l][v]) fmin[v] = l;
        if (bmin[v] < 0 && bwd.dist[l][v]) bmin[v] = l;
      }
    for (int e = 0; e < g.m(); ++e) {
      const EdgeRec& r = g.edges[e];
      if (r.len > h) continue;
      long len = r.len.get_si();
      if (fmin[r.u] < 0 || bmin[r.v] < 0) continue;
      if (fmin[r.u] + len + bmin[r.v] <= h) edge_active[e] = true;
    }
  }
  for (int e = 0; e < g.m(); ++e) {
    if (!edge_active[e]) continue;
    const EdgeRec& r = g.edges[e];
    int id;
    if (r.connector)
      id = av.sub.add_connector(r.u, r.v, r.cap);
    else
      id = av.sub.add_edge(r.u, r.v, r.len, r.cap);
    (void)id;
    av.to_orig.push_back(e);
  }
  return av;
}

}  // namespace

MaxflowResult lc_mc_maxflow(const Graph& g, const CommodityPairs& pairs, long h, const Rat& eps,
                            const MaxflowOptions& opt) {
  if (!g.directed()) throw InvalidInstance("lc_mc_maxflow expects an edge-weighted directed graph");
  if (eps <= 0 || eps >= 1) throw InvalidInstance("eps must be in (0,1)");
  if (h < 1) throw InvalidInstance("h must be at least 1");
  for (int c = 0; c < pairs.k(); ++c) {
    std::vector<bool> in_src(g.n, false);
    for (int v : pairs.sources[c]) in_src[v] = true;
    for (int v : pairs.sinks[c])
      if (in_src[v]) throw InvalidInstance("source and sink sets must be disjoint");
  }

  MaxflowResult out;
  out.flow = MultiFlow::zero_path(pairs.k());
  out.dual.assign(g.m(), Rat(0));
  out.cert.gap = 1;
  out.cert.certified = true;
  if (pairs.k() == 0) return out;

  ActiveView av = restrict_active(g, pairs, h);
  if (av.pairs.k() == 0) return out;  // zero flow, zero cut certify OPT = 0
  const Graph& sub = av.sub;
  const int ma = sub.m();

  Rat eps_step = opt.eps_step;
  if (eps_step == 0) eps_step = eps / 2;

  for (int attempt = 0; attempt <= opt.max_restarts; ++attempt, eps_step /= 2) {
    const Rat epsi = eps_step;
    long zeta = static_cast<long>(rat_ceil(1 / epsi).get_si());
    // eta uses a rational stand-in for ln m; it only scales the accumulation
    Rat lnm = Rat(7, 10) * Rat(ilog2_ceil(Int(std::max(ma, 2))) + 1);
    Rat eta = epsi * epsi / ((1 + 10 * epsi) * lnm);

    std::vector<Rat> w(ma);
    Rat wu_sum = 0;  // sum w(e) U(e)
    Rat m_pow = rat_pow(Rat(ma), zeta);
    for (int e = 0; e < ma; ++e) {
      w[e] = 1 / (m_pow * Rat(sub.edges[e].cap));
      wu_sum += w[e] * Rat(sub.edges[e].cap);
    }

    auto dmin_of = [&]() {
      auto ds = lightest_hlen_paths(sub, w, h, av.pairs);
      std::optional<Rat> m;
      for (const auto& d : ds)
        if (d && (!m || *d < *m)) m = d;
      if (!m) throw std::logic_error("live commodity lost its path");
      return *m;
    };

    // best dual snapshot
    std::vector<Rat> w_best = w;
    Rat d0 = dmin_of();
    Rat best_norm = d0;
    Rat best_val = wu_sum / d0;

    // primal accumulation (eta-scaled paths)
    std::vector<PathFlow> acc_paths;
    std::vector<Rat> load(ma, Rat(0));
    Rat value_acc = 0;
    Int frac_den = 1;

    Rat lambda = d0 < 1 ? d0 : Rat(1);
    long iterations = 0, phases = 0;
    bool certified = false;

    auto try_certify = [&]() {
      if (value_acc == 0) return false;
      Rat cong = 0;
      for (int e = 0; e < ma; ++e) {
        Rat c = load[e] / Rat(sub.edges[e].cap);
        if (c > cong) cong = c;
      }
      if (cong == 0) return false;
      Rat val_out = value_acc / cong;
      return best_val <= (1 + eps) * val_out;
    };

    while (true) {
      if (try_certify()) {
        certified = true;
        break;
      }
      Rat d = dmin_of();
      lambda = d < 1 ? d : Rat(1);  // fast-forward past empty phases
      Rat phase_target = (1 + epsi) * lambda;
      if (d >= phase_target) break;  // plateau at lambda = 1: restart smaller
      ++phases;
      while (d < phase_target) {
        if (++iterations > opt.max_iterations)
          throw std::runtime_error("maxflow iteration cap exceeded");
        PathBlockerResult pb = path_blocker(sub, w, h, lambda, epsi, av.pairs);
        if (pb.flow.paths.empty())
          throw std::logic_error("blocker returned empty flow below threshold");
        Int den = pb.flow.frac_den * rat_ceil(pb.divisor);
        if (den > frac_den) frac_den = den;
        std::vector<Rat> fhat(ma, Rat(0));
        for (const PathFlow& p : pb.flow.paths) {
          for (size_t i = 0; i + 1 < p.verts.size(); ++i)
            fhat[slot_for_step(sub, p.verts[i], p.verts[i + 1])] += p.value;
          PathFlow q = p;
          q.value *= eta;
          value_acc += q.value;
          acc_paths.push_back(std::move(q));
        }
        for (int e = 0; e < ma; ++e) {
          if (fhat[e] == 0) continue;
          load[e] += eta * fhat[e];
          Rat mult = epsi * fhat[e] / Rat(sub.edges[e].cap);
          wu_sum += w[e] * mult * Rat(sub.edges[e].cap);
          w[e] *= 1 + mult;
        }
        d = dmin_of();
        if (wu_sum / d < best_val) {
          best_val = wu_sum / d;
          best_norm = d;
          w_best = w;
        }
        if (try_certify()) {
          certified = true;
          break;
        }
      }
      if (certified) break;
    }

    out.cert.iterations += iterations;
    out.cert.phases += phases;
    out.cert.restarts = attempt;

    if (certified || attempt == opt.max_restarts) {
      // extract the congestion-scaled feasible flow
      Rat cong = 0;
      for (int e = 0; e < ma; ++e) {
        Rat c = load[e] / Rat(sub.edges[e].cap);
        if (c > cong) cong = c;
      }
      out.flow = MultiFlow::zero_path(pairs.k());
      if (cong > 0) {
        Rat scale = 1 / cong;
        for (PathFlow p : acc_paths) {
          p.value *= scale;
          p.commodity = av.comm_map[p.commodity];
          out.flow.paths.push_back(std::move(p));
        }
      }
      out.cert.value = cong > 0 ? value_acc / cong : Rat(0);
      out.cert.dual_value = best_val;
      out.cert.gap = out.cert.value > 0 ? best_val / out.cert.value : Rat(1);
      out.cert.certified = certified;
      out.cert.flow_paths = static_cast<long>(out.flow.paths.size());
      out.cert.measured_frac_den = frac_den;
      for (int e = 0; e < ma; ++e) out.dual[av.to_orig[e]] = w_best[e] / best_norm;
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

MaxflowResult lc_st_maxflow(const Graph& g, int s, int t, long h) {
  CommodityPairs pairs;
  pairs.sources.push_back({s});
  pairs.sinks.push_back({t});
  return lc_mc_maxflow(g, pairs, h, Rat(1, 3));
}

}  // namespace lcf
