#include "lcflow/lowstep.hpp"

#include <algorithm>

#include "lcflow/maxflow.hpp"
#include "lcflow/rounding.hpp"

namespace lcf {

namespace {

// exact Dijkstra under a replacement length function; -1 = unreachable
std::vector<Int> int_dists(const Graph& g, const std::vector<Int>& elen, int src) {
  std::vector<Int> d(g.n, Int(-1));
  std::vector<bool> done(g.n, false);
  d[src] = 0;
  for (;;) {
    int best = -1;
    for (int v = 0; v < g.n; ++v)
      if (!done[v] && d[v] >= 0 && (best < 0 || d[v] < d[best])) best = v;
    if (best < 0) break;
    done[best] = true;
    for (int e : g.out_edges[best]) {
      int to = g.edges[e].v;
      Int cand = d[best] + elen[e];
      if (d[to] < 0 || cand < d[to]) d[to] = cand;
    }
  }
  return d;
}

}  // namespace

LowStepResult lowstep_directed(const Graph& g, const Demand& d, const LowStepConfig& cfg) {
  if (!g.directed()) throw InvalidInstance("lowstep_directed expects a directed graph");
  g.validate();
  d.validate(g);
  if (!d.integral()) throw InvalidInstance("lowstep needs an integral demand");
  const int n = g.n;
  if (cfg.eps < make_rat(10, n) || cfg.eps >= 1)
    throw InvalidInstance("lowstep precision must satisfy 10/n <= eps < 1");
  if (cfg.t < 1) throw InvalidInstance("step bound must be at least 1");
  const Rat dtotal = d.total();
  if (cfg.tau < 1 || cfg.tau > dtotal) throw InvalidInstance("tau must lie in [1, |D|]");

  const Rat eps = cfg.eps;
  const Int mu = pow2_at_least(Rat(int_pow(Int(n), 4)));
  const Int N = instance_value_bound(g, &d);
  const Rat cap_value = cfg.tau - make_rat(1, n);

  std::vector<Rat> resid;  // residual demand, stays (1/mu)-fractional
  for (const auto& e : d.entries) resid.push_back(e.value);

  LowStepResult res;
  res.flow = MultiFlow::zero_path(d.k());
  res.flow.frac_den = mu;
  Rat value = 0;

  ArcGraph ag;
  ag.n = g.n;
  std::vector<Rat> costs;
  for (const EdgeRec& e : g.edges) {
    ag.add_arc(e.u, e.v);
    costs.push_back(Rat(e.len));
  }

  const Rat tl = Rat(cfg.t) / eps + Rat(cfg.t);
  const long len_bound = static_cast<long>(rat_floor(tl).get_si()) + 2;
  const long jbar = 2 * (ilog2_ceil(Int(n) * Int(n) * N) + 1);
  const Rat hp_target = Rat(Int(n) * N);

  Rat hp = 1;
  for (long p = 0;; ++p, hp *= (1 + eps)) {
    BucketLedgerRow row;
    row.p = p;
    row.h_p = hp;

    std::vector<Int> lprime(g.m());
    for (int e = 0; e < g.m(); ++e)
      lprime[e] = rat_ceil(Rat(g.edges[e].len) * Rat(cfg.t) / (eps * hp));

    for (long j = 1; j <= jbar; ++j) {
      std::vector<int> live;
      for (int c = 0; c < d.k(); ++c)
        if (resid[c] > 0) live.push_back(c);
      if (live.empty()) break;

      bool reachable = false;
      for (int c : live) {
        auto dist = int_dists(g, lprime, d.entries[c].u);
        const Int& dd = dist[d.entries[c].v];
        if (dd >= 0 && dd <= len_bound - 2) {
          reachable = true;
          break;
        }
      }
      if (!reachable) break;  // maxflow value would be 0 <= 1/(2n)

      // G'': scaled lengths, capacities scaled by mu, artificial pairs
      Graph gpp = Graph::make_edge_weighted(n + 2 * static_cast<int>(live.size()));
      for (int e = 0; e < g.m(); ++e) {
        if (lprime[e] > len_bound) continue;
        if (g.edges[e].connector)
          gpp.add_connector(g.edges[e].u, g.edges[e].v, mu * g.edges[e].cap);
        else
          gpp.add_edge(g.edges[e].u, g.edges[e].v, lprime[e], mu * g.edges[e].cap);
      }
      CommodityPairs pairs;
      for (size_t i = 0; i < live.size(); ++i) {
        int c = live[i];
        int si = n + 2 * static_cast<int>(i);
        int ti = si + 1;
        Int dcap = rat_ceil(resid[c] * Rat(mu));
        gpp.add_edge(si, d.entries[c].u, Int(1), dcap);
        gpp.add_edge(d.entries[c].v, ti, Int(1), dcap);
        pairs.sources.push_back({si});
        pairs.sinks.push_back({ti});
      }

      MaxflowResult mf = lc_mc_maxflow(gpp, pairs, len_bound, Rat(1, 3));
      ++row.maxflow_calls;
      ++res.maxflow_calls;
      if (!mf.cert.certified)
        throw std::runtime_error("inner maxflow failed to certify its approximation");

      Rat ftilde_value = mf.cert.value / Rat(mu);
      if (ftilde_value <= make_rat(1, 2 * n)) break;

      // strip artificial endpoints, scale down by mu
      MultiFlow tilde = MultiFlow::zero_edge(static_cast<int>(live.size()), g.m());
      for (const PathFlow& pf : mf.flow.paths) {
        if (pf.verts.size() < 4) throw std::logic_error("artificial path too short");
        Rat val = pf.value / Rat(mu);
        int c = pf.commodity;
        for (size_t i = 1; i + 2 < pf.verts.size(); ++i)
          tilde.edge_flow[c][slot_for_step(g, pf.verts[i], pf.verts[i + 1])] += val;
        tilde.routed[c][{d.entries[live[c]].u, d.entries[live[c]].v}] += val;
      }

      // round each commodity to (1/mu)-fractional, cost-nonincreasing
      Rat hat_value = 0;
      std::vector<std::vector<Rat>> hat(live.size());
      std::vector<Rat> hat_dem(live.size(), Rat(0));
      for (size_t i = 0; i < live.size(); ++i) {
        int c = live[i];
        hat[i] = round_flow_arcs(ag, tilde.edge_flow[i], mu, {d.entries[c].u}, {d.entries[c].v},
                                 &costs);
        Rat net_out = 0;
        for (int a = 0; a < g.m(); ++a) {
          if (g.edges[a].u == d.entries[c].u) net_out += hat[i][a];
          if (g.edges[a].v == d.entries[c].u) net_out -= hat[i][a];
        }
        hat_dem[i] = net_out;
        hat_value += net_out;
      }
      if (hat_value <= 0) break;

      Rat room = cap_value - value;
      Rat lambda = room / hat_value;
      if (lambda > 1) lambda = 1;

      for (size_t i = 0; i < live.size(); ++i) {
        if (hat_dem[i] == 0) {
          bool any = false;
          for (const Rat& x : hat[i]) any = any || x != 0;
          if (!any) continue;
        }
        int c = live[i];
        auto paths =
            decompose_flow_paths(ag, hat[i], {d.entries[c].u}, {d.entries[c].v});
        for (auto& dp : paths) {
          PathFlow pf;
          pf.commodity = c;
          pf.verts = std::move(dp.nodes);
          pf.value = dp.value * lambda;
          if (pf.value == 0) continue;
          row.value_gained += pf.value;
          row.totlen_gained += pf.value * Rat(walk_length(g, pf.verts));
          res.flow.paths.push_back(std::move(pf));
        }
      }
      value += lambda * hat_value;

      if (lambda < 1) {
        res.ledger.push_back(row);
        res.value = value;
        return res;
      }
      for (size_t i = 0; i < live.size(); ++i) resid[live[i]] -= hat_dem[i];
    }

    res.ledger.push_back(row);
    if (hp >= hp_target) break;
  }

  if (value < cap_value) throw PremiseViolated(value);
  res.value = value;
  return res;
}

LowStepResult lowstep_undirected(const Graph& g, const Demand& d, const LowStepConfig& cfg) {
  if (g.mode != GraphMode::vertex_weighted)
    throw InvalidInstance("lowstep_undirected expects a vertex-weighted graph");
  const Rat dtotal = d.total();
  if (cfg.tau != 1 && cfg.tau != dtotal)
    throw InvalidInstance("undirected lowstep needs tau = 1 or tau = |D|");

  SplitMap sm = split_vertices(g);
  Demand ddir;
  for (const auto& e : d.entries) {
    DemandEntry de;
    de.u = sm.in_of(e.u);
    de.v = sm.out_of(e.v);
    de.value = e.value;
    ddir.entries.push_back(de);
  }
  LowStepConfig cfg_dir = cfg;
  // an s-step undirected path crosses s+1 vertex-edges and s connectors
  cfg_dir.t = 2 * cfg.t + 1;
  LowStepResult dir = lowstep_directed(sm.dir, ddir, cfg_dir);

  const int ndir = sm.dir.n;
  LowStepResult res;
  res.flow = MultiFlow::zero_path(d.k());
  res.flow.frac_den = dir.flow.frac_den;
  res.ledger = std::move(dir.ledger);
  res.maxflow_calls = dir.maxflow_calls;

  std::vector<Rat> per_comm(d.k(), Rat(0));
  for (const PathFlow& p : dir.flow.paths) per_comm[p.commodity] += p.value;

  std::vector<Rat> scale(d.k(), Rat(1));
  if (cfg.tau == 1) {
    Rat lam = cfg.tau / (cfg.tau - make_rat(1, ndir));
    for (int c = 0; c < d.k(); ++c) scale[c] = lam;
  } else {
    for (int c = 0; c < d.k(); ++c) {
      if (per_comm[c] == 0) throw PremiseViolated(dir.value);
      scale[c] = d.entries[c].value / per_comm[c];
    }
  }
  for (const PathFlow& p : dir.flow.paths) {
    PathFlow q;
    q.commodity = p.commodity;
    q.value = p.value * scale[p.commodity];
    q.verts = sm.project_walk(p.verts);
    res.flow.paths.push_back(std::move(q));
  }
  res.value = 0;
  for (const PathFlow& p : res.flow.paths) res.value += p.value;
  return res;
}

MultiFlow approx_mtl_flow(const Graph& g, const Demand& d, const Rat& tau, const Rat& eps,
                          const ShortcutProvider* shortcut) {
  if (g.mode != GraphMode::vertex_weighted)
    throw InvalidInstance("approx_mtl_flow expects a vertex-weighted graph");
  static const IdentityShortcut identity;
  if (!shortcut) shortcut = &identity;
  Graph gsc = shortcut->shortcut_graph(g);
  LowStepConfig cfg;
  cfg.t = shortcut->step_bound(gsc);
  cfg.tau = tau;
  cfg.eps = eps / 100;
  // the literal eps/100 is below the valid lowstep precision on small
  // instances; clamp up to the smallest admissible value
  Rat floor_eps = make_rat(10, 2 * gsc.n);
  if (cfg.eps < floor_eps) cfg.eps = floor_eps;
  if (cfg.eps >= 1)
    throw InvalidInstance("instance too small for the min-total-length pipeline");
  LowStepResult ls = lowstep_undirected(gsc, d, cfg);
  MultiFlow back = shortcut->map_back(g, ls.flow);
  return to_edge_representation(back, g);
}

}  // namespace lcf
