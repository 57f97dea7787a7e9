#include "lcflow/rounding.hpp"

#include <algorithm>
#include <tuple>

namespace lcf {

namespace {

struct FracWalker {
  const ArcGraph& g;
  std::vector<Rat>& phi;
  std::vector<bool> fractional;
  std::vector<std::vector<int>> inc;  // incident arc ids, lazily pruned

  FracWalker(const ArcGraph& g_, std::vector<Rat>& phi_) : g(g_), phi(phi_) {
    fractional.assign(g.m(), false);
    inc.assign(g.n, {});
    for (int a = 0; a < g.m(); ++a) {
      if (rat_is_integer(phi[a])) continue;
      fractional[a] = true;
      inc[g.arcs[a].first].push_back(a);
      inc[g.arcs[a].second].push_back(a);
    }
  }

  void refresh(int a) {
    if (fractional[a] && rat_is_integer(phi[a])) fractional[a] = false;
  }

  // A live fractional arc at v other than `skip`. Conservation guarantees
  // one exists whenever any fractional arc touches v.
  int live_at(int v, int skip) {
    auto& lst = inc[v];
    for (int i = static_cast<int>(lst.size()) - 1; i >= 0; --i) {
      int a = lst[i];
      if (!fractional[a]) {
        lst[i] = lst.back();
        lst.pop_back();
        continue;
      }
      if (a == skip) continue;
      return a;
    }
    return -1;
  }
};

}  // namespace

std::vector<Rat> round_flow_arcs(const ArcGraph& g, const std::vector<Rat>& f, const Int& mu,
                                 const std::vector<int>& sources, const std::vector<int>& sinks,
                                 const std::vector<Rat>* costs) {
  if (mu <= 0) throw InvalidInstance("rounding parameter must be positive");
  {
    Int t = mu;
    while (t % 2 == 0) t /= 2;
    if (t != 1) throw InvalidInstance("rounding parameter must be a power of two");
  }

  // Augment with a super source/sink and a return arc so every fractional
  // component closes into a cycle.
  ArcGraph aug;
  aug.n = g.n + 2;
  const int SS = g.n, TT = g.n + 1;
  std::vector<Rat> phi;
  std::vector<Rat> acost;
  for (int a = 0; a < g.m(); ++a) {
    aug.add_arc(g.arcs[a].first, g.arcs[a].second);
    phi.push_back(f[a] * Rat(mu));
    acost.push_back(costs ? (*costs)[a] : Rat(0));
  }
  std::vector<Rat> net(g.n, Rat(0));  // out - in
  for (int a = 0; a < g.m(); ++a) {
    net[g.arcs[a].first] += phi[a];
    net[g.arcs[a].second] -= phi[a];
  }
  std::vector<bool> is_source(g.n, false), is_sink(g.n, false);
  for (int s : sources) is_source[s] = true;
  for (int t : sinks) is_sink[t] = true;
  Rat total = 0;
  for (int v = 0; v < g.n; ++v) {
    if (net[v] == 0) continue;
    if (net[v] > 0) {
      if (!is_source[v])
        throw InvalidInstance("rounding input violates conservation at vertex " +
                              std::to_string(v));
      aug.add_arc(SS, v);
      phi.push_back(net[v]);
      acost.push_back(0);
      total += net[v];
    } else {
      if (!is_sink[v])
        throw InvalidInstance("rounding input violates conservation at vertex " +
                              std::to_string(v));
      aug.add_arc(v, TT);
      phi.push_back(-net[v]);
      acost.push_back(0);
    }
  }
  const int return_arc = aug.add_arc(TT, SS);
  phi.push_back(total);
  acost.push_back(0);

  FracWalker fw(aug, phi);

  for (;;) {
    int start = -1;
    for (int a = 0; a < aug.m(); ++a)
      if (fw.fractional[a]) {
        start = a;
        break;
      }
    if (start < 0) break;

    std::vector<int> where(aug.n, -1);
    std::vector<std::tuple<int, int, int>> stack;  // (node, arc used, dir)
    int v0 = aug.arcs[start].first;
    stack.push_back({v0, -1, 0});
    where[v0] = 0;
    int cur = v0;
    int curarc = -1;
    for (;;) {
      int a = fw.live_at(cur, curarc);
      if (a < 0 && curarc == -1) a = start;
      if (a < 0) throw std::logic_error("rounding walk stuck; conservation broken");
      int to = aug.arcs[a].first == cur ? aug.arcs[a].second : aug.arcs[a].first;
      int dir = aug.arcs[a].first == cur ? +1 : -1;
      if (where[to] >= 0) {
        int base = where[to];
        std::vector<std::pair<int, int>> cyc;  // (arc, dir)
        for (int i = base + 1; i < static_cast<int>(stack.size()); ++i)
          cyc.push_back({std::get<1>(stack[i]), std::get<2>(stack[i])});
        cyc.push_back({a, dir});

        Rat room_plus, room_minus;
        bool first = true;
        Rat cycle_cost = 0;
        bool has_return = false, return_plus = false;
        for (auto& [ca, cd] : cyc) {
          Rat up = Rat(rat_ceil(phi[ca])) - phi[ca];
          Rat dn = phi[ca] - Rat(rat_floor(phi[ca]));
          Rat rp = cd > 0 ? up : dn;
          Rat rm = cd > 0 ? dn : up;
          if (first || rp < room_plus) room_plus = rp;
          if (first || rm < room_minus) room_minus = rm;
          first = false;
          cycle_cost += Rat(cd) * acost[ca];
          if (ca == return_arc) {
            has_return = true;
            return_plus = cd > 0;
          }
        }

        bool push_plus;
        if (costs) {
          if (cycle_cost < 0)
            push_plus = true;
          else if (cycle_cost > 0)
            push_plus = false;
          else
            push_plus = has_return ? return_plus : true;
        } else {
          push_plus = has_return ? return_plus : true;
        }
        Rat delta = push_plus ? room_plus : room_minus;
        for (auto& [ca, cd] : cyc) {
          int sign = push_plus ? cd : -cd;
          phi[ca] += Rat(sign) * delta;
          fw.refresh(ca);
        }
        break;
      }
      where[to] = static_cast<int>(stack.size());
      stack.push_back({to, a, dir});
      cur = to;
      curarc = a;
    }
  }

  std::vector<Rat> out(g.m());
  for (int a = 0; a < g.m(); ++a) {
    out[a] = phi[a] / Rat(mu);
    out[a].canonicalize();
  }
  return out;
}

MultiFlow round_flow(const MultiFlow& f, const Int& mu, const Graph& g, bool costs_from_lengths) {
  if (!g.directed()) throw InvalidInstance("round_flow expects an edge-weighted directed graph");
  if (f.rep != FlowRep::edge) throw InvalidInstance("round_flow expects edge representation");
  ArcGraph ag;
  ag.n = g.n;
  std::vector<Rat> costs;
  for (const EdgeRec& e : g.edges) {
    ag.add_arc(e.u, e.v);
    costs.push_back(Rat(e.len));
  }
  MultiFlow out = MultiFlow::zero_edge(f.k, g.num_slots());
  out.frac_den = mu;
  for (int c = 0; c < f.k; ++c) {
    std::vector<int> sources, sinks;
    for (const auto& [pair, val] : f.routed[c]) {
      if (val == 0) continue;
      sources.push_back(pair.first);
      sinks.push_back(pair.second);
    }
    if (auto bad = conservation_violation(g, f, c))
      throw InvalidInstance("round_flow: conservation violated at vertex " + std::to_string(*bad));
    std::vector<Rat> rounded = round_flow_arcs(ag, f.edge_flow[c], mu, sources, sinks,
                                               costs_from_lengths ? &costs : nullptr);
    out.edge_flow[c] = rounded;
    std::vector<Rat> net(g.n, Rat(0));
    for (int a = 0; a < g.m(); ++a) {
      net[g.edges[a].u] += rounded[a];
      net[g.edges[a].v] -= rounded[a];
    }
    int live_pairs = 0;
    for (const auto& [pair, val] : f.routed[c])
      if (val != 0) ++live_pairs;
    if (live_pairs > 1)
      throw InvalidInstance("round_flow handles one source-sink pair per commodity");
    for (const auto& [pair, val] : f.routed[c]) {
      if (val == 0) continue;
      out.routed[c][pair] = net[pair.first];
    }
  }
  return out;
}

std::vector<DagPath> decompose_dag_flow_arcs(const ArcGraph& g, const std::vector<Rat>& f,
                                             const std::vector<int>& sources,
                                             const std::vector<int>& sinks) {
  std::vector<Rat> net(g.n, Rat(0));
  std::vector<Rat> flow = f;
  for (int a = 0; a < g.m(); ++a) {
    if (flow[a] < 0) throw InvalidInstance("negative flow");
    net[g.arcs[a].first] += flow[a];
    net[g.arcs[a].second] -= flow[a];
  }
  std::vector<bool> is_source(g.n, false), is_sink(g.n, false);
  for (int s : sources) is_source[s] = true;
  for (int t : sinks) is_sink[t] = true;
  std::vector<Rat> emit(g.n, Rat(0)), absorb(g.n, Rat(0));
  for (int v = 0; v < g.n; ++v) {
    if (net[v] > 0) {
      if (!is_source[v])
        throw InvalidInstance("decomposition input violates conservation at vertex " +
                              std::to_string(v));
      emit[v] = net[v];
    } else if (net[v] < 0) {
      if (!is_sink[v])
        throw InvalidInstance("decomposition input violates conservation at vertex " +
                              std::to_string(v));
      absorb[v] = -net[v];
    }
  }

  std::vector<std::vector<int>> out(g.n);
  for (int a = 0; a < g.m(); ++a)
    if (flow[a] > 0) out[g.arcs[a].first].push_back(a);

  std::vector<DagPath> result;
  for (int s = 0; s < g.n; ++s) {
    while (emit[s] > 0) {
      std::vector<int> nodes{s};
      std::vector<int> arcs;
      Rat cap = emit[s];
      int cur = s;
      size_t guard = 0;
      while (absorb[cur] == 0) {
        auto& lst = out[cur];
        while (!lst.empty() && flow[lst.back()] == 0) lst.pop_back();
        if (lst.empty()) throw InvalidInstance("flow decomposition stuck");
        int a = lst.back();
        arcs.push_back(a);
        if (flow[a] < cap) cap = flow[a];
        cur = g.arcs[a].second;
        nodes.push_back(cur);
        if (++guard > static_cast<size_t>(g.m()) + 1)
          throw InvalidInstance("cycle detected in DAG flow");
      }
      if (absorb[cur] < cap) cap = absorb[cur];
      emit[s] -= cap;
      absorb[cur] -= cap;
      for (int a : arcs) flow[a] -= cap;
      DagPath p;
      p.nodes = std::move(nodes);
      p.value = cap;
      result.push_back(std::move(p));
    }
  }
  for (int a = 0; a < g.m(); ++a)
    if (flow[a] != 0) throw InvalidInstance("cycle detected in DAG flow");
  return result;
}

std::vector<DagPath> decompose_flow_paths(const ArcGraph& g, const std::vector<Rat>& f,
                                          const std::vector<int>& sources,
                                          const std::vector<int>& sinks) {
  std::vector<Rat> net(g.n, Rat(0));
  std::vector<Rat> flow = f;
  for (int a = 0; a < g.m(); ++a) {
    if (flow[a] < 0) throw InvalidInstance("negative flow");
    net[g.arcs[a].first] += flow[a];
    net[g.arcs[a].second] -= flow[a];
  }
  std::vector<bool> is_source(g.n, false), is_sink(g.n, false);
  for (int s : sources) is_source[s] = true;
  for (int t : sinks) is_sink[t] = true;
  std::vector<Rat> emit(g.n, Rat(0)), absorb(g.n, Rat(0));
  for (int v = 0; v < g.n; ++v) {
    if (net[v] > 0) {
      if (!is_source[v]) throw InvalidInstance("conservation violated at vertex " + std::to_string(v));
      emit[v] = net[v];
    } else if (net[v] < 0) {
      if (!is_sink[v]) throw InvalidInstance("conservation violated at vertex " + std::to_string(v));
      absorb[v] = -net[v];
    }
  }
  std::vector<std::vector<int>> out(g.n);
  for (int a = 0; a < g.m(); ++a)
    if (flow[a] > 0) out[g.arcs[a].first].push_back(a);

  std::vector<DagPath> result;
  std::vector<int> walk_pos(g.n, -1);
  for (int s = 0; s < g.n; ++s) {
    while (emit[s] > 0) {
      std::vector<int> nodes{s};
      std::vector<int> arcs;
      walk_pos[s] = 0;
      int cur = s;
      while (absorb[cur] == 0) {
        auto& lst = out[cur];
        while (!lst.empty() && flow[lst.back()] == 0) lst.pop_back();
        if (lst.empty()) throw InvalidInstance("flow decomposition stuck");
        int a = lst.back();
        int to = g.arcs[a].second;
        if (walk_pos[to] >= 0) {
          // cancel the cycle and rewind to the first visit of `to`
          int base = walk_pos[to];
          Rat delta;
          bool first = true;
          for (size_t i = base; i < arcs.size(); ++i)
            if (first || flow[arcs[i]] < delta) {
              delta = flow[arcs[i]];
              first = false;
            }
          if (delta > flow[a]) delta = flow[a];
          for (size_t i = base; i < arcs.size(); ++i) flow[arcs[i]] -= delta;
          flow[a] -= delta;
          for (size_t i = base + 1; i < nodes.size(); ++i) walk_pos[nodes[i]] = -1;
          nodes.resize(base + 1);
          arcs.resize(base);
          cur = to;
          continue;
        }
        arcs.push_back(a);
        cur = to;
        nodes.push_back(cur);
        walk_pos[cur] = static_cast<int>(nodes.size()) - 1;
      }
      Rat cap = emit[s];
      for (int a : arcs)
        if (flow[a] < cap) cap = flow[a];
      if (absorb[cur] < cap) cap = absorb[cur];
      emit[s] -= cap;
      absorb[cur] -= cap;
      for (int a : arcs) flow[a] -= cap;
      for (int v : nodes) walk_pos[v] = -1;
      DagPath p;
      p.nodes = std::move(nodes);
      p.value = cap;
      result.push_back(std::move(p));
    }
  }
  // leftover circulation: cancel silently, it routes no demand
  return result;
}

MultiFlow decompose_dag_flow(const MultiFlow& f, const Graph& g, long h) {
  if (!g.directed()) throw InvalidInstance("decompose_dag_flow expects a directed graph");
  if (f.rep != FlowRep::edge || f.k != 1)
    throw InvalidInstance("decompose_dag_flow expects single-commodity edge form");
  ArcGraph ag;
  ag.n = g.n;
  for (const EdgeRec& e : g.edges) ag.add_arc(e.u, e.v);
  std::vector<int> sources, sinks;
  for (const auto& [pair, val] : f.routed[0]) {
    (void)val;
    sources.push_back(pair.first);
    sinks.push_back(pair.second);
  }
  auto paths = decompose_dag_flow_arcs(ag, f.edge_flow[0], sources, sinks);
  MultiFlow out = MultiFlow::zero_path(1);
  out.frac_den = f.frac_den;
  for (auto& p : paths) {
    if (walk_steps(p.nodes) > h) throw InvalidInstance("decomposed path exceeds layer bound");
    PathFlow pf;
    pf.commodity = 0;
    pf.verts = std::move(p.nodes);
    pf.value = p.value;
    out.paths.push_back(std::move(pf));
  }
  return out;
}

}  // namespace lcf
