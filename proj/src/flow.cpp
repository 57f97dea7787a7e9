#include "lcflow/flow.hpp"

#include <algorithm>
#include <set>

namespace lcf {

Rat MultiFlow::value() const {
  Rat v = 0;
  if (rep == FlowRep::path) {
    for (const PathFlow& p : paths) v += p.value;
  } else {
    for (const auto& r : routed)
      for (const auto& [pair, val] : r) v += val;
  }
  return v;
}

Int walk_length(const Graph& g, const std::vector<int>& verts) {
  Int len = 0;
  if (g.mode == GraphMode::vertex_weighted) {
    for (int v : verts) len += g.vlen[v];
  } else {
    for (size_t i = 0; i + 1 < verts.size(); ++i) {
      int slot = slot_for_step(g, verts[i], verts[i + 1]);
      len += g.edges[g.directed() ? slot : slot / 2].len;
    }
  }
  return len;
}

long walk_steps(const std::vector<int>& verts) {
  return static_cast<long>(verts.size()) - 1;
}

bool walk_is_simple(const std::vector<int>& verts) {
  std::set<int> seen(verts.begin(), verts.end());
  return seen.size() == verts.size();
}

int slot_for_step(const Graph& g, int u, int v) {
  if (g.directed()) {
    for (int e : g.out_edges[u])
      if (g.edges[e].v == v) return e;
    throw InvalidInstance("path step uses missing edge");
  }
  for (int e : g.out_edges[u]) {
    const EdgeRec& r = g.edges[e];
    if (r.u == u && r.v == v) return 2 * e;
    if (r.v == u && r.u == v) return 2 * e + 1;
  }
  throw InvalidInstance("path step uses missing edge");
}

void validate_path_flow(const Graph& g, const MultiFlow& f, bool require_simple) {
  if (f.rep != FlowRep::path) throw InvalidInstance("expected path representation");
  for (const PathFlow& p : f.paths) {
    if (p.value <= 0) throw InvalidInstance("flow path with nonpositive value");
    if (p.verts.empty()) throw InvalidInstance("empty flow path");
    if (p.commodity < 0 || p.commodity >= f.k) throw InvalidInstance("bad commodity index");
    for (size_t i = 0; i + 1 < p.verts.size(); ++i)
      slot_for_step(g, p.verts[i], p.verts[i + 1]);
    if (require_simple && !walk_is_simple(p.verts))
      throw InvalidInstance("path is not simple");
  }
}

MultiFlow to_edge_representation(const MultiFlow& f, const Graph& g) {
  if (f.rep == FlowRep::edge) return f;
  validate_path_flow(g, f);
  MultiFlow out = MultiFlow::zero_edge(f.k, g.num_slots());
  out.frac_den = f.frac_den;
  for (const PathFlow& p : f.paths) {
    for (size_t i = 0; i + 1 < p.verts.size(); ++i)
      out.edge_flow[p.commodity][slot_for_step(g, p.verts[i], p.verts[i + 1])] += p.value;
    auto key = std::make_pair(p.verts.front(), p.verts.back());
    out.routed[p.commodity][key] += p.value;
  }
  return out;
}

FlowStats flow_stats(const MultiFlow& f, const Graph& g) {
  FlowStats s;
  if (f.rep == FlowRep::path) {
    validate_path_flow(g, f);
    Int maxlen = 0;
    long maxstep = 0;
    for (const PathFlow& p : f.paths) {
      s.value += p.value;
      Int len = walk_length(g, p.verts);
      s.totlen += p.value * Rat(len);
      if (len > maxlen) maxlen = len;
      maxstep = std::max(maxstep, walk_steps(p.verts));
    }
    s.length = maxlen;
    s.step = maxstep;
    if (g.mode == GraphMode::vertex_weighted) {
      std::vector<Rat> load = vertex_loads(g, f);
      for (int v = 0; v < g.n; ++v) {
        Rat c = load[v] / Rat(g.vcap[v]);
        if (c > s.congestion) s.congestion = c;
      }
    } else {
      std::vector<Rat> load(g.m(), Rat(0));
      for (const PathFlow& p : f.paths)
        for (size_t i = 0; i + 1 < p.verts.size(); ++i)
          load[slot_for_step(g, p.verts[i], p.verts[i + 1])] += p.value;
      for (int e = 0; e < g.m(); ++e) {
        Rat c = load[e] / Rat(g.edges[e].cap);
        if (c > s.congestion) s.congestion = c;
      }
    }
    return s;
  }
  // edge representation
  s.value = f.value();
  if (g.mode == GraphMode::vertex_weighted) {
    // throughput of v: half of incident flow, plus half of endpoint surplus
    std::vector<Rat> inc(g.n, Rat(0));
    std::vector<Rat> surplus(g.n, Rat(0));
    for (int c = 0; c < f.k; ++c) {
      for (int slot = 0; slot < g.num_slots(); ++slot) {
        const Rat& x = f.edge_flow[c][slot];
        if (x == 0) continue;
        auto [u, v] = g.slot_ends(slot);
        inc[u] += x;
        inc[v] += x;
      }
      for (const auto& [pair, val] : f.routed[c]) {
        surplus[pair.first] += val;
        surplus[pair.second] += val;
      }
    }
    for (int v = 0; v < g.n; ++v) {
      Rat through = (inc[v] + surplus[v]) / 2;
      s.totlen += through * Rat(g.vlen[v]);
      Rat c = through / Rat(g.vcap[v]);
      if (c > s.congestion) s.congestion = c;
    }
  } else {
    for (int c = 0; c < f.k; ++c)
      for (int e = 0; e < g.m(); ++e) {
        const Rat& x = f.edge_flow[c][e];
        if (x == 0) continue;
        s.totlen += x * Rat(g.edges[e].len);
      }
    std::vector<Rat> load(g.m(), Rat(0));
    for (int c = 0; c < f.k; ++c)
      for (int e = 0; e < g.m(); ++e) load[e] += f.edge_flow[c][e];
    for (int e = 0; e < g.m(); ++e) {
      Rat c = load[e] / Rat(g.edges[e].cap);
      if (c > s.congestion) s.congestion = c;
    }
  }
  return s;
}

Int flow_length(const MultiFlow& f, const Graph& g) {
  if (f.rep != FlowRep::path) throw InvalidInstance("path-form-required");
  return *flow_stats(f, g).length;
}

long flow_step(const MultiFlow& f, const Graph& g) {
  if (f.rep != FlowRep::path) throw InvalidInstance("path-form-required");
  return *flow_stats(f, g).step;
}

std::vector<Rat> vertex_loads(const Graph& g, const MultiFlow& f) {
  if (g.mode != GraphMode::vertex_weighted)
    throw InvalidInstance("vertex loads on edge-weighted graph");
  std::vector<Rat> load(g.n, Rat(0));
  if (f.rep == FlowRep::path) {
    for (const PathFlow& p : f.paths)
      for (int v : p.verts) load[v] += p.value;
  } else {
    std::vector<Rat> inc(g.n, Rat(0)), surplus(g.n, Rat(0));
    for (int c = 0; c < f.k; ++c) {
      for (int slot = 0; slot < g.num_slots(); ++slot) {
        const Rat& x = f.edge_flow[c][slot];
        if (x == 0) continue;
        auto [u, v] = g.slot_ends(slot);
        inc[u] += x;
        inc[v] += x;
      }
      for (const auto& [pair, val] : f.routed[c]) {
        surplus[pair.first] += val;
        surplus[pair.second] += val;
      }
    }
    for (int v = 0; v < g.n; ++v) load[v] = (inc[v] + surplus[v]) / 2;
  }
  return load;
}

std::optional<int> conservation_violation(const Graph& g, const MultiFlow& f, int commodity) {
  if (f.rep != FlowRep::edge) throw InvalidInstance("conservation check needs edge form");
  std::vector<Rat> net(g.n, Rat(0));  // outflow - inflow
  for (int slot = 0; slot < g.num_slots(); ++slot) {
    const Rat& x = f.edge_flow[commodity][slot];
    if (x == 0) continue;
    auto [u, v] = g.slot_ends(slot);
    net[u] += x;
    net[v] -= x;
  }
  for (const auto& [pair, val] : f.routed[commodity]) {
    net[pair.first] -= val;
    net[pair.second] += val;
  }
  for (int v = 0; v < g.n; ++v)
    if (net[v] != 0) return v;
  return std::nullopt;
}

MultiFlow add_flows(const MultiFlow& a, const MultiFlow& b, const Graph& g) {
  if (a.rep != b.rep || a.k != b.k) throw InvalidInstance("adding incompatible flows");
  MultiFlow out = a;
  if (a.rep == FlowRep::path) {
    out.paths.insert(out.paths.end(), b.paths.begin(), b.paths.end());
  } else {
    for (int c = 0; c < a.k; ++c) {
      for (int s = 0; s < static_cast<int>(a.edge_flow[c].size()); ++s)
        out.edge_flow[c][s] += b.edge_flow[c][s];
      for (const auto& [pair, val] : b.routed[c]) out.routed[c][pair] += val;
    }
  }
  (void)g;
  return out;
}

void scale_flow(MultiFlow& f, const Rat& c) {
  if (f.rep == FlowRep::path) {
    for (PathFlow& p : f.paths) p.value *= c;
    if (c == 0) f.paths.clear();
  } else {
    for (auto& per : f.edge_flow)
      for (Rat& x : per) x *= c;
    for (auto& r : f.routed)
      for (auto& [pair, val] : r) val *= c;
  }
}

}  // namespace lcf
