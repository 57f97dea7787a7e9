#include "lcflow/split.hpp"

namespace lcf {

SplitMap split_vertices(const Graph& g) {
  if (g.mode != GraphMode::vertex_weighted)
    throw InvalidInstance("split_vertices expects a vertex-weighted graph");
  g.validate();
  SplitMap sm;
  sm.orig_n = g.n;
  sm.dir = Graph::make_edge_weighted(2 * g.n);
  Int N = g.value_bound();
  Int conn_cap = Int(10) * std::max(1, g.m()) * N;
  // vertex-edges first: edge id of e_v equals v
  for (int v = 0; v < g.n; ++v) sm.dir.add_edge(sm.in_of(v), sm.out_of(v), g.vlen[v], g.vcap[v]);
  for (const EdgeRec& e : g.edges) {
    sm.dir.add_connector(sm.out_of(e.u), sm.in_of(e.v), conn_cap);
    sm.dir.add_connector(sm.out_of(e.v), sm.in_of(e.u), conn_cap);
  }
  sm.dir.validate();
  return sm;
}

std::vector<int> SplitMap::project_walk(const std::vector<int>& dir_verts) const {
  std::vector<int> out;
  if (dir_verts.empty()) return out;
  if (!is_in(dir_verts.front()) || is_in(dir_verts.back()))
    throw InvalidInstance("split walk must run v_in ... v_out");
  for (size_t i = 0; i < dir_verts.size(); ++i) {
    int dv = dir_verts[i];
    if (is_in(dv)) {
      if (i + 1 >= dir_verts.size() || dir_verts[i + 1] != out_of(orig_of(dv)))
        throw InvalidInstance("split walk skips a vertex-edge");
      out.push_back(orig_of(dv));
    }
  }
  return out;
}

MultiFlow SplitMap::lift_flow(const MultiFlow& f) const {
  if (f.rep != FlowRep::path) throw InvalidInstance("lift_flow expects path form");
  MultiFlow out = MultiFlow::zero_path(f.k);
  out.frac_den = f.frac_den;
  for (const PathFlow& p : f.paths) {
    PathFlow q;
    q.commodity = p.commodity;
    q.value = p.value;
    for (int v : p.verts) {
      q.verts.push_back(in_of(v));
      q.verts.push_back(out_of(v));
    }
    out.paths.push_back(std::move(q));
  }
  return out;
}

MultiFlow SplitMap::project_flow(const MultiFlow& f) const {
  if (f.rep != FlowRep::path) throw InvalidInstance("project_flow expects path form");
  MultiFlow out = MultiFlow::zero_path(f.k);
  out.frac_den = f.frac_den;
  for (const PathFlow& p : f.paths) {
    PathFlow q;
    q.commodity = p.commodity;
    q.value = p.value;
    q.verts = project_walk(p.verts);
    out.paths.push_back(std::move(q));
  }
  return out;
}

}  // namespace lcf
