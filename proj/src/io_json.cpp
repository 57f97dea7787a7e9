#include "lcflow/io_json.hpp"

#include <istream>
#include <sstream>

namespace lcf {

Json flow_to_json(const MultiFlow& f, const Graph& g) {
  MultiFlow edge = f.rep == FlowRep::edge ? f : to_edge_representation(f, g);
  Json j;
  j["k"] = edge.k;
  j["fractionality_den"] = edge.frac_den == 0 ? "unreported" : edge.frac_den.get_str();
  Json commodities = Json::array();
  for (int c = 0; c < edge.k; ++c) {
    Json jc;
    Json edges = Json::array();
    for (int s = 0; s < static_cast<int>(edge.edge_flow[c].size()); ++s) {
      if (edge.edge_flow[c][s] == 0) continue;
      auto [u, v] = g.slot_ends(s);
      Json je;
      je["from"] = u + 1;
      je["to"] = v + 1;
      je["value"] = rat_str(edge.edge_flow[c][s]);
      edges.push_back(je);
    }
    jc["edges"] = edges;
    Json routed = Json::array();
    for (const auto& [pair, val] : edge.routed[c]) {
      if (val == 0) continue;
      Json jr;
      jr["from"] = pair.first + 1;
      jr["to"] = pair.second + 1;
      jr["value"] = rat_str(val);
      routed.push_back(jr);
    }
    jc["routed"] = routed;
    commodities.push_back(jc);
  }
  j["commodities"] = commodities;
  FlowStats st = flow_stats(f, g);
  j["stats"] = stats_to_json(st);
  return j;
}

Json stats_to_json(const FlowStats& s) {
  Json j;
  j["value"] = rat_str(s.value);
  j["congestion"] = rat_str(s.congestion);
  j["totlen"] = rat_str(s.totlen);
  if (s.length) j["length"] = s.length->get_str();
  if (s.step) j["step"] = *s.step;
  return j;
}

Json maxflow_to_json(const MaxflowResult& r, const Graph& g) {
  Json j;
  j["flow"] = flow_to_json(r.flow, g);
  Json dual = Json::array();
  for (int e = 0; e < g.m(); ++e) {
    if (r.dual[e] == 0) continue;
    Json je;
    je["from"] = g.edges[e].u + 1;
    je["to"] = g.edges[e].v + 1;
    je["weight"] = rat_str(r.dual[e]);
    dual.push_back(je);
  }
  j["cut"] = dual;
  Json cert;
  cert["value"] = rat_str(r.cert.value);
  cert["dual_value"] = rat_str(r.cert.dual_value);
  cert["gap"] = rat_str(r.cert.gap);
  cert["certified"] = r.cert.certified;
  cert["iterations"] = r.cert.iterations;
  cert["phases"] = r.cert.phases;
  cert["restarts"] = r.cert.restarts;
  cert["flow_paths"] = r.cert.flow_paths;
  cert["fractionality_den"] = r.cert.measured_frac_den.get_str();
  j["certificate"] = cert;
  return j;
}

Json cover_to_json(const NeighborhoodCover& nc) {
  Json j;
  j["h_cov"] = nc.h_cov.get_str();
  j["h_diam"] = nc.h_diam.get_str();
  j["width"] = nc.width();
  Json cls = Json::array();
  for (const auto& clustering : nc.clusterings) {
    Json jc = Json::array();
    for (const auto& cluster : clustering) {
      Json js = Json::array();
      for (int v : cluster) js.push_back(v + 1);
      jc.push_back(js);
    }
    cls.push_back(jc);
  }
  j["clusterings"] = cls;
  return j;
}

Json union_report_to_json(const UnionWitnessReport& r) {
  Json j;
  j["input_consistent"] = r.input_consistent;
  if (!r.input_consistent) j["inconsistency"] = r.inconsistency;
  j["md_is_2h_length"] = r.md_is_2h_length;
  j["md_a_respecting"] = r.md_a_respecting;
  j["md_separated"] = r.md_separated;
  j["md_size_bound"] = r.md_size_bound;
  j["sparsity_bound"] = r.sparsity_bound;
  j["alpha"] = r.alpha;
  j["md_size"] = rat_str(r.md_size);
  j["union_size"] = rat_str(r.union_size);
  j["union_sparsity"] = r.union_sparsity ? rat_str(*r.union_sparsity) : "no-separated-demand";
  j["sparsity_bound_value"] = rat_str(r.sparsity_bound_value);
  j["passed"] = r.passed();
  if (r.violating_pair.first >= 0) {
    j["violating_pair"] = Json::array({r.violating_pair.first + 1, r.violating_pair.second + 1});
  }
  return j;
}

Json mincost_to_json(const MincostResult& r, const Graph& g) {
  Json j;
  j["lambda"] = rat_str(r.lambda);
  j["cost"] = rat_str(r.cost);
  j["upper_bound"] = rat_str(r.upper_bound);
  j["certified"] = r.certified;
  j["oracle_calls"] = r.oracle_calls;
  j["flow"] = flow_to_json(r.flow, g);
  return j;
}

Json witness_to_json(const CutSequenceWitness& w) {
  Json j;
  Json cuts = Json::array();
  for (const MovingCut& c : w.cuts) {
    Json jc;
    jc["h_c"] = c.h_c.get_str();
    Json vals = Json::array();
    for (size_t v = 0; v < c.numer.size(); ++v) {
      if (c.numer[v] == 0) continue;
      Json jv;
      jv["vertex"] = v + 1;
      jv["numerator"] = c.numer[v].get_str();
      vals.push_back(jv);
    }
    jc["values"] = vals;
    cuts.push_back(jc);
  }
  j["cuts"] = cuts;
  Json demands = Json::array();
  for (const Demand& d : w.demands) {
    Json jd = Json::array();
    for (const auto& e : d.entries) {
      Json je;
      je["from"] = e.u + 1;
      je["to"] = e.v + 1;
      je["value"] = e.infinite ? "inf" : rat_str(e.value);
      jd.push_back(je);
    }
    demands.push_back(jd);
  }
  j["demands"] = demands;
  Json sp = Json::array();
  for (const Rat& p : w.sparsities) sp.push_back(rat_str(p));
  j["sparsities"] = sp;
  return j;
}

CutSequenceWitness witness_from_json(const Json& j, const Graph& g) {
  CutSequenceWitness w;
  for (const Json& jc : j.at("cuts")) {
    MovingCut c(g.n, Int(jc.at("h_c").get<std::string>()));
    for (const Json& jv : jc.at("values")) {
      int v = jv.at("vertex").get<int>() - 1;
      if (v < 0 || v >= g.n) throw InvalidInstance("cut vertex out of range");
      c.numer[v] = Int(jv.at("numerator").get<std::string>());
    }
    w.cuts.push_back(std::move(c));
  }
  for (const Json& jd : j.at("demands")) {
    Demand d;
    for (const Json& je : jd) {
      DemandEntry e;
      e.u = je.at("from").get<int>() - 1;
      e.v = je.at("to").get<int>() - 1;
      std::string val = je.at("value").get<std::string>();
      if (val == "inf")
        e.infinite = true;
      else
        e.value = parse_rat(val);
      d.entries.push_back(e);
    }
    d.validate(g);
    w.demands.push_back(std::move(d));
  }
  for (const Json& jp : j.at("sparsities")) w.sparsities.push_back(parse_rat(jp.get<std::string>()));
  return w;
}

std::string write_cut(const MovingCut& c) {
  std::ostringstream os;
  for (size_t v = 0; v < c.numer.size(); ++v) {
    if (c.numer[v] == 0) continue;
    os << "c " << (v + 1) << " " << c.numer[v].get_str() << "/" << c.h_c.get_str() << "\n";
  }
  return os.str();
}

MovingCut parse_cut(std::istream& in, const Graph& g) {
  MovingCut c(g.n, Int(1));
  bool have_h = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "#") continue;
    if (tag != "c")
      throw InvalidInstance("line " + std::to_string(lineno) + ": expected 'c <id> <num>/<h>'");
    long v;
    std::string frac;
    if (!(ls >> v >> frac))
      throw InvalidInstance("line " + std::to_string(lineno) + ": expected 'c <id> <num>/<h>'");
    auto slash = frac.find('/');
    if (slash == std::string::npos)
      throw InvalidInstance("line " + std::to_string(lineno) + ": cut values are <num>/<h_C>");
    Int num(frac.substr(0, slash)), hc(frac.substr(slash + 1));
    if (v < 1 || v > g.n)
      throw InvalidInstance("line " + std::to_string(lineno) + ": vertex out of range");
    if (!have_h) {
      c.h_c = hc;
      have_h = true;
    } else if (c.h_c != hc) {
      throw InvalidInstance("line " + std::to_string(lineno) + ": inconsistent h_C");
    }
    c.numer[v - 1] = num;
  }
  c.validate(g);
  return c;
}

}  // namespace lcf
