#include "lcflow/graph.hpp"

#include <istream>
#include <map>
#include <set>
#include <sstream>

namespace lcf {

Rat parse_rat(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      Int v(s);
      return Rat(v);
    }
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rat r;
    r = Rat(num) / Rat(den);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("bad rational: " + s);
  }
}

std::string rat_str(const Rat& q) {
  Rat c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Graph Graph::make_vertex_weighted(int n) {
  Graph g;
  g.mode = GraphMode::vertex_weighted;
  g.n = n;
  g.vlen.assign(n, Int(1));
  g.vcap.assign(n, Int(1));
  g.out_edges.assign(n, {});
  g.in_edges.assign(n, {});
  return g;
}

Graph Graph::make_edge_weighted(int n) {
  Graph g;
  g.mode = GraphMode::edge_weighted;
  g.n = n;
  g.out_edges.assign(n, {});
  g.in_edges.assign(n, {});
  return g;
}

int Graph::add_edge(int u, int v) {
  if (mode != GraphMode::vertex_weighted)
    throw InvalidInstance("plain edge on edge-weighted graph");
  EdgeRec e;
  e.u = u;
  e.v = v;
  e.len = 0;
  e.cap = 0;
  int id = m();
  edges.push_back(e);
  out_edges[u].push_back(id);
  in_edges[v].push_back(id);
  out_edges[v].push_back(id);  // undirected: incident both ways
  in_edges[u].push_back(id);
  return id;
}

int Graph::add_edge(int u, int v, const Int& len, const Int& cap) {
  if (mode != GraphMode::edge_weighted)
    throw InvalidInstance("weighted edge on vertex-weighted graph");
  EdgeRec e;
  e.u = u;
  e.v = v;
  e.len = len;
  e.cap = cap;
  int id = m();
  edges.push_back(e);
  out_edges[u].push_back(id);
  in_edges[v].push_back(id);
  return id;
}

int Graph::add_connector(int u, int v, const Int& cap) {
  if (mode != GraphMode::edge_weighted)
    throw InvalidInstance("connector on vertex-weighted graph");
  EdgeRec e;
  e.u = u;
  e.v = v;
  e.len = 0;
  e.cap = cap;
  e.connector = true;
  int id = m();
  edges.push_back(e);
  out_edges[u].push_back(id);
  in_edges[v].push_back(id);
  return id;
}

void Graph::set_vertex(int v, const Int& len, const Int& cap) {
  vlen.at(v) = len;
  vcap.at(v) = cap;
}

std::pair<int, int> Graph::slot_ends(int slot) const {
  if (directed()) {
    const EdgeRec& e = edges.at(slot);
    return {e.u, e.v};
  }
  const EdgeRec& e = edges.at(slot / 2);
  if (slot % 2 == 0) return {e.u, e.v};
  return {e.v, e.u};
}

Int Graph::slot_cap(int slot) const {
  if (directed()) return edges.at(slot).cap;
  return edges.at(slot / 2).cap;  // undirected edges are uncapacitated; caller beware
}

void Graph::validate() const {
  if (n < 0) throw InvalidInstance("negative vertex count");
  if (mode == GraphMode::vertex_weighted) {
    if (static_cast<int>(vlen.size()) != n || static_cast<int>(vcap.size()) != n)
      throw InvalidInstance("vertex weight arrays do not match n");
    for (int v = 0; v < n; ++v) {
      if (vlen[v] <= 0) throw InvalidInstance("vertex length must be a positive integer");
      if (vcap[v] <= 0) throw InvalidInstance("vertex capacity must be a positive integer");
    }
  }
  std::set<std::pair<int, int>> seen;
  for (const EdgeRec& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) throw InvalidInstance("edge endpoint out of range");
    if (e.u == e.v) throw InvalidInstance("self-loop");
    if (mode == GraphMode::edge_weighted) {
      if (!e.connector && e.len <= 0)
        throw InvalidInstance("edge length must be a positive integer");
      if (e.connector && e.len != 0) throw InvalidInstance("connector with nonzero length");
      if (e.cap <= 0) throw InvalidInstance("edge capacity must be a positive integer");
    } else {
      std::pair<int, int> key{std::min(e.u, e.v), std::max(e.u, e.v)};
      if (!seen.insert(key).second) throw InvalidInstance("duplicate edge");
    }
  }
  if (mode == GraphMode::edge_weighted) {
    std::set<std::pair<int, int>> dseen;
    for (const EdgeRec& e : edges)
      if (!dseen.insert({e.u, e.v}).second) throw InvalidInstance("duplicate edge");
  }
}

Int Graph::value_bound() const {
  Int N = 1;
  if (mode == GraphMode::vertex_weighted) {
    for (int v = 0; v < n; ++v) {
      if (vlen[v] > N) N = vlen[v];
      if (vcap[v] > N) N = vcap[v];
    }
  } else {
    for (const EdgeRec& e : edges) {
      if (e.len > N) N = e.len;
      if (e.cap > N) N = e.cap;
    }
  }
  return N;
}

Rat Demand::total() const {
  Rat t = 0;
  for (const auto& e : entries) {
    if (e.infinite) throw InvalidInstance("|D| undefined with infinite entries");
    t += e.value;
  }
  return t;
}

bool Demand::integral() const {
  for (const auto& e : entries)
    if (!e.infinite && !rat_is_integer(e.value)) return false;
  return true;
}

void Demand::validate(const Graph& g) const {
  for (const auto& e : entries) {
    if (e.u < 0 || e.u >= g.n || e.v < 0 || e.v >= g.n)
      throw InvalidInstance("demand endpoint out of range");
    if (e.u == e.v && (e.infinite || e.value > 0)) throw InvalidInstance("D(u,u) must be 0");
    if (!e.infinite && e.value < 0) throw InvalidInstance("negative demand");
  }
}

Rat NodeWeighting::size() const {
  Rat s = 0;
  for (const Rat& x : w) s += x;
  return s;
}

void NodeWeighting::validate() const {
  for (const Rat& x : w)
    if (x < 0) throw InvalidInstance("node-weighting must be nonnegative");
}

namespace {

[[noreturn]] void fail_line(int lineno, const std::string& what) {
  throw InvalidInstance("line " + std::to_string(lineno) + ": " + what);
}

}  // namespace

Graph parse_graph(std::istream& in) {
  std::string line;
  int lineno = 0;
  bool have_header = false;
  Graph g;
  int want_n = 0, want_m = 0;
  int seen_edges = 0;
  std::vector<bool> vset;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;  // blank
    if (tag == "c") continue;    // comment
    if (tag == "p") {
      if (have_header) fail_line(lineno, "duplicate header");
      std::string fmt, modestr;
      if (!(ls >> fmt >> want_n >> want_m >> modestr) || fmt != "lcf")
        fail_line(lineno, "expected 'p lcf <n> <m> <mode>'");
      if (want_n < 0 || want_m < 0) fail_line(lineno, "negative sizes");
      if (modestr == "vertex")
        g = Graph::make_vertex_weighted(want_n);
      else if (modestr == "edge")
        g = Graph::make_edge_weighted(want_n);
      else
        fail_line(lineno, "mode must be 'vertex' or 'edge'");
      vset.assign(want_n, false);
      have_header = true;
      continue;
    }
    if (!have_header) fail_line(lineno, "data before header");
    if (tag == "v") {
      if (g.mode != GraphMode::vertex_weighted) fail_line(lineno, "vertex line in edge mode");
      long id;
      std::string lens, caps;
      if (!(ls >> id >> lens >> caps)) fail_line(lineno, "expected 'v <id> <length> <capacity>'");
      if (id < 1 || id > g.n) fail_line(lineno, "vertex id out of range");
      Int len, cap;
      try {
        len = Int(lens);
        cap = Int(caps);
      } catch (...) {
        fail_line(lineno, "bad integer");
      }
      if (len <= 0 || cap <= 0) fail_line(lineno, "lengths and capacities must be positive integers");
      if (vset[id - 1]) fail_line(lineno, "duplicate vertex line");
      vset[id - 1] = true;
      g.set_vertex(static_cast<int>(id - 1), len, cap);
      continue;
    }
    if (tag == "a") {
      long u, v;
      if (!(ls >> u >> v)) fail_line(lineno, "expected 'a <u> <v> [<length> <capacity>]'");
      if (u < 1 || u > g.n || v < 1 || v > g.n) fail_line(lineno, "edge endpoint out of range");
      if (u == v) fail_line(lineno, "self-loop");
      if (g.mode == GraphMode::vertex_weighted) {
        std::string extra;
        if (ls >> extra) fail_line(lineno, "vertex-mode edges carry no length/capacity");
        g.add_edge(static_cast<int>(u - 1), static_cast<int>(v - 1));
      } else {
        std::string lens, caps;
        if (!(ls >> lens >> caps)) fail_line(lineno, "edge-mode edges need '<length> <capacity>'");
        Int len, cap;
        try {
          len = Int(lens);
          cap = Int(caps);
        } catch (...) {
          fail_line(lineno, "bad integer");
        }
        if (len <= 0 || cap <= 0) fail_line(lineno, "lengths and capacities must be positive integers");
        g.add_edge(static_cast<int>(u - 1), static_cast<int>(v - 1), len, cap);
      }
      ++seen_edges;
      continue;
    }
    if (tag == "d") fail_line(lineno, "demand line in graph file");
    fail_line(lineno, "unknown tag '" + tag + "'");
  }
  if (!have_header) throw InvalidInstance("missing 'p lcf' header");
  if (seen_edges != want_m)
    throw InvalidInstance("edge count mismatch: header says " + std::to_string(want_m) +
                          ", file has " + std::to_string(seen_edges));
  try {
    g.validate();
  } catch (const InvalidInstance& e) {
    throw InvalidInstance(std::string("instance invalid: ") + e.what());
  }
  return g;
}

Demand parse_demand(std::istream& in, const Graph& g) {
  std::string line;
  int lineno = 0;
  std::map<int, DemandEntry> by_commodity;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "c") continue;
    if (tag != "d") fail_line(lineno, "expected 'd <commodity> <u> <v> <value|inf>'");
    long comm, u, v;
    std::string val;
    if (!(ls >> comm >> u >> v >> val)) fail_line(lineno, "expected 'd <commodity> <u> <v> <value|inf>'");
    if (comm < 1) fail_line(lineno, "commodity ids start at 1");
    if (u < 1 || u > g.n || v < 1 || v > g.n) fail_line(lineno, "demand endpoint out of range");
    if (u == v) fail_line(lineno, "D(u,u) must be 0");
    if (by_commodity.count(static_cast<int>(comm))) fail_line(lineno, "duplicate commodity");
    DemandEntry e;
    e.u = static_cast<int>(u - 1);
    e.v = static_cast<int>(v - 1);
    if (val == "inf") {
      e.infinite = true;
    } else {
      try {
        e.value = parse_rat(val);
      } catch (...) {
        fail_line(lineno, "bad value");
      }
      if (e.value < 0) fail_line(lineno, "negative demand");
    }
    by_commodity[static_cast<int>(comm)] = e;
  }
  Demand d;
  for (auto& [c, e] : by_commodity) d.entries.push_back(e);
  d.validate(g);
  return d;
}

std::string write_graph(const Graph& g) {
  std::ostringstream os;
  os << "p lcf " << g.n << " " << g.m() << " "
     << (g.mode == GraphMode::vertex_weighted ? "vertex" : "edge") << "\n";
  if (g.mode == GraphMode::vertex_weighted) {
    for (int v = 0; v < g.n; ++v)
      os << "v " << (v + 1) << " " << g.vlen[v].get_str() << " " << g.vcap[v].get_str() << "\n";
    for (const EdgeRec& e : g.edges) os << "a " << (e.u + 1) << " " << (e.v + 1) << "\n";
  } else {
    for (const EdgeRec& e : g.edges)
      os << "a " << (e.u + 1) << " " << (e.v + 1) << " " << e.len.get_str() << " "
         << e.cap.get_str() << "\n";
  }
  return os.str();
}

std::string write_demand(const Demand& d) {
  std::ostringstream os;
  for (int i = 0; i < d.k(); ++i) {
    const DemandEntry& e = d.entries[i];
    os << "d " << (i + 1) << " " << (e.u + 1) << " " << (e.v + 1) << " "
       << (e.infinite ? std::string("inf") : rat_str(e.value)) << "\n";
  }
  return os.str();
}

Int instance_value_bound(const Graph& g, const Demand* d) {
  Int N = g.value_bound();
  if (d) {
    for (const auto& e : d->entries) {
      if (e.infinite) continue;
      Int c = rat_ceil(e.value);
      if (c > N) N = c;
    }
  }
  return N;
}

}  // namespace lcf
