#include <doctest.h>

#include <sstream>

#include "generators.hpp"
#include "lcflow/io_json.hpp"
#include "lcflow/maxflow.hpp"

using namespace lcf;

TEST_CASE("graph serializer round trip on random instances") {
  Rng rng(5150);
  for (int trial = 0; trial < 10; ++trial) {
    Graph g = trial % 2 == 0 ? gen::edge_graph(rng, 6, 8, 5, 7)
                             : gen::vertex_graph(rng, 6, 3, 4, 4);
    std::string text = write_graph(g);
    std::istringstream in(text);
    Graph h = parse_graph(in);
    CHECK(write_graph(h) == text);
  }
}

TEST_CASE("demand serializer round trip") {
  Graph g = Graph::make_vertex_weighted(4);
  g.add_edge(0, 1);
  Demand d;
  d.entries.push_back({0, 1, Rat(3, 2), false});
  d.entries.push_back({2, 3, Rat(0), true});
  std::string text = write_demand(d);
  std::istringstream in(text);
  Demand e = parse_demand(in, g);
  CHECK(write_demand(e) == text);
}

TEST_CASE("cut file round trip") {
  Graph g = Graph::make_vertex_weighted(4);
  g.add_edge(0, 1);
  MovingCut c(4, Int(6));
  c.numer[1] = 3;
  c.numer[2] = 6;
  std::string text = write_cut(c);
  std::istringstream in(text);
  MovingCut back = parse_cut(in, g);
  CHECK(back.h_c == c.h_c);
  CHECK(back.numer == c.numer);
}

TEST_CASE("witness bundle JSON round trip") {
  Graph g = Graph::make_vertex_weighted(5);
  for (int v = 0; v + 1 < 5; ++v) g.add_edge(v, v + 1);
  CutSequenceWitness w;
  MovingCut c(5, Int(6));
  c.numer[1] = 6;
  Demand d;
  d.entries.push_back({0, 1, Rat(1), false});
  w.cuts = {c};
  w.demands = {d};
  w.sparsities = {Rat(1)};
  Json j = witness_to_json(w);
  CutSequenceWitness back = witness_from_json(j, g);
  CHECK(back.cuts.size() == 1);
  CHECK(back.cuts[0].numer == c.numer);
  CHECK(back.demands[0].entries[0].value == Rat(1));
  CHECK(back.sparsities[0] == Rat(1));
}

TEST_CASE("flow JSON carries p/q strings and stats") {
  Graph g = Graph::make_edge_weighted(3);
  g.add_edge(0, 1, Int(1), Int(1));
  g.add_edge(1, 2, Int(1), Int(1));
  MultiFlow f = MultiFlow::zero_path(1);
  f.paths.push_back({0, {0, 1, 2}, Rat(1, 3)});
  Json j = flow_to_json(f, g);
  CHECK(j["stats"]["value"] == "1/3");
  CHECK(j["commodities"][0]["edges"][0]["value"] == "1/3");
  std::string dump = j.dump();
  CHECK(dump.find(".333") == std::string::npos);  // never floats
}

TEST_CASE("maxflow JSON output is byte-identical across runs") {
  Graph g = Graph::make_edge_weighted(4);
  g.add_edge(0, 1, Int(1), Int(1));
  g.add_edge(1, 3, Int(1), Int(1));
  g.add_edge(0, 2, Int(1), Int(1));
  g.add_edge(2, 3, Int(1), Int(2));
  CommodityPairs p;
  p.sources.push_back({0});
  p.sinks.push_back({3});
  std::string a = maxflow_to_json(lc_mc_maxflow(g, p, 2, Rat(1, 4)), g).dump();
  std::string b = maxflow_to_json(lc_mc_maxflow(g, p, 2, Rat(1, 4)), g).dump();
  CHECK(a == b);
}
