#include <doctest.h>

#include "generators.hpp"
#include "lcflow/oracle.hpp"
#include "lcflow/split.hpp"

using namespace lcf;

TEST_CASE("to_edge_representation on one path") {
  Graph g = Graph::make_edge_weighted(3);
  g.add_edge(0, 1, Int(1), Int(1));
  g.add_edge(1, 2, Int(1), Int(1));
  MultiFlow f = MultiFlow::zero_path(1);
  f.paths.push_back({0, {0, 1, 2}, Rat(1)});
  MultiFlow e = to_edge_representation(f, g);
  CHECK(e.edge_flow[0][0] == Rat(1));
  CHECK(e.edge_flow[0][1] == Rat(1));
  CHECK(e.routed[0].at({0, 2}) == Rat(1));
}

TEST_CASE("opposite unit paths as distinct commodities") {
  Graph g = Graph::make_edge_weighted(2);
  g.add_edge(0, 1, Int(1), Int(1));
  g.add_edge(1, 0, Int(1), Int(1));
  MultiFlow f = MultiFlow::zero_path(2);
  f.paths.push_back({0, {0, 1}, Rat(1)});
  f.paths.push_back({1, {1, 0}, Rat(1)});
  MultiFlow e = to_edge_representation(f, g);
  int nz0 = 0, nz1 = 0;
  for (const Rat& x : e.edge_flow[0]) nz0 += x != 0;
  for (const Rat& x : e.edge_flow[1]) nz1 += x != 0;
  CHECK(nz0 == 1);
  CHECK(nz1 == 1);
}

TEST_CASE("fractional path value lands on both edges") {
  Graph g = Graph::make_edge_weighted(3);
  g.add_edge(0, 1, Int(1), Int(1));
  g.add_edge(1, 2, Int(1), Int(1));
  MultiFlow f = MultiFlow::zero_path(1);
  f.paths.push_back({0, {0, 1, 2}, Rat(3, 4)});
  MultiFlow e = to_edge_representation(f, g);
  CHECK(e.edge_flow[0][0] == Rat(3, 4));
  CHECK(e.edge_flow[0][1] == Rat(3, 4));
}

TEST_CASE("flow_stats on a unit vertex path") {
  Graph g = Graph::make_vertex_weighted(3);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  MultiFlow f = MultiFlow::zero_path(1);
  f.paths.push_back({0, {0, 1, 2}, Rat(1)});
  FlowStats s = flow_stats(f, g);
  CHECK(s.value == Rat(1));
  CHECK(*s.length == Int(3));
  CHECK(*s.step == 2);
  CHECK(s.congestion == Rat(1));
  CHECK(s.totlen == Rat(3));
}

TEST_CASE("two unit paths sharing a capacity-1 vertex congest it") {
  Graph g = Graph::make_vertex_weighted(5);
  g.add_edge(0, 2);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  g.add_edge(2, 4);
  MultiFlow f = MultiFlow::zero_path(2);
  f.paths.push_back({0, {0, 2, 3}, Rat(1)});
  f.paths.push_back({1, {1, 2, 4}, Rat(1)});
  CHECK(flow_stats(f, g).congestion == Rat(2));
}

TEST_CASE("empty flow has zero stats") {
  Graph g = Graph::make_vertex_weighted(2);
  g.add_edge(0, 1);
  MultiFlow f = MultiFlow::zero_path(1);
  FlowStats s = flow_stats(f, g);
  CHECK(s.value == 0);
  CHECK(s.congestion == 0);
  CHECK(s.totlen == 0);
  CHECK(*s.length == 0);
}

TEST_CASE("edge-form stats agree with path-form stats") {
  Rng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    Graph g = gen::vertex_graph(rng, 6, 4, 3, 3);
    auto paths = enumerate_paths(g, {0}, {5}, Int(100));
    if (paths.empty()) continue;
    MultiFlow f = MultiFlow::zero_path(1);
    for (size_t i = 0; i < paths.size() && i < 3; ++i)
      f.paths.push_back({0, paths[i], make_rat(1 + static_cast<long>(i), 2)});
    FlowStats ps = flow_stats(f, g);
    FlowStats es = flow_stats(to_edge_representation(f, g), g);
    CHECK(ps.value == es.value);
    CHECK(ps.totlen == es.totlen);
    CHECK(ps.congestion == es.congestion);
  }
}

TEST_CASE("split_vertices shape on the triangle") {
  Graph g = Graph::make_vertex_weighted(3);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(0, 2);
  SplitMap sm = split_vertices(g);
  CHECK(sm.dir.n == 6);
  int vertex_edges = 0, connectors = 0;
  for (const EdgeRec& e : sm.dir.edges) (e.connector ? connectors : vertex_edges)++;
  CHECK(vertex_edges == 3);
  CHECK(connectors == 6);
}

TEST_CASE("split_vertices on a single vertex") {
  Graph g = Graph::make_vertex_weighted(1);
  SplitMap sm = split_vertices(g);
  CHECK(sm.dir.n == 2);
  CHECK(sm.dir.m() == 1);
}

TEST_CASE("split_vertices preserves path length") {
  Graph g = Graph::make_vertex_weighted(3);
  g.set_vertex(0, Int(1), Int(1));
  g.set_vertex(1, Int(5), Int(1));
  g.set_vertex(2, Int(1), Int(1));
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  SplitMap sm = split_vertices(g);
  std::vector<int> walk{sm.in_of(0), sm.out_of(0), sm.in_of(1),
                        sm.out_of(1), sm.in_of(2), sm.out_of(2)};
  CHECK(walk_length(sm.dir, walk) == Int(7));
  CHECK(walk_length(g, {0, 1, 2}) == Int(7));
}

TEST_CASE("split_vertices rejects edge-weighted input") {
  Graph g = Graph::make_edge_weighted(2);
  g.add_edge(0, 1, Int(1), Int(1));
  CHECK_THROWS_AS(split_vertices(g), InvalidInstance);
}

TEST_CASE("split preserves totlen and congestion bidirectionally") {
  Rng rng(31);
  for (int trial = 0; trial < 12; ++trial) {
    Graph g = gen::vertex_graph(rng, 7, 5, 4, 3);
    SplitMap sm = split_vertices(g);
    auto paths = enumerate_paths(g, {0}, {6}, Int(1000));
    if (paths.empty()) continue;
    MultiFlow f = MultiFlow::zero_path(1);
    for (size_t i = 0; i < paths.size() && i < 4; ++i)
      f.paths.push_back({0, paths[i], Rat(1, 1 + static_cast<long>(i))});
    FlowStats orig = flow_stats(f, g);
    MultiFlow lifted = sm.lift_flow(f);
    FlowStats dirs = flow_stats(lifted, sm.dir);
    CHECK(dirs.totlen == orig.totlen);
    CHECK(dirs.congestion == orig.congestion);
    MultiFlow back = sm.project_flow(lifted);
    FlowStats rt = flow_stats(back, g);
    CHECK(rt.totlen == orig.totlen);
    CHECK(rt.congestion == orig.congestion);
    CHECK(rt.value == orig.value);
  }
}

TEST_CASE("length and step on edge form raise path-form-required") {
  Graph g = Graph::make_edge_weighted(2);
  g.add_edge(0, 1, Int(1), Int(1));
  MultiFlow e = MultiFlow::zero_edge(1, g.num_slots());
  try {
    flow_length(e, g);
    FAIL("expected path-form-required");
  } catch (const InvalidInstance& ex) {
    CHECK(std::string(ex.what()) == "path-form-required");
  }
  CHECK_THROWS_AS(flow_step(e, g), InvalidInstance);
}

TEST_CASE("conservation check finds a violation") {
  Graph g = Graph::make_edge_weighted(3);
  g.add_edge(0, 1, Int(1), Int(1));
  g.add_edge(1, 2, Int(1), Int(1));
  MultiFlow e = MultiFlow::zero_edge(1, g.num_slots());
  e.edge_flow[0][0] = Rat(1);  // flow into vertex 1 vanishes
  e.routed[0][{0, 2}] = Rat(1);
  auto bad = conservation_violation(g, e, 0);
  REQUIRE(bad.has_value());
}
