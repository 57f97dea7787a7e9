#include <doctest.h>

#include <sstream>

#include "lcflow/graph.hpp"

using namespace lcf;

TEST_CASE("rational parse and print round trip") {
  CHECK(rat_str(parse_rat("3/4")) == "3/4");
  CHECK(rat_str(parse_rat("-6/8")) == "-3/4");
  CHECK(rat_str(parse_rat("7")) == "7");
  CHECK(parse_rat("2/4") == Rat(1, 2));
  CHECK_THROWS(parse_rat("1/0"));
  CHECK_THROWS(parse_rat("abc"));
}

TEST_CASE("pow2_at_least") {
  CHECK(pow2_at_least(Rat(1)) == 1);
  CHECK(pow2_at_least(Rat(3)) == 4);
  CHECK(pow2_at_least(Rat(4)) == 4);
  CHECK(pow2_at_least(Rat(4, 3)) == 2);
  CHECK(pow2_at_least(Rat(10000)) == 16384);
}

TEST_CASE("graph parse well formed") {
  std::istringstream in(
      "c tiny instance\n"
      "p lcf 3 2 vertex\n"
      "v 1 1 5\n"
      "v 2 2 1\n"
      "v 3 1 1\n"
      "a 1 2\n"
      "a 2 3\n");
  Graph g = parse_graph(in);
  CHECK(g.n == 3);
  CHECK(g.m() == 2);
  CHECK(g.vlen[1] == 2);
  CHECK(g.vcap[0] == 5);
}

TEST_CASE("graph parse rejects zero length with line number") {
  std::istringstream in(
      "p lcf 1 0 vertex\n"
      "v 1 0 5\n");
  try {
    parse_graph(in);
    FAIL("expected rejection");
  } catch (const InvalidInstance& e) {
    std::string msg = e.what();
    CHECK(msg.find("line 2") != std::string::npos);
    CHECK(msg.find("positive") != std::string::npos);
  }
}

TEST_CASE("graph parse rejects malformed and duplicate lines") {
  {
    std::istringstream in("p lcf 2 1 edge\na 1 2\n");
    CHECK_THROWS_AS(parse_graph(in), InvalidInstance);  // missing len/cap
  }
  {
    std::istringstream in("p lcf 2 2 edge\na 1 2 1 1\na 1 2 2 2\n");
    CHECK_THROWS_AS(parse_graph(in), InvalidInstance);  // duplicate edge
  }
  {
    std::istringstream in("p lcf 2 1 edge\na 1 1 1 1\n");
    CHECK_THROWS_AS(parse_graph(in), InvalidInstance);  // self loop
  }
}

TEST_CASE("demand parse") {
  std::istringstream gin("p lcf 3 2 vertex\nv 1 1 1\nv 2 1 1\nv 3 1 1\na 1 2\na 2 3\n");
  Graph g = parse_graph(gin);
  std::istringstream din("d 1 1 3 2\nd 2 3 1 inf\n");
  Demand d = parse_demand(din, g);
  CHECK(d.k() == 2);
  CHECK(d.entries[0].value == 2);
  CHECK(d.entries[1].infinite);
  std::istringstream bad("d 1 2 2 1\n");
  CHECK_THROWS_AS(parse_demand(bad, g), InvalidInstance);  // D(u,u) > 0
}

TEST_CASE("write then parse is identity on random-ish instance") {
  Graph g = Graph::make_edge_weighted(4);
  g.add_edge(0, 1, Int(3), Int(7));
  g.add_edge(1, 2, Int(1), Int(2));
  g.add_edge(2, 3, Int(5), Int(1));
  g.add_edge(0, 3, Int(2), Int(9));
  std::string text = write_graph(g);
  std::istringstream in(text);
  Graph h = parse_graph(in);
  CHECK(h.n == g.n);
  REQUIRE(h.m() == g.m());
  for (int e = 0; e < g.m(); ++e) {
    CHECK(h.edges[e].u == g.edges[e].u);
    CHECK(h.edges[e].v == g.edges[e].v);
    CHECK(h.edges[e].len == g.edges[e].len);
    CHECK(h.edges[e].cap == g.edges[e].cap);
  }
}
