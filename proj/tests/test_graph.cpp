#include <doctest.h>

#include <sstream>

#include "ldd/ball.hpp"
#include "ldd/io.hpp"
#include "ldd/scc.hpp"
#include "oracles.hpp"

using namespace ldd;

namespace {

DirectedGraph path3() { return DirectedGraph(3, {{0, 1, 1}, {1, 2, 1}}); }

std::vector<NodeId> sorted(std::vector<NodeId> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("graph construction rejects bad input") {
  CHECK_THROWS_AS(DirectedGraph(2, {{0, 2, 1}}), InvalidArgument);
  CHECK_THROWS_AS(DirectedGraph(2, {{0, 1, 0}}), InvalidArgument);
  CHECK_THROWS_AS(DirectedGraph(2, {{1, 1, 1}}), InvalidArgument);
  CHECK_NOTHROW(DirectedGraph(2, {{0, 1, 1}, {0, 1, 2}}));
}

TEST_CASE("adjacency is sorted by edge id") {
  const DirectedGraph g(3, {{0, 2, 1}, {1, 2, 1}, {0, 1, 1}, {2, 0, 4}});
  const auto out0 = g.out_edges(0);
  REQUIRE(out0.size() == 2);
  CHECK(out0[0] == 0);
  CHECK(out0[1] == 2);
  const auto in2 = g.in_edges(2);
  REQUIRE(in2.size() == 2);
  CHECK(in2[0] == 0);
  CHECK(in2[1] == 1);
  CHECK(g.max_length() == 4);
  CHECK_FALSE(g.unit_lengths());
}

TEST_CASE("scc examples") {
  SUBCASE("2-cycle") {
    const DirectedGraph g(2, {{0, 1, 1}, {1, 0, 1}});
    CHECK(strongly_connected_components(g).count == 1);
  }
  SUBCASE("dag path") { CHECK(strongly_connected_components(path3()).count == 3); }
  SUBCASE("two triangles") {
    const DirectedGraph g(6, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}, {3, 4, 1}, {4, 5, 1}, {5, 3, 1}});
    const SccPartition p = strongly_connected_components(g);
    CHECK(p.count == 2);
    CHECK(oracle::canonical(p.component) == oracle::scc_labels(g));
    for (const auto& grp : p.groups()) CHECK(grp.size() == 3);
  }
}

TEST_CASE("scc matches reachability closure") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 300; ++it) {
    const NodeId n = 1 + it % 10;
    const DirectedGraph g = oracle::random_digraph(rng, n, 0.25, 3);
    CHECK(oracle::canonical(strongly_connected_components(g).component) == oracle::scc_labels(g));
  }
}

TEST_CASE("grow_ball examples") {
  const DirectedGraph g = path3();
  const BallResult b = grow_ball(g, 0, Direction::Out, 1);
  CHECK(sorted(b.nodes) == std::vector<NodeId>{0, 1});
  CHECK(b.edge_size == 1);
  CHECK(b.boundary == std::vector<EdgeId>{1});

  const BallResult z = grow_ball(g, 1, Direction::Out, 0);
  CHECK(z.nodes == std::vector<NodeId>{1});
  CHECK(z.edge_size == 0);

  const BallResult capped = grow_ball(g, 0, Direction::Out, 2, 1);
  CHECK(capped.budget_exceeded);
  CHECK(capped.edge_size >= 2);
}

TEST_CASE("ball sizes match Floyd-Warshall") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 60; ++it) {
    const NodeId n = 2 + it % 63;
    const DirectedGraph g = oracle::random_digraph(rng, n, 3.0 / n, it % 3 == 0 ? 1 : 9);
    const oracle::Matrix d = oracle::floyd_warshall(g);
    const GraphView view(g);
    BallGrower grower(view);
    for (NodeId c = 0; c < n; c += 3)
      for (Length r : {0, 1, 4, 13, 40})
        for (Direction dir : {Direction::Out, Direction::In}) {
          const BallResult b = grower.grow(c, dir, r);
          CHECK(b.edge_size == oracle::ball_edge_size(g, d, c, dir, r));
          CHECK(sorted(b.nodes) == oracle::ball_nodes(g, d, c, dir, r));
          CHECK(grower.edge_size_exceeds(c, dir, r, b.edge_size) == false);
          if (b.edge_size > 0) CHECK(grower.edge_size_exceeds(c, dir, r, b.edge_size - 1));
        }
  }
}

TEST_CASE("large lengths use the heap path") {
  const DirectedGraph g(4, {{0, 1, 100}, {1, 2, 1}, {0, 2, 200}, {2, 3, 7}});
  const oracle::Matrix d = oracle::floyd_warshall(g);
  for (Length r : {0, 100, 101, 107, 108, 300}) {
    const BallResult b = grow_ball(g, 0, Direction::Out, r);
    CHECK(b.edge_size == oracle::ball_edge_size(g, d, 0, Direction::Out, r));
  }
}

TEST_CASE("distances") {
  const DirectedGraph g(4, {{0, 1, 2}, {1, 2, 3}, {0, 2, 9}});
  const auto d = distances(g, 0, Direction::Out);
  CHECK(d[2] == 5);
  CHECK(d[3] == kUnreachable);
  const auto r = distances(g, 2, Direction::In);
  CHECK(r[0] == 5);
}

TEST_CASE("reverse") {
  std::mt19937_64 rng(3);
  const DirectedGraph single(2, {{0, 1, 4}});
  CHECK(reverse(single).edge(0) == Edge{1, 0, 4});
  for (int it = 0; it < 20; ++it) {
    const DirectedGraph g = oracle::random_digraph(rng, 12, 0.2, 4);
    CHECK(reverse(reverse(g)) == g);
    const DirectedGraph rg = reverse(g);
    for (NodeId c = 0; c < 12; ++c) {
      const BallResult a = grow_ball(rg, c, Direction::Out, 6);
      const BallResult b = grow_ball(g, c, Direction::In, 6);
      CHECK(a.edge_size == b.edge_size);
      CHECK(sorted(a.nodes) == sorted(b.nodes));
    }
  }
}

TEST_CASE("subdivide") {
  SUBCASE("length 3 becomes a path") {
    const DirectedGraph g(2, {{0, 1, 3}});
    const Subdivision s = subdivide(g, 10, 1000);
    CHECK(s.graph.node_count() == 4);
    CHECK(s.graph.edge_count() == 3);
    CHECK(s.graph.unit_lengths());
    CHECK(s.edge_origin == std::vector<EdgeId>{0, 0, 0});
    CHECK(s.force_cut.empty());
    CHECK(distances(s.graph, 0, Direction::Out)[1] == 3);
  }
  SUBCASE("unit edge unchanged") {
    const DirectedGraph g(2, {{0, 1, 1}});
    const Subdivision s = subdivide(g, 10, 1000);
    CHECK(s.graph == g);
    CHECK(s.edge_origin == std::vector<EdgeId>{0});
  }
  SUBCASE("long edge is force-cut") {
    const DirectedGraph g(2, {{0, 1, 11}, {1, 0, 2}});
    const Subdivision s = subdivide(g, 10, 1000);
    CHECK(s.force_cut == std::vector<EdgeId>{0});
    CHECK(s.graph.edge_count() == 2);
  }
  SUBCASE("budget") {
    const DirectedGraph g(2, {{0, 1, 50}});
    CHECK(subdivided_size(g, 100) == 52);
    CHECK_THROWS_AS(subdivide(g, 100, 51), BudgetExceeded);
  }
  SUBCASE("distances preserved") {
    std::mt19937_64 rng(17);
    for (int it = 0; it < 30; ++it) {
      const DirectedGraph g = oracle::random_digraph(rng, 8, 0.3, 6);
      const Length cap = 1 + it % 6;
      const Subdivision s = subdivide(g, cap, 100000);
      std::vector<bool> long_edge(g.edge_count());
      for (EdgeId e = 0; e < g.edge_count(); ++e) long_edge[e] = g.edge(e).len > cap;
      const oracle::Matrix d = oracle::floyd_warshall(g, long_edge);
      for (NodeId u = 0; u < 8; ++u) {
        const auto ds = distances(s.graph, u, Direction::Out);
        for (NodeId v = 0; v < 8; ++v)
          CHECK((ds[v] == kUnreachable ? oracle::kInf : ds[v]) == d[u][v]);
      }
    }
  }
}

TEST_CASE("views") {
  const DirectedGraph tri(3, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}});
  SUBCASE("remove nothing") {
    const GraphView v = remove(tri, CutSet());
    CHECK(v.live_edge_count() == 3);
    CHECK(strongly_connected_components(v).count == 1);
  }
  SUBCASE("remove everything") {
    const GraphView v = remove(tri, CutSet::all(3));
    CHECK(v.live_edge_count() == 0);
    CHECK(v.live_node_count() == 3);
  }
  SUBCASE("triangle minus an edge") {
    const GraphView v = remove(tri, CutSet({1}, 3));
    CHECK(strongly_connected_components(v).count == 3);
    CHECK(oracle::scc_labels(tri, {false, true, false}) == std::vector<NodeId>{0, 1, 2});
  }
  SUBCASE("invalid ids") {
    CHECK_THROWS_AS(CutSet({3}, 3), InvalidArgument);
  }
  SUBCASE("id stability") {
    std::mt19937_64 rng(23);
    const DirectedGraph g = oracle::random_digraph(rng, 20, 0.3, 5);
    GraphView v(g);
    std::vector<bool> gone(g.edge_count(), false);
    for (int k = 0; k < 10; ++k) {
      const EdgeId e = static_cast<EdgeId>(rng() % g.edge_count());
      v = remove(v, CutSet({e}, g.edge_count()));
      gone[e] = true;
      for (EdgeId x = 0; x < g.edge_count(); ++x) CHECK(v.has_edge(x) == !gone[x]);
    }
    CHECK(&v.graph() == &g);
  }
  SUBCASE("induced subgraph") {
    const std::vector<NodeId> keep{2, 0};
    const Subgraph s = induced_subgraph(tri, keep);
    CHECK(s.graph.node_count() == 2);
    REQUIRE(s.graph.edge_count() == 1);
    CHECK(s.edge_origin[0] == 2);
    CHECK(s.node_origin == keep);
    CHECK(s.graph.edge(0).src == 0);
    CHECK(s.graph.edge(0).dst == 1);
  }
}

TEST_CASE("edge-list round trip") {
  std::mt19937_64 rng(9);
  const DirectedGraph g = oracle::random_digraph(rng, 15, 0.2, 1000000000000LL);
  const std::string text = edge_list_string(g);
  std::istringstream in(text);
  const DirectedGraph back = read_edge_list(in);
  CHECK(back == g);
  CHECK(edge_list_string(back) == text);
}

TEST_CASE("edge-list parse errors") {
  auto parse = [](const std::string& s) {
    std::istringstream in(s);
    return read_edge_list(in);
  };
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("2 1\n0 1\n"), ParseError);
  CHECK_THROWS_AS(parse("2 1\n0 5 1\n"), ParseError);
  CHECK_THROWS_AS(parse("2 1\n0 1 0\n"), ParseError);
  CHECK_THROWS_AS(parse("2 1\n0 1 x\n"), ParseError);
  CHECK_THROWS_AS(parse("2 2\n0 1 1\n"), ParseError);
  CHECK_THROWS_AS(parse("2 1\n0 1 1\n1 0 1\n"), ParseError);
  CHECK(parse("2 1\r\n0 1 3\r\n").edge(0).len == 3);
}
