#include <doctest.h>

#include <set>

#include "ldd/experiment.hpp"
#include "ldd/generate.hpp"
#include "ldd/io.hpp"
#include "ldd/scc.hpp"

using namespace ldd;

TEST_CASE("generators") {
  SUBCASE("cycles") {
    const DirectedGraph g = generate({CyclesSpec{1, 5}, 0});
    CHECK(g.node_count() == 5);
    CHECK(g.edge_count() == 5);
    CHECK(strongly_connected_components(g).count == 1);
    CHECK(strongly_connected_components(generate({CyclesSpec{7, 3}, 0})).count == 7);
  }
  SUBCASE("dag is acyclic") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const DirectedGraph g = generate({DagRandomSpec{30, 0.3}, seed});
      CHECK(g.edge_count() > 0);
      CHECK(strongly_connected_components(g).count == 30);
    }
  }
  SUBCASE("bidirected random") {
    const DirectedGraph a = generate({BidirectedRandomSpec{50, 0.1}, 9});
    CHECK(a == generate({BidirectedRandomSpec{50, 0.1}, 9}));
    CHECK_FALSE(a == generate({BidirectedRandomSpec{50, 0.1}, 10}));
    std::set<std::pair<NodeId, NodeId>> arcs;
    for (const Edge& e : a.edges()) arcs.insert({e.src, e.dst});
    CHECK(arcs.size() == a.edge_count());
    for (const Edge& e : a.edges()) CHECK(arcs.count({e.dst, e.src}) == 1);
  }
  SUBCASE("grid torus") {
    const DirectedGraph g = generate({GridTorusSpec{4, 5}, 0});
    CHECK(g.node_count() == 20);
    CHECK(g.edge_count() == 40);
    CHECK(strongly_connected_components(g).count == 1);
  }
  SUBCASE("weighted random") {
    const DirectedGraph g = generate({WeightedRandomSpec{20, 100, 7}, 3});
    CHECK(g.edge_count() == 100);
    std::set<std::pair<NodeId, NodeId>> arcs;
    for (const Edge& e : g.edges()) {
      arcs.insert({e.src, e.dst});
      CHECK(e.len >= 1);
      CHECK(e.len <= 7);
    }
    CHECK(arcs.size() == 100);
    CHECK_THROWS_AS(generate({WeightedRandomSpec{3, 7, 1}, 0}), InvalidArgument);
  }
}

TEST_CASE("family names") {
  for (const char* s : {"cycles:50:34", "dag_random:30:0.2", "grid_torus:8:8", "weighted_random:300:2000:10"})
    CHECK(family_name(parse_family(s)) == s);
  CHECK(std::holds_alternative<BidirectedRandomSpec>(parse_family("bidirected_random:64:0.1")));
  CHECK_THROWS_AS(parse_family("cycles:0"), InvalidArgument);
  CHECK_THROWS_AS(parse_family("torus:3:3"), InvalidArgument);
  CHECK_THROWS_AS(generate({parse_family("grid_torus:2:9"), 0}), InvalidArgument);
}

TEST_CASE("generated graphs round trip") {
  const DirectedGraph g = generate({WeightedRandomSpec{30, 90, 1000}, 2});
  std::istringstream in(edge_list_string(g));
  CHECK(read_edge_list(in) == g);
}

TEST_CASE("experiment") {
  SUBCASE("empty sweep") {
    const ExperimentReport r = run_experiment(parse_experiment_config("seed = 1\n"));
    CHECK(r.rows.empty());
    CHECK(r.csv() ==
          "family,n,m,d,algo,samples,status,invalid_samples,measured_loss,measured_loss_upper,k_normalized\n");
  }
  SUBCASE("cycles row") {
    const ExperimentConfig cfg = parse_experiment_config(
        "# sweep\nseed = 3\nfamilies = cycles:4:9\nd = 7\nalgos = fast, det\nsamples = 50\n");
    const ExperimentReport r = run_experiment(cfg, 2);
    REQUIRE(r.rows.size() == 2);
    for (const auto& row : r.rows) {
      CHECK(row.family == "cycles:4:9");
      CHECK(row.n == 36);
      CHECK(row.m == 36);
      CHECK(row.status == "ok");
      CHECK(row.measured_loss > 0);
    }
    CHECK_FALSE(r.any_invalid);
    CHECK(run_experiment(cfg, 1).csv() == r.csv());
  }
  SUBCASE("budget skip") {
    const ExperimentConfig cfg =
        parse_experiment_config("families = cycles:2:3\nd = 1000\nalgos = det\nsamples = 5\nsubdivision_budget = 1\n");
    const ExperimentReport r = run_experiment(cfg);
    REQUIRE(r.rows.size() == 1);
    CHECK(r.rows[0].status == "skipped: budget");
  }
  SUBCASE("bad config") {
    CHECK_THROWS_AS(parse_experiment_config("colour = red\n"), ParseError);
    CHECK_THROWS_AS(parse_experiment_config("d = x\n"), ParseError);
  }
}
