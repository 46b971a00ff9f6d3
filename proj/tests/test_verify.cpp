#include <doctest.h>

#include <cmath>

#include "ldd/generate.hpp"
#include "ldd/verify.hpp"
#include "oracles.hpp"

using namespace ldd;

TEST_CASE("weak diameter examples") {
  const Length d = 6;
  const DirectedGraph g = oracle::directed_cycle(d + 2);
  SUBCASE("nothing cut") {
    const ValidityReport r = verify_weak_diameter(g, CutSet(), d);
    CHECK_FALSE(r.valid);
    REQUIRE(r.violation);
    CHECK(r.violation->distance == d + 1);
    CHECK(r.components == 1);
  }
  SUBCASE("one edge cut") {
    const ValidityReport r = verify_weak_diameter(g, CutSet({3}, g.edge_count()), d);
    CHECK(r.valid);
    CHECK(r.components == d + 2);
  }
  SUBCASE("everything cut") { CHECK(verify_weak_diameter(g, CutSet::all(g.edge_count()), 1).valid); }
  SUBCASE("triangle has diameter 2") {
    const DirectedGraph t(3, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}});
    CHECK(verify_weak_diameter(t, CutSet(), 2).valid);
    CHECK_FALSE(verify_weak_diameter(t, CutSet(), 1).valid);
  }
}

TEST_CASE("weak diameter agrees with Floyd-Warshall") {
  std::mt19937_64 rng(41);
  for (int it = 0; it < 200; ++it) {
    const NodeId n = 1 + it % 40;
    const DirectedGraph g = oracle::random_digraph(rng, n, 2.5 / n, 1 + it % 7);
    std::vector<EdgeId> pick;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
      if (rng() % 4 == 0) pick.push_back(e);
    const CutSet s(pick, g.edge_count());
    const Length d = 1 + static_cast<Length>(rng() % 20);
    const ValidityReport r = verify_weak_diameter(g, s, d);
    CHECK(r.valid == oracle::weak_diameter_ok(g, oracle::mask(g, s), d));
    if (!r.valid) {
      const oracle::Matrix full = oracle::floyd_warshall(g);
      const auto lab = oracle::scc_labels(g, oracle::mask(g, s));
      CHECK(lab[r.violation->u] == lab[r.violation->v]);
      CHECK(full[r.violation->u][r.violation->v] > d);
    }
  }
}

TEST_CASE("loss estimation") {
  SUBCASE("no edges") {
    const DirectedGraph g(3, {});
    MonteCarloConfig cfg;
    cfg.samples = 10;
    const auto r = estimate_cut_probabilities(g, 4, Algo::Fast, cfg);
    CHECK(r.valid);
    CHECK(r.measured_loss == 0);
  }
  SUBCASE("det frequency is f / R") {
    const DirectedGraph g = generate({CyclesSpec{4, 9}, 0});
    const LddSupport s = mwu_ldd(g, 7);
    const auto f = support_frequencies(s, g.edge_count());
    MonteCarloConfig cfg;
    cfg.samples = 4000;
    cfg.seed = 3;
    const auto r = estimate_cut_probabilities(g, 7, Algo::Det, cfg);
    CHECK(r.valid);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const double p = static_cast<double>(f[e]) / static_cast<double>(s.rounds());
      const double sigma = std::sqrt(p * (1 - p) / 4000);
      CHECK(std::abs(r.freq(e) - p) <= 4 * sigma + 1e-12);
    }
  }
  SUBCASE("seeded reproducibility across thread counts") {
    const DirectedGraph g = generate({WeightedRandomSpec{40, 120, 4}, 1});
    MonteCarloConfig cfg;
    cfg.samples = 200;
    cfg.seed = 77;
    cfg.threads = 1;
    const auto a = estimate_cut_probabilities(g, 12, Algo::Fast, cfg);
    cfg.threads = 4;
    const auto b = estimate_cut_probabilities(g, 12, Algo::Fast, cfg);
    CHECK(a.counts == b.counts);
    CHECK(loss_csv(g, a) == loss_csv(g, b));
    CHECK(a.valid);
  }
  SUBCASE("summarize fixed samples") {
    const DirectedGraph g = oracle::directed_cycle(5);
    const std::vector<CutSet> cuts{CutSet({0}, 5), CutSet({0, 1}, 5)};
    const auto r = summarize_samples(g, 3, cuts);
    CHECK(r.valid);
    CHECK(r.freq(0) == 1.0);
    CHECK(r.freq(1) == 0.5);
    CHECK(r.measured_loss == doctest::Approx(3.0));
    const auto bad = summarize_samples(g, 3, {CutSet()});
    CHECK_FALSE(bad.valid);
    CHECK(bad.invalid_samples == 1);
  }
}

TEST_CASE("wilson interval") {
  const auto [lo, hi] = wilson_interval(0, 100);
  CHECK(lo == doctest::Approx(0.0));
  CHECK(hi == doctest::Approx(0.0370).epsilon(0.01));
  const auto [a, b] = wilson_interval(50, 100);
  CHECK(a == doctest::Approx(0.4038).epsilon(0.001));
  CHECK(b == doctest::Approx(0.5962).epsilon(0.001));
  const auto [c, d] = wilson_interval(100, 100);
  CHECK(d == doctest::Approx(1.0));
  CHECK(c < 1);
}

TEST_CASE("loss csv header") {
  const DirectedGraph g = oracle::directed_cycle(3);
  const auto r = summarize_samples(g, 2, {CutSet({1}, 3)});
  const std::string csv = loss_csv(g, r);
  CHECK(csv.rfind("edge_id,freq,upper_ci,len,normalized_loss\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}

TEST_CASE("expander diameter probe") {
  SUBCASE("single node") {
    const DirectedGraph g(1, {});
    const auto p = expander_diameter_probe(g, CapacityMap::uniform(0), Rational(1));
    CHECK(p.diameter == 0);
  }
  SUBCASE("K4") {
    const DirectedGraph g = oracle::bidirected_clique(4);
    const CapacityMap cap = CapacityMap::uniform(g.edge_count());
    const auto psi = certified_expansion_bound(g, cap);
    REQUIRE(psi);
    const auto p = expander_diameter_probe(g, cap, *psi);
    CHECK(p.diameter == 1);
    CHECK(p.ratio <= 1);
  }
  SUBCASE("not an expander") {
    const DirectedGraph g(2, {{0, 1, 1}});
    CHECK_THROWS_AS(expander_diameter_probe(g, CapacityMap::uniform(1), Rational(1, 2)), InvalidArgument);
  }
}
