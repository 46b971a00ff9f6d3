#include <doctest.h>

#include <cmath>

#include "ldd/det.hpp"
#include "ldd/generate.hpp"
#include "ldd/io.hpp"
#include "ldd/verify.hpp"
#include "oracles.hpp"

using namespace ldd;

namespace {

DirectedGraph bidirected_path3() { return DirectedGraph(3, {{0, 1, 1}, {1, 0, 1}, {1, 2, 1}, {2, 1, 1}}); }

bool verified(const DirectedGraph& g, const CutSet& s, Length d) {
  const bool lib = verify_weak_diameter(g, s, d).valid;
  if (g.node_count() <= 64) CHECK(lib == oracle::weak_diameter_ok(g, oracle::mask(g, s), d));
  return lib;
}

}  // namespace

TEST_CASE("det_params") {
  const DetParams p = det_params(100, 1024, 64);
  CHECK(p.d_prime == 16);
  CHECK(p.m_sub == 1024);
  // lg = 10, loglog = log2 10; psi = 4 * log2(10) / 16 rounded down to 2^-32
  const double loglog = std::log2(10.0);
  CHECK(p.psi.convert_to<double>() == doctest::Approx(4 * loglog / 16).epsilon(1e-9));
  CHECK(p.psi <= Rational(4 * loglog / 16 + 1e-12));
  CHECK(p.loss == doctest::Approx(4 * 10 * loglog));
  CHECK(p.rounds == static_cast<std::uint64_t>(std::ceil(10.0 * 64 / (40 * loglog))));
  CHECK(!p.trivial);
  CHECK(det_params(10, 10, 3).trivial);
}

TEST_CASE("cost_minimizer examples") {
  SUBCASE("bidirected path, small psi") {
    const DirectedGraph g = bidirected_path3();
    CHECK(cost_minimizer(g, CapacityMap::uniform(4), Rational(1, 4), 10 / 4).empty());
  }
  SUBCASE("no edges") {
    const DirectedGraph g(4, {});
    CHECK(cost_minimizer(g, CapacityMap::uniform(0), Rational(1), 3).empty());
  }
  SUBCASE("long cycle, every executed cut is sparse") {
    const Length d = 10;
    const DirectedGraph g = oracle::directed_cycle(d + 2);
    DetConfig cfg;
    int events = 0;
    cfg.observer = [&](const CutEvent& ev) {
      ++events;
      const auto& o = ev.outcome;
      REQUIRE((o.kind == SparseCutCase::OutCut || o.kind == SparseCutCase::InCut));
      const DirectedGraph& h = ev.view.graph();
      std::vector<bool> in(h.node_count(), false);
      for (NodeId x : o.ball) in[x] = true;
      if (o.kind == SparseCutCase::InCut) in.flip();
      std::vector<std::uint64_t> caps(h.edge_count(), 0);
      for (EdgeId e = 0; e < h.edge_count(); ++e)
        if (ev.view.has_edge(e)) caps[e] = ev.cost[e];
      for (NodeId x = 0; x < h.node_count(); ++x)
        if (!ev.view.has_node(x)) in[x] = false;
      CHECK(oracle::psi_at_most(oracle::psi(oracle::cut_of(h, caps, in), false), ev.psi));
    };
    const CutSet s = cost_minimizer(g, CapacityMap::uniform(g.edge_count()), Rational(1, 2), d / 4, cfg);
    CHECK(!s.empty());
    CHECK(events > 0);
    CHECK(verified(g, s, d));
  }
}

TEST_CASE("mwu_ldd on disjoint long cycles") {
  const Length d = 10;
  const DirectedGraph g = generate({CyclesSpec{50, static_cast<std::uint32_t>(d + 2)}, 0});
  const LddSupport s = mwu_ldd(g, d);
  CHECK(s.rounds() == s.params.rounds);
  for (const CutSet& c : s.cuts) {
    std::vector<int> hit(50, 0);
    for (EdgeId e : c) ++hit[e / (d + 2)];
    CHECK(std::count(hit.begin(), hit.end(), 0) == 0);
    CHECK(verified(g, c, d));
  }
}

TEST_CASE("mwu_ldd structural bounds") {
  std::mt19937_64 rng(101);
  for (int it = 0; it < 12; ++it) {
    const NodeId n = 5 + it * 3;
    const DirectedGraph g = oracle::random_digraph(rng, n, 2.5 / n, 1 + it % 4);
    const Length d = 4 << (it % 4);
    const LddSupport s = mwu_ldd(g, d);
    const std::uint64_t m_sub = s.params.m_sub;
    REQUIRE(s.rounds() == s.params.rounds);
    const auto freq = support_frequencies(s, g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const double lim = std::ceil(10 * std::log2(std::max<double>(m_sub, 2)) * static_cast<double>(g.edge(e).len));
      CHECK(static_cast<double>(freq[e]) <= lim);
    }
    for (const CutSet& c : s.cuts) CHECK(verified(g, c, d));
    for (EdgeId e : s.force_cut)
      for (const CutSet& c : s.cuts) CHECK(c.contains(e));
    if (s.params.trivial) continue;
    for (std::size_t r = 0; r < s.history.size(); ++r) {
      const MwuRound& h = s.history[r];
      CHECK(static_cast<double>(to_long_double(h.cut_cost)) <= h.budget * (1 + 1e-12));
      const Volume next = r + 1 < s.history.size() ? s.history[r + 1].total_cost : s.final_total_cost;
      CHECK(next == h.total_cost + h.cut_cost);
    }
    const Volume cube = Volume(m_sub) * m_sub * m_sub;
    CHECK(s.final_total_cost <= cube);
  }
}

TEST_CASE("mwu_ldd is deterministic") {
  const DirectedGraph g = generate({WeightedRandomSpec{60, 200, 5}, 4});
  const LddSupport a = mwu_ldd(g, 16), b = mwu_ldd(g, 16);
  CHECK(support_json(a, 16, g.edge_count()) == support_json(b, 16, g.edge_count()));
}

TEST_CASE("mwu_ldd budget") {
  const DirectedGraph g(2, {{0, 1, 1000}, {1, 0, 1000}});
  DetConfig cfg;
  cfg.subdivision_budget = 100;
  CHECK_THROWS_AS(mwu_ldd(g, 5000, cfg), BudgetExceeded);
}

TEST_CASE("support JSON round trip") {
  const DirectedGraph g = generate({CyclesSpec{3, 7}, 0});
  const LddSupport s = mwu_ldd(g, 5);
  const SupportFile f = parse_support_json(support_json(s, 5, g.edge_count()));
  CHECK(f.d == 5);
  CHECK(f.edge_count == g.edge_count());
  CHECK(f.cuts == s.cuts);
  CHECK(f.force_cut == s.force_cut);
  CHECK_THROWS_AS(parse_support_json("{\"format\":\"ldd-cut\"}"), ParseError);
  CHECK_THROWS_AS(parse_support_json("not json"), ParseError);
}
