#include "ldd/det.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "ldd/ball.hpp"

namespace ldd {

namespace {

constexpr Capacity kCostCeiling = Capacity{1} << 62;

Capacity saturating_pow(std::uint64_t base, int exp, Capacity ceiling) {
  Volume acc = 1;
  for (int i = 0; i < exp; ++i) {
    acc *= base;
    if (acc >= ceiling) return ceiling;
  }
  return static_cast<Capacity>(acc);
}

// One invocation of the two-phase procedure, on the input graph or on an
// induced ball subgraph of an earlier invocation.
struct Problem {
  std::unique_ptr<Subgraph> owned;
  const DirectedGraph* graph;
  std::vector<EdgeId> root_edge;  // empty: identity
  CapacityMap cost_owned;
  const CapacityMap* external_cost;  // null: cost_owned
  std::uint32_t depth;

  const CapacityMap& cost() const { return external_cost ? *external_cost : cost_owned; }
};

class Minimizer {
 public:
  Minimizer(const Rational& psi, Length d_prime, const DetConfig& config, CostMinimizerStats& stats)
      : base_psi_(psi), d_prime_(d_prime), config_(config), stats_(stats) {}

  std::vector<EdgeId> run(const DirectedGraph& g, const CapacityMap& cost) {
    std::vector<Problem> stack;
    stack.push_back(Problem{nullptr, &g, {}, {}, &cost, 0});
    while (!stack.empty()) {
      Problem p = std::move(stack.back());
      stack.pop_back();
      solve(p, stack);
    }
    return std::move(cut_);
  }

 private:
  EdgeId root(const Problem& p, EdgeId e) const { return p.root_edge.empty() ? e : p.root_edge[e]; }

  void solve(Problem& p, std::vector<Problem>& stack) {
    ++stats_.invocations;
    stats_.max_depth = std::max(stats_.max_depth, p.depth);
    const DirectedGraph& g = *p.graph;
    GraphView view(g);
    Volume total = total_volume(view, p.cost());
    SparseCutFinder finder(view, p.cost(), config_.sparse);
    Rational psi = base_psi_;
    mark_.assign(g.node_count(), 0);

    // Phase I: cut sparse balls around the lowest-id node until one is a center.
    NodeId cursor = 0;
    NodeId center = kNoNode;
    while (center == kNoNode) {
      while (cursor < g.node_count() && !view.has_node(cursor)) ++cursor;
      if (cursor == g.node_count() || view.live_node_count() == 1) return;
      ++stats_.sparse_cut_calls;
      SparseCutOutcome out = finder.find(cursor, d_prime_, psi, total);
      if (out.kind == SparseCutCase::Core) {
        center = cursor;
      } else if (out.kind == SparseCutCase::Inconclusive) {
        psi *= 2;
        ++stats_.psi_doublings;
      } else {
        apply(p, view, total, out, psi, stack);
      }
    }

    // Phase II: only nodes far from the center (either direction) are processed.
    ++stats_.phase2_entries;
    const std::vector<Length> to = distances(view, center, Direction::Out, 2 * d_prime_);
    const std::vector<Length> from = distances(view, center, Direction::In, 2 * d_prime_);
    auto in_y = [&](NodeId x) { return to[x] != kUnreachable && from[x] != kUnreachable; };
    cursor = 0;
    for (;;) {
      while (cursor < g.node_count() && (!view.has_node(cursor) || in_y(cursor))) ++cursor;
      if (cursor == g.node_count() || view.live_node_count() == 1) return;
      ++stats_.sparse_cut_calls;
      SparseCutOutcome out = finder.find(cursor, d_prime_, psi, total);
      if (out.kind == SparseCutCase::OutCut || out.kind == SparseCutCase::InCut) {
        apply(p, view, total, out, psi, stack);
      } else {
        psi *= 2;
        ++stats_.psi_doublings;
      }
    }
  }

  void apply(Problem& p, GraphView& view, Volume& total, SparseCutOutcome& out, const Rational& psi,
             std::vector<Problem>& stack) {
    const DirectedGraph& g = *p.graph;
    const CapacityMap& cost = p.cost();
    if (config_.observer) config_.observer(CutEvent{view, cost, out, psi, p.depth});
    for (EdgeId e : out.cut) {
      cut_.push_back(root(p, e));
      total -= cost[e];
      view.erase_edge(e);
    }
    std::sort(out.ball.begin(), out.ball.end());
    if (out.ball.size() > 1 && out.ball_capacity > 0) {
      auto sub = std::make_unique<Subgraph>(induced_subgraph(view, out.ball));
      std::vector<Capacity> caps(sub->edge_origin.size());
      std::vector<EdgeId> roots(sub->edge_origin.size());
      for (std::size_t i = 0; i < caps.size(); ++i) {
        caps[i] = cost[sub->edge_origin[i]];
        roots[i] = root(p, sub->edge_origin[i]);
      }
      const DirectedGraph* sg = &sub->graph;
      stack.push_back(Problem{std::move(sub), sg, std::move(roots), CapacityMap(std::move(caps)), nullptr, p.depth + 1});
    }
    // Remove every live edge touching the ball from the running volume.
    for (NodeId x : out.ball) mark_[x] = 1;
    for (NodeId x : out.ball) {
      for (EdgeId e : g.out_edges(x))
        if (view.has_edge(e)) total -= cost[e];
      for (EdgeId e : g.in_edges(x))
        if (view.has_edge(e) && !mark_[g.edge(e).src]) total -= cost[e];
    }
    for (NodeId x : out.ball) {
      mark_[x] = 0;
      view.erase_node(x);
    }
  }

  Rational base_psi_;
  Length d_prime_;
  const DetConfig& config_;
  CostMinimizerStats& stats_;
  std::vector<EdgeId> cut_;
  std::vector<std::uint8_t> mark_;
};

}  // namespace

DetParams det_params(NodeId n, std::uint64_t m_sub, Length d, const DetConfig& config) {
  if (d < 1) throw InvalidArgument("D must be >= 1");
  DetParams p;
  p.d = d;
  p.d_prime = d / 4;
  p.m_sub = m_sub;
  const double c_psi = config.c_psi.convert_to<double>();
  const double lg = std::log2(static_cast<double>(std::max<std::uint64_t>(m_sub, 4)));
  const double loglog = std::max(1.0, std::log2(lg));
  p.loss = c_psi * lg * loglog;
  const double log_m = m_sub > 1 ? std::log2(static_cast<double>(m_sub)) : 0.0;
  p.rounds = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(log_m * static_cast<double>(d) / p.loss)));
  p.cost_cap = std::max<Capacity>(1, saturating_pow(m_sub, 10, kCostCeiling));
  p.trivial = p.d_prime < 1 || static_cast<double>(d) <= std::log2(static_cast<double>(n)) / config.gamma;
  if (p.d_prime >= 1) {
    const double scaled = std::floor(c_psi * loglog / static_cast<double>(p.d_prime) * 4294967296.0);
    p.psi = Rational(BigInt(static_cast<std::uint64_t>(scaled)), BigInt(4294967296ULL));
  }
  return p;
}

CutSet cost_minimizer(const DirectedGraph& g_unit, const CapacityMap& cost, const Rational& psi, Length d_prime,
                      const DetConfig& config, CostMinimizerStats* stats) {
  if (!g_unit.unit_lengths()) throw InvalidArgument("cost_minimizer needs unit lengths");
  if (d_prime < 1) throw InvalidArgument("cost_minimizer needs D' >= 1");
  if (cost.size() != g_unit.edge_count()) throw InvalidArgument("cost map does not match the graph");
  CostMinimizerStats local;
  Minimizer mz(psi, d_prime, config, stats ? *stats : local);
  return CutSet(mz.run(g_unit, cost), g_unit.edge_count());
}

LddSupport mwu_ldd(const DirectedGraph& g, Length d, const DetConfig& config) {
  const NodeId n = g.node_count();
  const std::uint64_t m_sub = subdivided_size(g, d) - n;
  LddSupport out;
  out.params = det_params(n, m_sub, d, config);
  const DetParams& p = out.params;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (g.edge(e).len > d) out.force_cut.push_back(e);

  if (p.trivial) {
    out.cuts.assign(p.rounds, CutSet::all(g.edge_count()));
    return out;
  }

  const Subdivision sub = subdivide(g, d, config.subdivision_budget);
  std::vector<Capacity> cost(sub.graph.edge_count(), 1);
  for (std::uint64_t round = 0; round < p.rounds; ++round) {
    CapacityMap cm(cost);
    MwuRound rec;
    rec.total_cost = cm.total();
    const long double tc = to_long_double(rec.total_cost);
    rec.budget = tc > 1 ? static_cast<double>(tc * p.psi.convert_to<long double>() * std::log2(tc)) : 0.0;
    const CutSet s = cost_minimizer(sub.graph, cm, p.psi, p.d_prime, config, &out.stats);
    std::vector<EdgeId> ids(out.force_cut);
    for (EdgeId e : s) {
      rec.cut_cost += cost[e];
      cost[e] = std::min<Capacity>(cost[e] > p.cost_cap / 2 ? p.cost_cap : cost[e] * 2, p.cost_cap);
      ids.push_back(sub.edge_origin[e]);
    }
    out.cuts.emplace_back(std::move(ids), g.edge_count());
    out.history.push_back(rec);
  }
  for (Capacity c : cost) out.final_total_cost += c;
  return out;
}

}  // namespace ldd
