#include "ldd/fast.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <queue>
#include <stdexcept>

#include "ldd/ball.hpp"
#include "ldd/scc.hpp"

namespace ldd {

namespace {

Length floor_nonneg(const Rational& r) {
  return static_cast<Length>(BigInt(numerator(r) / denominator(r)));
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

// floor(num / den) and ceil(num / den) on unsigned 128-bit values.
std::uint64_t floor_div(Volume num, Volume den) { return static_cast<std::uint64_t>(num / den); }
std::uint64_t ceil_div(Volume num, Volume den) { return static_cast<std::uint64_t>((num + den - 1) / den); }

// Decides, for each candidate, whether its edge-ball at `radius` is small:
// size <= num/den, or size < num/den when strict.
class LightClassifier {
 public:
  LightClassifier(const GraphView& view, BallGrower& grower, Direction dir, const EstimatorConfig& config, Rng& rng)
      : view_(view), grower_(grower), dir_(dir), config_(config), rng_(rng) {}

  std::vector<std::uint8_t> classify(std::span<const NodeId> cands, Length radius, Volume num, Volume den,
                                     bool strict) {
    std::vector<std::uint8_t> light(cands.size(), 0);
    if (config_.mode != EstimatorMode::Sketch && exact(cands, radius, num, den, strict, light)) return light;
    used_sketch = true;
    const BallSizeEstimates est = estimate_ball_sizes(view_, radius, dir_, config_.epsilon, rng_, EstimatorMode::Sketch);
    const long double x = to_long_double(num) / to_long_double(den);
    for (std::size_t i = 0; i < cands.size(); ++i) {
      const long double b = est.b[cands[i]];
      light[i] = strict ? b < x : b <= x;
    }
    return light;
  }

  bool used_sketch = false;

 private:
  bool exact(std::span<const NodeId> cands, Length radius, Volume num, Volume den, bool strict,
             std::vector<std::uint8_t>& light) {
    std::uint64_t budget;
    if (strict) {
      const std::uint64_t c = ceil_div(num, den);
      if (c == 0) return true;  // nothing is below zero
      budget = c - 1;
    } else {
      budget = floor_div(num, den);
    }
    const std::uint64_t n = view_.live_node_count();
    const std::uint64_t m = view_.live_edge_count();
    const bool capped = config_.mode == EstimatorMode::Auto && n * m > config_.exact_threshold;
    const std::uint64_t cap = sketch_rounds(static_cast<NodeId>(std::max<std::uint64_t>(n, 1)), config_.epsilon) * (n + m);
    const std::uint64_t start = grower_.work();
    for (std::size_t i = 0; i < cands.size(); ++i) {
      light[i] = !grower_.edge_size_exceeds(cands[i], dir_, radius, budget);
      if (capped && grower_.work() - start > cap) return false;
    }
    return true;
  }

  const GraphView& view_;
  BallGrower& grower_;
  Direction dir_;
  const EstimatorConfig& config_;
  Rng& rng_;
};

}  // namespace

double FastParams::rate(std::uint32_t level) const {
  const double gap = to_double(radius[level] - radius[level - 1]);
  const double p = std::log(2.0 * static_cast<double>(size[level - 1]) / delta) / gap;
  return std::min(1.0, p);
}

FastParams fast_params(std::uint64_t m, Length d) {
  if (d < 1) throw InvalidArgument("D must be >= 1");
  FastParams p;
  const double lg = std::log2(static_cast<double>(std::max<std::uint64_t>(m, 2)));
  p.levels = static_cast<std::uint32_t>(std::ceil(std::log2(lg))) + 1;
  p.delta = 1.0 / std::pow(lg, 10);
  const std::uint32_t L = p.levels;
  p.radius.assign(L + 1, Rational(0));
  for (std::uint32_t l = 1; l <= L; ++l) {
    const Rational a(BigInt(d), BigInt(1) << (L - l + 3));
    const Rational b(BigInt(d), BigInt(4 * L));
    p.radius[l] = p.radius[l - 1] + a + b;
  }
  p.size.assign(L + 1, m + 1);
  for (std::uint32_t l = 0; l <= L; ++l) {
    const std::uint32_t e = L - l;
    if (e >= 6) continue;  // 2^(2^e) >= 2^64 > m + 1
    const std::uint64_t exponent = std::uint64_t{1} << e;
    if (exponent >= 64) continue;
    p.size[l] = std::min<std::uint64_t>(std::uint64_t{1} << exponent, m + 1);
  }
  return p;
}

std::uint64_t sketch_rounds(NodeId n, double epsilon) {
  const double k = std::ceil(48.0 / (epsilon * epsilon) * std::log(static_cast<double>(std::max<NodeId>(n, 1))));
  return std::max<std::uint64_t>(2, static_cast<std::uint64_t>(k));
}

BallSizeEstimates estimate_ball_sizes(const GraphView& view, Length radius, Direction dir, double epsilon, Rng& rng,
                                      EstimatorMode mode) {
  if (!(epsilon > 0 && epsilon < 1)) throw InvalidArgument("epsilon must lie in (0, 1)");
  if (radius < 0) throw InvalidArgument("radius must be nonnegative");
  const DirectedGraph& g = view.graph();
  const NodeId n = g.node_count();
  BallSizeEstimates out;
  out.b.assign(n, 0.0);
  out.epsilon = epsilon;
  out.mode = mode == EstimatorMode::Sketch ? EstimatorMode::Sketch : EstimatorMode::Exact;

  if (out.mode == EstimatorMode::Exact) {
    BallGrower grower(view);
    for (NodeId v = 0; v < n; ++v)
      if (view.has_node(v)) out.b[v] = static_cast<double>(grower.grow(v, dir, radius, std::nullopt, false).edge_size);
    return out;
  }

  // Edges that fit in the radius at all; only their ranks matter.
  std::vector<EdgeId> eligible;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (view.has_edge(e) && g.edge(e).len <= radius) eligible.push_back(e);
  const std::size_t M = eligible.size();
  if (M == 0) return out;

  const Direction search = opposite(dir);
  const std::uint64_t k = sketch_rounds(view.live_node_count(), epsilon);
  std::vector<long double> sum(n, 0.0L);
  std::vector<std::uint8_t> reached(n, 0);
  std::vector<Length> slack(n, -1);
  std::vector<std::uint64_t> slack_round(n, 0), hit_round(n, 0);
  std::vector<std::pair<Length, NodeId>> heap;
  std::vector<EdgeId> order(eligible);

  for (std::uint64_t round = 1; round <= k; ++round) {
    for (std::size_t i = M; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    long double rank = 0;
    for (std::size_t i = 0; i < M; ++i) {
      // Sorted exponential ranks: spacings are Exp(1) / (M - i).
      rank += static_cast<long double>(rng.exponential()) / static_cast<long double>(M - i);
      const EdgeId e = order[i];
      const NodeId anchor = g.tail(dir, e);
      const Length s0 = radius - g.edge(e).len;
      auto slack_of = [&](NodeId x) { return slack_round[x] == round ? slack[x] : Length{-1}; };
      if (s0 <= slack_of(anchor)) continue;
      slack[anchor] = s0;
      slack_round[anchor] = round;
      heap.assign(1, {s0, anchor});
      while (!heap.empty()) {
        std::pop_heap(heap.begin(), heap.end());
        const auto [s, x] = heap.back();
        heap.pop_back();
        if (s != slack[x]) continue;
        if (hit_round[x] != round) {
          hit_round[x] = round;
          sum[x] += rank;
          reached[x] = 1;
        }
        for (EdgeId f : g.edges_from(search, x)) {
          if (!view.has_edge(f)) continue;
          const Length ns = s - g.edge(f).len;
          if (ns < 0) continue;
          const NodeId y = g.head(search, f);
          if (ns <= slack_of(y)) continue;
          slack[y] = ns;
          slack_round[y] = round;
          heap.push_back({ns, y});
          std::push_heap(heap.begin(), heap.end());
        }
      }
    }
  }
  for (NodeId v = 0; v < n; ++v)
    if (reached[v]) out.b[v] = static_cast<double>(static_cast<long double>(k - 1) / sum[v]);
  return out;
}

CutLightResult cut_light(const GraphView& input, const CutLightParams& p, Rng& rng) {
  if (!(p.r_lo >= 0 && p.r_lo < p.r_hi)) throw InvalidArgument("cut_light needs 0 <= r_lo < r_hi");
  if (!(p.s_hi >= 1 && p.s_hi <= p.s_lo)) throw InvalidArgument("cut_light needs 1 <= s_hi <= s_lo");
  if (!(p.delta > 0)) throw InvalidArgument("cut_light needs delta > 0");

  GraphView view = input;
  CutLightResult res;
  const std::uint64_t m_live = view.live_edge_count();
  const std::uint64_t m = p.m_ref ? p.m_ref : m_live;
  std::vector<NodeId> nodes = view.live_nodes();
  if (m_live == 0 || m == 0) {
    res.remaining = std::move(nodes);
    return res;
  }

  const Length rad_lo = floor_nonneg(p.r_lo);
  const Length rad_hi = floor_nonneg(p.r_hi);
  const Rational gap_q = p.r_hi - p.r_lo;
  const Length gap = floor_nonneg(gap_q);
  const double rate = std::min(1.0, std::log(2.0 * static_cast<double>(p.s_lo) / p.delta) / to_double(gap_q));
  const NodeId n = view.graph().node_count();

  BallGrower grower(view);
  LightClassifier classifier(view, grower, p.dir, p.estimator, rng);

  // Step 1: good iff the r_hi-ball holds at most 9/8 * m / s_hi edges.
  std::vector<std::uint8_t> good(n, 0);
  std::uint64_t good_count = 0;
  {
    const auto light = classifier.classify(nodes, rad_hi, Volume{9} * m, Volume{8} * p.s_hi, false);
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (light[i]) {
        good[nodes[i]] = 1;
        ++good_count;
      }
  }

  // Candidates: good nodes not yet seen to fail the r_lo test. Ball sizes only
  // shrink as nodes are deleted, so a failure is permanent.
  std::vector<NodeId> cand;
  std::vector<std::uint32_t> pos(n, kNoNode);
  for (NodeId v : nodes)
    if (good[v]) {
      pos[v] = static_cast<std::uint32_t>(cand.size());
      cand.push_back(v);
    }
  auto drop = [&](NodeId v) {
    if (pos[v] == kNoNode) return;
    const NodeId last = cand.back();
    cand[pos[v]] = last;
    pos[last] = pos[v];
    cand.pop_back();
    pos[v] = kNoNode;
  };

  const std::uint64_t test_budget = ceil_div(m, Volume{2} * p.s_lo) - 1;
  const double log_n = std::log2(static_cast<double>(nodes.size()));
  const std::uint64_t outer = static_cast<std::uint64_t>(std::ceil(log_n)) + 1;
  const double inner_d = std::ceil(static_cast<double>(p.s_lo) * 100.0 * log_n);
  const std::uint64_t inner = inner_d >= 9.0e18 ? std::numeric_limits<std::uint64_t>::max()
                                                 : static_cast<std::uint64_t>(inner_d);

  for (std::uint64_t round = 0; round < outer; ++round) {
    // Step 2.1, simulated in bulk: draws landing on known failures are skipped
    // with one geometric sample.
    std::uint64_t left = inner;
    while (left > 0 && !cand.empty()) {
      const double hit = static_cast<double>(cand.size()) / static_cast<double>(good_count);
      const auto skip = static_cast<std::uint64_t>(sample_geometric(hit, rng));
      if (skip > left) break;
      left -= skip;
      const NodeId v = cand[rng.below(cand.size())];
      ++res.ball_tests;
      if (!grower.edge_size_exceeds(v, p.dir, rad_lo, test_budget)) {
        drop(v);
        continue;
      }
      const std::int64_t g = sample_geometric(rate, rng);
      if (g > gap) {
        res.fail = true;
        return res;
      }
      const BallResult ball = grower.grow(v, p.dir, rad_lo + g);
      // cut every out-edge of the ball that does not fit in the radius
      res.carves.push_back({v, rad_lo + g, res.cut.size(), res.cut.size() + ball.frontier.size()});
      res.cut.insert(res.cut.end(), ball.frontier.begin(), ball.frontier.end());
      for (NodeId x : ball.nodes) {
        if (good[x]) {
          good[x] = 0;
          --good_count;
          drop(x);
        }
        view.erase_node(x);
      }
    }

    // Step 2.2: good nodes whose r_lo-ball fell below 7/8 * m / s_lo become bad.
    std::vector<NodeId> still;
    for (NodeId v = 0; v < n; ++v)
      if (good[v]) still.push_back(v);
    if (still.empty()) break;
    const auto light = classifier.classify(still, rad_lo, Volume{7} * m, Volume{8} * p.s_lo, true);
    for (std::size_t i = 0; i < still.size(); ++i)
      if (light[i]) {
        good[still[i]] = 0;
        --good_count;
        drop(still[i]);
      }
  }

  res.used_sketch = classifier.used_sketch;
  res.remaining = view.live_nodes();
  return res;
}

namespace {

class FastSolver {
 public:
  FastSolver(Length d, const FastConfig& config, FastResult& out) : d_(d), config_(config), out_(out) {}

  struct Instance {
    std::unique_ptr<Subgraph> owned;
    const DirectedGraph* graph;
    std::vector<NodeId> node_root;  // empty: identity
    std::vector<EdgeId> edge_root;
    std::uint32_t depth;
    std::uint64_t seed;
  };

  void run(const DirectedGraph& g, Rng& rng) {
    std::vector<Instance> stack;
    stack.push_back(Instance{nullptr, &g, {}, {}, 0, 0});
    bool top = true;
    while (!stack.empty()) {
      Instance inst = std::move(stack.back());
      stack.pop_back();
      if (top) {
        solve(inst, rng, stack);
        top = false;
      } else {
        Rng local(inst.seed);
        solve(inst, local, stack);
      }
    }
  }

  std::vector<EdgeId> cut;

 private:
  static NodeId map(const std::vector<NodeId>& m, NodeId v) { return m.empty() ? v : m[v]; }
  static EdgeId map_e(const std::vector<EdgeId>& m, EdgeId e) { return m.empty() ? e : m[e]; }

  struct Child {
    std::unique_ptr<Subgraph> sub;
  };

  void solve(Instance& inst, Rng& rng, std::vector<Instance>& stack) {
    const DirectedGraph& g = *inst.graph;
    const std::uint64_t m = g.edge_count();
    out_.max_depth = std::max(out_.max_depth, inst.depth);
    if (m == 0) return;
    const FastParams params = fast_params(m, d_);
    const std::uint32_t L = params.levels;

    std::uint64_t attempts = 0;
    for (;;) {
      std::vector<EdgeId> local_cut;
      std::vector<AuditEntry> local_audit;
      std::vector<Child> children;
      GraphView w(g);
      for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (Length(4 * L) * g.edge(e).len >= d_) {
          local_cut.push_back(e);
          if (config_.audit) local_audit.push_back({e, CutReason::LongEdge, kNoNode, 0, Direction::Out});
          w.erase_edge(e);
        }
      }

      bool failed = false;
      for (std::uint32_t l = L; l >= 1 && !failed; --l) {
        for (Direction dir : {Direction::Out, Direction::In}) {
          CutLightParams cp;
          cp.delta = params.delta;
          cp.r_lo = params.radius[l - 1];
          cp.r_hi = params.radius[l];
          cp.s_lo = params.size[l - 1];
          cp.s_hi = params.size[l];
          cp.dir = dir;
          cp.m_ref = m;
          cp.estimator = config_.estimator;
          ++out_.cut_light_calls;
          CutLightResult res = cut_light(w, cp, rng);
          if (res.fail) {
            failed = true;
            break;
          }
          for (const Carve& c : res.carves)
            for (std::size_t i = c.cut_begin; i < c.cut_end; ++i) {
              local_cut.push_back(res.cut[i]);
              if (config_.audit)
                local_audit.push_back({res.cut[i], CutReason::Boundary, c.center, c.radius, dir});
            }
          for (EdgeId e : res.cut) w.erase_edge(e);

          // Components of (W \ S)[V \ R] are solved recursively.
          GraphView outside = w;
          for (NodeId v : res.remaining) outside.erase_node(v);
          const SccPartition scc = strongly_connected_components(outside);
          for (const auto& comp : scc.groups()) {
            if (comp.size() < 2) continue;
            auto sub = std::make_unique<Subgraph>(induced_subgraph(outside, comp));
            if (sub->graph.edge_count() == 0) continue;
            if (sub->graph.edge_count() >= m) {
              failed = true;  // cannot shrink; treated as a failed call
              break;
            }
            children.push_back({std::move(sub)});
          }
          if (failed) break;
          std::vector<std::uint8_t> keep(g.node_count(), 0);
          for (NodeId v : res.remaining) keep[v] = 1;
          for (NodeId v = 0; v < g.node_count(); ++v)
            if (w.has_node(v) && !keep[v]) w.erase_node(v);
        }
        if (l == 1) break;
      }

      if (failed) {
        ++out_.restarts;
        if (++attempts > config_.max_restarts) throw std::runtime_error("ldd_fast: restart limit reached");
        continue;
      }

      for (EdgeId e : local_cut) cut.push_back(map_e(inst.edge_root, e));
      if (config_.audit) {
        for (AuditEntry a : local_audit) {
          a.edge = map_e(inst.edge_root, a.edge);
          if (a.center != kNoNode) a.center = map(inst.node_root, a.center);
          out_.audit.push_back(a);
        }
      }
      for (Child& c : children) {
        std::vector<NodeId> nodes(c.sub->node_origin.size());
        std::vector<EdgeId> edges(c.sub->edge_origin.size());
        for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i] = map(inst.node_root, c.sub->node_origin[i]);
        for (std::size_t i = 0; i < edges.size(); ++i) edges[i] = map_e(inst.edge_root, c.sub->edge_origin[i]);
        const DirectedGraph* sg = &c.sub->graph;
        stack.push_back(Instance{std::move(c.sub), sg, std::move(nodes), std::move(edges), inst.depth + 1, rng.next()});
      }
      return;
    }
  }

  Length d_;
  const FastConfig& config_;
  FastResult& out_;
};

}  // namespace

FastResult ldd_fast(const DirectedGraph& g, Length d, Rng& rng, const FastConfig& config) {
  if (d < 1) throw InvalidArgument("D must be >= 1");
  FastResult out;
  FastSolver solver(d, config, out);
  solver.run(g, rng);
  out.cut = CutSet(std::move(solver.cut), g.edge_count());
  return out;
}

bool is_heavy(const DirectedGraph& g, NodeId v, Length radius) {
  const GraphView view(g);
  BallGrower grower(view);
  const std::uint64_t half = g.edge_count() / 2;  // size > m/2  <=>  size > floor(m/2)
  return grower.edge_size_exceeds(v, Direction::Out, radius, half) &&
         grower.edge_size_exceeds(v, Direction::In, radius, half);
}

}  // namespace ldd
