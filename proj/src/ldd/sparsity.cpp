#include "ldd/sparsity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace ldd {

namespace {

using Float100 = boost::multiprecision::cpp_bin_float_100;

long double to_ld(const Rational& r) { return r.convert_to<long double>(); }

bool is_pow2(Volume q) { return q != 0 && (q & (q - 1)) == 0; }

int log2_exact(Volume q) {
  int k = 0;
  while (q > 1) {
    q >>= 1;
    ++k;
  }
  return k;
}

// Live nodes of a view, refusing inputs too large to enumerate.
std::vector<NodeId> enumerable_nodes(const GraphView& view) {
  std::vector<NodeId> nodes = view.live_nodes();
  if (nodes.size() > 20) throw InvalidArgument("cut enumeration supports at most 20 nodes");
  return nodes;
}

// Calls fn(mask, cut_out, vol_u, total) for every proper subset in Gray-code
// order; fn returns true to stop.
template <class Fn>
void for_each_proper_cut(const GraphView& view, const CapacityMap& cap, Fn&& fn) {
  const DirectedGraph& g = view.graph();
  const std::vector<NodeId> nodes = enumerable_nodes(view);
  const std::size_t k = nodes.size();
  if (k < 2) return;
  std::vector<int> local(g.node_count(), -1);
  for (std::size_t i = 0; i < k; ++i) local[nodes[i]] = static_cast<int>(i);
  const Volume total = total_volume(view, cap);
  const std::uint32_t full = (1u << k) - 1;
  std::uint32_t mask = 0;
  Volume vol_u = 0, cut = 0;
  for (std::uint32_t i = 1; i < full + 1u; ++i) {
    const int bit = std::countr_zero(i);
    const NodeId x = nodes[bit];
    const bool adding = ((mask >> bit) & 1u) == 0;
    // Out-edges of x become (or stop being) cut edges when their head is outside.
    for (EdgeId e : g.out_edges(x)) {
      if (!view.has_edge(e)) continue;
      const Capacity c = cap[e];
      const bool head_in = (mask >> local[g.edge(e).dst]) & 1u;
      if (adding) {
        vol_u += c;
        if (!head_in) cut += c;
      } else {
        vol_u -= c;
        if (!head_in) cut -= c;
      }
    }
    for (EdgeId e : g.in_edges(x)) {
      if (!view.has_edge(e)) continue;
      const bool tail_in = (mask >> local[g.edge(e).src]) & 1u;
      if (!tail_in) continue;
      if (adding) cut -= cap[e];
      else cut += cap[e];
    }
    mask ^= 1u << bit;
    if (mask == full) continue;
    if (fn(mask, cut, vol_u, total)) {
      return;
    }
  }
}

std::vector<NodeId> mask_nodes(const GraphView& view, std::uint32_t mask) {
  std::vector<NodeId> nodes = view.live_nodes(), out;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if ((mask >> i) & 1u) out.push_back(nodes[i]);
  return out;
}

}  // namespace

CapacityMap::CapacityMap(std::vector<Capacity> caps) : caps_(std::move(caps)) {
  for (Capacity c : caps_)
    if (c == 0) throw InvalidArgument("capacities must be positive");
}

CapacityMap CapacityMap::uniform(EdgeId edge_count, Capacity value) {
  return CapacityMap(std::vector<Capacity>(edge_count, value));
}

Volume CapacityMap::total() const {
  Volume t = 0;
  for (Capacity c : caps_) t += c;
  return t;
}

CutStats cut_stats(const GraphView& view, const CapacityMap& cap, std::span<const NodeId> u) {
  const DirectedGraph& g = view.graph();
  if (cap.size() != g.edge_count()) throw InvalidArgument("capacity map does not match the graph");
  std::vector<std::uint8_t> in_u(g.node_count(), 0);
  CutStats s;
  for (NodeId v : u) {
    if (v >= g.node_count() || !view.has_node(v)) throw InvalidArgument("node set contains a dead or invalid node");
    if (!in_u[v]) ++s.size;
    in_u[v] = 1;
  }
  s.live = view.live_node_count();
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!view.has_edge(e)) continue;
    const bool a = in_u[g.edge(e).src], b = in_u[g.edge(e).dst];
    (a ? s.vol_u : s.vol_rest) += cap[e];
    if (a && !b) s.cut_out += cap[e];
    if (!a && b) s.cut_in += cap[e];
  }
  return s;
}

Volume vol(const GraphView& view, const CapacityMap& cap, std::span<const NodeId> u) {
  return cut_stats(view, cap, u).vol_u;
}

Volume total_volume(const GraphView& view, const CapacityMap& cap) {
  Volume t = 0;
  for (EdgeId e = 0; e < view.graph().edge_count(); ++e)
    if (view.has_edge(e)) t += cap[e];
  return t;
}

Rational phi(const GraphView& view, const CapacityMap& cap, std::span<const NodeId> u) {
  const CutStats s = cut_stats(view, cap, u);
  if (s.empty()) return Rational(1);
  if (s.minvol() == 0) return Rational(0);
  return Rational(to_big(s.cut_out), to_big(s.minvol()));
}

LopsidedSparsity LopsidedSparsity::of(Volume cut, Volume minvol, Volume total) {
  if (minvol == 0) return LopsidedSparsity(Kind::ZeroVolume, cut, 0, total);
  return LopsidedSparsity(Kind::Regular, cut, minvol, total);
}

std::optional<Rational> LopsidedSparsity::exact() const {
  if (kind_ == Kind::EmptySet) return Rational(1);
  if (kind_ == Kind::ZeroVolume || cut_ == 0) return Rational(0);
  if (total_ == minvol_) return Rational(to_big(cut_), to_big(minvol_));
  if (total_ % minvol_ == 0 && is_pow2(total_ / minvol_))
    return Rational(to_big(cut_), to_big(minvol_) * log2_exact(total_ / minvol_));
  return std::nullopt;
}

double LopsidedSparsity::approx() const {
  if (auto e = exact()) return e->convert_to<double>();
  const long double lf = std::log2(to_long_double(total_) / to_long_double(minvol_));
  return static_cast<double>(to_long_double(cut_) / (to_long_double(minvol_) * lf));
}

bool LopsidedSparsity::at_most(const Rational& bound) const { return at_most(bound, to_ld(bound)); }

bool LopsidedSparsity::at_most(const Rational& bound, long double bound_ld) const {
  if (auto e = exact()) return *e <= bound;
  if (bound <= 0) return false;  // value is positive here
  // cut <= bound * minvol * log2(total / minvol); log2 is irrational here, so
  // the two sides are never equal and enough precision always decides.
  const long double lhs = to_long_double(cut_);
  const long double rhs =
      bound_ld * to_long_double(minvol_) * std::log2(to_long_double(total_) / to_long_double(minvol_));
  if (lhs < rhs * (1.0L - 1e-12L)) return true;
  if (lhs > rhs * (1.0L + 1e-12L)) return false;
  const Float100 ratio = Float100(to_big(total_)) / Float100(to_big(minvol_));
  const Float100 lf = log(ratio) / log(Float100(2));
  const Float100 b = Float100(numerator(bound)) / Float100(denominator(bound));
  return Float100(to_big(cut_)) <= b * Float100(to_big(minvol_)) * lf;
}

LopsidedSparsity psi(const GraphView& view, const CapacityMap& cap, std::span<const NodeId> u) {
  const CutStats s = cut_stats(view, cap, u);
  if (s.empty()) return LopsidedSparsity::empty_set();
  return LopsidedSparsity::of(s.cut_out, s.minvol(), s.total());
}

SparseCutFinder::SparseCutFinder(const GraphView& view, const CapacityMap& cap, SparseCutConfig config)
    : view_(&view),
      cap_(&cap),
      config_(config),
      out_mark_(view.graph().node_count(), 0),
      in_mark_(view.graph().node_count(), 0) {
  if (cap.size() != view.graph().edge_count()) throw InvalidArgument("capacity map does not match the graph");
}

void SparseCutFinder::add_node(Side& s, std::vector<std::uint32_t>& mark, NodeId x) {
  const DirectedGraph& g = view_->graph();
  mark[x] = epoch_;
  s.nodes.push_back(x);
  for (EdgeId e : g.out_edges(x)) {
    ++s.work;
    if (!view_->has_edge(e)) continue;
    const Capacity c = (*cap_)[e];
    if (mark[g.edge(e).dst] == epoch_) {
      s.enter -= c;
      s.internal += c;
    } else {
      s.leave += c;
    }
  }
  for (EdgeId e : g.in_edges(x)) {
    ++s.work;
    if (!view_->has_edge(e)) continue;
    const Capacity c = (*cap_)[e];
    if (mark[g.edge(e).src] == epoch_) {
      s.leave -= c;
      s.internal += c;
    } else {
      s.enter += c;
    }
  }
}

bool SparseCutFinder::grow_layer(Side& s, std::vector<std::uint32_t>& mark) {
  const DirectedGraph& g = view_->graph();
  const std::size_t end = s.nodes.size();
  for (std::size_t i = s.frontier_begin; i < end; ++i) {
    for (EdgeId e : g.edges_from(s.dir, s.nodes[i])) {
      ++s.work;
      if (!view_->has_edge(e)) continue;
      const NodeId y = g.head(s.dir, e);
      if (mark[y] != epoch_) add_node(s, mark, y);
    }
  }
  s.frontier_begin = end;
  ++s.radius;
  return s.nodes.size() > end;
}

bool SparseCutFinder::hit(const Side& s, Volume total, NodeId live, const Rational& bound,
                          long double bound_ld) const {
  if (s.nodes.size() >= live) return false;
  if (s.internal * config_.ball_den > total * config_.ball_num) return false;
  const Volume vol_ball = s.internal + s.leave;
  const Volume vol_other = total - vol_ball;
  const Volume minvol = std::min(vol_ball, vol_other);
  const Volume cut = s.dir == Direction::Out ? s.leave : s.enter;
  return LopsidedSparsity::of(cut, minvol, total).at_most(bound, bound_ld);
}

SparseCutOutcome SparseCutFinder::finish(Side& s, SparseCutCase kind, std::vector<std::uint32_t>& mark,
                                         Volume total) {
  const DirectedGraph& g = view_->graph();
  SparseCutOutcome out;
  out.kind = kind;
  out.radius = s.radius;
  out.total_volume = total;
  out.ball_capacity = s.internal;
  out.cut_capacity = s.dir == Direction::Out ? s.leave : s.enter;
  for (NodeId x : s.nodes) {
    for (EdgeId e : g.edges_from(s.dir, x)) {
      ++s.work;
      if (view_->has_edge(e) && mark[g.head(s.dir, e)] != epoch_) out.cut.push_back(e);
    }
  }
  std::sort(out.cut.begin(), out.cut.end());
  out.ball = std::move(s.nodes);
  return out;
}

SparseCutOutcome SparseCutFinder::find(NodeId v, Length d, const Rational& psi_bound) {
  return find(v, d, psi_bound, total_volume(*view_, *cap_));
}

SparseCutOutcome SparseCutFinder::find(NodeId v, Length d, const Rational& psi_bound, Volume total) {
  if (v >= view_->graph().node_count() || !view_->has_node(v))
    throw InvalidArgument("sparse cut search from a dead node");
  if (d < 1) throw InvalidArgument("sparse cut search needs D >= 1");
  if (++epoch_ == 0) {
    std::fill(out_mark_.begin(), out_mark_.end(), 0);
    std::fill(in_mark_.begin(), in_mark_.end(), 0);
    epoch_ = 1;
  }
  const long double bound_ld = to_ld(psi_bound);
  const NodeId live = view_->live_node_count();
  Side out{Direction::Out, {}, 0, 0, 0, 0, 0, 0, false};
  Side in{Direction::In, {}, 0, 0, 0, 0, 0, 0, false};
  add_node(out, out_mark_, v);
  add_node(in, in_mark_, v);
  auto done = [&](SparseCutOutcome o) {
    o.work = out.work + in.work;
    return o;
  };
  if (hit(out, total, live, psi_bound, bound_ld)) return done(finish(out, SparseCutCase::OutCut, out_mark_, total));
  if (hit(in, total, live, psi_bound, bound_ld)) return done(finish(in, SparseCutCase::InCut, in_mark_, total));
  for (;;) {
    const bool out_active = !out.closed && out.radius < d;
    const bool in_active = !in.closed && in.radius < d;
    if (!out_active && !in_active) break;
    const bool pick_out = out_active && (!in_active || out.work <= in.work);
    Side& s = pick_out ? out : in;
    auto& mark = pick_out ? out_mark_ : in_mark_;
    if (!grow_layer(s, mark)) {
      s.closed = true;
      continue;
    }
    if (hit(s, total, live, psi_bound, bound_ld))
      return done(finish(s, pick_out ? SparseCutCase::OutCut : SparseCutCase::InCut, mark, total));
  }
  // Both balls reached radius d: measure the capacity inside their intersection.
  const DirectedGraph& g = view_->graph();
  Volume core = 0;
  for (NodeId x : out.nodes) {
    if (in_mark_[x] != epoch_) continue;
    for (EdgeId e : g.out_edges(x)) {
      ++out.work;
      if (!view_->has_edge(e)) continue;
      const NodeId y = g.edge(e).dst;
      if (out_mark_[y] == epoch_ && in_mark_[y] == epoch_) core += (*cap_)[e];
    }
  }
  SparseCutOutcome o;
  o.kind = core * config_.core_den >= total * config_.core_num ? SparseCutCase::Core : SparseCutCase::Inconclusive;
  o.radius = d;
  o.core_capacity = core;
  o.total_volume = total;
  return done(std::move(o));
}

SparseCutOutcome find_sparse_cut(const GraphView& view, const CapacityMap& cap, NodeId v, Length d,
                                 const Rational& psi_bound, SparseCutConfig config) {
  SparseCutFinder finder(view, cap, config);
  return finder.find(v, d, psi_bound);
}

ExpanderCertificate certify_lopsided_expander(const GraphView& view, const CapacityMap& cap,
                                              const Rational& psi_bound) {
  ExpanderCertificate cert;
  const long double bound_ld = to_ld(psi_bound);
  std::uint32_t witness = 0;
  for_each_proper_cut(view, cap, [&](std::uint32_t mask, Volume cut, Volume vol_u, Volume total) {
    const Volume minvol = std::min(vol_u, total - vol_u);
    if (!LopsidedSparsity::of(cut, minvol, total).at_most(psi_bound, bound_ld)) return false;
    witness = mask;
    return true;
  });
  if (witness != 0) {
    cert.expander = false;
    cert.witness = mask_nodes(view, witness);
  }
  return cert;
}

std::optional<double> min_lopsided_sparsity(const GraphView& view, const CapacityMap& cap) {
  std::optional<double> best;
  for_each_proper_cut(view, cap, [&](std::uint32_t, Volume cut, Volume vol_u, Volume total) {
    const double v = LopsidedSparsity::of(cut, std::min(vol_u, total - vol_u), total).approx();
    if (!best || v < *best) best = v;
    return false;
  });
  return best;
}

std::optional<Rational> certified_expansion_bound(const GraphView& view, const CapacityMap& cap) {
  const auto lo = min_lopsided_sparsity(view, cap);
  if (!lo || !(*lo > 0)) return std::nullopt;
  double scaled = std::floor(*lo * (1.0 - 1e-9) * 4294967296.0);
  for (int attempt = 0; attempt < 8 && scaled >= 1.0; ++attempt, scaled = std::floor(scaled / 2)) {
    const Rational b(BigInt(static_cast<std::uint64_t>(scaled)), BigInt(4294967296ULL));
    if (certify_lopsided_expander(view, cap, b).expander) return b;
  }
  return std::nullopt;
}

ProbeResult expansion_probe(const GraphView& view, const CapacityMap& cap, NodeId v, const Rational& psi_bound,
                            const Rational& alpha) {
  if (psi_bound < 0) throw InvalidArgument("expansion_probe: psi bound must be nonnegative");
  if (alpha <= 0 || alpha >= 1) throw InvalidArgument("expansion_probe: alpha must lie in (0, 1)");
  if (!view.has_node(v)) throw InvalidArgument("expansion_probe: dead start node");
  const DirectedGraph& g = view.graph();
  const Volume total = total_volume(view, cap);
  const NodeId live = view.live_node_count();
  const BigInt a_num = numerator(alpha), a_den = denominator(alpha);
  std::vector<std::uint8_t> in_ball(g.node_count(), 0);
  std::vector<NodeId> ball;
  Volume internal = 0, leave = 0;
  auto add = [&](NodeId x) {
    in_ball[x] = 1;
    ball.push_back(x);
    for (EdgeId e : g.out_edges(x)) {
      if (!view.has_edge(e)) continue;
      if (in_ball[g.edge(e).dst]) internal += cap[e];
      else leave += cap[e];
    }
    for (EdgeId e : g.in_edges(x)) {
      if (!view.has_edge(e) || !in_ball[g.edge(e).src]) continue;
      leave -= cap[e];
      internal += cap[e];
    }
  };
  add(v);
  std::size_t frontier = 0;
  for (Length r = 0;; ++r) {
    const Volume vb = internal + leave;
    if (to_big(vb) * a_den >= (a_den - a_num) * to_big(total)) return {ProbeOutcome::HalfVolume, r};
    if (ball.size() < live && LopsidedSparsity::of(leave, std::min(vb, total - vb), total).at_most(psi_bound))
      return {ProbeOutcome::SparseCut, r};
    const std::size_t end = ball.size();
    for (std::size_t i = frontier; i < end; ++i)
      for (EdgeId e : g.out_edges(ball[i]))
        if (view.has_edge(e) && !in_ball[g.edge(e).dst]) add(g.edge(e).dst);
    frontier = end;
    if (ball.size() == end) throw InvalidArgument("expansion_probe: ball stalled");  // unreachable for psi >= 0
  }
}

}  // namespace ldd
