#include "ldd/ball.hpp"

#include <algorithm>
#include <functional>

namespace ldd {

namespace {

using HeapEntry = std::pair<Length, NodeId>;
constexpr auto kHeapCmp = std::greater<HeapEntry>{};

// a + b <= cap without overflow; all arguments nonnegative.
bool fits(Length a, Length b, Length cap) { return b <= cap && a <= cap - b; }

}  // namespace

BallGrower::BallGrower(const GraphView& view)
    : view_(&view),
      dist_(view.graph().node_count(), 0),
      seen_(view.graph().node_count(), 0),
      done_(view.graph().node_count(), 0),
      max_len_(view.graph().max_length()) {}

namespace {
constexpr Length kBucketMaxLen = 64;
}

void BallGrower::next_epoch() {
  if (++epoch_ == 0) {
    std::fill(seen_.begin(), seen_.end(), 0);
    std::fill(done_.begin(), done_.end(), 0);
    epoch_ = 1;
  }
}

template <bool kRecord>
std::uint64_t BallGrower::run(NodeId center, Direction dir, Length radius, std::optional<std::uint64_t> budget,
                              BallResult* out, bool* exceeded) {
  const DirectedGraph& g = view_->graph();
  if (center >= g.node_count() || !view_->has_node(center))
    throw InvalidArgument("ball center is not a live node");
  if (radius < 0) throw InvalidArgument("ball radius must be nonnegative");
  if (max_len_ <= kBucketMaxLen) return run_buckets<kRecord>(center, dir, radius, budget, out, exceeded);
  next_epoch();
  *exceeded = false;
  std::uint64_t edge_size = 0;
  heap_.clear();
  heap_.push_back({0, center});
  seen_[center] = epoch_;
  dist_[center] = 0;
  while (!heap_.empty()) {
    std::pop_heap(heap_.begin(), heap_.end(), kHeapCmp);
    const auto [d, x] = heap_.back();
    heap_.pop_back();
    if (done_[x] == epoch_ || d != dist_[x]) continue;
    done_[x] = epoch_;
    if constexpr (kRecord) {
      out->nodes.push_back(x);
      out->dist.push_back(d);
    }
    for (EdgeId e : g.edges_from(dir, x)) {
      ++work_;
      if (!view_->has_edge(e)) continue;
      const Length len = g.edge(e).len;
      if (!fits(d, len, radius)) continue;
      ++edge_size;
      if (budget && edge_size > *budget) {
        *exceeded = true;
        return edge_size;
      }
      const NodeId y = g.head(dir, e);
      const Length nd = d + len;
      if (seen_[y] != epoch_ || nd < dist_[y]) {
        seen_[y] = epoch_;
        dist_[y] = nd;
        heap_.push_back({nd, y});
        std::push_heap(heap_.begin(), heap_.end(), kHeapCmp);
      }
    }
  }
  return edge_size;
}

// Dial's algorithm. Settles nodes in the same (distance, id) order as the heap.
template <bool kRecord>
std::uint64_t BallGrower::run_buckets(NodeId center, Direction dir, Length radius, std::optional<std::uint64_t> budget,
                                      BallResult* out, bool* exceeded) {
  const DirectedGraph& g = view_->graph();
  next_epoch();
  *exceeded = false;
  std::uint64_t edge_size = 0;
  const std::size_t w = static_cast<std::size_t>(std::min(radius, max_len_)) + 1;
  if (buckets_.size() < w) buckets_.resize(w);
  for (std::size_t i = 0; i < w; ++i) buckets_[i].clear();
  std::size_t pending = 1;
  buckets_[0].push_back(center);
  seen_[center] = epoch_;
  dist_[center] = 0;
  for (Length d = 0; pending > 0 && d <= radius; ++d) {
    auto& bucket = buckets_[static_cast<std::size_t>(d) % w];
    pending -= bucket.size();
    if constexpr (kRecord) std::sort(bucket.begin(), bucket.end());
    for (std::size_t i = 0; i < bucket.size(); ++i) {
      const NodeId x = bucket[i];
      if (done_[x] == epoch_ || dist_[x] != d) continue;
      done_[x] = epoch_;
      if constexpr (kRecord) {
        out->nodes.push_back(x);
        out->dist.push_back(d);
      }
      for (EdgeId e : g.edges_from(dir, x)) {
        ++work_;
        if (!view_->has_edge(e)) continue;
        const Length len = g.edge(e).len;
        if (len > radius - d) continue;
        ++edge_size;
        if (budget && edge_size > *budget) {
          *exceeded = true;
          bucket.clear();
          return edge_size;
        }
        const NodeId y = g.head(dir, e);
        const Length nd = d + len;
        if (seen_[y] != epoch_ || nd < dist_[y]) {
          seen_[y] = epoch_;
          dist_[y] = nd;
          buckets_[static_cast<std::size_t>(nd) % w].push_back(y);
          ++pending;
        }
      }
    }
    bucket.clear();
  }
  return edge_size;
}

BallResult BallGrower::grow(NodeId center, Direction dir, Length radius, std::optional<std::uint64_t> edge_budget,
                            bool with_boundary) {
  BallResult out;
  out.direction = dir;
  out.center = center;
  out.radius = radius;
  bool exceeded = false;
  out.edge_size = run<true>(center, dir, radius, edge_budget, &out, &exceeded);
  out.budget_exceeded = exceeded;
  if (exceeded || !with_boundary) return out;
  const DirectedGraph& g = view_->graph();
  for (std::size_t i = 0; i < out.nodes.size(); ++i) {
    const NodeId x = out.nodes[i];
    for (EdgeId e : g.edges_from(dir, x)) {
      ++work_;
      if (!view_->has_edge(e)) continue;
      if (done_[g.head(dir, e)] != epoch_) out.boundary.push_back(e);
      if (!fits(out.dist[i], g.edge(e).len, radius)) out.frontier.push_back(e);
    }
  }
  std::sort(out.boundary.begin(), out.boundary.end());
  std::sort(out.frontier.begin(), out.frontier.end());
  return out;
}

bool BallGrower::edge_size_exceeds(NodeId center, Direction dir, Length radius, std::uint64_t budget) {
  bool exceeded = false;
  run<false>(center, dir, radius, budget, nullptr, &exceeded);
  return exceeded;
}

BallResult grow_ball(const GraphView& view, NodeId center, Direction dir, Length radius,
                     std::optional<std::uint64_t> edge_budget) {
  BallGrower grower(view);
  return grower.grow(center, dir, radius, edge_budget);
}

std::vector<Length> distances(const GraphView& view, NodeId source, Direction dir, Length cap) {
  const DirectedGraph& g = view.graph();
  std::vector<Length> dist(g.node_count(), kUnreachable);
  if (!view.has_node(source)) throw InvalidArgument("distances: source is not a live node");
  std::vector<HeapEntry> heap{{0, source}};
  dist[source] = 0;
  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), kHeapCmp);
    const auto [d, x] = heap.back();
    heap.pop_back();
    if (d != dist[x]) continue;
    for (EdgeId e : g.edges_from(dir, x)) {
      if (!view.has_edge(e)) continue;
      const Length len = g.edge(e).len;
      if (!fits(d, len, cap)) continue;
      const NodeId y = g.head(dir, e);
      if (d + len < dist[y]) {
        dist[y] = d + len;
        heap.push_back({dist[y], y});
        std::push_heap(heap.begin(), heap.end(), kHeapCmp);
      }
    }
  }
  return dist;
}

}  // namespace ldd
