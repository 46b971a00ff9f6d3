#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ldd/graph.hpp"

namespace ldd {

// Truncated Dijkstra ball. For Direction::Out, nodes are {x : d(center, x) <= radius}
// and edge_size counts edges (x, y) with d(center, x) + len(x, y) <= radius.
// Direction::In mirrors everything on in-edges. boundary holds the live edges
// leaving the ball (out) or entering it (in); frontier holds every live edge
// scanned from a ball node that does not fit in the radius (a superset).
struct BallResult {
  Direction direction = Direction::Out;
  NodeId center = 0;
  Length radius = 0;
  std::vector<NodeId> nodes;  // settle order: (distance, node id)
  std::vector<Length> dist;   // parallel to nodes
  std::uint64_t edge_size = 0;
  std::vector<EdgeId> boundary;
  std::vector<EdgeId> frontier;
  // Growth stopped because edge_size went past the budget; nodes/edge_size
  // are partial and boundary is empty.
  bool budget_exceeded = false;
};

// Reusable scratch for repeated ball growth on one (possibly shrinking) view.
// Work per call is proportional to the edges scanned.
class BallGrower {
 public:
  explicit BallGrower(const GraphView& view);
  BallGrower(GraphView&&) = delete;  // keeps a pointer to the view

  BallResult grow(NodeId center, Direction dir, Length radius,
                  std::optional<std::uint64_t> edge_budget = std::nullopt, bool with_boundary = true);

  // True when edge_size of the ball exceeds `budget`; stops as soon as it does.
  bool edge_size_exceeds(NodeId center, Direction dir, Length radius, std::uint64_t budget);

  // Membership / distance in the most recent ball (complete or partial).
  bool in_last_ball(NodeId v) const { return done_[v] == epoch_; }
  Length last_distance(NodeId v) const { return done_[v] == epoch_ ? dist_[v] : kUnreachable; }

  // Cumulative number of adjacency entries inspected.
  std::uint64_t work() const { return work_; }

 private:
  template <bool kRecord>
  std::uint64_t run_buckets(NodeId center, Direction dir, Length radius, std::optional<std::uint64_t> budget,
                            BallResult* out, bool* exceeded);
  template <bool kRecord>
  std::uint64_t run(NodeId center, Direction dir, Length radius, std::optional<std::uint64_t> budget,
                    BallResult* out, bool* exceeded);
  void next_epoch();

  const GraphView* view_;
  std::vector<Length> dist_;
  std::vector<std::uint32_t> seen_, done_;
  std::uint32_t epoch_ = 0;
  std::vector<std::pair<Length, NodeId>> heap_;
  // circular bucket queue, used when lengths are small
  Length max_len_ = 0;
  std::vector<std::vector<NodeId>> buckets_;
  std::uint64_t work_ = 0;
};

BallResult grow_ball(const GraphView& view, NodeId center, Direction dir, Length radius,
                     std::optional<std::uint64_t> edge_budget = std::nullopt);

// Single-source distances in direction dir; kUnreachable when farther than cap.
std::vector<Length> distances(const GraphView& view, NodeId source, Direction dir,
                              Length cap = kUnreachable);

}  // namespace ldd
