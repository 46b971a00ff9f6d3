#pragma once

#include <cstdint>
#include <vector>

#include "ldd/graph.hpp"
#include "ldd/rng.hpp"

namespace ldd {

struct FastParams {
  std::uint32_t levels = 1;      // L
  double delta = 1;
  std::vector<Rational> radius;  // r_0 .. r_L
  std::vector<std::uint64_t> size;  // s_0 .. s_L

  // Geometric rate used at level l (1 <= l <= L), clamped to 1.
  double rate(std::uint32_t level) const;
};

FastParams fast_params(std::uint64_t m, Length d);

enum class EstimatorMode { Exact, Sketch, Auto };

struct EstimatorConfig {
  EstimatorMode mode = EstimatorMode::Auto;
  double epsilon = 1.0 / 8;
  // Exact mode is used outright when n * m is at most this.
  std::uint64_t exact_threshold = 4'000'000;
};

struct BallSizeEstimates {
  std::vector<double> b;  // indexed by node id; 0 for dead nodes
  double epsilon = 0;
  EstimatorMode mode = EstimatorMode::Exact;
};

// Number of sketch rounds: max(2, ceil(48 eps^-2 ln n)).
std::uint64_t sketch_rounds(NodeId n, double epsilon);

// Edge-ball sizes |B(v, radius)| in direction dir for every live node.
// Exact mode runs one truncated Dijkstra per node; sketch mode uses
// exponential edge ranks and the min-rank estimator (k - 1) / sum(mu_i).
BallSizeEstimates estimate_ball_sizes(const GraphView& view, Length radius, Direction dir, double epsilon, Rng& rng,
                                      EstimatorMode mode = EstimatorMode::Sketch);

struct CutLightParams {
  double delta = 0.5;
  Rational r_lo, r_hi;
  std::uint64_t s_lo = 2, s_hi = 1;
  Direction dir = Direction::Out;
  std::uint64_t m_ref = 0;  // 0: live edge count of the input view
  EstimatorConfig estimator;
};

struct Carve {
  NodeId center;
  Length radius;
  std::size_t cut_begin, cut_end;  // range in CutLightResult::cut
};

struct CutLightResult {
  bool fail = false;
  std::vector<EdgeId> cut;        // in carve order
  std::vector<NodeId> remaining;  // R, sorted
  std::vector<Carve> carves;
  std::uint64_t ball_tests = 0;
  bool used_sketch = false;
};

// Repeatedly carves geometric-radius balls around sampled light nodes. In
// direction In everything runs on the reversed graph (in-balls, entering edges).
CutLightResult cut_light(const GraphView& view, const CutLightParams& params, Rng& rng);

enum class CutReason { LongEdge, Boundary };

struct AuditEntry {
  EdgeId edge;
  CutReason reason;
  NodeId center;  // kNoNode for long edges
  Length radius;
  Direction dir;
};

struct FastConfig {
  EstimatorConfig estimator;
  std::uint32_t max_restarts = 10000;
  bool audit = false;
};

struct FastResult {
  CutSet cut;
  std::uint64_t restarts = 0;
  std::uint32_t max_depth = 0;
  std::uint64_t cut_light_calls = 0;
  std::vector<AuditEntry> audit;
};

FastResult ldd_fast(const DirectedGraph& g, Length d, Rng& rng, const FastConfig& config = {});

// Both edge-balls of v at the given radius hold more than m / 2 edges.
bool is_heavy(const DirectedGraph& g, NodeId v, Length radius);

}  // namespace ldd
