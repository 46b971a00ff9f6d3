#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ldd/graph.hpp"

namespace ldd {

// Positive per-edge capacities, indexed by edge id of the base graph.
class CapacityMap {
 public:
  CapacityMap() = default;
  explicit CapacityMap(std::vector<Capacity> caps);
  static CapacityMap uniform(EdgeId edge_count, Capacity value = 1);

  Capacity operator[](EdgeId e) const { return caps_[e]; }
  Capacity& at(EdgeId e) { return caps_[e]; }
  std::size_t size() const { return caps_.size(); }
  std::span<const Capacity> values() const { return caps_; }

  Volume total() const;

 private:
  std::vector<Capacity> caps_;
};

// Volumes of a node set U inside the live part of a view.
struct CutStats {
  Volume vol_u = 0;     // c(U, V)
  Volume vol_rest = 0;  // c(V \ U, V)
  Volume cut_out = 0;   // c(U, V \ U)
  Volume cut_in = 0;    // c(V \ U, U)
  NodeId size = 0;
  NodeId live = 0;

  Volume total() const { return vol_u + vol_rest; }
  Volume minvol() const { return vol_u < vol_rest ? vol_u : vol_rest; }
  bool empty() const { return size == 0; }
  bool proper() const { return size > 0 && size < live; }
};

CutStats cut_stats(const GraphView& view, const CapacityMap& cap, std::span<const NodeId> u);

Volume vol(const GraphView& view, const CapacityMap& cap, std::span<const NodeId> u);
Volume total_volume(const GraphView& view, const CapacityMap& cap);

// c(U, V\U) / minvol(U); 1 for the empty set, 0 when minvol is 0.
Rational phi(const GraphView& view, const CapacityMap& cap, std::span<const NodeId> u);

// c(U, V\U) / (minvol(U) * log2(vol(V) / minvol(U))). The log factor makes the
// value irrational in general, so it is kept symbolic and compared exactly.
class LopsidedSparsity {
 public:
  enum class Kind { EmptySet, ZeroVolume, Regular };

  static LopsidedSparsity empty_set() { return LopsidedSparsity(Kind::EmptySet, 0, 0, 0); }
  static LopsidedSparsity of(Volume cut, Volume minvol, Volume total);

  Kind kind() const { return kind_; }
  Volume cut() const { return cut_; }
  Volume minvol() const { return minvol_; }
  Volume total() const { return total_; }

  bool at_most(const Rational& bound) const;
  // Same decision; bound_approx must be bound converted to long double.
  bool at_most(const Rational& bound, long double bound_approx) const;
  double approx() const;
  // Exact value when the log factor is an integer (or the value is special).
  std::optional<Rational> exact() const;

 private:
  LopsidedSparsity(Kind k, Volume cut, Volume minvol, Volume total)
      : kind_(k), cut_(cut), minvol_(minvol), total_(total) {}

  Kind kind_;
  Volume cut_, minvol_, total_;
};

LopsidedSparsity psi(const GraphView& view, const CapacityMap& cap, std::span<const NodeId> u);

// Ball capacity limit and core threshold of the three-case search.
struct SparseCutConfig {
  std::uint64_t ball_num = 19, ball_den = 20;  // 0.95
  std::uint64_t core_num = 9, core_den = 10;   // 0.9
};

enum class SparseCutCase { OutCut, InCut, Core, Inconclusive };

struct SparseCutOutcome {
  SparseCutCase kind = SparseCutCase::Inconclusive;
  Length radius = 0;
  // OutCut: the out-ball U. InCut: the in-ball (the sparse side is its complement).
  std::vector<NodeId> ball;
  // OutCut: edges leaving the ball. InCut: edges entering it.
  std::vector<EdgeId> cut;
  Volume ball_capacity = 0;  // capacity of edges inside the ball
  Volume cut_capacity = 0;
  Volume core_capacity = 0;  // c(B+(v,D) & B-(v,D)) for Core / Inconclusive
  Volume total_volume = 0;
  std::uint64_t work = 0;    // adjacency entries scanned
};

// Interleaved out/in BFS from v on a unit-length view. Stops at the first
// radius where the out-ball (case OutCut) or the complement of the in-ball
// (case InCut) is a proper cut of lopsided sparsity <= psi_bound whose ball
// holds at most 0.95 vol(V). Otherwise checks the 0.9 core condition.
class SparseCutFinder {
 public:
  SparseCutFinder(const GraphView& view, const CapacityMap& cap, SparseCutConfig config = {});

  // total is vol(V) of the live view; callers that track it pass it in.
  SparseCutOutcome find(NodeId v, Length d, const Rational& psi_bound, Volume total);
  SparseCutOutcome find(NodeId v, Length d, const Rational& psi_bound);

 private:
  struct Side {
    Direction dir;
    std::vector<NodeId> nodes;
    std::size_t frontier_begin = 0;
    Length radius = 0;
    Volume internal = 0, leave = 0, enter = 0;
    std::uint64_t work = 0;
    bool closed = false;
  };

  void add_node(Side& s, std::vector<std::uint32_t>& mark, NodeId x);
  bool grow_layer(Side& s, std::vector<std::uint32_t>& mark);
  bool hit(const Side& s, Volume total, NodeId live, const Rational& bound, long double bound_ld) const;
  SparseCutOutcome finish(Side& s, SparseCutCase kind, std::vector<std::uint32_t>& mark, Volume total);

  const GraphView* view_;
  const CapacityMap* cap_;
  SparseCutConfig config_;
  std::vector<std::uint32_t> out_mark_, in_mark_;
  std::uint32_t epoch_ = 0;
};

SparseCutOutcome find_sparse_cut(const GraphView& view, const CapacityMap& cap, NodeId v, Length d,
                                 const Rational& psi_bound, SparseCutConfig config = {});

// Exhaustive check over all proper cuts (live node count <= 20).
struct ExpanderCertificate {
  bool expander = true;
  std::vector<NodeId> witness;  // a cut with psi <= bound when not an expander
};
ExpanderCertificate certify_lopsided_expander(const GraphView& view, const CapacityMap& cap,
                                              const Rational& psi_bound);

// Smallest psi over all proper cuts (approximate), or nullopt when there is no
// proper cut. Same size limit as certification.
std::optional<double> min_lopsided_sparsity(const GraphView& view, const CapacityMap& cap);

// Largest dyadic rational (denominator 2^32) strictly below the minimum psi,
// re-certified exactly. nullopt when none exists (minimum is 0, or n = 1).
std::optional<Rational> certified_expansion_bound(const GraphView& view, const CapacityMap& cap);

enum class ProbeOutcome { HalfVolume, SparseCut };
struct ProbeResult {
  ProbeOutcome outcome = ProbeOutcome::HalfVolume;
  Length radius = 0;
};

// Grows the out-ball of v one BFS layer at a time until it holds at least
// (1 - alpha) vol(V), or until a proper ball of psi <= psi_bound shows up.
ProbeResult expansion_probe(const GraphView& view, const CapacityMap& cap, NodeId v, const Rational& psi_bound,
                            const Rational& alpha);

}  // namespace ldd
