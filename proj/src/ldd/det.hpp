#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ldd/graph.hpp"
#include "ldd/sparsity.hpp"

namespace ldd {

// Passed to the observer for every ball cut executed by the cost minimizer.
// view/cost describe the (sub)graph the cut was taken in, ids local to it.
struct CutEvent {
  const GraphView& view;
  const CapacityMap& cost;
  const SparseCutOutcome& outcome;
  const Rational& psi;
  std::uint32_t depth;
};

struct DetConfig {
  Rational c_psi = 4;
  double gamma = 1.0;
  std::uint64_t subdivision_budget = 20'000'000;
  SparseCutConfig sparse;
  std::function<void(const CutEvent&)> observer;
};

struct DetParams {
  Length d = 0;
  Length d_prime = 0;     // floor(d / 4)
  std::uint64_t m_sub = 0;  // edges of the unit-length graph
  Rational psi;
  double loss = 0;        // L
  std::uint64_t rounds = 1;
  Capacity cost_cap = 1;
  bool trivial = false;
};

DetParams det_params(NodeId n, std::uint64_t m_sub, Length d, const DetConfig& config = {});

struct CostMinimizerStats {
  std::uint64_t psi_doublings = 0;
  std::uint64_t invocations = 0;
  std::uint64_t sparse_cut_calls = 0;
  std::uint64_t phase2_entries = 0;
  std::uint32_t max_depth = 0;
};

// Two-phase truncated lopsided expander decomposition on a unit-length graph.
// Every surviving SCC has weak diameter <= 4 * d_prime.
CutSet cost_minimizer(const DirectedGraph& g_unit, const CapacityMap& cost, const Rational& psi, Length d_prime,
                      const DetConfig& config = {}, CostMinimizerStats* stats = nullptr);

struct MwuRound {
  Volume total_cost = 0;  // before the round
  Volume cut_cost = 0;
  double budget = 0;      // c(E) * psi * log2 c(E)
};

// Uniform distribution over cuts of the original graph.
struct LddSupport {
  std::vector<CutSet> cuts;
  std::vector<EdgeId> force_cut;
  DetParams params;
  std::vector<MwuRound> history;
  Volume final_total_cost = 0;
  CostMinimizerStats stats;

  std::size_t rounds() const { return cuts.size(); }
};

LddSupport mwu_ldd(const DirectedGraph& g, Length d, const DetConfig& config = {});

}  // namespace ldd
