#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ldd/det.hpp"
#include "ldd/fast.hpp"
#include "ldd/graph.hpp"
#include "ldd/sparsity.hpp"

namespace ldd {

// u and v share an SCC of g \ S but d_g(u, v) > D (kUnreachable if no path).
struct Violation {
  NodeId u = 0, v = 0;
  Length distance = 0;
};

struct ValidityReport {
  bool valid = true;
  std::optional<Violation> violation;
  NodeId components = 0;
};

// Exact check that every SCC of g \ S has weak diameter <= D.
ValidityReport verify_weak_diameter(const DirectedGraph& g, const CutSet& s, Length d);

enum class Algo { Det, Fast };

struct MonteCarloConfig {
  std::uint64_t samples = 1000;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0: LDD_THREADS or hardware concurrency
  bool verify = true;
  DetConfig det;
  FastConfig fast;
};

struct VerificationReport {
  bool valid = true;
  std::optional<Violation> violation;
  std::uint64_t invalid_samples = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  Length d = 0;
  std::vector<std::uint64_t> counts;  // per edge
  double measured_loss = 0;           // max freq(e) * D / len(e)
  double measured_loss_upper = 0;     // same with the upper Wilson bound

  double freq(EdgeId e) const { return samples ? static_cast<double>(counts[e]) / static_cast<double>(samples) : 0.0; }
};

VerificationReport estimate_cut_probabilities(const DirectedGraph& g, Length d, Algo algo,
                                              const MonteCarloConfig& config);

// Same aggregation for a fixed set of sampled cuts.
VerificationReport summarize_samples(const DirectedGraph& g, Length d, const std::vector<CutSet>& cuts,
                                     bool verify = true);

// Number of support sets containing each edge.
std::vector<std::uint64_t> support_frequencies(const LddSupport& support, EdgeId edge_count);

inline constexpr double kWilsonZ95 = 1.959963984540054;

// Wilson score interval for k successes out of n trials.
std::pair<double, double> wilson_interval(std::uint64_t k, std::uint64_t n, double z = kWilsonZ95);

// CSV with header edge_id,freq,upper_ci,len,normalized_loss.
std::string loss_csv(const DirectedGraph& g, const VerificationReport& report);

struct DiameterProbe {
  Length diameter = 0;
  double bound_term = 0;  // psi^-1 * log2 log2 vol + log2 vol
  double ratio = 0;       // diameter / bound_term
};

// Requires g to be a certified psi-lopsided expander (n <= 20); exact
// all-pairs diameter against the lopsided-expander diameter term.
DiameterProbe expander_diameter_probe(const DirectedGraph& g, const CapacityMap& cap, const Rational& psi_bound);

// Worker count from LDD_THREADS, else hardware concurrency (at least 1).
unsigned default_threads();

}  // namespace ldd
