#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ldd/generate.hpp"
#include "ldd/verify.hpp"

namespace ldd {

// Flat "key = value" text; '#' starts a comment. Lists are comma separated.
//   seed, families, d, algos, samples, subdivision_budget, c_psi
struct ExperimentConfig {
  std::uint64_t seed = 0;
  std::vector<Family> families;
  std::vector<Length> d;
  std::vector<Algo> algos;
  std::uint64_t samples = 1000;
  std::uint64_t subdivision_budget = 20'000'000;
  double c_psi = 4.0;
};

ExperimentConfig parse_experiment_config(const std::string& text);

struct ExperimentRow {
  std::string family;
  NodeId n = 0;
  EdgeId m = 0;
  Length d = 0;
  Algo algo = Algo::Fast;
  std::uint64_t samples = 0;
  std::string status;  // "ok", "invalid", "skipped: budget"
  std::uint64_t invalid_samples = 0;
  double measured_loss = 0;
  double measured_loss_upper = 0;
  double k_normalized = 0;  // measured_loss_upper / (log2 m * log2 log2 m)
};

struct ExperimentReport {
  std::vector<ExperimentRow> rows;
  bool any_invalid = false;

  std::string csv() const;
};

// Cells (family x d x algo) run on a worker pool; each cell has its own seed
// sub-stream, so the report does not depend on the thread count.
ExperimentReport run_experiment(const ExperimentConfig& config, unsigned threads = 0);

double loss_normalizer(EdgeId m);

}  // namespace ldd
