#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "ldd/graph.hpp"

namespace ldd {

struct CyclesSpec {
  std::uint32_t k = 1, len = 3;
};
struct BidirectedRandomSpec {
  std::uint32_t n = 2;
  double p = 0.5;
};
struct DagRandomSpec {
  std::uint32_t n = 2;
  double p = 0.5;
};
struct GridTorusSpec {
  std::uint32_t w = 3, h = 3;
};
struct WeightedRandomSpec {
  std::uint32_t n = 2, m = 1;
  Length max_len = 1;
};

using Family = std::variant<CyclesSpec, BidirectedRandomSpec, DagRandomSpec, GridTorusSpec, WeightedRandomSpec>;

struct GenSpec {
  Family family;
  std::uint64_t seed = 0;
};

// Pure function of (family, seed).
DirectedGraph generate(const GenSpec& spec);

// "cycles:50:34", "bidirected_random:64:0.1", "dag_random:30:0.2",
// "grid_torus:8:8", "weighted_random:300:2000:10".
Family parse_family(const std::string& text);
std::string family_name(const Family& f);

}  // namespace ldd
