#pragma once

#include <vector>

#include "ldd/graph.hpp"

namespace ldd {

// component[v] is the SCC index of live node v (kNoNode for masked nodes).
// Indices follow a topological order of the condensation: every live edge
// goes from a lower or equal index to a higher or equal one.
struct SccPartition {
  std::vector<NodeId> component;
  NodeId count = 0;

  // Members of every component, each sorted by node id.
  std::vector<std::vector<NodeId>> groups() const;
};

SccPartition strongly_connected_components(const GraphView& view);

}  // namespace ldd
