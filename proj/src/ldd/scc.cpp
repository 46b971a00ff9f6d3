#include "ldd/scc.hpp"

#include <algorithm>

namespace ldd {

std::vector<std::vector<NodeId>> SccPartition::groups() const {
  std::vector<std::vector<NodeId>> out(count);
  for (NodeId v = 0; v < component.size(); ++v)
    if (component[v] != kNoNode) out[component[v]].push_back(v);
  return out;
}

// Iterative Tarjan; an explicit frame stack keeps long paths off the call stack.
SccPartition strongly_connected_components(const GraphView& view) {
  const DirectedGraph& g = view.graph();
  const NodeId n = g.node_count();
  constexpr NodeId kUnvisited = kNoNode;

  std::vector<NodeId> index(n, kUnvisited), low(n, 0);
  std::vector<std::uint8_t> on_stack(n, 0);
  std::vector<NodeId> stack;
  struct Frame {
    NodeId node;
    std::uint32_t next_edge;
  };
  std::vector<Frame> frames;
  std::vector<NodeId> found(n, kNoNode);  // reverse-topological ids
  NodeId next_index = 0, found_count = 0;

  for (NodeId root = 0; root < n; ++root) {
    if (!view.has_node(root) || index[root] != kUnvisited) continue;
    frames.push_back({root, 0});
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;

    while (!frames.empty()) {
      Frame& f = frames.back();
      const auto out = g.out_edges(f.node);
      if (f.next_edge < out.size()) {
        const EdgeId e = out[f.next_edge++];
        if (!view.has_edge(e)) continue;
        const NodeId w = g.edge(e).dst;
        if (index[w] == kUnvisited) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.node] = std::min(low[f.node], index[w]);
        }
        continue;
      }
      const NodeId v = f.node;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().node] = std::min(low[frames.back().node], low[v]);
      if (low[v] == index[v]) {
        NodeId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          found[w] = found_count;
        } while (w != v);
        ++found_count;
      }
    }
  }

  SccPartition result;
  result.count = found_count;
  result.component.assign(n, kNoNode);
  for (NodeId v = 0; v < n; ++v)
    if (found[v] != kNoNode) result.component[v] = found_count - 1 - found[v];
  return result;
}

}  // namespace ldd
