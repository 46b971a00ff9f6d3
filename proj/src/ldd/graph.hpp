#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ldd/types.hpp"

namespace ldd {

struct Edge {
  NodeId src;
  NodeId dst;
  Length len;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Immutable weighted digraph. Edge ids are positions in edges() and never
// change; adjacency lists are CSR arrays sorted by edge id.
class DirectedGraph {
 public:
  DirectedGraph(NodeId node_count, std::vector<Edge> edges);

  NodeId node_count() const { return node_count_; }
  EdgeId edge_count() const { return static_cast<EdgeId>(edges_.size()); }

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Edge> edges() const { return edges_; }

  std::span<const EdgeId> out_edges(NodeId v) const {
    return {out_ids_.data() + out_offsets_[v], out_ids_.data() + out_offsets_[v + 1]};
  }
  std::span<const EdgeId> in_edges(NodeId v) const {
    return {in_ids_.data() + in_offsets_[v], in_ids_.data() + in_offsets_[v + 1]};
  }

  // Edges leaving v when walking in direction d (out-edges for Out).
  std::span<const EdgeId> edges_from(Direction d, NodeId v) const {
    return d == Direction::Out ? out_edges(v) : in_edges(v);
  }
  // Endpoint reached by walking edge e in direction d.
  NodeId head(Direction d, EdgeId e) const {
    return d == Direction::Out ? edges_[e].dst : edges_[e].src;
  }
  NodeId tail(Direction d, EdgeId e) const {
    return d == Direction::Out ? edges_[e].src : edges_[e].dst;
  }

  bool unit_lengths() const;
  Length max_length() const;

  friend bool operator==(const DirectedGraph& a, const DirectedGraph& b) {
    return a.node_count_ == b.node_count_ && a.edges_ == b.edges_;
  }

 private:
  NodeId node_count_;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> out_offsets_, in_offsets_;
  std::vector<EdgeId> out_ids_, in_ids_;
};

// Sorted, duplicate-free set of edge ids of one graph.
class CutSet {
 public:
  CutSet() = default;
  // Sorts and deduplicates; every id must be < edge_count.
  CutSet(std::vector<EdgeId> ids, EdgeId edge_count);

  static CutSet all(EdgeId edge_count);

  std::span<const EdgeId> ids() const { return ids_; }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  bool contains(EdgeId e) const;

  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }

  friend bool operator==(const CutSet&, const CutSet&) = default;

 private:
  std::vector<EdgeId> ids_;
};

// A graph with some nodes and edges masked out. The base graph is never
// modified and ids are those of the base graph. An edge is live when it is
// not removed and both endpoints are live.
class GraphView {
 public:
  GraphView(const DirectedGraph& g);  // NOLINT: implicit full view

  const DirectedGraph& graph() const { return *graph_; }

  bool has_node(NodeId v) const { return node_alive_[v] != 0; }
  bool has_edge(EdgeId e) const {
    const Edge& ed = graph_->edge(e);
    return edge_alive_[e] != 0 && node_alive_[ed.src] != 0 && node_alive_[ed.dst] != 0;
  }

  NodeId live_node_count() const { return live_nodes_; }
  std::uint64_t live_edge_count() const;
  std::vector<NodeId> live_nodes() const;

  void erase_node(NodeId v);
  void erase_edge(EdgeId e);

 private:
  const DirectedGraph* graph_;
  std::vector<std::uint8_t> node_alive_;
  std::vector<std::uint8_t> edge_alive_;
  NodeId live_nodes_;
};

GraphView remove(const GraphView& view, const CutSet& cut);
GraphView remove_nodes(const GraphView& view, std::span<const NodeId> nodes);

// Every edge (u, v, len) becomes (v, u, len) with the same id.
DirectedGraph reverse(const DirectedGraph& g);

// Node-induced subgraph on the live part of a view, with fresh dense ids.
// New node i is nodes[i]; edges are numbered by (new source, old edge id).
struct Subgraph {
  DirectedGraph graph;
  std::vector<NodeId> node_origin;
  std::vector<EdgeId> edge_origin;
};
Subgraph induced_subgraph(const GraphView& view, std::span<const NodeId> nodes);

// Unit-length expansion: edges longer than max_length are dropped and
// reported in force_cut; an edge of length l becomes a path of l unit edges
// through l - 1 fresh nodes. edge_origin maps each path edge back.
struct Subdivision {
  DirectedGraph graph;
  std::vector<EdgeId> edge_origin;
  std::vector<EdgeId> force_cut;
};
// Throws BudgetExceeded when n + sum of kept lengths exceeds size_budget.
Subdivision subdivide(const DirectedGraph& g, Length max_length, std::uint64_t size_budget);

// n + sum of lengths of the edges that subdivide() would keep.
std::uint64_t subdivided_size(const DirectedGraph& g, Length max_length);

}  // namespace ldd
