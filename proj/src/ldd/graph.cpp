#include "ldd/graph.hpp"

#include <algorithm>
#include <string>

namespace ldd {

std::string to_string(Volume v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

namespace {

void build_csr(NodeId n, std::span<const Edge> edges, bool by_src, std::vector<std::uint32_t>& offsets,
               std::vector<EdgeId>& ids) {
  offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const Edge& e : edges) ++offsets[(by_src ? e.src : e.dst) + 1];
  for (NodeId v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
  ids.resize(edges.size());
  std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
  for (EdgeId i = 0; i < edges.size(); ++i) {
    const NodeId key = by_src ? edges[i].src : edges[i].dst;
    ids[cursor[key]++] = i;
  }
}

}  // namespace

DirectedGraph::DirectedGraph(NodeId node_count, std::vector<Edge> edges)
    : node_count_(node_count), edges_(std::move(edges)) {
  if (node_count_ == 0) throw InvalidArgument("graph must have at least one node");
  if (edges_.size() >= std::numeric_limits<EdgeId>::max())
    throw InvalidArgument("too many edges");
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.src >= node_count_ || e.dst >= node_count_)
      throw InvalidArgument("edge " + std::to_string(i) + " has an endpoint out of range");
    if (e.len < 1) throw InvalidArgument("edge " + std::to_string(i) + " has non-positive length");
    if (e.src == e.dst) throw InvalidArgument("edge " + std::to_string(i) + " is a self-loop");
  }
  build_csr(node_count_, edges_, true, out_offsets_, out_ids_);
  build_csr(node_count_, edges_, false, in_offsets_, in_ids_);
}

bool DirectedGraph::unit_lengths() const {
  return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.len == 1; });
}

Length DirectedGraph::max_length() const {
  Length best = 0;
  for (const Edge& e : edges_) best = std::max(best, e.len);
  return best;
}

CutSet::CutSet(std::vector<EdgeId> ids, EdgeId edge_count) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  if (!ids_.empty() && ids_.back() >= edge_count)
    throw InvalidArgument("cut edge id " + std::to_string(ids_.back()) + " out of range");
}

CutSet CutSet::all(EdgeId edge_count) {
  std::vector<EdgeId> ids(edge_count);
  for (EdgeId e = 0; e < edge_count; ++e) ids[e] = e;
  return CutSet(std::move(ids), edge_count);
}

bool CutSet::contains(EdgeId e) const { return std::binary_search(ids_.begin(), ids_.end(), e); }

GraphView::GraphView(const DirectedGraph& g)
    : graph_(&g), node_alive_(g.node_count(), 1), edge_alive_(g.edge_count(), 1), live_nodes_(g.node_count()) {}

std::uint64_t GraphView::live_edge_count() const {
  std::uint64_t count = 0;
  for (EdgeId e = 0; e < graph_->edge_count(); ++e) count += has_edge(e) ? 1 : 0;
  return count;
}

std::vector<NodeId> GraphView::live_nodes() const {
  std::vector<NodeId> out;
  out.reserve(live_nodes_);
  for (NodeId v = 0; v < graph_->node_count(); ++v)
    if (node_alive_[v]) out.push_back(v);
  return out;
}

void GraphView::erase_node(NodeId v) {
  if (v >= graph_->node_count()) throw InvalidArgument("node id out of range");
  if (node_alive_[v]) {
    node_alive_[v] = 0;
    --live_nodes_;
  }
}

void GraphView::erase_edge(EdgeId e) {
  if (e >= graph_->edge_count()) throw InvalidArgument("edge id out of range");
  edge_alive_[e] = 0;
}

GraphView remove(const GraphView& view, const CutSet& cut) {
  GraphView out = view;
  for (EdgeId e : cut) out.erase_edge(e);
  return out;
}

GraphView remove_nodes(const GraphView& view, std::span<const NodeId> nodes) {
  GraphView out = view;
  for (NodeId v : nodes) out.erase_node(v);
  return out;
}

DirectedGraph reverse(const DirectedGraph& g) {
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  for (Edge& e : edges) std::swap(e.src, e.dst);
  return DirectedGraph(g.node_count(), std::move(edges));
}

Subgraph induced_subgraph(const GraphView& view, std::span<const NodeId> nodes) {
  const DirectedGraph& g = view.graph();
  // Sparse old->new map; only touched entries are read.
  std::vector<NodeId> local(g.node_count(), kNoNode);
  for (NodeId i = 0; i < nodes.size(); ++i) {
    if (!view.has_node(nodes[i])) throw InvalidArgument("induced_subgraph: node not in view");
    local[nodes[i]] = i;
  }
  std::vector<Edge> edges;
  std::vector<EdgeId> origin;
  for (NodeId i = 0; i < nodes.size(); ++i) {
    for (EdgeId e : g.out_edges(nodes[i])) {
      if (!view.has_edge(e)) continue;
      const NodeId head = local[g.edge(e).dst];
      if (head == kNoNode) continue;
      edges.push_back({i, head, g.edge(e).len});
      origin.push_back(e);
    }
  }
  return Subgraph{DirectedGraph(static_cast<NodeId>(nodes.size()), std::move(edges)),
                  std::vector<NodeId>(nodes.begin(), nodes.end()), std::move(origin)};
}

std::uint64_t subdivided_size(const DirectedGraph& g, Length max_length) {
  std::uint64_t total = g.node_count();
  for (const Edge& e : g.edges())
    if (e.len <= max_length) total += static_cast<std::uint64_t>(e.len);
  return total;
}

Subdivision subdivide(const DirectedGraph& g, Length max_length, std::uint64_t size_budget) {
  if (max_length < 1) throw InvalidArgument("subdivide: length cap must be >= 1");
  const std::uint64_t size = subdivided_size(g, max_length);
  if (size > size_budget)
    throw BudgetExceeded("subdivided size " + std::to_string(size) + " exceeds budget " +
                         std::to_string(size_budget));
  std::vector<Edge> edges;
  std::vector<EdgeId> origin;
  std::vector<EdgeId> force_cut;
  std::uint64_t next_node = g.node_count();
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    if (e.len > max_length) {
      force_cut.push_back(id);
      continue;
    }
    NodeId prev = e.src;
    for (Length step = 1; step < e.len; ++step) {
      const auto fresh = static_cast<NodeId>(next_node++);
      edges.push_back({prev, fresh, 1});
      origin.push_back(id);
      prev = fresh;
    }
    edges.push_back({prev, e.dst, 1});
    origin.push_back(id);
  }
  if (next_node >= kNoNode) throw BudgetExceeded("subdivided graph exceeds node id range");
  return Subdivision{DirectedGraph(static_cast<NodeId>(next_node), std::move(edges)), std::move(origin),
                     std::move(force_cut)};
}

}  // namespace ldd
