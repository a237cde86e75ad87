#include "lacolor/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace lac {

VertexSet::VertexSet(std::size_t universe) : mask_(universe, 0) {}

VertexSet::VertexSet(std::size_t universe, std::vector<Vertex> items)
    : items_(std::move(items)), mask_(universe, 0) {
  std::sort(items_.begin(), items_.end());
  items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
  for (Vertex v : items_) {
    if (v >= universe) throw GraphError("vertex " + std::to_string(v) + " outside universe");
    mask_[v] = 1;
  }
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  std::vector<Vertex> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return VertexSet(std::max(a.universe(), b.universe()), std::move(out));
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  std::vector<Vertex> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return VertexSet(a.universe(), std::move(out));
}

bool is_subset(const VertexSet& a, const VertexSet& b) {
  return std::all_of(a.begin(), a.end(), [&](Vertex v) { return b.contains(v); });
}

std::vector<std::vector<Vertex>> connected_components(std::size_t n,
                                                      std::span<const Edge> edges) {
  std::vector<Vertex> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Vertex v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (auto [u, v] : edges) {
    Vertex a = find(u), b = find(v);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::vector<Vertex>> comps;
  std::vector<std::size_t> slot(n, SIZE_MAX);
  for (Vertex v = 0; v < n; ++v) {
    Vertex r = find(v);
    if (slot[r] == SIZE_MAX) {
      slot[r] = comps.size();
      comps.emplace_back();
    }
    comps[slot[r]].push_back(v);
  }
  return comps;
}

Graph::Graph(std::size_t n, std::span<const Edge> edges, Vertex basepoint,
             std::optional<std::vector<Vertex>> boundary) {
  if (n == 0) throw GraphError("graph must have at least one vertex");
  if (basepoint >= n) throw GraphError("basepoint out of range");
  std::vector<std::vector<Vertex>> adj(n);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n)
      throw GraphError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
    if (u == v) throw GraphError("self-loop at " + std::to_string(u));
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  offsets_.assign(n + 1, 0);
  for (Vertex v = 0; v < n; ++v) {
    auto& a = adj[v];
    std::sort(a.begin(), a.end());
    if (std::adjacent_find(a.begin(), a.end()) != a.end())
      throw GraphError("duplicate edge at vertex " + std::to_string(v));
    offsets_[v + 1] = offsets_[v] + a.size();
    max_degree_ = std::max(max_degree_, a.size());
  }
  targets_.reserve(offsets_[n]);
  for (auto& a : adj) targets_.insert(targets_.end(), a.begin(), a.end());

  auto comps = connected_components(n, edges);
  if (comps.size() > 1)
    throw GraphError("graph is disconnected (" + std::to_string(comps.size()) + " components)");

  basepoint_ = basepoint;
  if (boundary) {
    explicit_boundary_ = true;
    boundary_ = std::move(*boundary);
    std::sort(boundary_.begin(), boundary_.end());
    boundary_.erase(std::unique(boundary_.begin(), boundary_.end()), boundary_.end());
    for (Vertex b : boundary_)
      if (b >= n) throw GraphError("boundary vertex out of range");
  } else {
    for (Vertex v = 0; v < n; ++v)
      if (degree(v) < max_degree_) boundary_.push_back(v);
  }
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Vertex u = 0; u < size(); ++u)
    for (Vertex v : neighbors(u))
      if (u < v) out.emplace_back(u, v);
  return out;
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices,
                                 Vertex basepoint) {
  InducedSubgraph out;
  out.from_parent.assign(g.size(), kNoVertex);
  out.to_parent.assign(vertices.begin(), vertices.end());
  for (Vertex i = 0; i < out.to_parent.size(); ++i) out.from_parent[out.to_parent[i]] = i;
  if (basepoint >= g.size() || out.from_parent[basepoint] == kNoVertex)
    throw GraphError("basepoint not in induced vertex set");
  std::vector<Edge> e;
  for (Vertex i = 0; i < out.to_parent.size(); ++i)
    for (Vertex w : g.neighbors(out.to_parent[i])) {
      Vertex j = out.from_parent[w];
      if (j != kNoVertex && i < j) e.emplace_back(i, j);
    }
  out.graph = Graph(out.to_parent.size(), e, out.from_parent[basepoint], std::vector<Vertex>{});
  return out;
}

}  // namespace lac
