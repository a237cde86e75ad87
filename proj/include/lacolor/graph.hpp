#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lac {

using Vertex = std::uint32_t;
using Dist = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

inline constexpr Dist kUnreachable = std::numeric_limits<Dist>::max();
inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sorted, duplicate-free subset of 0..universe-1 with O(1) membership.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe);
  VertexSet(std::size_t universe, std::vector<Vertex> items);

  std::size_t universe() const { return mask_.size(); }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  bool contains(Vertex v) const { return v < mask_.size() && mask_[v]; }

  const std::vector<Vertex>& items() const { return items_; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  bool operator==(const VertexSet& o) const { return items_ == o.items_; }

 private:
  std::vector<Vertex> items_;
  std::vector<char> mask_;
};

VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
bool is_subset(const VertexSet& a, const VertexSet& b);

// Immutable simple connected undirected graph in CSR form.
class Graph {
 public:
  Graph() = default;
  // Throws GraphError on self-loops, duplicate edges, out-of-range ids or
  // a disconnected result.  When `boundary` is empty the boundary defaults
  // to the vertices whose degree is below the maximum degree.
  Graph(std::size_t n, std::span<const Edge> edges, Vertex basepoint = 0,
        std::optional<std::vector<Vertex>> boundary = std::nullopt);

  std::size_t size() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return targets_.size() / 2; }
  std::span<const Vertex> neighbors(Vertex v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const { return max_degree_; }
  bool adjacent(Vertex u, Vertex v) const;
  std::vector<Edge> edges() const;

  Vertex basepoint() const { return basepoint_; }
  const std::vector<Vertex>& boundary() const { return boundary_; }
  bool explicit_boundary() const { return explicit_boundary_; }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> targets_;
  std::size_t max_degree_ = 0;
  Vertex basepoint_ = 0;
  std::vector<Vertex> boundary_;
  bool explicit_boundary_ = false;
};

struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> to_parent;    // local -> parent id
  std::vector<Vertex> from_parent;  // parent -> local id or kNoVertex
};

// Induced subgraph on `vertices`; the basepoint becomes local(basepoint).
InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices,
                                 Vertex basepoint);

std::vector<std::vector<Vertex>> connected_components(std::size_t n,
                                                      std::span<const Edge> edges);

// ---- metric toolkit -------------------------------------------------------

std::vector<Dist> bfs_distances(const Graph& g, Vertex x);
std::vector<Dist> bfs_distances(const Graph& g, std::span<const Vertex> sources);
// Vertices within distance r of x with their distances, in BFS order.
std::vector<std::pair<Vertex, Dist>> bounded_bfs(const Graph& g, Vertex x, Dist r);
Dist distance(const Graph& g, Vertex u, Vertex v);

VertexSet disk(const Graph& g, Vertex x, Dist r);
VertexSet sphere(const Graph& g, Vertex x, Dist r);
// C(x,r,s) = D(x,s) \ D(x,r)
VertexSet corona(const Graph& g, Vertex x, Dist r, Dist s);
VertexSet closed_penumbra(const Graph& g, const VertexSet& q, Dist r);

// (X_n, E_n) realized as a graph on a subset of the ambient vertex ids.
// All arguments and results use ambient ids.
class MetricView {
 public:
  MetricView() = default;
  explicit MetricView(const Graph& base);
  static MetricView from_level(std::size_t ambient_size, std::vector<Vertex> members,
                               std::span<const Edge> edges);

  std::size_t ambient_size() const { return from_ambient_.size(); }
  std::size_t size() const { return members_.size(); }
  const std::vector<Vertex>& members() const { return members_; }
  bool contains(Vertex a) const { return a < from_ambient_.size() && from_ambient_[a] != kNoVertex; }
  Vertex local(Vertex a) const { return from_ambient_[a]; }
  Vertex ambient(Vertex l) const { return members_[l]; }
  const Graph& graph() const { return graph_; }
  std::size_t max_degree() const { return graph_.max_degree(); }

  std::vector<Vertex> neighbors(Vertex a) const;
  bool adjacent(Vertex a, Vertex b) const;
  // Ambient-indexed distances; kUnreachable outside the member set.
  std::vector<Dist> distances_from(Vertex a) const;
  std::vector<Dist> distances_from(std::span<const Vertex> sources) const;
  Dist distance(Vertex a, Vertex b) const;
  std::vector<std::pair<Vertex, Dist>> ball(Vertex a, Dist r) const;
  VertexSet disk(Vertex a, Dist r) const;
  std::vector<Edge> edges() const;

 private:
  Graph graph_;
  std::vector<Vertex> members_;
  std::vector<Vertex> from_ambient_;
};

MetricView induced_level_metric(const Graph& g, const VertexSet& subset,
                                std::span<const Edge> edges);

// ---- separated nets -------------------------------------------------------

// Vertices of the metric sorted by (distance to p, index).
std::vector<Vertex> default_priority(const MetricView& m, Vertex p);

// Greedy scan in priority order; a vertex joins when it is at distance >= K
// from every vertex already chosen.  Vertices absent from `priority` are
// never chosen.
VertexSet maximal_separated_set(const MetricView& m, Dist K, std::span<const Vertex> priority);

bool is_separated(const MetricView& m, const VertexSet& a, Dist K);
// max over members of the distance to `a`; throws GraphError("empty net").
Dist relative_density_constant(const MetricView& m, const VertexSet& a);

}  // namespace lac
