#include "lacolor/graph.hpp"

#include <algorithm>
#include <string>

namespace lac {

std::vector<Dist> bfs_distances(const Graph& g, std::span<const Vertex> sources) {
  std::vector<Dist> d(g.size(), kUnreachable);
  std::vector<Vertex> queue;
  queue.reserve(g.size());
  for (Vertex s : sources)
    if (d[s] != 0) {
      d[s] = 0;
      queue.push_back(s);
    }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex u = queue[head];
    for (Vertex w : g.neighbors(u))
      if (d[w] == kUnreachable) {
        d[w] = d[u] + 1;
        queue.push_back(w);
      }
  }
  return d;
}

std::vector<Dist> bfs_distances(const Graph& g, Vertex x) {
  return bfs_distances(g, std::span<const Vertex>(&x, 1));
}

std::vector<std::pair<Vertex, Dist>> bounded_bfs(const Graph& g, Vertex x, Dist r) {
  // sparse visited tracking keeps repeated small-ball queries cheap
  thread_local std::vector<Dist> seen;
  if (seen.size() < g.size()) seen.assign(g.size(), kUnreachable);
  std::vector<std::pair<Vertex, Dist>> out{{x, 0}};
  seen[x] = 0;
  for (std::size_t head = 0; head < out.size(); ++head) {
    auto [u, du] = out[head];
    if (du == r) continue;
    for (Vertex w : g.neighbors(u))
      if (seen[w] == kUnreachable) {
        seen[w] = du + 1;
        out.emplace_back(w, du + 1);
      }
  }
  for (auto [v, dv] : out) seen[v] = kUnreachable;
  return out;
}

Dist distance(const Graph& g, Vertex u, Vertex v) { return bfs_distances(g, u)[v]; }

VertexSet disk(const Graph& g, Vertex x, Dist r) {
  std::vector<Vertex> items;
  for (auto [v, d] : bounded_bfs(g, x, r)) items.push_back(v);
  return VertexSet(g.size(), std::move(items));
}

VertexSet sphere(const Graph& g, Vertex x, Dist r) {
  std::vector<Vertex> items;
  for (auto [v, d] : bounded_bfs(g, x, r))
    if (d == r) items.push_back(v);
  return VertexSet(g.size(), std::move(items));
}

VertexSet corona(const Graph& g, Vertex x, Dist r, Dist s) {
  if (r > s) throw GraphError("corona requires r <= s");
  std::vector<Vertex> items;
  for (auto [v, d] : bounded_bfs(g, x, s))
    if (d > r) items.push_back(v);
  return VertexSet(g.size(), std::move(items));
}

VertexSet closed_penumbra(const Graph& g, const VertexSet& q, Dist r) {
  auto d = bfs_distances(g, q.items());
  std::vector<Vertex> items;
  for (Vertex v = 0; v < g.size(); ++v)
    if (d[v] <= r) items.push_back(v);
  return VertexSet(g.size(), std::move(items));
}

// ---- MetricView -----------------------------------------------------------

MetricView::MetricView(const Graph& base) : graph_(base), members_(base.size()) {
  from_ambient_.resize(base.size());
  for (Vertex v = 0; v < base.size(); ++v) members_[v] = from_ambient_[v] = v;
}

MetricView MetricView::from_level(std::size_t ambient_size, std::vector<Vertex> members,
                                  std::span<const Edge> edges) {
  MetricView m;
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  m.members_ = std::move(members);
  m.from_ambient_.assign(ambient_size, kNoVertex);
  for (Vertex i = 0; i < m.members_.size(); ++i) {
    if (m.members_[i] >= ambient_size) throw GraphError("level member out of range");
    m.from_ambient_[m.members_[i]] = i;
  }
  std::vector<Edge> local;
  local.reserve(edges.size());
  for (auto [a, b] : edges) {
    if (!m.contains(a) || !m.contains(b))
      throw GraphError("level edge (" + std::to_string(a) + "," + std::to_string(b) +
                       ") leaves the subset");
    local.emplace_back(m.from_ambient_[a], m.from_ambient_[b]);
  }
  auto comps = connected_components(m.members_.size(), local);
  if (comps.size() > 1) {
    std::string msg = "level graph is disconnected; components:";
    for (auto& c : comps) {
      msg += " {";
      for (std::size_t i = 0; i < c.size() && i < 8; ++i)
        msg += (i ? "," : "") + std::to_string(m.members_[c[i]]);
      if (c.size() > 8) msg += ",...";
      msg += "}";
    }
    throw GraphError(msg);
  }
  m.graph_ = Graph(m.members_.size(), local, 0, std::vector<Vertex>{});
  return m;
}

std::vector<Vertex> MetricView::neighbors(Vertex a) const {
  std::vector<Vertex> out;
  for (Vertex l : graph_.neighbors(local(a))) out.push_back(members_[l]);
  return out;
}

bool MetricView::adjacent(Vertex a, Vertex b) const {
  return contains(a) && contains(b) && graph_.adjacent(local(a), local(b));
}

std::vector<Dist> MetricView::distances_from(std::span<const Vertex> sources) const {
  std::vector<Vertex> loc;
  for (Vertex s : sources) {
    if (!contains(s)) throw GraphError("source " + std::to_string(s) + " not in level");
    loc.push_back(local(s));
  }
  std::vector<Dist> out(ambient_size(), kUnreachable);
  if (loc.empty()) return out;
  auto d = bfs_distances(graph_, loc);
  for (Vertex l = 0; l < d.size(); ++l) out[members_[l]] = d[l];
  return out;
}

std::vector<Dist> MetricView::distances_from(Vertex a) const {
  return distances_from(std::span<const Vertex>(&a, 1));
}

Dist MetricView::distance(Vertex a, Vertex b) const {
  if (!contains(a) || !contains(b)) return kUnreachable;
  return lac::distance(graph_, local(a), local(b));
}

std::vector<std::pair<Vertex, Dist>> MetricView::ball(Vertex a, Dist r) const {
  auto res = bounded_bfs(graph_, local(a), r);
  for (auto& [v, d] : res) v = members_[v];
  return res;
}

VertexSet MetricView::disk(Vertex a, Dist r) const {
  std::vector<Vertex> items;
  for (auto [v, d] : ball(a, r)) items.push_back(v);
  return VertexSet(ambient_size(), std::move(items));
}

std::vector<Edge> MetricView::edges() const {
  auto e = graph_.edges();
  for (auto& [a, b] : e) {
    a = members_[a];
    b = members_[b];
    if (a > b) std::swap(a, b);
  }
  std::sort(e.begin(), e.end());
  return e;
}

MetricView induced_level_metric(const Graph& g, const VertexSet& subset,
                                std::span<const Edge> edges) {
  return MetricView::from_level(g.size(), subset.items(), edges);
}

}  // namespace lac
