#include "lacolor/graph.hpp"

#include <algorithm>

namespace lac {

std::vector<Vertex> default_priority(const MetricView& m, Vertex p) {
  auto d = m.distances_from(p);
  std::vector<Vertex> order = m.members();
  std::stable_sort(order.begin(), order.end(),
                   [&](Vertex a, Vertex b) { return d[a] < d[b] || (d[a] == d[b] && a < b); });
  return order;
}

VertexSet maximal_separated_set(const MetricView& m, Dist K, std::span<const Vertex> priority) {
  if (K == 0) throw GraphError("separation parameter must be >= 1");
  std::vector<Vertex> chosen;
  // blocked[v] set when some chosen vertex lies within K-1 of v
  std::vector<char> blocked(m.ambient_size(), 0);
  for (Vertex v : priority) {
    if (!m.contains(v) || blocked[v]) continue;
    chosen.push_back(v);
    for (auto [w, d] : m.ball(v, K - 1)) blocked[w] = 1;
  }
  return VertexSet(m.ambient_size(), std::move(chosen));
}

bool is_separated(const MetricView& m, const VertexSet& a, Dist K) {
  if (K == 0) return true;
  for (Vertex v : a)
    for (auto [w, d] : m.ball(v, K - 1))
      if (w != v && a.contains(w)) return false;
  return true;
}

Dist relative_density_constant(const MetricView& m, const VertexSet& a) {
  if (a.empty()) throw GraphError("empty net");
  auto d = m.distances_from(a.items());
  Dist c = 0;
  for (Vertex v : m.members()) c = std::max(c, d[v]);
  return c;
}

}  // namespace lac
