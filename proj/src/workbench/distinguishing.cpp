#include <algorithm>

#include "lacolor/workbench.hpp"

namespace lac {

namespace {

// Colorings as restricted growth strings over a BFS order; an automorphism
// stays alive while every assigned pair (v, σ(v)) agrees.  A branch dies
// once some nonidentity σ is alive with its whole support assigned.
struct Search {
  const std::vector<Bijection>& autos;
  std::vector<Bijection> inverse;
  std::vector<Vertex> order;
  std::vector<std::size_t> pos;
  std::vector<std::size_t> last;  // last support position per σ
  std::vector<Color> color;
  std::size_t k = 0, nodes = 0;

  bool rec(std::size_t i, Color used, std::vector<std::size_t>& alive) {
    ++nodes;
    if (i == order.size()) return alive.empty();
    Color top = std::min<Color>(static_cast<Color>(k) - 1, used);
    for (Color c = 0; c <= top; ++c) {
      color[order[i]] = c;
      std::vector<std::size_t> still;
      bool dead = false;
      for (std::size_t a : alive) {
        const Bijection& s = autos[a];
        Vertex v = order[i];
        bool ok = true;
        if (pos[s[v]] <= i && color[s[v]] != c) ok = false;
        Vertex u = inverse[a][v];
        if (ok && pos[u] <= i && color[u] != c) ok = false;
        if (!ok) continue;
        if (last[a] <= i) {
          dead = true;
          break;
        }
        still.push_back(a);
      }
      if (!dead && rec(i + 1, std::max<Color>(used, c + 1), still)) return true;
    }
    color[order[i]] = kNoColor;
    return false;
  }
};

}  // namespace

DistinguishingResult distinguishing_number(const Graph& g, std::size_t cap) {
  if (g.size() > cap)
    throw WorkbenchError("distinguishing number: " + std::to_string(g.size()) +
                         " vertices exceed the automorphism cap " + std::to_string(cap));
  auto autos = automorphisms(g, nullptr, cap);
  DistinguishingResult res;
  res.automorphisms = autos.size();
  std::vector<std::size_t> nonid;
  for (std::size_t a = 0; a < autos.size(); ++a)
    for (Vertex v = 0; v < g.size(); ++v)
      if (autos[a][v] != v) {
        nonid.push_back(a);
        break;
      }
  std::vector<Bijection> inverse(autos.size(), Bijection(g.size()));
  for (std::size_t a = 0; a < autos.size(); ++a)
    for (Vertex v = 0; v < g.size(); ++v) inverse[a][autos[a][v]] = v;
  Search s{autos, std::move(inverse), {}, std::vector<std::size_t>(g.size()), std::vector<std::size_t>(autos.size(), 0),
           std::vector<Color>(g.size(), kNoColor)};
  for (auto [v, d] : bounded_bfs(g, g.basepoint(), kUnreachable - 1)) s.order.push_back(v);
  for (std::size_t i = 0; i < s.order.size(); ++i) s.pos[s.order[i]] = i;
  for (std::size_t a : nonid)
    for (Vertex v = 0; v < g.size(); ++v)
      if (autos[a][v] != v) s.last[a] = std::max(s.last[a], s.pos[v]);
  for (std::size_t k = 1; k <= g.size(); ++k) {
    s.k = k;
    auto alive = nonid;
    std::fill(s.color.begin(), s.color.end(), kNoColor);
    if (s.rec(0, 0, alive)) {
      res.value = k;
      res.witness = s.color;
      res.nodes = s.nodes;
      return res;
    }
  }
  throw WorkbenchError("distinguishing number search failed");  // unreachable: injective colorings work
}

DistinguishingResult distinguishing_index(const Graph& g, std::size_t cap) {
  Graph lg = line_graph(g);
  std::size_t bound = g.max_degree() == 0 ? 0 : 2 * (g.max_degree() - 1);
  if (lg.max_degree() > bound)
    throw WorkbenchError("line graph degree " + std::to_string(lg.max_degree()) + " exceeds 2(deg X - 1) = " +
                         std::to_string(bound));
  return distinguishing_number(lg, cap);
}

CandidateColoring bfs_candidate_coloring(const Graph& g, Vertex root) {
  MetricView m(g);
  std::vector<Vertex> all(g.size());
  for (Vertex v = 0; v < g.size(); ++v) all[v] = v;
  std::vector<Vertex> parent(g.size(), kNoVertex);
  auto order = bfs_ordering(m, all, root, &parent);

  CandidateColoring out;
  std::vector<Vertex> marker;
  for (std::size_t len = 5;; --len) {
    if (auto t = least_geodesic(g, root, len)) {
      marker = *t;
      break;
    }
    if (len == 0) break;
  }
  out.marker_length = marker.empty() ? 0 : marker.size() - 1;
  std::vector<char> inT(g.size(), 0);
  for (std::size_t i : {0, 1, 2, 5})
    if (i < marker.size()) inT[marker[i]] = 1;
  std::vector<Color> colors(g.size(), 0), next(g.size(), 1);
  for (Vertex u : order) {
    if (u == root || inT[u]) continue;
    colors[u] = next[parent[u]]++;
  }
  Color top = *std::max_element(colors.begin(), colors.end());
  Color bound = std::max<Color>(static_cast<Color>(g.max_degree()), top + 1);
  out.coloring = Coloring(std::move(colors), bound);
  return out;
}

}  // namespace lac
