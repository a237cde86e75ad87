#include "lacolor/iso.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <tuple>

namespace lac {

Coloring::Coloring(std::vector<Color> c, std::optional<Color> bound)
    : domain(c.size()), colors(std::move(c)) {
  std::vector<Vertex> all(colors.size());
  std::iota(all.begin(), all.end(), 0);
  domain = VertexSet(colors.size(), std::move(all));
  Color mx = 0;
  for (Color x : colors) mx = std::max(mx, x + 1);
  palette_bound = bound.value_or(mx);
}

Coloring::Coloring(VertexSet dom, std::vector<Color> c, Color bound)
    : domain(std::move(dom)), colors(std::move(c)), palette_bound(bound) {}

void Coloring::validate() const {
  for (Vertex v : domain) {
    if (v >= colors.size() || colors[v] == kNoColor)
      throw std::invalid_argument("vertex " + std::to_string(v) + " has no color");
    if (colors[v] >= palette_bound)
      throw std::invalid_argument("color " + std::to_string(colors[v]) + " at vertex " +
                                  std::to_string(v) + " exceeds palette bound " +
                                  std::to_string(palette_bound));
  }
}

PointedPattern make_pattern(const Graph& g, std::span<const Vertex> vertices, Vertex base,
                            const std::vector<Color>* ambient_colors) {
  auto sub = induced_subgraph(g, vertices, base);
  PointedPattern p;
  p.basepoint = sub.graph.basepoint();
  if (ambient_colors) {
    std::vector<Color> c(sub.to_parent.size());
    for (Vertex i = 0; i < c.size(); ++i) c[i] = (*ambient_colors)[sub.to_parent[i]];
    p.colors = std::move(c);
  }
  p.to_parent = std::move(sub.to_parent);
  p.graph = std::move(sub.graph);
  return p;
}

PointedPattern disk_pattern(const Graph& g, Vertex x, Dist r,
                            const std::vector<Color>* ambient_colors) {
  auto ball = disk(g, x, r);
  return make_pattern(g, ball.items(), x, ambient_colors);
}

namespace {

struct Label {
  Dist dist;
  std::uint32_t degree;
  Color color;
  std::uint64_t extra;
  auto operator<=>(const Label&) const = default;
};

std::vector<Label> labels_of(const PointedPattern& p, const std::vector<std::uint64_t>& extra) {
  auto d = bfs_distances(p.graph, p.basepoint);
  std::vector<Label> out(p.graph.size());
  for (Vertex v = 0; v < out.size(); ++v)
    out[v] = {d[v], static_cast<std::uint32_t>(p.graph.degree(v)),
              p.colors ? (*p.colors)[v] : 0, extra.empty() ? 0 : extra[v]};
  return out;
}

class Matcher {
 public:
  Matcher(const PointedPattern& a, const PointedPattern& b, const IsoOptions& opt,
          const std::function<bool(const Bijection&)>& visit, std::optional<std::size_t> limit)
      : a_(a), b_(b), opt_(opt), visit_(visit), limit_(limit) {}

  std::size_t run(IsoSearchStats* stats) {
    const std::size_t n = a_.graph.size();
    if (n != b_.graph.size() || a_.graph.edge_count() != b_.graph.edge_count()) return 0;
    if (a_.colors.has_value() != b_.colors.has_value()) return 0;
    if (opt_.extra_a.size() != opt_.extra_b.size()) return 0;
    la_ = labels_of(a_, opt_.extra_a);
    lb_ = labels_of(b_, opt_.extra_b);
    {
      auto sa = la_, sb = lb_;
      std::sort(sa.begin(), sa.end());
      std::sort(sb.begin(), sb.end());
      if (sa != sb) return 0;
    }
    // BFS order of a from its basepoint; parent = discovering vertex
    order_.clear();
    std::vector<Vertex> pos(n, kNoVertex);
    parent_pos_.assign(n, kNoVertex);
    order_.push_back(a_.basepoint);
    pos[a_.basepoint] = 0;
    for (std::size_t h = 0; h < order_.size(); ++h)
      for (Vertex w : a_.graph.neighbors(order_[h]))
        if (pos[w] == kNoVertex) {
          pos[w] = static_cast<Vertex>(order_.size());
          parent_pos_[pos[w]] = static_cast<Vertex>(h);
          order_.push_back(w);
        }
    earlier_.assign(n, {});
    for (std::size_t i = 0; i < n; ++i)
      for (Vertex w : a_.graph.neighbors(order_[i]))
        if (pos[w] < i) earlier_[i].push_back(pos[w]);

    f_.assign(n, kNoVertex);
    used_.assign(n, 0);
    if (la_[a_.basepoint] != lb_[b_.basepoint]) return 0;
    f_[a_.basepoint] = b_.basepoint;
    used_[b_.basepoint] = 1;
    extend(1);
    if (stats) {
      stats->nodes += nodes_;
      stats->budget_exhausted = stats->budget_exhausted || exhausted_;
    }
    return found_;
  }

 private:
  bool feasible(std::size_t i, Vertex cand) const {
    if (used_[cand] || la_[order_[i]] != lb_[cand]) return false;
    for (Vertex j : earlier_[i])
      if (!b_.graph.adjacent(f_[order_[j]], cand)) return false;
    std::size_t mapped_nb = 0;
    for (Vertex w : b_.graph.neighbors(cand)) mapped_nb += used_[w];
    return mapped_nb == earlier_[i].size();
  }

  // returns false when the search must stop
  bool extend(std::size_t i) {
    if (opt_.node_budget && nodes_ >= *opt_.node_budget) {
      exhausted_ = true;
      return false;
    }
    ++nodes_;
    if (i == order_.size()) {
      if (opt_.accept && !opt_.accept(f_)) return true;
      ++found_;
      if (!visit_(f_)) return false;
      return !(limit_ && found_ >= *limit_);
    }
    Vertex v = order_[i];
    Vertex anchor = f_[order_[parent_pos_[i]]];
    for (Vertex cand : b_.graph.neighbors(anchor)) {
      if (!feasible(i, cand)) continue;
      f_[v] = cand;
      used_[cand] = 1;
      bool go = extend(i + 1);
      used_[cand] = 0;
      f_[v] = kNoVertex;
      if (!go) return false;
    }
    return true;
  }

  const PointedPattern& a_;
  const PointedPattern& b_;
  const IsoOptions& opt_;
  const std::function<bool(const Bijection&)>& visit_;
  std::optional<std::size_t> limit_;
  std::vector<Label> la_, lb_;
  std::vector<Vertex> order_, parent_pos_;
  std::vector<std::vector<Vertex>> earlier_;
  Bijection f_;
  std::vector<char> used_;
  std::uint64_t nodes_ = 0;
  std::size_t found_ = 0;
  bool exhausted_ = false;
};

}  // namespace

std::size_t enumerate_pointed_isomorphisms(const PointedPattern& a, const PointedPattern& b,
                                           const std::function<bool(const Bijection&)>& visit,
                                           const IsoOptions& opt,
                                           std::optional<std::size_t> limit,
                                           IsoSearchStats* stats) {
  Matcher m(a, b, opt, visit, limit);
  return m.run(stats);
}

std::optional<Bijection> find_pointed_isomorphism(const PointedPattern& a, const PointedPattern& b,
                                                  const IsoOptions& opt, IsoSearchStats* stats) {
  std::optional<Bijection> out;
  enumerate_pointed_isomorphisms(
      a, b,
      [&](const Bijection& f) {
        out = f;
        return false;
      },
      opt, 1, stats);
  return out;
}

std::vector<Bijection> automorphisms(const Graph& g, const std::vector<Color>* colors,
                                     std::size_t cap) {
  if (g.size() > cap) throw GraphError("graph too large for exhaustive automorphism search");
  const std::size_t n = g.size();
  auto color = [&](Vertex v) -> Color { return colors ? (*colors)[v] : 0; };
  std::vector<Dist> ecc(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    auto d = bfs_distances(g, v);
    ecc[v] = *std::max_element(d.begin(), d.end());
  }
  auto key = [&](Vertex v) { return std::make_tuple(g.degree(v), color(v), ecc[v]); };
  // root at the vertex whose class is smallest
  std::vector<std::size_t> class_size(n, 0);
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w = 0; w < n; ++w) class_size[v] += key(v) == key(w);
  Vertex root = static_cast<Vertex>(
      std::min_element(class_size.begin(), class_size.end()) - class_size.begin());

  std::vector<Color> cv;
  if (colors) cv.assign(colors->begin(), colors->begin() + n);
  std::vector<Vertex> ident(n);
  std::iota(ident.begin(), ident.end(), 0);
  PointedPattern a{g, root, colors ? std::optional(cv) : std::nullopt, ident};

  std::vector<Bijection> out;
  for (Vertex t = 0; t < n; ++t) {
    if (key(t) != key(root)) continue;
    PointedPattern b{g, t, a.colors, ident};
    enumerate_pointed_isomorphisms(a, b, [&](const Bijection& f) {
      out.push_back(f);
      return true;
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_aperiodic(const Graph& g, const std::vector<Color>* colors, std::size_t cap) {
  return automorphisms(g, colors, cap).size() == 1;
}

std::optional<Bijection> brute_force_pointed_isomorphism(const PointedPattern& a,
                                                         const PointedPattern& b) {
  const std::size_t n = a.graph.size();
  if (n != b.graph.size() || a.colors.has_value() != b.colors.has_value()) return std::nullopt;
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (perm[a.basepoint] != b.basepoint) continue;
    bool ok = true;
    for (Vertex u = 0; u < n && ok; ++u) {
      if (a.colors && (*a.colors)[u] != (*b.colors)[perm[u]]) ok = false;
      for (Vertex v = u + 1; v < n && ok; ++v)
        if (a.graph.adjacent(u, v) != b.graph.adjacent(perm[u], perm[v])) ok = false;
    }
    if (ok) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

}  // namespace lac
