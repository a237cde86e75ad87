#include "lacolor/palette.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lac {

ChiResult chi(const Hierarchy& h, int n) {
  const LevelState& L = h.level(n);
  const MetricView& pm = h.metric(n - 1);
  const std::size_t V = h.ambient().size();
  ChiResult res;
  res.chi.assign(V, kNoColor);
  res.index_size.assign(V, 0);
  std::vector<Vertex> xs(L.members.begin(), L.members.end());
  std::sort(xs.begin(), xs.end(), [&](Vertex a, Vertex b) { return h.less(a, b); });
  for (Vertex x : xs) {
    auto ball = pm.ball(x, L.r_pm(L.sign[x]) * L.s);
    std::uint64_t I = 5 + ball.size();
    res.index_size[x] = I;
    std::vector<Color> taken;
    for (auto [y, d] : ball)
      if (y != x && L.members.contains(y) && L.sign[y] == L.sign[x] && h.less(y, x))
        taken.push_back(res.chi[y]);
    std::sort(taken.begin(), taken.end());
    Color c = 1;
    for (Color t : taken)
      if (t == c) ++c;
      else if (t > c) break;
    if (c >= I)
      throw PaletteError("chi: index set exhausted at level " + std::to_string(n) + ", center " +
                         std::to_string(x));
    res.chi[x] = c;
  }
  return res;
}

std::uint64_t Family::capacity() const {
  if (net.size() >= 63) return std::numeric_limits<std::uint64_t>::max();
  return std::uint64_t{1} << net.size();
}

std::vector<Vertex> Family::subset(std::uint64_t i) const {
  std::vector<Vertex> out;
  for (std::size_t b = 0; b < net.size() && b < 64; ++b)
    if ((i >> b) & 1U) out.push_back(net[b]);
  return out;
}

std::size_t Family::position(Vertex u) const {
  auto it = std::lower_bound(domain.begin(), domain.end(), u);
  if (it == domain.end() || *it != u) return std::string::npos;
  return static_cast<std::size_t>(it - domain.begin());
}

std::vector<Color> Family::realize(std::uint64_t i) const {
  if (i >= capacity())
    throw CapacityError("capacity exceeded at level " + std::to_string(n) + ", center " +
                            std::to_string(center) + ": family index " + std::to_string(i) +
                            " needs more than " + std::to_string(net.size()) +
                            " net points; increase r_" + std::to_string(n) +
                            " or widen the family corona",
                        n, center);
  std::vector<Color> out = base;
  for (Vertex u : subset(i)) out[position(u)] = net_color;
  return out;
}

void Family::paint(std::uint64_t i, std::vector<Color>& out) const {
  auto c = realize(i);
  for (std::size_t k = 0; k < domain.size(); ++k) out[domain[k]] = c[k];
}

std::optional<std::vector<Vertex>> least_geodesic(const Graph& g, Vertex x, std::size_t len,
                                                  const std::vector<char>* allowed) {
  std::vector<Dist> dist(g.size(), kUnreachable);
  for (auto [v, d] : bounded_bfs(g, x, static_cast<Dist>(len))) dist[v] = d;
  std::vector<Vertex> path{x};
  // iterative DFS over (vertex, next neighbor slot)
  std::vector<std::size_t> slot{0};
  while (!path.empty()) {
    if (path.size() == len + 1) return path;
    Vertex u = path.back();
    auto nb = g.neighbors(u);
    std::size_t& k = slot.back();
    bool pushed = false;
    while (k < nb.size()) {
      Vertex w = nb[k++];
      if (dist[w] != path.size()) continue;
      if (allowed && !(*allowed)[w]) continue;
      path.push_back(w);
      slot.push_back(0);
      pushed = true;
      break;
    }
    if (!pushed) {
      path.pop_back();
      slot.pop_back();
    }
  }
  return std::nullopt;
}

Family adapted_psi0_level0(const Hierarchy& h, Vertex x) {
  const LevelState& L = h.level(0);
  const Graph& g = h.ambient();
  const Color delta = g.max_degree();
  Family f;
  f.n = 0;
  f.center = x;
  f.sign = L.sign[x];
  f.domain = L.cluster[x];
  f.base.assign(f.domain.size(), kNoColor);
  f.net_color = 0;

  std::vector<char> allowed(g.size(), 0);
  for (Vertex u : f.domain) allowed[u] = 1;
  auto tau = least_geodesic(g, x, 5, &allowed);
  if (!tau)
    throw PaletteError("level 0, center " + std::to_string(x) +
                       ": no geodesic of length 5 inside the cluster; need r_0 >= 8 and a larger patch");
  f.marker = *tau;
  std::vector<Vertex> T{f.marker[0], f.marker[1], f.marker[2], f.marker[5]};
  if (f.sign == Sign::plus) T.push_back(f.marker[4]);
  std::vector<char> inT(g.size(), 0);
  for (Vertex t : T) {
    inT[t] = 1;
    f.base[f.position(t)] = 0;
  }
  std::vector<Color> next(g.size(), 1);
  for (Vertex u : L.bfs_order[x]) {
    if (u == x) continue;
    Vertex p = L.parent[u];
    if (inT[u]) continue;
    Color c = next[p]++;
    if (c >= delta)
      throw PaletteError("level 0, center " + std::to_string(x) + ": children of " + std::to_string(p) +
                         " need more than " + std::to_string(delta) + " colors");
    f.base[f.position(u)] = c;
  }
  return f;
}

Family adapted_psi0_leveln(const Hierarchy& h, int n, Vertex x) {
  if (n <= 0) throw PaletteError("adapted_psi0_leveln needs n >= 1");
  const LevelState& L = h.level(n);
  Family f;
  f.n = n;
  f.center = x;
  f.sign = L.sign[x];
  f.domain = L.cluster[x];
  f.base.assign(f.domain.size(), 6);
  f.base[f.position(x)] = f.sign == Sign::plus ? 2 : 1;
  f.marker = {x};
  f.net_color = 4;
  return f;
}

Dist FamilyOptions::inner_at(int n) const {
  auto k = static_cast<std::size_t>(n);
  // level-0 nets stay off D(x,7), where color 0 marks τ
  if (k < inner.size() && inner[k]) return n == 0 ? std::max<Dist>(*inner[k], 7) : *inner[k];
  return 10;
}

std::optional<Dist> FamilyOptions::sep_at(int n) const {
  auto k = static_cast<std::size_t>(n);
  if (k < sep.size() && sep[k]) return *sep[k];
  return std::nullopt;
}

void attach_net(const Hierarchy& h, Family& f, const FamilyOptions& opt) {
  const int n = f.n;
  const LevelState& L = h.level(n);
  const MetricView& pm = h.metric(n - 1);
  Dist inner = opt.inner_at(n);
  Dist outer = L.r_pm(f.sign);
  outer = outer > 0 ? outer - 1 : 0;
  Dist K;
  if (auto s = opt.sep_at(n)) K = *s;
  else if (n == 0) K = 3;
  else K = h.level(n - 1).r * h.level(n - 1).r * h.level(n - 1).s;
  if (K == 0) throw PaletteError("family separation must be positive");

  std::vector<std::pair<Dist, Vertex>> ring;
  if (outer > inner)
    for (auto [u, d] : pm.ball(f.center, outer))
      if (d > inner && f.position(u) != std::string::npos) ring.emplace_back(d, u);
  std::sort(ring.begin(), ring.end());
  std::vector<Vertex> prio;
  for (auto& [d, u] : ring) prio.push_back(u);
  const MetricView& sm = h.metric(n - 2);
  VertexSet chosen = maximal_separated_set(sm, K, prio);
  f.net.clear();
  for (Vertex u : prio)
    if (chosen.contains(u)) f.net.push_back(u);
}

Family family_level0(const Hierarchy& h, Vertex x, const FamilyOptions& opt) {
  Family f = adapted_psi0_level0(h, x);
  attach_net(h, f, opt);
  return f;
}

Family family_leveln(const Hierarchy& h, int n, Vertex x, const FamilyOptions& opt) {
  Family f = adapted_psi0_leveln(h, n, x);
  attach_net(h, f, opt);
  return f;
}

std::uint64_t pair_index(std::uint64_t i, std::uint64_t j) {
  std::uint64_t m = std::max(i, j);
  return i < m ? m * m + i : m * m + m + j;
}

std::pair<std::uint64_t, std::uint64_t> unpair_index(std::uint64_t k) {
  auto m = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(k)));
  while (m * m > k) --m;
  while ((m + 1) * (m + 1) <= k) ++m;
  std::uint64_t t = k - m * m;
  if (t < m) return {t, m};
  return {m, t - m};
}

std::uint64_t pair_index(std::uint64_t i, std::uint64_t j, std::uint64_t size) {
  if (i >= size || j >= size)
    throw PaletteError("pair_index: (" + std::to_string(i) + "," + std::to_string(j) +
                       ") outside an index set of size " + std::to_string(size));
  return pair_index(i, j);
}

const Family& Palette::family(int n, Vertex x) const {
  auto k = slot.at(static_cast<std::size_t>(n)).at(x);
  if (k == std::numeric_limits<std::uint32_t>::max())
    throw PaletteError("no family at level " + std::to_string(n) + " for " + std::to_string(x));
  return families[static_cast<std::size_t>(n)][k];
}

Family& Palette::family(int n, Vertex x) {
  return const_cast<Family&>(static_cast<const Palette&>(*this).family(n, x));
}

Palette build_palette(const Hierarchy& h, const FamilyOptions& opt) {
  Palette pal;
  const std::size_t V = h.ambient().size();
  for (int n = 0; n < static_cast<int>(h.size()); ++n) {
    pal.chi.push_back(chi(h, n));
    std::vector<Family> fams;
    std::vector<std::uint32_t> slot(V, std::numeric_limits<std::uint32_t>::max());
    for (Vertex x : h.level(n).members) {
      slot[x] = static_cast<std::uint32_t>(fams.size());
      fams.push_back(n == 0 ? family_level0(h, x, opt) : family_leveln(h, n, x, opt));
    }
    pal.families.push_back(std::move(fams));
    pal.slot.push_back(std::move(slot));
  }
  return pal;
}

PhiResult build_phi(const Hierarchy& h, const Palette& pal, int N) {
  if (N < 0 || N >= static_cast<int>(h.size()))
    throw PaletteError("build_phi: N=" + std::to_string(N) + " but only " + std::to_string(h.size()) +
                       " levels are built");
  const std::size_t V = h.ambient().size();
  PhiResult res;
  res.N = N;
  res.phi.assign(static_cast<std::size_t>(N) + 1, std::vector<std::pair<Color, Color>>(V, {kNoColor, kNoColor}));
  res.index.assign(static_cast<std::size_t>(N) + 1, std::vector<std::uint64_t>(V, 0));
  for (Vertex x : h.level(N).members) res.phi[N][x] = {pal.chi[N].chi[x], 0};
  for (int n = N - 1; n >= 0; --n) {
    for (Vertex x : h.level(n + 1).members) {
      auto [a, b] = res.phi[n + 1][x];
      std::uint64_t idx = pair_index(a, b);
      res.index[n + 1][x] = idx;
      const Family& f = pal.family(n + 1, x);
      auto c = f.realize(idx);
      for (std::size_t k = 0; k < f.domain.size(); ++k)
        res.phi[n][f.domain[k]] = {c[k], pal.chi[n].chi[f.domain[k]]};
    }
  }
  std::vector<Color> out(V, kNoColor);
  for (Vertex x : h.level(0).members) {
    auto [a, b] = res.phi[0][x];
    std::uint64_t idx = pair_index(a, b);
    res.index[0][x] = idx;
    pal.family(0, x).paint(idx, out);
  }
  res.coloring = Coloring(std::move(out), static_cast<Color>(h.ambient().max_degree()));
  res.coloring.validate();
  return res;
}

}  // namespace lac
