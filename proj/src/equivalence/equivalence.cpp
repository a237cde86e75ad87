#include "lacolor/equivalence.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace lac {

namespace {

Vertex lookup(const std::vector<std::pair<Vertex, Vertex>>& v, Vertex u) {
  auto it = std::lower_bound(v.begin(), v.end(), std::make_pair(u, Vertex{0}));
  if (it == v.end() || it->first != u) return kNoVertex;
  return it->second;
}

std::vector<Vertex> sorted_unique(std::vector<Vertex> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// f maps A bijectively onto B (B sorted).
bool maps_onto(const EquivalenceWitness& f, const std::vector<Vertex>& A, const std::vector<Vertex>& B) {
  if (A.size() != B.size()) return false;
  std::vector<Vertex> img;
  img.reserve(A.size());
  for (Vertex a : A) {
    Vertex b = f.apply(a);
    if (b == kNoVertex) return false;
    img.push_back(b);
  }
  std::sort(img.begin(), img.end());
  return img == B;
}

std::vector<Vertex> ball_members(const MetricView& m, Vertex x, Dist r) {
  std::vector<Vertex> out;
  for (auto [v, d] : m.ball(x, r)) out.push_back(v);
  return sorted_unique(std::move(out));
}

// Edge set of m inside S is carried onto the edge set inside f(S).
bool preserves_edges(const EquivalenceWitness& f, const MetricView& m, const std::vector<Vertex>& S) {
  std::vector<char> in(m.ambient_size(), 0), in_img(m.ambient_size(), 0);
  for (Vertex u : S) {
    in[u] = 1;
    in_img[f.apply(u)] = 1;
  }
  std::size_t e1 = 0, e2 = 0;
  for (Vertex u : S) {
    Vertex fu = f.apply(u);
    for (Vertex lw : m.graph().neighbors(m.local(u))) {
      Vertex w = m.ambient(lw);
      if (!in[w]) continue;
      ++e1;
      if (!m.adjacent(fu, f.apply(w))) return false;
    }
    for (Vertex lw : m.graph().neighbors(m.local(fu)))
      if (in_img[m.ambient(lw)]) ++e2;
  }
  return e1 == e2;
}

std::string vtx(Vertex v) { return std::to_string(v); }

// Restriction of f to 𝒞_{n-1,-1}(u) equals h_{n-1,f(u)} h_{n-1,u}^{-1}.
std::optional<std::string> check_transport(const EquivalenceContext& ctx, const EquivalenceWitness& f,
                                           int m, Vertex u) {
  if (static_cast<std::size_t>(m) >= ctx.reps.size())
    throw std::logic_error("missing representative maps for level " + std::to_string(m));
  const auto& R = ctx.reps[static_cast<std::size_t>(m)];
  Vertex fu = f.apply(u);
  if (fu == kNoVertex || !ctx.h().members(m).contains(fu))
    return "f(" + vtx(u) + ") is not in level " + std::to_string(m);
  if (R.rep[u] != R.rep[fu]) return "level " + std::to_string(m) + " classes of " + vtx(u) + " and " + vtx(fu) + " differ";
  const auto& hu = *R.h[u];
  const auto& hfu = *R.h[fu];
  for (auto [t, w] : hu.forward) {
    Vertex e = hfu.apply(t);
    if (e == kNoVertex || f.apply(w) != e)
      return "restriction to the level " + std::to_string(m) + " domain of " + vtx(u) +
             " differs from the transported map at " + vtx(w);
  }
  return std::nullopt;
}

}  // namespace

bool EquivalenceWitness::defined(Vertex u) const { return lookup(forward, u) != kNoVertex; }
Vertex EquivalenceWitness::apply(Vertex u) const { return lookup(forward, u); }
Vertex EquivalenceWitness::preimage(Vertex v) const { return lookup(inverse, v); }

bool EquivalenceWitness::is_identity() const {
  return std::all_of(forward.begin(), forward.end(), [](auto p) { return p.first == p.second; });
}

std::vector<Vertex> EquivalenceWitness::domain() const {
  std::vector<Vertex> d;
  for (auto [a, b] : forward) d.push_back(a);
  return d;
}

EquivalenceWitness EquivalenceWitness::identity(int n, bool weak, Vertex x, const std::vector<Vertex>& dom) {
  std::vector<std::pair<Vertex, Vertex>> p;
  for (Vertex u : dom) p.emplace_back(u, u);
  return from_pairs(n, weak, x, x, std::move(p));
}

EquivalenceWitness EquivalenceWitness::from_pairs(int n, bool weak, Vertex x, Vertex y,
                                                  std::vector<std::pair<Vertex, Vertex>> pairs) {
  EquivalenceWitness w;
  w.n = n;
  w.weak = weak;
  w.x = x;
  w.y = y;
  std::sort(pairs.begin(), pairs.end());
  w.forward = pairs;
  for (auto& [a, b] : pairs) std::swap(a, b);
  std::sort(pairs.begin(), pairs.end());
  w.inverse = std::move(pairs);
  return w;
}

EquivalenceContext::EquivalenceContext(const Hierarchy& h) : hierarchy(&h) {
  for (int n = 0; n < static_cast<int>(h.size()); ++n) chi.push_back(lac::chi(h, n).chi);
}

std::vector<Vertex> equivalence_domain(const Hierarchy& h, int n, Vertex x, bool weak) {
  const LevelState& L = h.level(n);
  if (n == 0) {
    if (weak) return ball_members(h.metric(-1), x, L.r_pm(L.sign[x]));
    return L.closed_cluster[x];
  }
  if (!weak) return extended_cluster(h, n, x);
  std::vector<Vertex> out;
  for (auto [u, d] : h.metric(n - 1).ball(x, L.r_pm(L.sign[x]))) {
    auto c = compose_clusters(h, n - 1, -1, u, true);
    out.insert(out.end(), c.begin(), c.end());
  }
  return sorted_unique(std::move(out));
}

std::optional<std::string> check_equivalence(const EquivalenceContext& ctx, const EquivalenceWitness& f) {
  const Hierarchy& h = ctx.h();
  const int n = f.n;
  const Vertex x = f.x, y = f.y;
  const LevelState& L = h.level(n);
  if (!L.members.contains(x) || !L.members.contains(y)) return "endpoints are not level-" + std::to_string(n) + " centers";
  if (L.sign[x] != L.sign[y]) return "endpoints have different signs";
  if (f.apply(x) != y) return "basepoint not preserved";

  auto dx = equivalence_domain(h, n, x, f.weak);
  auto dy = equivalence_domain(h, n, y, f.weak);
  if (f.domain() != dx) return "domain mismatch";
  if (!maps_onto(f, dx, dy)) return "image mismatch";
  if (!preserves_edges(f, h.metric(-1), dx)) return "not a graph isomorphism";

  const Sign sg = L.sign[x];
  if (n == 0) {
    if (!f.weak && !maps_onto(f, L.cluster[x], L.cluster[y])) return "open cluster not preserved";
    return std::nullopt;
  }

  const MetricView& pm = h.metric(n - 1);
  const LevelState& P = h.level(n - 1);
  const auto& chi = ctx.chi[static_cast<std::size_t>(n - 1)];
  auto check_lower = [&](const std::vector<Vertex>& S, const std::vector<Vertex>& T,
                         const char* what) -> std::optional<std::string> {
    if (!maps_onto(f, S, T)) return std::string(what) + " not preserved";
    for (Vertex u : S) {
      Vertex fu = f.apply(u);
      if (P.sign[u] != P.sign[fu]) return "level " + std::to_string(n - 1) + " sign changes at " + vtx(u);
      if (chi[u] != chi[fu]) return "chi_" + std::to_string(n - 1) + " changes at " + vtx(u);
    }
    if (!preserves_edges(f, pm, S)) return std::string("level ") + std::to_string(n - 1) + " edges not preserved on " + what;
    return std::nullopt;
  };

  if (f.weak) {
    Dist r = L.r_pm(sg);
    auto Dx = ball_members(pm, x, r), Dy = ball_members(pm, y, r);
    if (auto e = check_lower(Dx, Dy, "the level disk")) return e;
    if (r > 0)
      for (auto [u, d] : pm.ball(x, r - 1))
        if (auto e = check_transport(ctx, f, n - 1, u)) return e;
    return std::nullopt;
  }

  // (i)
  const MetricView& m = h.metric(n);
  auto Bx = ball_members(m, x, static_cast<Dist>(n)), By = ball_members(m, y, static_cast<Dist>(n));
  if (!maps_onto(f, Bx, By)) return "level disk D_n(x,n) not preserved";
  // (ii)
  std::vector<Vertex> Sx, Sy;
  for (Vertex v : Bx) {
    Vertex fv = f.apply(v);
    if (!maps_onto(f, L.closed_cluster[v], L.closed_cluster[fv])) return "closed cluster of " + vtx(v) + " not preserved";
    if (!maps_onto(f, L.cluster[v], L.cluster[fv])) return "cluster of " + vtx(v) + " not preserved";
    Sx.insert(Sx.end(), L.closed_cluster[v].begin(), L.closed_cluster[v].end());
  }
  for (Vertex v : By) Sy.insert(Sy.end(), L.closed_cluster[v].begin(), L.closed_cluster[v].end());
  // (iii)
  if (auto e = check_lower(sorted_unique(Sx), sorted_unique(Sy), "the extended cluster")) return e;
  // (v)
  std::vector<Vertex> pen;
  for (Vertex u : L.cluster[x]) {
    pen.push_back(u);
    for (Vertex w : pm.neighbors(u)) pen.push_back(w);
  }
  for (Vertex u : sorted_unique(std::move(pen)))
    if (auto e = check_transport(ctx, f, n - 1, u)) return e;
  return std::nullopt;
}

std::size_t enumerate_equivalences(const EquivalenceContext& ctx, int n, Vertex x, Vertex y, bool weak,
                                   const std::function<bool(const EquivalenceWitness&)>& visit,
                                   const std::vector<Color>* colors, std::optional<std::size_t> limit) {
  const Hierarchy& h = ctx.h();
  const LevelState& L = h.level(n);
  if (!L.members.contains(x) || !L.members.contains(y) || L.sign[x] != L.sign[y]) return 0;
  auto dx = equivalence_domain(h, n, x, weak);
  auto dy = equivalence_domain(h, n, y, weak);
  if (dx.size() != dy.size()) return 0;
  PointedPattern a = make_pattern(h.ambient(), dx, x, colors);
  PointedPattern b = make_pattern(h.ambient(), dy, y, colors);
  std::size_t found = 0;
  bool stop = false;
  IsoOptions opt;
  opt.node_budget = ctx.node_budget;
  auto on_iso = [&](const Bijection& bij) {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    pairs.reserve(bij.size());
    for (std::size_t i = 0; i < bij.size(); ++i) pairs.emplace_back(a.to_parent[i], b.to_parent[bij[i]]);
    auto w = EquivalenceWitness::from_pairs(n, weak, x, y, std::move(pairs));
    if (check_equivalence(ctx, w)) return true;  // keep searching
    ++found;
    if (!visit(w) || (limit && found >= *limit)) stop = true;
    return !stop;
  };
  enumerate_pointed_isomorphisms(a, b, on_iso, opt);
  return found;
}

std::optional<EquivalenceWitness> find_equivalence(const EquivalenceContext& ctx, int n, Vertex x,
                                                   Vertex y, bool weak, const std::vector<Color>* colors) {
  std::optional<EquivalenceWitness> out;
  enumerate_equivalences(
      ctx, n, x, y, weak,
      [&](const EquivalenceWitness& w) {
        out = w;
        return false;
      },
      colors, 1);
  return out;
}

std::optional<EquivalenceWitness> zero_equivalence(const EquivalenceContext& ctx, Vertex x, Vertex y) {
  return find_equivalence(ctx, 0, x, y, false);
}

std::optional<EquivalenceWitness> n_equivalence(const EquivalenceContext& ctx, int n, Vertex x, Vertex y) {
  return find_equivalence(ctx, n, x, y, false);
}

std::optional<EquivalenceWitness> weak_equivalence(const EquivalenceContext& ctx, int n, Vertex x, Vertex y) {
  return find_equivalence(ctx, n, x, y, true);
}

const LevelRepresentatives& compute_representatives(EquivalenceContext& ctx, int n) {
  const Hierarchy& h = ctx.h();
  if (static_cast<int>(ctx.reps.size()) < n)
    throw std::logic_error("representatives of level " + std::to_string(n - 1) + " are missing");
  ctx.reps.resize(static_cast<std::size_t>(n));
  const LevelState& L = h.level(n);
  const std::size_t V = h.ambient().size();
  LevelRepresentatives R;
  R.n = n;
  R.rep.assign(V, kNoVertex);
  R.h.assign(V, std::nullopt);

  std::vector<Vertex> xs(L.members.begin(), L.members.end());
  Vertex pn = *std::min_element(xs.begin(), xs.end(), [&](Vertex a, Vertex b) { return h.less(a, b); });
  auto dn = h.metric(n).distances_from(pn);
  std::sort(xs.begin(), xs.end(), [&](Vertex a, Vertex b) {
    return dn[a] != dn[b] ? dn[a] < dn[b] : h.less(a, b);
  });

  using Sig = std::tuple<Sign, std::size_t, std::size_t, std::size_t>;
  std::map<Sig, std::vector<Vertex>> reps_by_sig;
  for (Vertex x : xs) {
    auto dom = equivalence_domain(h, n, x, false);
    Sig sig{L.sign[x], dom.size(), L.cluster[x].size(), L.closed_cluster[x].size()};
    auto& cands = reps_by_sig[sig];
    bool placed = false;
    for (Vertex z : cands) {
      ++R.tests;
      if (auto w = find_equivalence(ctx, n, z, x, false)) {
        R.rep[x] = z;
        R.h[x] = std::move(*w);
        placed = true;
        break;
      }
    }
    if (!placed) {
      R.rep[x] = x;
      R.h[x] = EquivalenceWitness::identity(n, false, x, dom);
      cands.push_back(x);
      ++R.classes;
    }
  }
  ctx.reps.push_back(std::move(R));
  return ctx.reps.back();
}

void compute_all_representatives(EquivalenceContext& ctx) {
  ctx.reps.clear();
  for (int n = 0; n < static_cast<int>(ctx.h().size()); ++n) compute_representatives(ctx, n);
}

void apply_canonical_orderings(Hierarchy& h, const EquivalenceContext& ctx) {
  for (int n = 0; n < static_cast<int>(h.size()) && n < static_cast<int>(ctx.reps.size()); ++n) {
    LevelState& L = h.mutable_level(n);
    const auto& R = ctx.reps[static_cast<std::size_t>(n)];
    for (Vertex x : L.members) {
      Vertex z = R.rep[x];
      if (z == x) continue;
      const auto& f = *R.h[x];
      std::vector<Vertex> order;
      for (Vertex u : L.bfs_order[z]) {
        Vertex fu = f.apply(u);
        order.push_back(fu);
        Vertex pu = L.parent[u];
        L.parent[fu] = pu == kNoVertex ? kNoVertex : f.apply(pu);
      }
      L.bfs_order[x] = std::move(order);
    }
  }
}

Palette build_canonical_palette(const Hierarchy& h, const EquivalenceContext& ctx, const FamilyOptions& opt) {
  Palette pal;
  const std::size_t V = h.ambient().size();
  for (int n = 0; n < static_cast<int>(h.size()); ++n) {
    const auto& R = ctx.reps.at(static_cast<std::size_t>(n));
    pal.chi.push_back(chi(h, n));
    std::vector<Family> fams;
    std::vector<std::uint32_t> slot(V, std::numeric_limits<std::uint32_t>::max());
    const LevelState& L = h.level(n);
    for (Vertex x : L.members) {
      if (R.rep[x] != x) continue;
      slot[x] = static_cast<std::uint32_t>(fams.size());
      fams.push_back(n == 0 ? family_level0(h, x, opt) : family_leveln(h, n, x, opt));
    }
    for (Vertex x : L.members) {
      Vertex z = R.rep[x];
      if (z == x) continue;
      const Family& src = fams[slot[z]];
      const auto& f = *R.h[x];
      Family dst;
      dst.n = n;
      dst.center = x;
      dst.sign = src.sign;
      dst.net_color = src.net_color;
      std::vector<std::pair<Vertex, Color>> dc;
      for (std::size_t k = 0; k < src.domain.size(); ++k) dc.emplace_back(f.apply(src.domain[k]), src.base[k]);
      std::sort(dc.begin(), dc.end());
      for (auto [u, c] : dc) {
        dst.domain.push_back(u);
        dst.base.push_back(c);
      }
      for (Vertex u : src.marker) dst.marker.push_back(f.apply(u));
      for (Vertex u : src.net) dst.net.push_back(f.apply(u));
      slot[x] = static_cast<std::uint32_t>(fams.size());
      fams.push_back(std::move(dst));
    }
    pal.families.push_back(std::move(fams));
    pal.slot.push_back(std::move(slot));
  }
  return pal;
}

}  // namespace lac
