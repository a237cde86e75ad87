#include "lacolor/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <sstream>

namespace lac {

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::boundary_skipped: return "boundary-skipped";
    case CheckStatus::skipped: return "skipped";
    case CheckStatus::vacuous: return "vacuous";
  }
  return "?";
}

bool VerificationReport::passed() const {
  return std::none_of(lines.begin(), lines.end(), [](const CheckLine& l) { return l.status == CheckStatus::fail; });
}

const CheckLine* VerificationReport::find(const std::string& id) const {
  for (const auto& l : lines)
    if (l.id == id) return &l;
  return nullptr;
}

void VerificationReport::append(const VerificationReport& other) {
  lines.insert(lines.end(), other.lines.begin(), other.lines.end());
}

std::string VerificationReport::summary() const {
  std::ostringstream os;
  for (const auto& l : lines) {
    os << l.id << ": " << to_string(l.status) << " (checked " << l.checked;
    if (l.skipped) os << ", boundary " << l.skipped;
    os << ")";
    if (!l.witnesses.empty()) os << " witness " << l.witnesses.front().first << "," << l.witnesses.front().second;
    if (!l.note.empty()) os << " - " << l.note;
    os << "\n";
  }
  return os.str();
}

std::size_t Bulk::size() const { return static_cast<std::size_t>(std::count(in.begin(), in.end(), 1)); }

Bulk make_bulk(const Graph& g, Dist margin) {
  Bulk b;
  b.margin = margin;
  if (g.boundary().empty()) b.depth.assign(g.size(), kUnreachable);
  else b.depth = bfs_distances(g, std::span<const Vertex>(g.boundary()));
  b.in.assign(g.size(), 0);
  for (Vertex v = 0; v < g.size(); ++v) b.in[v] = b.unclipped(v, margin) ? 1 : 0;
  return b;
}

namespace {

constexpr std::size_t kMaxWitnesses = 16;

class Line {
 public:
  explicit Line(std::string id) : t0_(std::chrono::steady_clock::now()) { line_.id = std::move(id); }
  void ok() { ++line_.checked; }
  void skip() { ++line_.skipped; }
  void fail(Vertex a, Vertex b) {
    ++line_.checked;
    ++failures_;
    if (line_.witnesses.size() < kMaxWitnesses) line_.witnesses.emplace_back(a, b);
  }
  void note(std::string s) { line_.note = std::move(s); }
  CheckLine done(std::optional<CheckStatus> forced = std::nullopt) {
    line_.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_).count();
    if (forced) line_.status = *forced;
    else if (failures_) line_.status = CheckStatus::fail;
    else if (line_.checked) line_.status = CheckStatus::pass;
    else if (line_.skipped) line_.status = CheckStatus::boundary_skipped;
    else line_.status = CheckStatus::vacuous;
    if (failures_ > line_.witnesses.size())
      line_.note += (line_.note.empty() ? "" : "; ") + std::to_string(failures_) + " failures";
    return line_;
  }

 private:
  CheckLine line_;
  std::size_t failures_ = 0;
  std::chrono::steady_clock::time_point t0_;
};

std::uint64_t disk_signature(const Graph& g, Vertex x, Dist r, const std::vector<Color>& colors) {
  auto ball = bounded_bfs(g, x, r);
  std::vector<std::uint64_t> keys;
  keys.reserve(ball.size());
  for (auto [v, d] : ball)
    keys.push_back((std::uint64_t{d} << 40) ^ (std::uint64_t{g.degree(v)} << 32) ^ (colors[v] & 0xffffffffULL));
  std::sort(keys.begin(), keys.end());
  std::uint64_t h = 1469598103934665603ULL;
  for (auto k : keys) {
    h ^= k + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

VerificationReport check_finitary(const Graph& g, const std::vector<Color>& colors, Dist eps, Dist delta,
                                  const Bulk& bulk) {
  if (bulk.size() == 0) throw VerifyError("empty bulk");
  Line line("finitary");
  std::vector<char> eligible(g.size(), 0);
  std::vector<std::uint64_t> sig(g.size(), 0);
  for (Vertex v = 0; v < g.size(); ++v)
    if (bulk.contains(v) && bulk.unclipped(v, delta)) {
      eligible[v] = 1;
      sig[v] = disk_signature(g, v, delta, colors);
    }
  std::vector<std::optional<PointedPattern>> pat(g.size());
  auto pattern = [&](Vertex v) -> const PointedPattern& {
    if (!pat[v]) pat[v] = disk_pattern(g, v, delta, &colors);
    return *pat[v];
  };
  if (eps > 0)
    for (Vertex x = 0; x < g.size(); ++x) {
      if (!bulk.contains(x)) continue;
      for (auto [y, d] : bounded_bfs(g, x, eps - 1)) {
        if (y <= x || !bulk.contains(y)) continue;
        if (!eligible[x] || !eligible[y]) {
          line.skip();
          continue;
        }
        if (sig[x] != sig[y] || !find_pointed_isomorphism(pattern(x), pattern(y))) line.ok();
        else line.fail(x, y);
      }
    }
  line.note("eps=" + std::to_string(eps) + " delta=" + std::to_string(delta));
  VerificationReport r;
  r.lines.push_back(line.done());
  return r;
}

Dist sweep_cap(const Bulk& bulk, Dist delta_max) {
  // depth[v] > d for at least two bulk vertices: d < second largest depth
  Dist first = 0, second = 0;
  std::size_t n = 0;
  for (Vertex v = 0; v < bulk.in.size(); ++v) {
    if (!bulk.contains(v)) continue;
    ++n;
    Dist d = bulk.depth[v];
    if (d == kUnreachable) return delta_max;
    if (d > first) second = first, first = d;
    else if (d > second) second = d;
  }
  if (n < 2) throw VerifyError("bulk has fewer than two vertices");
  if (second == 0) throw VerifyError("no two bulk vertices have unclipped disks");
  return std::min(delta_max, second - 1);
}

std::optional<Dist> min_separating_delta(const Graph& g, const std::vector<Color>& colors, Dist eps,
                                         const Bulk& bulk, Dist delta_max) {
  delta_max = sweep_cap(bulk, delta_max);
  Bulk b = bulk;
  for (Vertex v = 0; v < g.size(); ++v)
    if (!b.unclipped(v, delta_max)) b.in[v] = 0;
  for (Dist d = 0; d <= delta_max; ++d) {
    auto rep = check_finitary(g, colors, eps, d, b);
    auto st = rep.lines.front().status;
    if (st == CheckStatus::pass || st == CheckStatus::vacuous) return d;
  }
  return std::nullopt;
}

VerificationReport check_aperiodic_finite(const Graph& g, const std::vector<Color>& colors, std::size_t cap) {
  Line line("aperiodic");
  VerificationReport r;
  if (g.size() > cap) {
    line.note("graph exceeds the automorphism search cap " + std::to_string(cap));
    r.lines.push_back(line.done(CheckStatus::skipped));
    return r;
  }
  auto autos = automorphisms(g, &colors, cap);
  for (const auto& a : autos) {
    bool id = true;
    for (Vertex v = 0; v < a.size(); ++v)
      if (a[v] != v) {
        line.fail(v, a[v]);
        id = false;
        break;
      }
    if (id) line.ok();
  }
  line.note(std::to_string(autos.size()) + " automorphisms");
  r.lines.push_back(line.done());
  return r;
}

std::optional<Dist> repetitivity_density(const Graph& g, const std::vector<Color>& colors, Vertex p,
                                         Dist radius, const Bulk& bulk) {
  if (!bulk.unclipped(p, radius)) throw VerifyError("basepoint disk is clipped");
  PointedPattern pp = disk_pattern(g, p, radius, &colors);
  std::uint64_t ps = disk_signature(g, p, radius, colors);
  std::vector<Vertex> omega;
  for (Vertex v = 0; v < g.size(); ++v) {
    if (!bulk.contains(v) || !bulk.unclipped(v, radius)) continue;
    if (disk_signature(g, v, radius, colors) != ps) continue;
    if (v == p || find_pointed_isomorphism(pp, disk_pattern(g, v, radius, &colors))) omega.push_back(v);
  }
  if (omega.empty()) return std::nullopt;
  auto d = bfs_distances(g, std::span<const Vertex>(omega));
  Dist c = 0;
  for (Vertex v = 0; v < g.size(); ++v)
    if (bulk.contains(v)) c = std::max(c, d[v]);
  return c;
}

std::optional<std::uint64_t> decode_index(const Family& f, const std::vector<Color>& colors) {
  if (f.net.size() >= 64) return std::nullopt;
  std::uint64_t i = 0;
  for (std::size_t b = 0; b < f.net.size(); ++b)
    if (colors[f.net[b]] == f.net_color) i |= std::uint64_t{1} << b;
  auto c = f.realize(i);
  for (std::size_t k = 0; k < f.domain.size(); ++k)
    if (colors[f.domain[k]] != c[k]) return std::nullopt;
  return i;
}

namespace {

std::uint64_t sat_pow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (b != 0 && r > std::numeric_limits<std::uint64_t>::max() / b) return std::numeric_limits<std::uint64_t>::max();
    r *= b;
  }
  return r;
}

void level_lines(const Hierarchy& h, int n, const Palette* pal, const PhiResult* phi,
                 const InvariantOptions& opt, const Bulk& depth, VerificationReport& rep) {
  const LevelState& L = h.level(n);
  const MetricView& pm = h.metric(n - 1);
  const MetricView& m = h.metric(n);
  const std::size_t V = h.ambient().size();
  const std::string P = "L" + std::to_string(n) + ".";
  Dist margin = static_cast<std::size_t>(n) < opt.margins.size() ? opt.margins[static_cast<std::size_t>(n)]
                                                               : default_bulk_margin(h, n);
  auto bulk = [&](Vertex v) { return depth.unclipped(v, margin); };
  const Dist r = L.r, s = L.s, rs = r * s;

  std::vector<Vertex> xplus, xminus;
  for (Vertex x : L.members) (L.is_plus(x) ? xplus : xminus).push_back(x);
  auto dplus = xplus.empty() ? std::vector<Dist>(V, kUnreachable) : pm.distances_from(xplus);
  auto dminus = xminus.empty() ? std::vector<Dist>(V, kUnreachable) : pm.distances_from(xminus);
  std::vector<std::vector<Dist>> dc(V);
  for (Vertex x : L.members) dc[x] = pm.distances_from(x);

  {  // clusters partition X_{n-1}
    Line ln(P + "clusters-partition");
    std::vector<int> count(V, 0);
    for (Vertex x : L.members) {
      for (Vertex z : L.cluster[x]) ++count[z];
      if (!std::includes(L.closed_cluster[x].begin(), L.closed_cluster[x].end(), L.cluster[x].begin(),
                         L.cluster[x].end()))
        ln.fail(x, x);
    }
    for (Vertex z : pm.members()) {
      if (count[z] == 1 && L.members.contains(L.cluster_of[z])) ln.ok();
      else ln.fail(z, L.cluster_of[z]);
    }
    rep.lines.push_back(ln.done());
  }
  {  // zones, closed clusters and π recomputed from distances
    Line ln(P + "cluster-map");
    for (Vertex z : pm.members()) {
      bool zp = dplus[z] == kUnreachable ? false
                : dminus[z] == kUnreachable
                    ? true
                    : std::int64_t(dplus[z]) - std::int64_t(2 * rs) <= std::int64_t(dminus[z]) - std::int64_t(r);
      Sign zs = zp ? Sign::plus : Sign::minus;
      Dist dz = zp ? dplus[z] : dminus[z];
      Vertex best = kNoVertex;
      bool good = L.zone[z] == zs;
      for (Vertex x : L.members) {
        if (L.sign[x] != zs) continue;
        bool near = dc[x][z] == dz;
        bool listed = std::binary_search(L.closed_cluster[x].begin(), L.closed_cluster[x].end(), z);
        if (near != listed) good = false;
        if (near && (best == kNoVertex || h.less(x, best))) best = x;
      }
      if (best != L.cluster_of[z]) good = false;
      if (good) ln.ok();
      else ln.fail(z, L.cluster_of[z]);
    }
    rep.lines.push_back(ln.done());
  }
  auto sep_line = [&](const std::string& id, const std::vector<Vertex>& a, const std::vector<Vertex>& b, Dist K) {
    Line ln(P + id);
    for (Vertex x : a) {
      for (Vertex y : b) {
        if (x == y || (&a == &b && y < x)) continue;
        if (dc[x][y] >= K) ln.ok();
        else ln.fail(x, y);
      }
    }
    rep.lines.push_back(ln.done());
  };
  {
    Line ln(P + "Y-separated");
    if (is_separated(pm, L.candidates, 2 * r + 1)) ln.ok();
    else ln.fail(L.candidates.items().front(), L.candidates.items().front());
    rep.lines.push_back(ln.done());
  }
  sep_line("X+-separated", xplus, xplus, 2 * rs + 1);
  sep_line("X--separated", xminus, xminus, 2 * r + 1);
  sep_line("X-/X+-gap", xminus, xplus, 2 * rs + 1);
  {
    Line ln(P + "relatively-dense");
    auto dx = pm.distances_from(L.members.items());
    for (Vertex z : pm.members()) {
      if (!bulk(z)) { ln.skip(); continue; }
      if (dx[z] <= L.R_plus()) ln.ok();
      else ln.fail(z, L.cluster_of[z]);
    }
    rep.lines.push_back(ln.done());
  }
  {
    Line contain(P + "disk-containment"), radius(P + "closed-cluster-radius"), star(P + "star-shaped");
    for (Vertex x : L.members) {
      if (!bulk(x)) { contain.skip(); radius.skip(); star.skip(); continue; }
      const auto& C = L.cluster[x];
      bool okc = true;
      Vertex bad = x;
      for (auto [u, d] : pm.ball(x, L.r_pm(L.sign[x])))
        if (!std::binary_search(C.begin(), C.end(), u)) { okc = false; bad = u; break; }
      okc ? contain.ok() : contain.fail(x, bad);
      bool okr = true;
      for (Vertex u : L.closed_cluster[x])
        if (dc[x][u] > L.R_pm(L.sign[x])) { okr = false; bad = u; break; }
      okr ? radius.ok() : radius.fail(x, bad);
      bool oks = true;
      for (Vertex u : C) {
        if (u == x) continue;
        for (Vertex w : pm.neighbors(u))
          if (dc[x][w] + 1 == dc[x][u] && !std::binary_search(C.begin(), C.end(), w)) { oks = false; bad = u; }
      }
      oks ? star.ok() : star.fail(x, bad);
    }
    rep.lines.push_back(contain.done());
    rep.lines.push_back(radius.done());
    rep.lines.push_back(star.done());
  }
  {
    Line ln(P + "metric-comparison");
    std::uint64_t l = 2 * std::uint64_t{L.R_plus()} + 1, Ln = level_L(h, n);
    auto d_amb = [&](Vertex x) { return h.metric(-1).distances_from(x); };
    for (Vertex x : L.members) {
      if (!bulk(x)) { ln.skip(); continue; }
      auto dn = m.distances_from(x);
      auto da = d_amb(x);
      bool good = true;
      Vertex bad = x;
      for (Vertex y : L.members) {
        if (y == x || !bulk(y)) continue;
        std::uint64_t a = dn[y], b = dc[x][y], c = da[y];
        if (!(a <= b && b <= l * a && a <= c && c <= Ln * a)) { good = false; bad = y; }
      }
      good ? ln.ok() : ln.fail(x, bad);
    }
    rep.lines.push_back(ln.done());
  }
  {
    Line ln(P + "degree-bound");
    std::uint64_t dprev = h.degree(n - 1);
    std::uint64_t base = dprev == 0 ? 0 : dprev - 1;
    std::uint64_t p = sat_pow(base, 2 * std::uint64_t{L.R_plus()});
    std::uint64_t bound = p > std::numeric_limits<std::uint64_t>::max() / 4 ? p : 4 * p;
    for (Vertex x : L.members) {
      if (!bulk(x)) { ln.skip(); continue; }
      if (m.neighbors(x).size() <= bound) ln.ok();
      else ln.fail(x, x);
    }
    rep.lines.push_back(ln.done());
  }
  {
    Line ln(P + "distances-plus");
    if (s > 20) {
      for (Vertex a : xplus)
        for (auto [b, d] : m.ball(a, 2))
          if (b != a && L.is_plus(b)) (dc[a][b] < rs * s) ? ln.ok() : ln.fail(a, b);
      rep.lines.push_back(ln.done());
    } else {
      ln.note("hypothesis s_n > 20 unmet (s_n=" + std::to_string(s) + ")");
      rep.lines.push_back(ln.done(CheckStatus::skipped));
    }
  }
  {
    Line ln(P + "distances-minus");
    if (s > 26) {
      for (Vertex a : xminus)
        for (auto [b, d] : m.ball(a, 2))
          if (b != a && !L.is_plus(b) && d == 2) {
            bool path = false;
            for (Vertex c : m.neighbors(a))
              if (!L.is_plus(c) && m.adjacent(c, b)) path = true;
            if (path) (dc[a][b] < rs) ? ln.ok() : ln.fail(a, b);
          }
      rep.lines.push_back(ln.done());
    } else {
      ln.note("hypothesis s_n > 26 unmet (s_n=" + std::to_string(s) + ")");
      rep.lines.push_back(ln.done(CheckStatus::skipped));
    }
  }
  {
    Line ln(P + "index-capacity");
    if (opt.paper_capacity) {
      for (Vertex x : L.members) {
        if (!bulk(x)) { ln.skip(); continue; }
        std::uint64_t a = pm.ball(x, L.r_pm(L.sign[x])).size();
        std::uint64_t I = 5 + pm.ball(x, L.r_pm(L.sign[x]) * s).size();
        BigInt e = h.eta_exponent(n, a);
        bool good = e >= 0 && (e >= 128 || (BigInt(1) << static_cast<unsigned>(e)) >= BigInt(I) * I);
        good ? ln.ok() : ln.fail(x, x);
      }
      rep.lines.push_back(ln.done());
    } else {
      ln.note("desk radii; realized family indices are checked against the net size instead");
      rep.lines.push_back(ln.done(CheckStatus::skipped));
    }
  }

  if (pal) {
    const auto& chi = pal->chi[static_cast<std::size_t>(n)].chi;
    Line ln(P + "chi-distinct");
    for (Vertex x : L.members) {
      if (chi[x] == 0) ln.fail(x, x);
      for (auto [y, d] : pm.ball(x, L.r_pm(L.sign[x]) * s))
        if (y > x && L.members.contains(y) && L.sign[y] == L.sign[x]) (chi[x] != chi[y]) ? ln.ok() : ln.fail(x, y);
    }
    rep.lines.push_back(ln.done());

    if (n == 0) {
      Line marker(P + "adapted-marker"), inj(P + "children-injective");
      const Graph& g = h.ambient();
      for (Vertex x : L.members) {
        const Family& f = pal->family(0, x);
        std::vector<std::uint64_t> idx{0};
        if (phi) idx.push_back(phi->index[0][x]);
        for (std::uint64_t i : idx) {
          auto c = f.realize(i);
          std::vector<Color> amb(V, kNoColor);
          for (std::size_t k = 0; k < f.domain.size(); ++k) amb[f.domain[k]] = c[k];
          std::vector<Vertex> T{f.marker[0], f.marker[1], f.marker[2], f.marker[5]};
          if (f.sign == Sign::plus) T.push_back(f.marker[4]);
          std::sort(T.begin(), T.end());
          std::vector<Vertex> zeros7;
          bool good = true;
          for (auto [u, d] : bounded_bfs(g, x, 10)) {
            if (amb[u] == kNoColor) continue;
            if (d <= 7 && amb[u] == 0) zeros7.push_back(u);
          }
          std::sort(zeros7.begin(), zeros7.end());
          if (zeros7 != T) good = false;
          if (i == 0)
            for (std::size_t k = 0; k < f.domain.size(); ++k)
              if (c[k] == 0 && !std::binary_search(T.begin(), T.end(), f.domain[k])) good = false;
          good ? marker.ok() : marker.fail(x, x);
          std::vector<std::vector<Color>> seen(V);
          bool gi = true;
          Vertex bad = x;
          for (Vertex u : L.bfs_order[x]) {
            Vertex p = L.parent[u];
            if (p == kNoVertex) continue;
            auto& sv = seen[p];
            if (std::find(sv.begin(), sv.end(), amb[u]) != sv.end() || amb[u] >= g.max_degree()) { gi = false; bad = u; }
            sv.push_back(amb[u]);
          }
          gi ? inj.ok() : inj.fail(x, bad);
        }
      }
      rep.lines.push_back(marker.done());
      rep.lines.push_back(inj.done());
    } else {
      Line ln2(P + "adapted-center");
      for (Vertex x : L.members) {
        const Family& f = pal->family(n, x);
        std::vector<std::uint64_t> idx{0};
        if (phi) idx.push_back(phi->index[static_cast<std::size_t>(n)][x]);
        for (std::uint64_t i : idx) {
          auto c = f.realize(i);
          auto sub = f.subset(i);
          std::sort(sub.begin(), sub.end());
          bool good = true;
          for (std::size_t k = 0; k < f.domain.size(); ++k) {
            Vertex u = f.domain[k];
            Color want_center = f.sign == Sign::plus ? 2 : 1;
            if (u == x) good &= c[k] == want_center;
            else good &= c[k] != 0 && c[k] != 1 && c[k] != 2 && c[k] != 3 && c[k] != 5;
            good &= (c[k] == 4) == std::binary_search(sub.begin(), sub.end(), u);
          }
          good ? ln2.ok() : ln2.fail(x, x);
        }
      }
      rep.lines.push_back(ln2.done());
    }
  }

  if (pal && phi && n <= phi->N) {
    Line ln(P + "phi-decodes");
    if (n == 0) {
      for (Vertex x : L.members) {
        auto i = decode_index(pal->family(0, x), phi->coloring.colors);
        (i && *i == phi->index[0][x]) ? ln.ok() : ln.fail(x, x);
      }
    } else {
      const auto& below = phi->phi[static_cast<std::size_t>(n - 1)];
      std::vector<Color> first(V, kNoColor);
      for (Vertex u = 0; u < V; ++u) first[u] = below[u].first;
      for (Vertex x : L.members) {
        auto i = decode_index(pal->family(n, x), first);
        (i && *i == phi->index[static_cast<std::size_t>(n)][x]) ? ln.ok() : ln.fail(x, x);
      }
    }
    rep.lines.push_back(ln.done());
    Line dl(P + "phi-local-distinct");
    const auto& ph = phi->phi[static_cast<std::size_t>(n)];
    for (Vertex x : L.members)
      for (auto [y, d] : pm.ball(x, L.r_pm(L.sign[x]) * s))
        if (y > x && d > 0 && d < L.r_pm(L.sign[x]) * s && L.members.contains(y) && L.sign[y] == L.sign[x])
          (ph[x] != ph[y]) ? dl.ok() : dl.fail(x, y);
    rep.lines.push_back(dl.done());
  }
}

}  // namespace

VerificationReport check_level_invariants(const Hierarchy& h, const Palette* pal, const PhiResult* phi,
                                          const InvariantOptions& opt) {
  VerificationReport rep;
  Bulk depth = make_bulk(h.ambient(), 0);
  for (int n = 0; n < static_cast<int>(h.size()); ++n) level_lines(h, n, pal, phi, opt, depth, rep);
  return rep;
}

std::uint64_t level_Upsilon(const Hierarchy& h, int n) {
  std::uint64_t U = 0;
  for (int m = 0; m <= n; ++m) {
    std::uint64_t W = m == 0 ? 10 : 2;
    U += level_L(h, m - 1) * (W + 3 * std::uint64_t{h.level(m).R_plus()} + 1) +
         2 * level_Gamma(h, m, Sign::plus) + std::uint64_t(m) * level_L(h, m);
  }
  return U;
}

VerificationReport check_rigidity_ladder_map(const Hierarchy& h, const PhiResult& phi, const Palette& pal,
                                             const std::vector<Color>& colors, int n, Vertex x, Dist R,
                                             const EquivalenceWitness& f, const LadderOptions& opt) {
  VerificationReport rep;
  auto dx = h.metric(-1).distances_from(x);
  auto within = [&](Vertex z, std::int64_t thr) { return thr >= 0 && std::int64_t(dx[z]) <= thr; };
  auto all_defined = [&](const std::vector<Vertex>& S) {
    return std::all_of(S.begin(), S.end(), [&](Vertex u) { return f.defined(u); });
  };
  auto image_sorted = [&](const std::vector<Vertex>& S) {
    std::vector<Vertex> o;
    for (Vertex u : S) o.push_back(f.apply(u));
    std::sort(o.begin(), o.end());
    return o;
  };
  const int top = std::min<int>(n, static_cast<int>(h.size()) - 1);
  for (int m = 0; m <= top; ++m) {
    const LevelState& L = h.level(m);
    const std::string P = "ladder.L" + std::to_string(m) + ".";
    std::int64_t U = opt.paper_margins ? static_cast<std::int64_t>(m == 0 ? 0 : level_Upsilon(h, m - 1)) : 0;
    std::int64_t Lp = static_cast<std::int64_t>(level_L(h, m - 1));
    std::int64_t W = m == 0 ? 10 : 2;
    std::int64_t Rp = L.R_plus(), rp = L.r_plus();
    std::int64_t G = static_cast<std::int64_t>(level_Gamma(h, m, Sign::plus));
    std::int64_t Lm = static_cast<std::int64_t>(level_L(h, m));
    auto thr = [&](std::int64_t extra) { return std::int64_t(R) - U - Lp * extra; };

    Line b(P + "b.sign"), d(P + "d.phi"), fz(P + "f.zone"), g(P + "g.closed-cluster"), hh(P + "h.cluster"),
        e(P + "i.edges");
    for (Vertex z : h.members(m - 1)) {
      if (!f.defined(z)) continue;
      Vertex fzv = f.apply(z);
      if (within(z, thr(W))) {
        bool mz = L.members.contains(z), mf = L.members.contains(fzv);
        (mz == mf && (!mz || L.sign[z] == L.sign[fzv])) ? b.ok() : b.fail(z, fzv);
      } else b.skip();
      if (within(z, thr(W + 2 * Rp))) (L.zone[z] == L.zone[fzv]) ? fz.ok() : fz.fail(z, fzv);
      else fz.skip();
    }
    std::vector<Vertex> edge_pts;
    for (Vertex z : L.members) {
      if (!f.defined(z)) continue;
      Vertex fzv = f.apply(z);
      bool center = L.members.contains(fzv);
      if (within(z, thr(W + rp))) {
        bool good = center && phi.phi[static_cast<std::size_t>(m)][z] == phi.phi[static_cast<std::size_t>(m)][fzv];
        if (good && m == 0) {
          auto iz = decode_index(pal.family(0, z), colors);
          auto ifz = decode_index(pal.family(0, fzv), colors);
          good = iz && ifz && *iz == *ifz;
        }
        good ? d.ok() : d.fail(z, fzv);
      } else d.skip();
      if (within(z, thr(W + 3 * Rp)) && all_defined(L.closed_cluster[z])) {
        (center && image_sorted(L.closed_cluster[z]) == L.closed_cluster[fzv]) ? g.ok() : g.fail(z, fzv);
      } else g.skip();
      if (within(z, thr(W + 3 * Rp) - Lm) && all_defined(L.cluster[z])) {
        (center && image_sorted(L.cluster[z]) == L.cluster[fzv]) ? hh.ok() : hh.fail(z, fzv);
      } else hh.skip();
      if (within(z, thr(W + 3 * Rp + 1) - G)) edge_pts.push_back(z);
    }
    for (std::size_t i = 0; i < edge_pts.size(); ++i)
      for (std::size_t j = i + 1; j < edge_pts.size(); ++j) {
        Vertex a = edge_pts[i], c = edge_pts[j];
        Vertex fa = f.apply(a), fc = f.apply(c);
        bool ok = L.members.contains(fa) && L.members.contains(fc) &&
                  L.metric.adjacent(a, c) == L.metric.adjacent(fa, fc);
        ok ? e.ok() : e.fail(a, c);
      }
    for (Line* ln : {&b, &d, &fz, &g, &hh, &e}) rep.lines.push_back(ln->done());
  }
  return rep;
}

VerificationReport check_rigidity_ladder(const Hierarchy& h, const PhiResult& phi, const Palette& pal,
                                         const std::vector<Color>& colors, int n,
                                         const std::vector<Vertex>& samples, Dist R, const Bulk& bulk,
                                         const LadderOptions& opt) {
  const Graph& g = h.ambient();
  std::map<std::string, CheckLine> agg;
  std::vector<std::string> order;
  std::size_t pairs = 0;
  auto merge = [&](const VerificationReport& r) {
    for (const auto& l : r.lines) {
      auto it = agg.find(l.id);
      if (it == agg.end()) {
        agg[l.id] = l;
        order.push_back(l.id);
        continue;
      }
      CheckLine& a = it->second;
      a.checked += l.checked;
      a.skipped += l.skipped;
      a.runtime_ms += l.runtime_ms;
      for (auto w : l.witnesses)
        if (a.witnesses.size() < kMaxWitnesses) a.witnesses.push_back(w);
      if (l.status == CheckStatus::fail) a.status = CheckStatus::fail;
      else if (a.status != CheckStatus::fail && l.status == CheckStatus::pass) a.status = CheckStatus::pass;
    }
  };
  std::vector<std::uint64_t> sig(g.size(), 0);
  std::vector<char> sig_done(g.size(), 0);
  auto get_sig = [&](Vertex v) {
    if (!sig_done[v]) {
      sig[v] = disk_signature(g, v, R, colors);
      sig_done[v] = 1;
    }
    return sig[v];
  };
  for (Vertex x : samples) {
    if (!bulk.unclipped(x, R)) continue;
    PointedPattern a = disk_pattern(g, x, R, &colors);
    for (Vertex y = 0; y < g.size(); ++y) {
      if (!bulk.contains(y) || !bulk.unclipped(y, R) || get_sig(y) != get_sig(x)) continue;
      PointedPattern b = disk_pattern(g, y, R, &colors);
      enumerate_pointed_isomorphisms(
          a, b,
          [&](const Bijection& bij) {
            std::vector<std::pair<Vertex, Vertex>> pr;
            bool id = true;
            for (std::size_t i = 0; i < bij.size(); ++i) {
              pr.emplace_back(a.to_parent[i], b.to_parent[bij[i]]);
              id &= pr.back().first == pr.back().second;
            }
            if (id) return true;
            ++pairs;
            auto f = EquivalenceWitness::from_pairs(-1, false, x, y, std::move(pr));
            merge(check_rigidity_ladder_map(h, phi, pal, colors, n, x, R, f, opt));
            return true;
          },
          {}, 64);
    }
  }
  VerificationReport rep;
  if (pairs == 0) {
    CheckLine l;
    l.id = "ladder";
    l.status = CheckStatus::vacuous;
    l.note = "no non-identity colored disk isomorphisms found";
    rep.lines.push_back(l);
    return rep;
  }
  for (const auto& id : order) rep.lines.push_back(agg[id]);
  rep.lines.front().note = std::to_string(pairs) + " isomorphic pairs";
  return rep;
}

}  // namespace lac
