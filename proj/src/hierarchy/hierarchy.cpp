#include "lacolor/hierarchy.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace lac {

const char* to_string(Sign s) { return s == Sign::plus ? "plus" : "minus"; }

const char* to_string(SplitPolicy p) {
  switch (p) {
    case SplitPolicy::formula: return "formula";
    case SplitPolicy::all_minus: return "all-minus";
    case SplitPolicy::all_plus: return "all-plus";
  }
  return "?";
}

SplitPolicy parse_split_policy(const std::string& s) {
  if (s == "formula") return SplitPolicy::formula;
  if (s == "all-minus" || s == "all_minus" || s == "minus") return SplitPolicy::all_minus;
  if (s == "all-plus" || s == "all_plus" || s == "plus") return SplitPolicy::all_plus;
  throw HierarchyError("unknown split policy '" + s + "'");
}

Hierarchy::Hierarchy(const Graph& ambient, Vertex basepoint)
    : ambient_(ambient), base_(ambient), p_(basepoint) {
  if (basepoint >= ambient.size()) throw HierarchyError("basepoint out of range");
  std::vector<Vertex> all(ambient.size());
  std::iota(all.begin(), all.end(), Vertex{0});
  all_ = VertexSet(ambient.size(), std::move(all));
  dist_p_ = bfs_distances(ambient_, p_);
  std::vector<Vertex> order(ambient.size());
  std::iota(order.begin(), order.end(), Vertex{0});
  std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    return dist_p_[a] != dist_p_[b] ? dist_p_[a] < dist_p_[b] : a < b;
  });
  rank_.assign(ambient.size(), 0);
  for (std::uint32_t i = 0; i < order.size(); ++i) rank_[order[i]] = i;
}

const MetricView& Hierarchy::metric(int n) const {
  if (n < 0) return base_;
  return level(n).metric;
}

const VertexSet& Hierarchy::members(int n) const {
  if (n < 0) return all_;
  return level(n).members;
}

std::size_t Hierarchy::degree(int n) const { return metric(n).max_degree(); }

BigInt Hierarchy::eta_exponent(int n, std::uint64_t a) const {
  BigInt A = boost::multiprecision::pow(BigInt(degree(n - 1)), 11);
  BigInt D;
  if (n == 0) {
    D = boost::multiprecision::pow(BigInt(degree(-1)), 3);
  } else {
    const LevelState& prev = level(n - 1);
    std::uint64_t e = std::uint64_t{prev.r} * prev.r * prev.s;
    D = boost::multiprecision::pow(BigInt(degree(n - 2)), static_cast<unsigned>(e));
  }
  if (D < 1) D = 1;
  BigInt num = BigInt(a) - A - 1;
  // floor division
  BigInt q = num / D;
  if (num < 0 && q * D != num) q -= 1;
  return q;
}

bool Hierarchy::eta_at_least_square(int n, std::uint64_t a, std::uint64_t b) const {
  BigInt e = eta_exponent(n, a);
  if (e < 0) return false;  // η < 1 <= 36
  BigInt rhs = BigInt(6 + b) * BigInt(6 + b);
  if (e >= 4096) return true;
  BigInt lhs = BigInt(1) << static_cast<unsigned>(e);
  return lhs >= rhs;
}

namespace {

constexpr Dist kInf = kUnreachable;

// Multi-source BFS in m from `sources`, also recording for every reached
// vertex the sorted set of nearest sources.
void nearest_sources(const MetricView& m, const std::vector<Vertex>& sources, std::vector<Dist>& dist,
                     std::vector<std::vector<Vertex>>& nearest) {
  const Graph& g = m.graph();
  std::size_t V = m.ambient_size();
  dist.assign(V, kInf);
  nearest.assign(V, {});
  std::vector<Vertex> frontier;
  for (Vertex x : sources) {
    dist[x] = 0;
    nearest[x] = {x};
    frontier.push_back(x);
  }
  Dist d = 0;
  while (!frontier.empty()) {
    std::vector<Vertex> next;
    for (Vertex u : frontier) {
      for (Vertex lv : g.neighbors(m.local(u))) {
        Vertex w = m.ambient(lv);
        if (dist[w] == kInf) {
          dist[w] = d + 1;
          next.push_back(w);
        }
        if (dist[w] == d + 1) {
          auto& nw = nearest[w];
          for (Vertex c : nearest[u]) nw.push_back(c);
        }
      }
    }
    for (Vertex w : next) {
      auto& nw = nearest[w];
      std::sort(nw.begin(), nw.end());
      nw.erase(std::unique(nw.begin(), nw.end()), nw.end());
    }
    frontier = std::move(next);
    ++d;
  }
}

}  // namespace

const LevelState& Hierarchy::build_next(const LevelSpec& spec) {
  const int n = static_cast<int>(levels_.size());
  if (spec.r == 0 || spec.s == 0) throw HierarchyError("level " + std::to_string(n) + ": r and s must be positive");
  const MetricView& pm = metric(n - 1);
  const std::size_t V = ambient_.size();
  const Dist r = spec.r, s = spec.s;
  const Dist rs = r * s;

  LevelState L;
  L.n = n;
  L.r = r;
  L.s = s;
  L.split = spec.split;

  // (1) Y_n: maximal (2r+1)-separated set in ≤_n order.
  std::vector<Vertex> prio(pm.members());
  std::sort(prio.begin(), prio.end(), [&](Vertex a, Vertex b) { return rank_[a] < rank_[b]; });
  L.candidates = maximal_separated_set(pm, 2 * r + 1, prio);

  // (2) split
  L.candidate_sign.assign(V, Sign::minus);
  std::vector<Vertex> yplus, yminus;
  for (Vertex y : prio) {
    if (!L.candidates.contains(y)) continue;
    bool plus = false;
    switch (spec.split) {
      case SplitPolicy::all_minus: plus = false; break;
      case SplitPolicy::all_plus: plus = true; break;
      case SplitPolicy::formula: {
        std::uint64_t a = pm.ball(y, rs).size();
        std::uint64_t b = pm.ball(y, rs * s).size();
        plus = eta_at_least_square(n, a, b);
        break;
      }
    }
    L.candidate_sign[y] = plus ? Sign::plus : Sign::minus;
    (plus ? yplus : yminus).push_back(y);
  }
  if (yplus.empty() && yminus.empty()) throw HierarchyError("level " + std::to_string(n) + ": Y_n is empty");

  // (3) X_n^+: greedy, d > 2rs from the chosen ones.
  std::vector<Vertex> xplus;
  {
    std::vector<char> blocked(V, 0);
    for (Vertex y : yplus) {
      if (blocked[y]) continue;
      xplus.push_back(y);
      for (auto [w, d] : pm.ball(y, 2 * rs)) blocked[w] = 1;
    }
  }
  // (4) X_n^-
  std::vector<Vertex> xminus;
  {
    std::vector<Dist> dp = xplus.empty() ? std::vector<Dist>(V, kInf) : pm.distances_from(xplus);
    for (Vertex y : yminus)
      if (dp[y] == kInf || dp[y] > r * (2 * s + 1)) xminus.push_back(y);
  }
  std::vector<Vertex> mem = xplus;
  mem.insert(mem.end(), xminus.begin(), xminus.end());
  L.members = VertexSet(V, mem);
  L.sign.assign(V, Sign::minus);
  for (Vertex x : xplus) L.sign[x] = Sign::plus;

  // (5) zones, (6) closed clusters and π
  std::vector<Dist> dplus, dminus;
  std::vector<std::vector<Vertex>> nplus, nminus;
  nearest_sources(pm, xplus, dplus, nplus);
  nearest_sources(pm, xminus, dminus, nminus);
  L.zone.assign(V, Sign::minus);
  L.cluster_of.assign(V, kNoVertex);
  L.closed_cluster.assign(V, {});
  L.cluster.assign(V, {});
  for (Vertex z : pm.members()) {
    bool zp;
    if (dplus[z] == kInf) zp = false;
    else if (dminus[z] == kInf) zp = true;
    else zp = std::int64_t(dplus[z]) - std::int64_t(2 * rs) <= std::int64_t(dminus[z]) - std::int64_t(r);
    L.zone[z] = zp ? Sign::plus : Sign::minus;
    const auto& near = zp ? nplus[z] : nminus[z];
    if (near.empty()) throw HierarchyError("level " + std::to_string(n) + ": vertex " + std::to_string(z) + " has no center of its zone sign");
    Vertex best = near.front();
    for (Vertex c : near) {
      L.closed_cluster[c].push_back(z);
      if (rank_[c] < rank_[best]) best = c;
    }
    L.cluster_of[z] = best;
    L.cluster[best].push_back(z);
  }

  // (7) E_n
  {
    std::vector<Edge> e;
    const Graph& g = pm.graph();
    auto owners = [&](Vertex z) -> const std::vector<Vertex>& {
      return L.zone[z] == Sign::plus ? nplus[z] : nminus[z];
    };
    for (Vertex z : pm.members()) {
      const auto& oz = owners(z);
      for (std::size_t i = 0; i < oz.size(); ++i)
        for (std::size_t j = i + 1; j < oz.size(); ++j) e.emplace_back(oz[i], oz[j]);
      for (Vertex lw : g.neighbors(pm.local(z))) {
        Vertex w = pm.ambient(lw);
        if (w < z) continue;
        for (Vertex a : oz)
          for (Vertex b : owners(w))
            if (a != b) e.emplace_back(std::min(a, b), std::max(a, b));
      }
    }
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    L.edges = std::move(e);
  }
  try {
    L.metric = MetricView::from_level(V, L.members.items(), L.edges);
  } catch (const GraphError& err) {
    throw HierarchyError("level " + std::to_string(n) + ": " + err.what());
  }

  // (8) BFS-orderings
  L.bfs_order.assign(V, {});
  L.parent.assign(V, kNoVertex);
  for (Vertex x : L.members) L.bfs_order[x] = bfs_ordering(pm, L.cluster[x], x, &L.parent);

  levels_.push_back(std::move(L));
  return levels_.back();
}

Hierarchy build_hierarchy(const Graph& g, Vertex basepoint, const std::vector<LevelSpec>& specs) {
  Hierarchy h(g, basepoint);
  for (const auto& s : specs) h.build_next(s);
  return h;
}

std::vector<LevelSpec> level_specs_from_schedule(const ParameterSchedule& sched,
                                                 const std::vector<SplitPolicy>& policies) {
  std::vector<LevelSpec> out;
  for (std::size_t n = 0; n < sched.size(); ++n) {
    LevelSpec ls;
    ls.r = static_cast<Dist>(sched.r(n));
    ls.s = static_cast<Dist>(sched.s(n));
    if (n < policies.size()) ls.split = policies[n];
    out.push_back(ls);
  }
  return out;
}

std::vector<Vertex> bfs_ordering(const MetricView& m, std::span<const Vertex> cluster, Vertex center,
                                 std::vector<Vertex>* parent) {
  const std::size_t V = m.ambient_size();
  thread_local std::vector<Dist> dist;
  thread_local std::vector<std::uint32_t> pos;
  thread_local std::vector<char> in;
  if (dist.size() < V) {
    dist.assign(V, kInf);
    pos.assign(V, 0);
    in.assign(V, 0);
  }
  for (Vertex u : cluster) in[u] = 1;
  if (!in[center]) {
    for (Vertex u : cluster) in[u] = 0;
    throw HierarchyError("bfs_ordering: center " + std::to_string(center) + " not in its cluster");
  }
  const Graph& g = m.graph();
  std::vector<Vertex> order{center};
  dist[center] = 0;
  pos[center] = 0;
  if (parent) (*parent)[center] = kNoVertex;
  std::size_t begin = 0;
  while (begin < order.size()) {
    std::size_t end = order.size();
    // next sphere: unvisited cluster neighbors, keyed by the earliest
    // already-ordered neighbor
    std::vector<std::pair<std::uint32_t, Vertex>> next;
    for (std::size_t i = begin; i < end; ++i) {
      Vertex u = order[i];
      for (Vertex lw : g.neighbors(m.local(u))) {
        Vertex w = m.ambient(lw);
        if (!in[w] || dist[w] != kInf) continue;
        dist[w] = dist[u] + 1;
        next.emplace_back(0, w);
      }
    }
    for (auto& [key, w] : next) {
      std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
      Vertex bp = kNoVertex;
      for (Vertex lv : g.neighbors(m.local(w))) {
        Vertex v = m.ambient(lv);
        if (in[v] && dist[v] + 1 == dist[w] && pos[v] < best) {
          best = pos[v];
          bp = v;
        }
      }
      key = best;
      if (parent) (*parent)[w] = bp;
    }
    std::sort(next.begin(), next.end());
    for (auto& [key, w] : next) {
      pos[w] = static_cast<std::uint32_t>(order.size());
      order.push_back(w);
    }
    begin = end;
  }
  bool complete = order.size() == cluster.size();
  for (Vertex u : cluster) {
    in[u] = 0;
    dist[u] = kInf;
  }
  if (!complete)
    throw HierarchyError("bfs_ordering: cluster of " + std::to_string(center) + " is not connected");
  return order;
}

std::vector<Vertex> children(std::span<const Vertex> order, const std::vector<Vertex>& parent,
                             Vertex v) {
  std::vector<Vertex> out;
  for (Vertex u : order)
    if (parent[u] == v) out.push_back(u);
  return out;
}

std::vector<Vertex> children(const LevelState& level, Vertex v) {
  Vertex x = level.cluster_of[v];
  if (x == kNoVertex) return {};
  return children(level.bfs_order[x], level.parent, v);
}

std::vector<Vertex> compose_clusters(const Hierarchy& h, int n, int m, Vertex x, bool closed) {
  if (m >= n || m < -1) throw HierarchyError("compose_clusters: need -1 <= m < n");
  if (!h.members(n).contains(x))
    throw HierarchyError("compose_clusters: " + std::to_string(x) + " is not in level " + std::to_string(n));
  const LevelState& top = h.level(n);
  std::vector<Vertex> cur = closed ? top.closed_cluster[x] : top.cluster[x];
  for (int k = n - 1; k > m; --k) {
    const LevelState& lk = h.level(k);
    std::vector<Vertex> next;
    for (Vertex u : cur) {
      const auto& c = closed ? lk.closed_cluster[u] : lk.cluster[u];
      next.insert(next.end(), c.begin(), c.end());
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    cur = std::move(next);
  }
  return cur;
}

std::vector<Vertex> extended_cluster(const Hierarchy& h, int n, Vertex x) {
  std::vector<Vertex> out;
  for (auto [v, d] : h.metric(n).ball(x, static_cast<Dist>(n))) {
    auto c = n == 0 ? h.level(0).closed_cluster[v] : compose_clusters(h, n, -1, v, true);
    out.insert(out.end(), c.begin(), c.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::uint64_t level_L(const Hierarchy& h, int n) {
  std::uint64_t L = 1;
  for (int i = 0; i <= n; ++i) L *= 2 * std::uint64_t{h.level(i).R_plus()} + 1;
  return L;
}

std::uint64_t level_Gamma(const Hierarchy& h, int n, Sign g) {
  if (n < 0) return 0;
  std::uint64_t R = h.level(n).R_pm(g);
  return R * level_L(h, n - 1) + level_Gamma(h, n - 1, Sign::plus);
}

Dist default_bulk_margin(const Hierarchy& h, int n, Dist slack) {
  return static_cast<Dist>(level_Gamma(h, n, Sign::plus) + std::uint64_t(n) * level_L(h, n) + slack);
}

}  // namespace lac
