#include <algorithm>
#include <set>

#include "doctest.h"
#include "lacolor/workbench.hpp"

using namespace lac;

namespace {

Color color_at(const Family& f, const std::vector<Color>& c, Vertex u) { return c[f.position(u)]; }

}  // namespace

TEST_CASE("chi is the greedy minimum, not order-monotone") {
  Graph g = cycle_graph(20);
  Hierarchy h = build_hierarchy(g, 0, {{2, 3, SplitPolicy::all_minus}});
  auto c = chi(h, 0);
  CHECK(c.chi[0] == 1);
  CHECK(c.chi[5] == 2);
  CHECK(c.chi[15] == 2);
  CHECK(c.chi[10] == 1);
  // 10 comes after 5 in the order yet gets the smaller value
  CHECK(h.less(5, 10));
}

TEST_CASE("chi of an isolated center is 1 and nearby centers differ") {
  Graph g = path_graph(41);
  Hierarchy h = build_hierarchy(g, g.basepoint(), {{12, 3, SplitPolicy::all_minus}});
  CHECK(chi(h, 0).chi[20] == 1);

  Graph big = grid_graph(40, 40);
  Hierarchy hb = build_hierarchy(big, big.basepoint(), {{2, 3, SplitPolicy::formula}});
  const LevelState& L0 = hb.level(0);
  auto cb = chi(hb, 0);
  for (Vertex x : L0.members) {
    CHECK(cb.chi[x] != 0);
    CHECK(cb.chi[x] < cb.index_size[x]);
    auto d = bfs_distances(big, x);
    for (Vertex y : L0.members)
      if (y != x && L0.sign[x] == L0.sign[y] && d[y] <= L0.r_pm(L0.sign[x]) * L0.s) CHECK(cb.chi[x] != cb.chi[y]);
  }
}

TEST_CASE("level-0 marker on a path") {
  Graph g = path_graph(41);
  Hierarchy hm = build_hierarchy(g, 20, {{12, 3, SplitPolicy::all_minus}});
  Hierarchy hp = build_hierarchy(g, 20, {{12, 3, SplitPolicy::all_plus}});
  Family fm = adapted_psi0_level0(hm, 20);
  Family fp = adapted_psi0_level0(hp, 20);
  REQUIRE(fm.marker == std::vector<Vertex>{20, 19, 18, 17, 16, 15});
  std::vector<Color> pattern;
  for (Vertex t : fm.marker) pattern.push_back(color_at(fm, fm.base, t));
  CHECK(pattern == std::vector<Color>{0, 0, 0, 1, 1, 0});
  // everything else gets the only nonzero color
  for (std::size_t k = 0; k < fm.domain.size(); ++k)
    if (std::find(fm.marker.begin(), fm.marker.end(), fm.domain[k]) == fm.marker.end()) CHECK(fm.base[k] == 1);
  // plus and minus differ exactly at τ4
  REQUIRE(fp.domain == fm.domain);
  std::vector<Vertex> diff;
  for (std::size_t k = 0; k < fm.domain.size(); ++k)
    if (fm.base[k] != fp.base[k]) diff.push_back(fm.domain[k]);
  CHECK(diff == std::vector<Vertex>{fm.marker[4]});
}

TEST_CASE("level-0 children injectivity on a tree") {
  Graph g = tree_ball(3, 7);
  Hierarchy h = build_hierarchy(g, 0, {{12, 3, SplitPolicy::all_minus}});
  const LevelState& L0 = h.level(0);
  for (Vertex x : L0.members) {
    Family f = adapted_psi0_level0(h, x);
    std::vector<Color> col(g.size(), kNoColor);
    f.paint(0, col);
    for (Vertex u : L0.bfs_order[x]) {
      std::set<Color> seen;
      for (Vertex c : children(L0, u)) CHECK(seen.insert(col[c]).second);
    }
    // color 0 stays inside D(x,7)
    auto d = bfs_distances(g, x);
    for (Vertex u : f.domain)
      if (col[u] == 0) CHECK(d[u] <= 7);
  }
}

TEST_CASE("level-0 families") {
  Graph g = grid_graph(40, 40);
  Hierarchy h = build_hierarchy(g, g.basepoint(), {{12, 3, SplitPolicy::all_minus}});
  std::size_t small_nets = 0;
  for (Vertex x : h.level(0).members) {
    Family f = family_level0(h, x);
    CHECK(f.realize(0) == f.base);
    if (!f.net.empty()) {
      auto one = f.realize(1);
      std::vector<Vertex> extra;
      for (std::size_t k = 0; k < f.domain.size(); ++k)
        if (one[k] == 0 && f.base[k] != 0) extra.push_back(f.domain[k]);
      CHECK(extra == std::vector<Vertex>{f.net[0]});
    }
    if (f.net.size() <= 4) {
      ++small_nets;
      std::set<std::vector<Color>> all;
      for (std::uint64_t i = 0; i < f.capacity(); ++i) all.insert(f.realize(i));
      CHECK(all.size() == f.capacity());
      CHECK_THROWS_AS(f.realize(f.capacity()), CapacityError);
    }
    // net is 3-separated and inside the corona
    auto d = bfs_distances(g, x);
    for (Vertex u : f.net) {
      CHECK(d[u] > 10);
      CHECK(d[u] <= 11);
      auto du = bfs_distances(g, u);
      for (Vertex v : f.net)
        if (u != v) CHECK(du[v] >= 3);
    }
  }
  CHECK(small_nets == 0);

  // a path cluster has a two-point net
  Graph p = path_graph(41);
  Hierarchy hp = build_hierarchy(p, 20, {{12, 3, SplitPolicy::all_minus}});
  Family f = family_level0(hp, 20);
  CHECK(f.net == std::vector<Vertex>{9, 31});
  std::set<std::vector<Color>> all;
  for (std::uint64_t i = 0; i < 4; ++i) all.insert(f.realize(i));
  CHECK(all.size() == 4);
}

TEST_CASE("net of size 3 gives 8 distinct colorings") {
  Family f;
  f.domain = {0, 1, 2, 3, 4};
  f.base = {1, 1, 1, 1, 1};
  f.net = {1, 3, 4};
  f.net_color = 0;
  CHECK(f.capacity() == 8);
  std::set<std::vector<Color>> all;
  for (std::uint64_t i = 0; i < 8; ++i) all.insert(f.realize(i));
  CHECK(all.size() == 8);
  CHECK(f.subset(1) == std::vector<Vertex>{1});
  CHECK(f.subset(6) == std::vector<Vertex>{3, 4});
}

TEST_CASE("level-n colors") {
  Graph g = cycle_graph(800);
  Hierarchy h = build_hierarchy(g, 0, {{12, 3, SplitPolicy::all_minus}, {4, 3, SplitPolicy::formula}});
  FamilyOptions fo;
  fo.inner = {std::nullopt, 1};
  fo.sep = {std::nullopt, 1};
  const LevelState& L1 = h.level(1);
  REQUIRE(L1.members.size() >= 2);
  for (Vertex x : L1.members) {
    Family f = family_leveln(h, 1, x, fo);
    CHECK(f.net_color == 4);
    Color center = L1.sign[x] == Sign::plus ? 2 : 1;
    for (std::size_t k = 0; k < f.domain.size(); ++k) {
      if (f.domain[k] == x) CHECK(f.base[k] == center);
      else CHECK(f.base[k] == 6);
    }
    auto d0 = h.metric(0).distances_from(x);
    for (std::uint64_t i = 0; i < std::min<std::uint64_t>(f.capacity(), 16); ++i) {
      auto c = f.realize(i);
      std::vector<Vertex> fours;
      for (std::size_t k = 0; k < f.domain.size(); ++k) {
        if (c[k] == 4) {
          fours.push_back(f.domain[k]);
          CHECK(d0[f.domain[k]] <= L1.r_pm(L1.sign[x]) - 1);
        }
        CHECK(c[k] != 0);
        CHECK(c[k] != 3);
        CHECK(c[k] != 5);
      }
      auto sub = f.subset(i);
      std::sort(sub.begin(), sub.end());
      CHECK(fours == sub);
    }
  }
}

TEST_CASE("pair index") {
  CHECK(pair_index(0, 0) == 0);
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 4; ++i)
    for (std::uint64_t j = 0; j < 4; ++j) {
      auto k = pair_index(i, j);
      CHECK(k < 16);
      seen.insert(k);
      CHECK(unpair_index(k) == std::make_pair(i, j));
    }
  CHECK(seen.size() == 16);
  CHECK(pair_index(0, 1) == 1);
  CHECK(pair_index(1, 0) == 2);
  CHECK(pair_index(1, 1) == 3);
  CHECK_THROWS(pair_index(4, 0, 4));
}

TEST_CASE("phi with N = 0 on one cluster") {
  Graph g = path_graph(41);
  Hierarchy h = build_hierarchy(g, 20, {{12, 3, SplitPolicy::all_minus}});
  Palette pal = build_palette(h);
  auto phi = build_phi(h, pal, 0);
  Color c = pal.chi[0].chi[20];
  CHECK(phi.index[0][20] == pair_index(c, 0));
  std::vector<Color> want(g.size(), kNoColor);
  pal.family(0, 20).paint(pair_index(c, 0), want);
  CHECK(phi.coloring.colors == want);
}

TEST_CASE("phi uses at most degree-many colors") {
  for (std::string spec : {"grid:40x40", "grid:25x60"}) {
    CAPTURE(spec);
    Graph g = generate(parse_generator(spec));
    Hierarchy h = build_hierarchy(g, g.basepoint(), {{12, 3, SplitPolicy::formula}});
    Palette pal = build_palette(h);
    auto phi = build_phi(h, pal, 0);
    for (Color c : phi.coloring.colors) CHECK(c < g.max_degree());
    phi.coloring.validate();
  }
}

TEST_CASE("capacity errors name level and center") {
  // a cycle corona holds only two net points at r = 12
  Graph c = cycle_graph(200);
  Hierarchy hc = build_hierarchy(c, 0, {{12, 3, SplitPolicy::formula}});
  Palette pc = build_palette(hc);
  CHECK_THROWS_AS(build_phi(hc, pc, 0), CapacityError);

  Family f;
  f.n = 1;
  f.center = 7;
  f.domain = {7};
  f.base = {1};
  try {
    f.realize(1);
    CHECK(false);
  } catch (const CapacityError& e) {
    CHECK(e.level == 1);
    CHECK(e.center == 7);
  }
}
