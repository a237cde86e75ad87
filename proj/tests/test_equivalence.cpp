#include "doctest.h"
#include "lacolor/workbench.hpp"

using namespace lac;

TEST_CASE("zero-equivalence: identity, rotation, cardinality") {
  Graph g = cycle_graph(20);
  Hierarchy h = build_hierarchy(g, 0, {{2, 3, SplitPolicy::all_minus}});
  EquivalenceContext ctx(h);
  auto id = zero_equivalence(ctx, 5, 5);
  REQUIRE(id);
  CHECK(id->is_identity());
  CHECK_FALSE(check_equivalence(ctx, *id));

  auto f = zero_equivalence(ctx, 0, 5);
  REQUIRE(f);
  CHECK(f->apply(0) == 5);
  CHECK_FALSE(check_equivalence(ctx, *f));

  Graph g21 = cycle_graph(21);
  Hierarchy h21 = build_hierarchy(g21, 0, {{2, 3, SplitPolicy::all_minus}});
  // centers 0,5,10,16; the 16 cluster absorbs the odd vertex
  REQUIRE(h21.members(0).items() == std::vector<Vertex>{0, 5, 10, 16});
  REQUIRE(h21.level(0).cluster[16].size() == 6);
  REQUIRE(h21.level(0).cluster[5].size() == 5);
  EquivalenceContext ctx21(h21);
  CHECK_FALSE(zero_equivalence(ctx21, 16, 5));
}

TEST_CASE("a corrupted witness names the violated clause") {
  Graph g = cycle_graph(20);
  Hierarchy h = build_hierarchy(g, 0, {{2, 3, SplitPolicy::all_minus}});
  EquivalenceContext ctx(h);
  auto f = zero_equivalence(ctx, 0, 5);
  REQUIRE(f);
  auto pairs = f->forward;
  std::swap(pairs[0].second, pairs[1].second);
  auto bad = EquivalenceWitness::from_pairs(0, false, 0, 5, pairs);
  CHECK(check_equivalence(ctx, bad).has_value());
}

TEST_CASE("level-1 equivalences on a long cycle") {
  Graph g = cycle_graph(400);
  Hierarchy h = build_hierarchy(g, 0, {{2, 3, SplitPolicy::all_minus}, {2, 3, SplitPolicy::all_minus}});
  EquivalenceContext ctx(h);
  compute_representatives(ctx, 0);
  const auto& X1 = h.members(1).items();
  REQUIRE(X1.size() >= 4);
  // χ_0 alternates 1,2 along the cycle, so centers 50 apart match
  Vertex x = 50, y = 100;
  REQUIRE(h.members(1).contains(x));
  REQUIRE(h.members(1).contains(y));
  CHECK_FALSE(n_equivalence(ctx, 1, 50, 75));
  auto id = n_equivalence(ctx, 1, x, x);
  REQUIRE(id);
  CHECK(id->is_identity());
  auto f = n_equivalence(ctx, 1, x, y);
  auto w = weak_equivalence(ctx, 1, x, y);
  bool same_shape = h.level(1).cluster[x].size() == h.level(1).cluster[y].size();
  if (same_shape) {
    REQUIRE(f);
    REQUIRE(w);
    CHECK(f->apply(x) == y);
    CHECK_FALSE(check_equivalence(ctx, *f));
    CHECK_FALSE(check_equivalence(ctx, *w));

    // perturb χ_0 at one level-0 center near y
    EquivalenceContext bent(h);
    compute_representatives(bent, 0);
    Vertex u = h.level(1).cluster[y].front() == y ? h.level(1).cluster[y].back() : h.level(1).cluster[y].front();
    bent.chi[0][u] += 7;
    CHECK_FALSE(n_equivalence(bent, 1, x, y));
    CHECK_FALSE(weak_equivalence(bent, 1, x, y));
  }
}

TEST_CASE("evenly spaced cycle centers form one class per sign") {
  Graph g = cycle_graph(20);
  Hierarchy h = build_hierarchy(g, 0, {{2, 3, SplitPolicy::all_minus}});
  EquivalenceContext ctx(h);
  const auto& reps = compute_representatives(ctx, 0);
  CHECK(reps.classes == 1);
  for (Vertex x : h.members(0)) {
    CHECK(reps.rep[x] == 0);
    REQUIRE(reps.h[x]);
    CHECK(reps.h[x]->apply(0) == x);
  }
  CHECK(reps.h[0]->is_identity());
}

TEST_CASE("representatives are least in their class") {
  Graph g = grid_graph(30, 30);
  Hierarchy h = build_hierarchy(g, g.basepoint(), {{2, 3, SplitPolicy::formula}});
  EquivalenceContext ctx(h);
  const auto& reps = compute_representatives(ctx, 0);
  auto dp = h.metric(0).distances_from(h.basepoint());
  for (Vertex x : h.members(0)) {
    Vertex r = reps.rep[x];
    CHECK(h.members(0).contains(r));
    CHECK(h.level(0).sign[r] == h.level(0).sign[x]);
    if (r != x) {
      REQUIRE(reps.h[x]);
      CHECK_FALSE(check_equivalence(ctx, *reps.h[x]));
    }
    // no member of the class precedes its representative
    if (reps.rep[x] == r && r != x) CHECK(h.less(r, x));
  }
  CHECK(reps.classes >= 1);
  CHECK(reps.classes <= h.members(0).size());
}

TEST_CASE("canonical palettes agree on equivalent centers") {
  Graph g = cycle_graph(400);
  Hierarchy h = build_hierarchy(g, 0, {{12, 3, SplitPolicy::all_minus}});
  EquivalenceContext ctx(h);
  compute_all_representatives(ctx);
  apply_canonical_orderings(h, ctx);
  Palette pal = build_canonical_palette(h, ctx);
  const auto& reps = ctx.reps[0];
  for (Vertex x : h.members(0)) {
    Vertex r = reps.rep[x];
    const Family& fx = pal.family(0, x);
    const Family& fr = pal.family(0, r);
    REQUIRE(fx.domain.size() == fr.domain.size());
    for (std::uint64_t i = 0; i < fr.capacity(); ++i) {
      auto cr = fr.realize(i), cx = fx.realize(i);
      for (std::size_t k = 0; k < fr.domain.size(); ++k) {
        Vertex u = fr.domain[k];
        CHECK(cx[fx.position(reps.h[x]->apply(u))] == cr[k]);
      }
    }
  }
}
