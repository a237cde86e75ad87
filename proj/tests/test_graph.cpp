#include "doctest.h"
#include "lacolor/workbench.hpp"

using namespace lac;

namespace {

std::vector<Vertex> items(const VertexSet& s) { return s.items(); }

std::vector<Dist> dists(const Graph& g, Vertex x) { return bfs_distances(g, x); }

}  // namespace

TEST_CASE("distances on a path and a cycle") {
  CHECK(dists(path_graph(5), 0) == std::vector<Dist>{0, 1, 2, 3, 4});
  CHECK(dists(cycle_graph(6), 0) == std::vector<Dist>{0, 1, 2, 3, 2, 1});
  Graph g = random_bounded(4, 30, 3);
  for (Vertex x = 0; x < g.size(); ++x) CHECK(distance(g, x, x) == 0);
}

TEST_CASE("disks, spheres, coronas, penumbrae") {
  Graph c6 = cycle_graph(6);
  CHECK(items(disk(c6, 0, 1)) == std::vector<Vertex>{0, 1, 5});
  CHECK(items(corona(c6, 0, 0, 2)) == std::vector<Vertex>{1, 2, 4, 5});
  CHECK(items(sphere(path_graph(5), 0, 4)) == std::vector<Vertex>{4});
  // the line attains 1+2r
  CHECK(disk(path_graph(21), 10, 3).size() == 7);
  CHECK(disk(tree_ball(3, 4), 0, 2).size() == 10);
  Graph g = grid_graph(7, 7);
  VertexSet q(g.size(), {g.basepoint()});
  CHECK(closed_penumbra(g, q, 2) == disk(g, g.basepoint(), 2));
}

TEST_CASE("graph construction rejects bad input") {
  std::vector<Edge> loop{{0, 0}};
  CHECK_THROWS_AS(Graph(2, loop), GraphError);
  std::vector<Edge> dup{{0, 1}, {0, 1}};
  CHECK_THROWS_AS(Graph(2, dup), GraphError);
  std::vector<Edge> split{{0, 1}, {2, 3}};
  CHECK_THROWS_AS(Graph(4, split), GraphError);
  std::vector<Edge> out{{0, 7}};
  CHECK_THROWS_AS(Graph(2, out), GraphError);
}

TEST_CASE("maximal separated sets follow the priority") {
  MetricView p5(path_graph(5));
  std::vector<Vertex> idx{0, 1, 2, 3, 4};
  CHECK(items(maximal_separated_set(p5, 2, idx)) == std::vector<Vertex>{0, 2, 4});
  CHECK(maximal_separated_set(p5, 1, idx).size() == 5);
  MetricView c6(cycle_graph(6));
  std::vector<Vertex> idx6{0, 1, 2, 3, 4, 5};
  CHECK(items(maximal_separated_set(c6, 3, idx6)) == std::vector<Vertex>{0, 3});
  CHECK(is_separated(c6, VertexSet(6, {0, 3}), 3));
  CHECK_FALSE(is_separated(c6, VertexSet(6, {0, 2}), 3));
}

TEST_CASE("relative density constants") {
  MetricView p5(path_graph(5));
  CHECK(relative_density_constant(p5, VertexSet(5, {0, 2, 4})) == 1);
  CHECK(relative_density_constant(p5, VertexSet(5, {0, 1, 2, 3, 4})) == 0);
  CHECK_THROWS_AS(relative_density_constant(p5, VertexSet(5)), GraphError);
}

TEST_CASE("level metrics") {
  Graph g = grid_graph(5, 5);
  MetricView all(g);
  auto E = g.edges();
  MetricView same = induced_level_metric(g, VertexSet(g.size(), all.members()), E);
  for (Vertex x = 0; x < g.size(); ++x) CHECK(same.distances_from(x) == all.distances_from(x));

  // two centers joined by one edge
  std::vector<Edge> one{{3, 17}};
  MetricView two = MetricView::from_level(25, {3, 17}, one);
  CHECK(two.distance(3, 17) == 1);
  CHECK(two.adjacent(3, 17));
  std::vector<Edge> none;
  CHECK_THROWS_AS(MetricView::from_level(25, {3, 17}, none), GraphError);
}

TEST_CASE("level-0 distances dominate the level metric") {
  Graph g = grid_graph(5, 5);
  Hierarchy h = build_hierarchy(g, g.basepoint(), {{1, 3, SplitPolicy::all_minus}});
  const MetricView& d0 = h.metric(0);
  for (Vertex x : d0.members()) {
    auto a = d0.distances_from(x);
    auto b = bfs_distances(g, x);
    for (Vertex y : d0.members()) CHECK(a[y] <= b[y]);
  }
}

TEST_CASE("sphere growth bounds") {
  // |S(x,r)| <= Δ(Δ-1)^{r-1}
  for (const Graph& g : {grid_graph(9, 9), tree_ball(3, 5), petersen_graph(), random_bounded(5, 120, 11)}) {
    std::uint64_t D = g.max_degree();
    for (Vertex x = 0; x < g.size(); x += 7) {
      std::uint64_t bound = D;
      for (Dist r = 1; r <= 6; ++r) {
        CHECK(sphere(g, x, r).size() <= bound);
        bound *= D - 1;
      }
    }
  }
}
