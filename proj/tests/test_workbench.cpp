#include <regex>
#include <sstream>

#include "doctest.h"
#include "lacolor/workbench.hpp"

using namespace lac;

TEST_CASE("generators") {
  Graph c5 = generate(parse_generator("cycle:5"));
  CHECK(c5.size() == 5);
  CHECK(c5.max_degree() == 2);
  Graph g = generate(parse_generator("grid:5x5"));
  CHECK(g.size() == 25);
  CHECK(g.max_degree() == 4);
  CHECK(g.basepoint() == 12);
  Graph f2 = cayley_ball(CayleyGroup::F2, 3);
  CHECK(f2.size() == 53);
  for (Dist r = 1; r <= 3; ++r) {
    std::size_t expect = 4;
    for (Dist k = 1; k < r; ++k) expect *= 3;
    CHECK(sphere(f2, 0, r).size() == expect);
  }
  CHECK(tree_ball(3, 6).size() == 190);
  CHECK(petersen_graph().size() == 10);
  CHECK(prism_graph(60).size() == 120);
  CHECK(prism_graph(60).max_degree() == 3);
  Graph r = random_bounded(5, 200, 9);
  CHECK(r.size() == 200);
  CHECK(r.max_degree() <= 5);
  CHECK(graph_to_json(random_bounded(5, 200, 9)) == graph_to_json(r));

  for (std::string s : {"grid:60x60", "tree:3x6", "cayley:F2:3", "random:5x200:7", "complete_bipartite:3x3", "petersen",
                        "prism:60"})
    CHECK(to_string(parse_generator(s)) == s);
  CHECK_THROWS_AS(parse_generator("grid:5"), WorkbenchError);
  CHECK_THROWS_AS(parse_generator("moebius:3"), WorkbenchError);
}

TEST_CASE("line graphs") {
  CHECK(line_graph(cycle_graph(5)).size() == 5);
  Graph star = complete_bipartite_graph(1, 3);
  Graph lg = line_graph(star);
  CHECK(lg.size() == 3);
  CHECK(lg.edge_count() == 3);
  CHECK(line_graph(path_graph(3)).size() == 2);
}

TEST_CASE("distinguishing numbers") {
  CHECK(distinguishing_number(cycle_graph(5)).value == 3);
  CHECK(distinguishing_number(complete_graph(4)).value == 4);
  CHECK(distinguishing_number(complete_bipartite_graph(3, 3)).value == 4);
  CHECK(distinguishing_number(path_graph(4)).value == 2);
  CHECK(distinguishing_number(petersen_graph()).value == 3);
  auto r = distinguishing_number(petersen_graph());
  CHECK(is_aperiodic(petersen_graph(), &r.witness));
  CHECK(distinguishing_index(cycle_graph(5)).value == 3);
  CHECK(distinguishing_index(complete_bipartite_graph(1, 3)).value == 3);
  CHECK(distinguishing_index(path_graph(3)).value == 2);
  CHECK_THROWS_AS(distinguishing_number(cycle_graph(65)), WorkbenchError);
}

TEST_CASE("candidate colorings") {
  Graph t = tree_ball(3, 4);
  auto ct = bfs_candidate_coloring(t, 0);
  CHECK(ct.coloring.palette_bound <= 3);
  CHECK(check_aperiodic_finite(t, ct.coloring.colors).lines.front().status == CheckStatus::pass);

  Graph p8 = path_graph(8);
  auto cp = bfs_candidate_coloring(p8, 0);
  CHECK(cp.marker_length == 5);
  CHECK(cp.coloring.palette_bound == 2);
  CHECK(cp.coloring.colors == std::vector<Color>{0, 0, 0, 1, 1, 0, 1, 1});
  CHECK(check_aperiodic_finite(p8, cp.coloring.colors).lines.front().status == CheckStatus::pass);

  // C5 is exceptional: two colors cannot break its symmetry
  auto c5 = bfs_candidate_coloring(cycle_graph(5), 0);
  CHECK(check_aperiodic_finite(cycle_graph(5), c5.coloring.colors).lines.front().status == CheckStatus::fail);
}

TEST_CASE("json round trips") {
  for (std::string s : {"grid:7x5", "tree:3x3", "cycle:12", "random:4x50:3"}) {
    CAPTURE(s);
    Graph g = generate(parse_generator(s));
    Graph back = graph_from_json(graph_to_json(g));
    CHECK(back.size() == g.size());
    CHECK(back.edges() == g.edges());
    CHECK(back.basepoint() == g.basepoint());
    CHECK(back.boundary() == g.boundary());
  }
  Coloring c(std::vector<Color>{0, 2, 1}, 4);
  Coloring cb = coloring_from_json(coloring_to_json(c), 3);
  CHECK(cb.colors == c.colors);
  CHECK(cb.palette_bound == 4);
  CHECK_THROWS(coloring_from_json(coloring_to_json(c), 4));

  VerificationReport rep;
  CheckLine l;
  l.id = "x";
  l.status = CheckStatus::fail;
  l.checked = 3;
  l.witnesses = {{1, 2}};
  rep.lines.push_back(l);
  auto rb = report_from_json(report_to_json(rep));
  REQUIRE(rb.lines.size() == 1);
  CHECK(rb.lines[0].status == CheckStatus::fail);
  CHECK(rb.lines[0].witnesses == l.witnesses);
  CHECK_THROWS(graph_from_json(nlohmann::json::parse(R"({"vertices": 3, "edges": [[0, 5]]})")));
}

TEST_CASE("levels json checks against a rebuild") {
  Graph g = cycle_graph(200);
  LevelsFile meta;
  meta.specs = {{12, 3, SplitPolicy::formula}};
  Hierarchy h = build_hierarchy(g, g.basepoint(), meta.specs);
  auto j = levels_to_json(h, meta);
  auto back = levels_meta_from_json(j);
  CHECK(back.specs.size() == 1);
  CHECK(back.specs[0].r == 12);
  CHECK_NOTHROW(check_levels_json(h, j));
  Hierarchy other = build_hierarchy(g, g.basepoint(), {{13, 3, SplitPolicy::formula}});
  CHECK_THROWS(check_levels_json(other, j));
}

TEST_CASE("dot export") {
  Graph g = cycle_graph(6);
  std::vector<Color> c{0, 1, 2, 0, 1, 2};
  std::ostringstream os;
  export_dot(g, &c, os);
  std::string s = os.str();
  CHECK(s.rfind("graph ", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '{') == std::count(s.begin(), s.end(), '}'));
  std::regex edge(R"(\s*\d+ -- \d+;)");
  std::istringstream in(s);
  std::size_t edges = 0;
  for (std::string ln; std::getline(in, ln);)
    if (std::regex_match(ln, edge)) ++edges;
  CHECK(edges == 6);
}

TEST_CASE("run config parsing") {
  std::istringstream in(R"(# grid run
generator = grid:20x20
r = 12, 4
s = 3, 3
N = 1
family_inner = -, 1
bulk_margin = 12, 12
)");
  RunConfig c = RunConfig::parse(in, "t.cfg");
  CHECK(to_string(c.generator) == "grid:20x20");
  CHECK(c.r == std::vector<std::uint64_t>{12, 4});
  CHECK(c.N == 1);
  REQUIRE(c.family_inner.size() == 2);
  CHECK_FALSE(c.family_inner[0]);
  CHECK(*c.family_inner[1] == 1);
  std::istringstream again(c.str());
  CHECK(RunConfig::parse(again, "again") == c);

  std::istringstream bad("r = twelve\n");
  try {
    RunConfig::parse(bad, "bad.cfg");
    CHECK(false);
  } catch (const WorkbenchError& e) {
    CHECK(std::string(e.what()).find("bad.cfg:1") != std::string::npos);
  }
  std::istringstream unk("colour = 3\n");
  CHECK_THROWS_AS(RunConfig::parse(unk, "u"), WorkbenchError);
}

TEST_CASE("pipeline on a 40-cycle passes") {
  RunConfig c;
  c.generator = parse_generator("cycle:40");
  c.delta_max = 16;
  auto res = run_pipeline(c);
  INFO(res.report.summary());
  CHECK(res.report.passed());
  REQUIRE(res.separating_delta);
  for (Color col : res.phi.coloring.colors) CHECK(col < 2);
  CHECK(res.report.find("aperiodic") != nullptr);
}
