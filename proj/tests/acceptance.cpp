// Acceptance run: one line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "lacolor/workbench.hpp"
#include "spreadsheet.hpp"

using namespace lac;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) detail << "FIRST FAILURE: " << what << "; ";
      ok = false;
    }
  }
};

int failures = 0;

void criterion(int k, const std::string& title, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail << "exception: " << e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget_s) o.require(false, "runtime " + std::to_string(secs) + " s over budget");
  if (!o.ok) ++failures;
  std::printf("criterion %2d: %s  %s [%.2f s] %s\n", k, o.ok ? "PASS" : "FAIL", title.c_str(), secs,
              o.detail.str().c_str());
  std::fflush(stdout);
}

std::vector<Graph> corpus() {
  return {cycle_graph(5),       cycle_graph(120),        path_graph(40),         complete_graph(4),
          complete_bipartite_graph(3, 3), petersen_graph(), grid_graph(60, 60), tree_ball(3, 6),
          cayley_ball(CayleyGroup::F2, 4), cayley_ball(CayleyGroup::Z2, 8), prism_graph(60),
          torus_graph(12, 12),  random_bounded(5, 200, 1), random_bounded(3, 150, 2)};
}

const CheckLine* find(const VerificationReport& r, const std::string& id) { return r.find(id); }

std::string witness_str(const CheckLine& l) {
  if (l.witnesses.empty()) return "none";
  return "(" + std::to_string(l.witnesses.front().first) + "," + std::to_string(l.witnesses.front().second) + ")";
}

}  // namespace

int main() {
  criterion(1, "distinguishing numbers D(C5)=3 D(K4)=4 D(K33)=4 D(P4)=2 D(Petersen)=3", 10, [](Outcome& o) {
    struct Case {
      const char* name;
      Graph g;
      std::size_t want;
    };
    std::vector<Case> cases{{"C5", cycle_graph(5), 3},
                            {"K4", complete_graph(4), 4},
                            {"K33", complete_bipartite_graph(3, 3), 4},
                            {"P4", path_graph(4), 2},
                            {"Petersen", petersen_graph(), 3}};
    for (auto& c : cases) {
      auto r = distinguishing_number(c.g);
      o.detail << c.name << "=" << r.value << " ";
      o.require(r.value == c.want, std::string("D(") + c.name + ")");
      o.require(is_aperiodic(c.g, &r.witness), std::string("witness for ") + c.name + " is not aperiodic");
    }
  });

  criterion(2, "maximal separated sets: K-separated, (K-1)-dense, |A| > V/deg^K", 30, [](Outcome& o) {
    std::mt19937_64 rng(2024);
    std::size_t runs = 0;
    for (int t = 0; t < 200; ++t) {
      std::size_t delta = 2 + rng() % 4;
      std::size_t n = 3 + rng() % 198;
      Graph g = random_bounded(delta, n, rng());
      MetricView m(g);
      auto pri = default_priority(m, static_cast<Vertex>(rng() % n));
      std::uint64_t D = g.max_degree();
      for (Dist K : {2u, 3u, 4u}) {
        ++runs;
        VertexSet a = maximal_separated_set(m, K, pri);
        o.require(is_separated(m, a, K), "separation");
        o.require(relative_density_constant(m, a) <= K - 1, "density");
        std::uint64_t pw = 1;
        for (Dist k = 0; k < K; ++k) pw *= D;
        o.require(a.size() * pw > g.size(), "cardinality");
      }
    }
    o.detail << runs << " (graph,K) runs";
  });

  criterion(3, "growth bounds |S(x,r)| and |D(x,r)| for r <= 6 on the corpus", 10, [](Outcome& o) {
    std::size_t checks = 0;
    for (const Graph& g : corpus()) {
      std::uint64_t D = g.max_degree();
      for (Vertex x = 0; x < g.size(); ++x) {
        std::vector<std::size_t> count(7, 0);
        for (auto [v, d] : bounded_bfs(g, x, 6)) ++count[d];
        std::uint64_t sb = D, disk = 1;
        for (Dist r = 1; r <= 6; ++r) {
          disk += count[r];
          std::uint64_t db = D == 2 ? 1 + 2 * r : D == 3 ? 3 * (std::uint64_t{1} << r) : 4 * sheet::ipow(D - 1, r).convert_to<std::uint64_t>();
          o.require(count[r] <= sb, "sphere bound");
          o.require(disk <= db, "disk bound");
          sb *= D - 1;
          checks += 2;
        }
      }
    }
    o.detail << checks << " inequalities";
  });

  criterion(4, "constants: s_0 = 27+eps_0, r_bar = r_hat(3s+1), recursions match re-evaluation, r_hat_0 > 2^11", 5,
            [](Outcome& o) {
              for (int e0 : {1, 2, 5, 9}) {
                ScheduleRequest q;
                q.mode = ScheduleMode::paper;
                q.delta = 2;
                q.eps = {e0};
                auto s = build_schedule(q);
                o.require(s.at(0).s.value("s") == 27 + e0, "s_0");
              }
              std::size_t compared = 0;
              for (std::uint64_t D : {2u, 3u}) {
                ScheduleRequest q;
                q.mode = ScheduleMode::paper;
                q.delta = D;
                q.eps = {1, 2};
                auto ps = build_schedule(q);
                const auto& l0 = ps.at(0);
                o.require(l0.r_bar.value("r_bar") == l0.r_hat.value("r_hat") * (3 * l0.s.value("s") + 1), "r_bar");
                auto row = sheet::spreadsheet(D, {to_u64(l0.r, "r")}, {to_u64(l0.s, "s")})[0];
                o.require(l0.R_plus.str() == row.R_plus.str() && l0.R_minus.str() == row.R_minus.str() &&
                              l0.l.str() == row.l.str() && l0.L.str() == row.L.str() &&
                              l0.Gamma_plus.str() == row.Gamma_plus.str() &&
                              l0.Gamma_minus.str() == row.Gamma_minus.str() && l0.K_bar.str() == row.K_bar.str(),
                          "paper level 0");
                // s_1 = 27 + 10 L_0(r̄) + 2 Γ⁺_0(r̄) + ε_1
                sheet::cpp_int rp = sheet::cpp_int(l0.r_bar.value("r_bar").str()) * (2 * to_u64(l0.s, "s") + 3);
                o.require(ps.at(1).s.str() == sheet::cpp_int(27 + 10 * (2 * rp + 1) + 2 * rp + 2).str(), "s_1");
                compared += 8;

                std::vector<std::uint64_t> r{12, 15, 20}, s{3, 4, 5};
                ScheduleRequest d;
                d.delta = D;
                d.r = r;
                d.s = s;
                auto ds = build_schedule(d);
                auto rows = sheet::spreadsheet(D, r, s);
                for (std::size_t n = 0; n < 3; ++n) {
                  const auto& lv = ds.at(n);
                  const auto& w = rows[n];
                  bool same = lv.R_minus.str() == w.R_minus.str() && lv.R_plus.str() == w.R_plus.str() &&
                              lv.l.str() == w.l.str() && lv.L.str() == w.L.str() &&
                              lv.Gamma_minus.str() == w.Gamma_minus.str() &&
                              lv.Gamma_plus.str() == w.Gamma_plus.str() && lv.K_bar.str() == w.K_bar.str() &&
                              (n == 2 || lv.K.str() == w.K.str()) && lv.Upsilon.str() == w.Upsilon.str() &&
                              lv.delta.str() == w.delta.str() && (!w.delta_small || lv.Delta.str() == w.Delta.str());
                  o.require(same, "desk level " + std::to_string(n) + " degree " + std::to_string(D));
                  o.require(lv.r_bar.value("r_bar") == BigInt(r[n]) * (3 * s[n] + 1), "desk r_bar");
                  compared += 11;
                }
              }
              ScheduleRequest q;
              q.mode = ScheduleMode::paper;
              q.delta = 2;
              q.eps = {1};
              auto s2 = build_schedule(q);
              BigInt rh = s2.at(0).r_hat.value("r_hat");
              o.require(rh > 2048, "r_hat_0 > 2^11");
              o.require(rh == sheet::r_hat0_degree2_scan(), "r_hat_0 scan");
              o.detail << "r_hat_0(deg 2) = " << rh.str() << ", " << compared << " quantities compared";
            });

  criterion(5, "hierarchy invariants on grid 60x60 and the depth-6 3-regular tree ball", 120, [](Outcome& o) {
    struct Run {
      std::string name;
      Graph g;
      std::vector<Dist> margins;
      std::vector<SplitPolicy> split;
    };
    // the formula split yields only minus centers at desk radii; the extra
    // grid run forces plus centers at level 0 so the X+ lines are exercised
    std::vector<Run> runs{{"grid:60x60", grid_graph(60, 60), {12, 12}, {}},
                          {"tree:3x6", tree_ball(3, 6), {3, 3}, {}},
                          {"grid:200x200 plus-split", grid_graph(200, 200), {12, 12}, {SplitPolicy::all_plus, SplitPolicy::formula}}};
    const std::vector<std::string> required{"clusters-partition", "cluster-map",     "Y-separated",
                                            "X+-separated",       "X--separated",    "X-/X+-gap",
                                            "relatively-dense",   "disk-containment", "closed-cluster-radius",
                                            "star-shaped",        "metric-comparison", "degree-bound"};
    for (auto& run : runs) {
      ScheduleRequest q;
      q.delta = run.g.max_degree();
      q.r = {12, 4};
      q.s = {3, 3};
      auto sched = build_schedule(q);
      Hierarchy h = build_hierarchy(run.g, run.g.basepoint(), level_specs_from_schedule(sched, run.split));
      InvariantOptions io;
      io.margins = run.margins;
      auto rep = check_level_invariants(h, nullptr, nullptr, io);
      std::vector<std::string> skipped, vacuous;
      std::size_t checked = 0;
      for (int n = 0; n < 2; ++n)
        for (const auto& id : required) {
          std::string full = "L" + std::to_string(n) + "." + id;
          const CheckLine* l = find(rep, full);
          o.require(l != nullptr, run.name + " missing " + full);
          if (!l) continue;
          o.require(l->status != CheckStatus::fail, run.name + " " + full + " failed at " + witness_str(*l));
          o.require(l->status != CheckStatus::skipped, run.name + " " + full + " skipped");
          checked += l->checked;
          if (l->status == CheckStatus::boundary_skipped) skipped.push_back(full);
          if (l->status == CheckStatus::vacuous) vacuous.push_back(full);
        }
      for (const char* id : {"L0.disk-containment", "L0.star-shaped", "L0.clusters-partition", "L0.cluster-map"}) {
        const CheckLine* l = find(rep, id);
        o.require(l && l->status == CheckStatus::pass && l->checked > 0, run.name + " " + id + " not exercised");
      }
      o.require(rep.passed(), run.name + " report has a failing line");
      auto list = [](const std::vector<std::string>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + v[i];
        return s;
      };
      o.detail << run.name << ": |X0|=" << h.members(0).size() << " |X1|=" << h.members(1).size()
               << " checked=" << checked << " boundary-skipped=[" << list(skipped) << "] vacuous=[" << list(vacuous)
               << "]; ";
    }
  });

  criterion(6, "level-0 family rigidity on C120 and prism C60xK2 (|N| <= 4, all index pairs)", 120, [](Outcome& o) {
    std::size_t clusters = 0, pairs = 0;
    for (const Graph& g : {cycle_graph(120), prism_graph(60)}) {
      ScheduleRequest q;
      q.delta = g.max_degree();
      q.r = {12};
      q.s = {3};
      Hierarchy h = build_hierarchy(g, g.basepoint(), level_specs_from_schedule(build_schedule(q)));
      EquivalenceContext ctx(h);
      Palette pal = build_palette(h);
      for (Vertex x : h.members(0)) {
        const Family& f = pal.family(0, x);
        if (f.domain.size() > 64 || f.net.size() > 4) continue;
        ++clusters;
        std::uint64_t cap = f.capacity();
        std::vector<PointedPattern> pats;
        std::vector<std::vector<Color>> full;
        for (std::uint64_t i = 0; i < cap; ++i) {
          std::vector<Color> c(g.size(), kNoColor);
          f.paint(i, c);
          pats.push_back(make_pattern(g, f.domain, x, &c));
          full.push_back(std::move(c));
        }
        for (std::uint64_t i = 0; i < cap; ++i) {
          std::size_t nonid = 0;
          enumerate_equivalences(ctx, 0, x, x, false,
                                 [&](const EquivalenceWitness& w) {
                                   if (!w.is_identity()) ++nonid;
                                   return true;
                                 },
                                 &full[i]);
          enumerate_pointed_isomorphisms(pats[i], pats[i], [&](const Bijection& b) {
            for (std::size_t k = 0; k < b.size(); ++k)
              if (b[k] != k) {
                ++nonid;
                break;
              }
            return true;
          });
          o.require(nonid == 0, "nonidentity self-equivalence at center " + std::to_string(x) + " index " + std::to_string(i));
          for (std::uint64_t j = 0; j < cap; ++j) {
            ++pairs;
            bool iso = find_pointed_isomorphism(pats[i], pats[j]).has_value();
            o.require(iso == (i == j), "cross-index equivalence at center " + std::to_string(x));
          }
        }
      }
    }
    o.require(clusters > 0, "no cluster examined");
    o.detail << clusters << " clusters, " << pairs << " index pairs";
  });

  criterion(7, "finitary separation: grid 60x60 N=1 with 4 colors, C200 with 2 colors, eps=4", 300, [](Outcome& o) {
    auto run = [&](const std::string& path_text, std::size_t colors) {
      std::istringstream in(path_text);
      RunConfig cfg = RunConfig::parse(in, "acceptance");
      auto res = run_pipeline(cfg);
      const auto& g = res.graph;
      for (Color c : res.phi.coloring.colors) o.require(c < colors, "palette bound");
      o.require(g.max_degree() == colors, "degree");
      o.require(res.separating_delta.has_value(), to_string(cfg.generator) + " has no separating delta");
      const CheckLine* l = res.report.find("finitary");
      o.require(l && l->status == CheckStatus::pass, to_string(cfg.generator) + " finitary line");
      o.require(res.report.passed(), to_string(cfg.generator) + " report fails: " + res.report.summary());
      o.detail << to_string(cfg.generator) << ": delta=" << (res.separating_delta ? std::to_string(*res.separating_delta) : "none")
               << " pairs=" << (l ? l->checked : 0) << "; ";
    };
    run("generator = grid:60x60\nr = 12, 4\ns = 3, 3\nN = 1\nfamily_inner = -, 1\nfamily_sep = -, 1\n"
        "bulk_margin = 12, 12\nfinitary_margin = 0\nfinitary_eps = 4\ndelta_max = 14\n",
        4);
    run("generator = cycle:200\nr = 20\ns = 3\nN = 0\nfinitary_eps = 4\ndelta_max = 40\n", 2);
  });

  criterion(8, "backtracking isomorphism agrees with brute force on 500 random colored pointed graphs", 30,
            [](Outcome& o) {
              std::mt19937_64 rng(8);
              std::size_t found = 0;
              for (int t = 0; t < 500; ++t) {
                std::size_t n = 1 + rng() % 8;
                std::size_t delta = 2 + rng() % 3;
                Graph ga = n == 1 ? Graph(1, std::vector<Edge>{}) : random_bounded(delta, n, rng());
                // half the time compare with a relabelled copy
                Graph gb = ga;
                std::vector<Color> ca(n), cb(n);
                std::size_t k = 1 + rng() % 3;
                for (auto& c : ca) c = static_cast<Color>(rng() % k);
                Vertex pa = static_cast<Vertex>(rng() % n), pb;
                if (rng() % 2) {
                  std::vector<Vertex> perm(n);
                  for (Vertex v = 0; v < n; ++v) perm[v] = v;
                  std::shuffle(perm.begin(), perm.end(), rng);
                  std::vector<Edge> e;
                  for (auto [u, v] : ga.edges()) e.push_back({perm[u], perm[v]});
                  gb = Graph(n, e);
                  for (Vertex v = 0; v < n; ++v) cb[perm[v]] = ca[v];
                  pb = perm[pa];
                  if (rng() % 3 == 0) cb[rng() % n] = static_cast<Color>(rng() % k);
                } else {
                  gb = n == 1 ? ga : random_bounded(delta, n, rng());
                  for (auto& c : cb) c = static_cast<Color>(rng() % k);
                  pb = static_cast<Vertex>(rng() % n);
                }
                std::vector<Vertex> all(n);
                for (Vertex v = 0; v < n; ++v) all[v] = v;
                auto a = make_pattern(ga, all, pa, &ca), b = make_pattern(gb, all, pb, &cb);
                auto fast = find_pointed_isomorphism(a, b);
                auto slow = brute_force_pointed_isomorphism(a, b);
                o.require(fast.has_value() == slow.has_value(), "disagreement at trial " + std::to_string(t));
                if (fast) {
                  ++found;
                  const Bijection& f = *fast;
                  bool good = f[a.basepoint] == b.basepoint;
                  for (Vertex u = 0; u < n; ++u) {
                    good &= (*a.colors)[u] == (*b.colors)[f[u]];
                    for (Vertex v = 0; v < n; ++v) good &= a.graph.adjacent(u, v) == b.graph.adjacent(f[u], f[v]);
                  }
                  o.require(good, "returned map is not an isomorphism");
                }
              }
              o.detail << "500 trials, " << found << " isomorphic";
            });

  criterion(9, "distinguishing index via line graphs DI(C5)=3 DI(K13)=3 DI(P3)=2", 5, [](Outcome& o) {
    struct Case {
      const char* name;
      Graph g;
      std::size_t want;
    };
    std::vector<Case> cases{{"C5", cycle_graph(5), 3}, {"K13", complete_bipartite_graph(1, 3), 3}, {"P3", path_graph(3), 2}};
    for (auto& c : cases) {
      auto r = distinguishing_index(c.g);
      o.detail << c.name << "=" << r.value << " ";
      o.require(r.value == c.want, std::string("DI(") + c.name + ")");
    }
  });

  criterion(10, "fault injection: one color and one cluster assignment each flip a line to fail", 60, [](Outcome& o) {
    std::istringstream in("generator = grid:40x40\nr = 12\ns = 3\nbulk_margin = 12\ndelta_max = 12\n");
    auto res = run_pipeline(RunConfig::parse(in, "faults"));
    o.require(res.report.passed(), "clean run fails");
    Hierarchy& h = *res.hierarchy;
    InvariantOptions io;
    io.margins = {12};

    // one color
    Bulk bulk = make_bulk(res.graph, 12);
    Vertex x = kNoVertex;
    for (Vertex c : h.members(0))
      if (bulk.contains(c)) {
        x = c;
        break;
      }
    o.require(x != kNoVertex, "no bulk center");
    const Family& f = res.palette.family(0, x);
    PhiResult bad = res.phi;
    Vertex target = f.domain.back();
    bad.coloring.colors[target] = (bad.coloring.colors[target] + 1) % res.graph.max_degree();
    auto r1 = check_level_invariants(h, &res.palette, &bad, io);
    std::string hit1;
    for (const auto& l : r1.lines)
      if (l.status == CheckStatus::fail && !l.witnesses.empty()) {
        hit1 = l.id + " " + witness_str(l);
        break;
      }
    o.require(!hit1.empty(), "color fault not detected with a witness");

    // one cluster assignment
    LevelState& L0 = h.mutable_level(0);
    Vertex u = res.graph.neighbors(x)[0];
    Vertex y = kNoVertex;
    for (Vertex c : L0.members)
      if (c != x) {
        y = c;
        break;
      }
    auto& Cx = L0.cluster[x];
    Cx.erase(std::find(Cx.begin(), Cx.end(), u));
    auto& Cy = L0.cluster[y];
    Cy.insert(std::upper_bound(Cy.begin(), Cy.end(), u), u);
    L0.cluster_of[u] = y;
    auto r2 = check_level_invariants(h, nullptr, nullptr, io);
    std::string hit2;
    for (const auto& l : r2.lines)
      if (l.status == CheckStatus::fail && !l.witnesses.empty()) {
        hit2 = l.id + " " + witness_str(l);
        break;
      }
    o.require(!hit2.empty(), "cluster fault not detected with a witness");
    o.detail << "color fault at " << target << " -> " << hit1 << "; cluster fault " << u << " -> " << hit2;
  });

  std::printf("acceptance: %d failing criteria\n", failures);
  return failures == 0 ? 0 : 1;
}
