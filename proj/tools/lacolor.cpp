#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "lacolor/workbench.hpp"

using namespace lac;
using nlohmann::json;

namespace {

struct Built {
  std::unique_ptr<Hierarchy> h;
  std::unique_ptr<EquivalenceContext> ctx;
  Palette pal;
};

Built rebuild(const Graph& g, const json& levels) {
  LevelsFile meta = levels_meta_from_json(levels);
  Built b;
  b.h = std::make_unique<Hierarchy>(build_hierarchy(g, g.basepoint(), meta.specs));
  check_levels_json(*b.h, levels);
  if (meta.canonical) {
    b.ctx = std::make_unique<EquivalenceContext>(*b.h);
    compute_all_representatives(*b.ctx);
    apply_canonical_orderings(*b.h, *b.ctx);
    b.pal = build_canonical_palette(*b.h, *b.ctx, meta.family);
  } else {
    b.pal = build_palette(*b.h, meta.family);
  }
  return b;
}

void emit(const std::string& path, const json& j) {
  if (path.empty() || path == "-") std::cout << j.dump(1) << "\n";
  else write_json_file(path, j);
}

std::vector<std::optional<Dist>> opt_dists(const std::vector<std::string>& v) {
  std::vector<std::optional<Dist>> out;
  for (const auto& t : v) out.push_back(t == "-" ? std::nullopt : std::optional<Dist>(std::stoul(t)));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Limit-aperiodic colorings of bounded-degree graph patches"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a graph");
  std::string gen_kind, gen_out;
  gen->add_option("kind", gen_kind, "e.g. grid:60x60, tree:3x6, cayley:F2:3, random:5x200:7")->required();
  gen->add_option("-o,--out", gen_out, "output JSON (stdout if omitted)");

  // constants
  auto* cons = app.add_subcommand("constants", "Evaluate the parameter schedule");
  std::string cons_mode = "desk", cons_out;
  std::uint64_t cons_delta = 2;
  std::vector<std::uint64_t> cons_r, cons_s, cons_eps;
  std::size_t cons_levels = 0;
  std::vector<int> cons_hat;
  cons->add_option("--mode", cons_mode)->check(CLI::IsMember({"desk", "paper"}));
  cons->add_option("--Delta", cons_delta, "degree bound")->required();
  cons->add_option("--r", cons_r)->delimiter(',');
  cons->add_option("--s", cons_s)->delimiter(',');
  cons->add_option("--eps", cons_eps)->delimiter(',');
  cons->add_option("--levels", cons_levels);
  cons->add_option("--hat", cons_hat, "per level: 1 selects the r_hat case")->delimiter(',');
  cons->add_option("-o,--out", cons_out);

  // levels
  auto* lev = app.add_subcommand("levels", "Build the level hierarchy");
  std::string lev_graph, lev_out;
  std::vector<std::uint64_t> lev_r, lev_s;
  std::vector<std::string> lev_split, lev_inner, lev_sep;
  bool lev_canonical = false;
  lev->add_option("--graph", lev_graph)->required();
  lev->add_option("--r", lev_r)->delimiter(',')->required();
  lev->add_option("--s", lev_s)->delimiter(',')->required();
  lev->add_option("--split", lev_split)->delimiter(',');
  lev->add_option("--family-inner", lev_inner)->delimiter(',');
  lev->add_option("--family-sep", lev_sep)->delimiter(',');
  lev->add_flag("--canonical", lev_canonical);
  lev->add_option("-o,--out", lev_out);

  // color
  auto* col = app.add_subcommand("color", "Build the coloring from levels");
  std::string col_graph, col_levels, col_out;
  int col_N = 0;
  col->add_option("--graph", col_graph)->required();
  col->add_option("--levels", col_levels)->required();
  col->add_option("--N", col_N);
  col->add_option("-o,--out", col_out);

  // verify
  auto* ver = app.add_subcommand("verify", "Verify a coloring");
  std::string ver_graph, ver_col, ver_levels, ver_delta = "sweep", ver_report;
  Dist ver_eps = 4, ver_margin = 0, ver_delta_max = 40;
  int ver_N = -1;
  std::vector<Dist> ver_level_margins;
  ver->add_option("--graph", ver_graph)->required();
  ver->add_option("--coloring", ver_col)->required();
  ver->add_option("--levels", ver_levels);
  ver->add_option("--N", ver_N, "level index of the coloring (enables the phi decoding lines)");
  ver->add_option("--eps", ver_eps);
  ver->add_option("--delta", ver_delta, "a number or 'sweep'");
  ver->add_option("--delta-max", ver_delta_max);
  ver->add_option("--margin", ver_margin, "bulk margin for the finitary check");
  ver->add_option("--level-margins", ver_level_margins)->delimiter(',');
  ver->add_option("--report", ver_report);

  auto* dn = app.add_subcommand("dnum", "Distinguishing number");
  auto* di = app.add_subcommand("dindex", "Distinguishing index via the line graph");
  std::string d_graph, d_kind;
  std::size_t d_cap = kDefaultAutomorphismCap;
  for (auto* sc : {dn, di}) {
    sc->add_option("--graph", d_graph);
    sc->add_option("--kind", d_kind);
    sc->add_option("--cap", d_cap);
  }

  auto* dot = app.add_subcommand("export-dot", "Graphviz export");
  std::string dot_graph, dot_col, dot_out;
  dot->add_option("--graph", dot_graph)->required();
  dot->add_option("--coloring", dot_col);
  dot->add_option("-o,--out", dot_out);

  auto* pipe = app.add_subcommand("pipeline", "gen, constants, levels, color and verify in one run");
  std::string pipe_cfg, pipe_dir = ".";
  pipe->add_option("config", pipe_cfg)->required();
  pipe->add_option("--out-dir", pipe_dir);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      emit(gen_out, graph_to_json(generate(parse_generator(gen_kind))));
    } else if (*cons) {
      ScheduleRequest req;
      req.mode = cons_mode == "desk" ? ScheduleMode::desk : ScheduleMode::paper;
      req.delta = cons_delta;
      for (auto e : cons_eps) req.eps.push_back(e);
      req.r = cons_r;
      req.s = cons_s;
      req.levels = cons_levels;
      for (int b : cons_hat) req.use_hat.push_back(b != 0);
      auto sched = build_schedule(req);
      std::cerr << format_schedule_table(sched);
      emit(cons_out, schedule_to_json(sched));
    } else if (*lev) {
      Graph g = graph_from_json(read_json_file(lev_graph));
      if (lev_r.size() != lev_s.size()) throw WorkbenchError("--r and --s need the same length");
      LevelsFile meta;
      meta.canonical = lev_canonical;
      meta.family.inner = opt_dists(lev_inner);
      meta.family.sep = opt_dists(lev_sep);
      for (std::size_t i = 0; i < lev_r.size(); ++i) {
        LevelSpec s;
        s.r = static_cast<Dist>(lev_r[i]);
        s.s = static_cast<Dist>(lev_s[i]);
        if (i < lev_split.size()) s.split = parse_split_policy(lev_split[i]);
        meta.specs.push_back(s);
      }
      Hierarchy h = build_hierarchy(g, g.basepoint(), meta.specs);
      std::unique_ptr<EquivalenceContext> ctx;
      if (lev_canonical) {
        ctx = std::make_unique<EquivalenceContext>(h);
        compute_all_representatives(*ctx);
      }
      emit(lev_out, levels_to_json(h, meta, ctx.get()));
    } else if (*col) {
      Graph g = graph_from_json(read_json_file(col_graph));
      Built b = rebuild(g, read_json_file(col_levels));
      PhiResult phi = build_phi(*b.h, b.pal, col_N);
      json j = coloring_to_json(phi.coloring);
      j["N"] = col_N;
      emit(col_out, j);
    } else if (*ver) {
      Graph g = graph_from_json(read_json_file(ver_graph));
      Coloring c = coloring_from_json(read_json_file(ver_col), g.size());
      VerificationReport rep;
      if (!ver_levels.empty()) {
        Built b = rebuild(g, read_json_file(ver_levels));
        InvariantOptions io;
        io.margins = ver_level_margins;
        if (ver_N >= 0) {
          PhiResult phi = build_phi(*b.h, b.pal, ver_N);
          phi.coloring = c;
          rep = check_level_invariants(*b.h, &b.pal, &phi, io);
        } else {
          rep = check_level_invariants(*b.h, &b.pal, nullptr, io);
        }
      }
      Bulk bulk = make_bulk(g, ver_margin);
      if (ver_delta == "sweep") {
        Dist cap = sweep_cap(bulk, ver_delta_max);
        auto d = min_separating_delta(g, c.colors, ver_eps, bulk, cap);
        Bulk fixed = bulk;
        for (Vertex v = 0; v < g.size(); ++v)
          if (!fixed.unclipped(v, cap)) fixed.in[v] = 0;
        auto line = check_finitary(g, c.colors, ver_eps, d ? *d : cap, fixed);
        if (!d) line.lines.front().note += "; no separating delta up to " + std::to_string(cap);
        if (cap < ver_delta_max)
          line.lines.front().note += "; sweep capped at " + std::to_string(cap) + " by the patch size";
        rep.append(line);
        std::cerr << "separating delta: " << (d ? std::to_string(*d) : "none") << "\n";
      } else {
        rep.append(check_finitary(g, c.colors, ver_eps, static_cast<Dist>(std::stoul(ver_delta)), bulk));
      }
      rep.append(check_aperiodic_finite(g, c.colors));
      std::cerr << rep.summary();
      emit(ver_report, report_to_json(rep));
      return rep.passed() ? 0 : 1;
    } else if (*dn || *di) {
      if (d_graph.empty() == d_kind.empty()) throw WorkbenchError("give exactly one of --graph or --kind");
      Graph g = d_graph.empty() ? generate(parse_generator(d_kind)) : graph_from_json(read_json_file(d_graph));
      auto r = *dn ? distinguishing_number(g, d_cap) : distinguishing_index(g, d_cap);
      emit("", json{{*dn ? "distinguishing_number" : "distinguishing_index", r.value},
                    {"witness", r.witness},
                    {"automorphisms", r.automorphisms},
                    {"search_nodes", r.nodes}});
    } else if (*dot) {
      Graph g = graph_from_json(read_json_file(dot_graph));
      std::optional<Coloring> c;
      if (!dot_col.empty()) c = coloring_from_json(read_json_file(dot_col), g.size());
      if (dot_out.empty()) {
        export_dot(g, c ? &c->colors : nullptr, std::cout);
      } else {
        std::ofstream out(dot_out);
        if (!out) throw WorkbenchError(dot_out + ": cannot write");
        export_dot(g, c ? &c->colors : nullptr, out);
      }
    } else if (*pipe) {
      RunConfig cfg = RunConfig::load(pipe_cfg);
      PipelineResult r = run_pipeline(cfg);
      std::filesystem::create_directories(pipe_dir);
      auto at = [&](const char* f) { return (std::filesystem::path(pipe_dir) / f).string(); };
      write_json_file(at("graph.json"), graph_to_json(r.graph));
      write_json_file(at("constants.json"), schedule_to_json(r.schedule));
      LevelsFile meta;
      meta.specs = level_specs_from_schedule(r.schedule, cfg.split);
      meta.family.inner = cfg.family_inner;
      meta.family.sep = cfg.family_sep;
      meta.canonical = cfg.canonical;
      write_json_file(at("levels.json"), levels_to_json(*r.hierarchy, meta, r.equivalence.get()));
      json cj = coloring_to_json(r.phi.coloring);
      cj["N"] = cfg.N;
      write_json_file(at("coloring.json"), cj);
      json rj = report_to_json(r.report);
      rj["separating_delta"] = r.separating_delta ? json(*r.separating_delta) : json(nullptr);
      write_json_file(at("report.json"), rj);
      std::ofstream cfg_out(at("config.txt"));
      cfg_out << cfg.str();
      std::cerr << r.report.summary();
      std::cerr << "separating delta: " << (r.separating_delta ? std::to_string(*r.separating_delta) : "none")
                << "\n";
      return r.report.passed() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
