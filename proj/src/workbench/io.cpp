#include <fstream>
#include <sstream>

#include "lacolor/workbench.hpp"

namespace lac {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw WorkbenchError(where + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where, std::string("missing field '") + key + "'");
  return *it;
}

std::uint64_t as_uint(const json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    bad(where, "expected a non-negative integer");
  return j.get<std::uint64_t>();
}

std::vector<Vertex> vertex_list(const json& j, std::size_t n, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array");
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    auto v = as_uint(j[i], where + "/" + std::to_string(i));
    if (v >= n) bad(where + "/" + std::to_string(i), "vertex " + std::to_string(v) + " out of range");
    out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

}  // namespace

json graph_to_json(const Graph& g) {
  json e = json::array();
  for (auto [u, v] : g.edges()) e.push_back({u, v});
  json j{{"vertices", g.size()}, {"edges", e}, {"basepoint", g.basepoint()}, {"max_degree", g.max_degree()}};
  if (g.explicit_boundary()) j["boundary"] = g.boundary();
  return j;
}

Graph graph_from_json(const json& j) {
  std::size_t n = as_uint(field(j, "vertices", ""), "/vertices");
  const json& e = field(j, "edges", "");
  if (!e.is_array()) bad("/edges", "expected an array");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < e.size(); ++i) {
    std::string w = "/edges/" + std::to_string(i);
    if (!e[i].is_array() || e[i].size() != 2) bad(w, "expected a pair [u, v]");
    auto uv = vertex_list(e[i], n, w);
    edges.push_back({std::min(uv[0], uv[1]), std::max(uv[0], uv[1])});
  }
  Vertex p = j.contains("basepoint") ? static_cast<Vertex>(as_uint(j["basepoint"], "/basepoint")) : 0;
  if (p >= n) bad("/basepoint", "out of range");
  std::optional<std::vector<Vertex>> bd;
  if (j.contains("boundary")) bd = vertex_list(j["boundary"], n, "/boundary");
  Graph g;
  try {
    g = Graph(n, edges, p, bd);
  } catch (const GraphError& err) {
    bad("graph", err.what());
  }
  if (j.contains("max_degree") && as_uint(j["max_degree"], "/max_degree") != g.max_degree())
    bad("/max_degree", "recorded " + j["max_degree"].dump() + " but the edges give " + std::to_string(g.max_degree()));
  return g;
}

json coloring_to_json(const Coloring& c) {
  return json{{"colors", c.colors}, {"palette_bound", c.palette_bound}};
}

Coloring coloring_from_json(const json& j, std::size_t vertices) {
  const json& cs = field(j, "colors", "");
  if (!cs.is_array()) bad("/colors", "expected an array");
  if (cs.size() != vertices)
    bad("/colors", std::to_string(cs.size()) + " colors for " + std::to_string(vertices) + " vertices");
  std::vector<Color> colors;
  for (std::size_t i = 0; i < cs.size(); ++i)
    colors.push_back(static_cast<Color>(as_uint(cs[i], "/colors/" + std::to_string(i))));
  std::optional<Color> bound;
  if (j.contains("palette_bound")) bound = static_cast<Color>(as_uint(j["palette_bound"], "/palette_bound"));
  Coloring c(std::move(colors), bound);
  try {
    c.validate();
  } catch (const std::exception& err) {
    bad("/colors", err.what());
  }
  return c;
}

json report_to_json(const VerificationReport& r) {
  json lines = json::array();
  for (const auto& l : r.lines) {
    json w = json::array();
    for (auto [a, b] : l.witnesses) w.push_back({a, b});
    lines.push_back({{"id", l.id},
                     {"status", to_string(l.status)},
                     {"checked", l.checked},
                     {"skipped", l.skipped},
                     {"witnesses", w},
                     {"note", l.note},
                     {"runtime_ms", l.runtime_ms}});
  }
  return json{{"passed", r.passed()}, {"lines", lines}};
}

json schedule_to_json(const ParameterSchedule& s) {
  json levels = json::array();
  for (const auto& L : s.levels) {
    json notes = json::object();
    for (const auto& [k, v] : L.notes) notes[k] = v;
    levels.push_back({{"n", L.n},
                      {"eps", L.eps.str()},
                      {"s", L.s.str()},
                      {"r_hat", L.r_hat.str()},
                      {"r_bar", L.r_bar.str()},
                      {"r", L.r.str()},
                      {"r_minus", L.r_minus.str()},
                      {"r_plus", L.r_plus.str()},
                      {"R_minus", L.R_minus.str()},
                      {"R_plus", L.R_plus.str()},
                      {"l", L.l.str()},
                      {"L", L.L.str()},
                      {"Delta", L.Delta.str()},
                      {"Gamma_minus", L.Gamma_minus.str()},
                      {"Gamma_plus", L.Gamma_plus.str()},
                      {"K_bar", L.K_bar.str()},
                      {"K", L.K.str()},
                      {"W", L.W.str()},
                      {"Upsilon", L.Upsilon.str()},
                      {"delta", L.delta.str()},
                      {"r_source", L.r_source},
                      {"notes", notes}});
  }
  return json{{"mode", s.mode == ScheduleMode::desk ? "desk" : "paper"}, {"Delta", s.delta}, {"levels", levels}};
}

VerificationReport report_from_json(const json& j) {
  VerificationReport r;
  const json& lines = field(j, "lines", "");
  if (!lines.is_array()) bad("/lines", "expected an array");
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string w = "/lines/" + std::to_string(i);
    const json& l = lines[i];
    CheckLine c;
    c.id = field(l, "id", w).get<std::string>();
    std::string st = field(l, "status", w).get<std::string>();
    bool found = false;
    for (auto s : {CheckStatus::pass, CheckStatus::fail, CheckStatus::boundary_skipped, CheckStatus::skipped,
                   CheckStatus::vacuous})
      if (st == to_string(s)) {
        c.status = s;
        found = true;
      }
    if (!found) bad(w + "/status", "unknown status '" + st + "'");
    c.checked = as_uint(field(l, "checked", w), w + "/checked");
    c.skipped = as_uint(field(l, "skipped", w), w + "/skipped");
    for (const auto& p : field(l, "witnesses", w)) c.witnesses.emplace_back(p.at(0).get<Vertex>(), p.at(1).get<Vertex>());
    c.note = l.value("note", "");
    c.runtime_ms = l.value("runtime_ms", 0.0);
    r.lines.push_back(std::move(c));
  }
  return r;
}

namespace {

json opt_list(const std::vector<std::optional<Dist>>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x ? json(*x) : json(nullptr));
  return a;
}

std::vector<std::optional<Dist>> opt_list_from(const json& j, const std::string& where) {
  std::vector<std::optional<Dist>> out;
  if (!j.is_array()) bad(where, "expected an array");
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(j[i].is_null() ? std::nullopt
                                 : std::optional<Dist>(static_cast<Dist>(as_uint(j[i], where + "/" + std::to_string(i)))));
  return out;
}

}  // namespace

json levels_to_json(const Hierarchy& h, const LevelsFile& meta, const EquivalenceContext* ctx) {
  json levels = json::array();
  for (const auto& L : h.levels()) {
    json signs = json::array(), cluster_of = json::object();
    for (Vertex x : L.members) signs.push_back(L.is_plus(x) ? "+" : "-");
    for (Vertex z : h.members(L.n - 1)) cluster_of[std::to_string(z)] = L.cluster_of[z];
    json edges = json::array();
    for (auto [a, b] : L.edges) edges.push_back({a, b});
    json lv{{"n", L.n},        {"r", L.r},           {"s", L.s},         {"split", to_string(L.split)},
            {"members", L.members.items()}, {"signs", signs}, {"cluster_of", cluster_of}, {"edges", edges}};
    if (ctx && static_cast<std::size_t>(L.n) < ctx->reps.size()) {
      json rep = json::object();
      for (Vertex x : L.members) rep[std::to_string(x)] = ctx->reps[static_cast<std::size_t>(L.n)].rep[x];
      lv["representatives"] = rep;
    }
    levels.push_back(lv);
  }
  return json{{"basepoint", h.basepoint()},
              {"canonical", meta.canonical},
              {"family_inner", opt_list(meta.family.inner)},
              {"family_sep", opt_list(meta.family.sep)},
              {"levels", levels}};
}

LevelsFile levels_meta_from_json(const json& j) {
  LevelsFile m;
  const json& levels = field(j, "levels", "");
  if (!levels.is_array()) bad("/levels", "expected an array");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    std::string w = "/levels/" + std::to_string(i);
    LevelSpec s;
    s.r = static_cast<Dist>(as_uint(field(levels[i], "r", w), w + "/r"));
    s.s = static_cast<Dist>(as_uint(field(levels[i], "s", w), w + "/s"));
    try {
      s.split = parse_split_policy(levels[i].value("split", "formula"));
    } catch (const std::exception& e) {
      bad(w + "/split", e.what());
    }
    m.specs.push_back(s);
  }
  m.canonical = j.value("canonical", false);
  if (j.contains("family_inner")) m.family.inner = opt_list_from(j["family_inner"], "/family_inner");
  if (j.contains("family_sep")) m.family.sep = opt_list_from(j["family_sep"], "/family_sep");
  return m;
}

void check_levels_json(const Hierarchy& h, const json& j) {
  const json& levels = field(j, "levels", "");
  if (levels.size() != h.size()) bad("/levels", "level count differs from the rebuilt hierarchy");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    std::string w = "/levels/" + std::to_string(i);
    const LevelState& L = h.level(static_cast<int>(i));
    auto mem = vertex_list(field(levels[i], "members", w), h.ambient().size(), w + "/members");
    if (mem != L.members.items()) bad(w + "/members", "centers differ from the rebuilt level");
    const json& co = field(levels[i], "cluster_of", w);
    for (Vertex z : h.members(L.n - 1)) {
      auto it = co.find(std::to_string(z));
      if (it == co.end() || as_uint(*it, w + "/cluster_of") != L.cluster_of[z])
        bad(w + "/cluster_of/" + std::to_string(z), "cluster assignment differs from the rebuilt level");
    }
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw WorkbenchError(path + ": cannot open");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw WorkbenchError(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw WorkbenchError(path + ": cannot write");
  out << j.dump(1) << "\n";
}

const char* const kDotPalette[16] = {"#e6194b", "#3cb44b", "#ffe119", "#4363d8", "#f58231", "#911eb4",
                                     "#46f0f0", "#f032e6", "#bcf60c", "#fabebe", "#008080", "#e6beff",
                                     "#9a6324", "#fffac8", "#800000", "#aaffc3"};

void export_dot(const Graph& g, const std::vector<Color>* colors, std::ostream& out) {
  out << "graph G {\n  node [style=filled, shape=circle];\n";
  for (Vertex v = 0; v < g.size(); ++v) {
    out << "  " << v;
    if (colors) {
      Color c = (*colors)[v];
      out << " [label=\"" << v << ":" << c << "\", fillcolor=\"" << kDotPalette[c % 16] << "\"";
      if (v == g.basepoint()) out << ", penwidth=3";
      out << "]";
    } else if (v == g.basepoint()) {
      out << " [penwidth=3]";
    }
    out << ";\n";
  }
  for (auto [u, v] : g.edges()) out << "  " << u << " -- " << v << ";\n";
  out << "}\n";
}

}  // namespace lac
