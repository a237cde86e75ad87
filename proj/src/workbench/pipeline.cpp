#include <fstream>
#include <sstream>

#include "lacolor/workbench.hpp"

namespace lac {

namespace {

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  for (std::string t; std::getline(ss, t, ',');) out.push_back(trim(t));
  return out;
}

template <class T>
std::string join(const std::vector<T>& v, auto&& fmt) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + fmt(v[i]);
  return out;
}

}  // namespace

RunConfig RunConfig::parse(std::istream& in, const std::string& source) {
  RunConfig c;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto where = source + ":" + std::to_string(lineno);
    auto eq = line.find('=');
    if (eq == std::string::npos) throw WorkbenchError(where + ": expected key = value");
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    auto num = [&](const std::string& t) -> std::uint64_t {
      try {
        std::size_t used = 0;
        auto v = std::stoull(t, &used);
        if (used != t.size()) throw std::invalid_argument(t);
        return v;
      } catch (const std::exception&) {
        throw WorkbenchError(where + ": '" + key + "' expects a number, got '" + t + "'");
      }
    };
    auto nums = [&] {
      std::vector<std::uint64_t> v;
      for (auto& t : split_list(val)) v.push_back(num(t));
      return v;
    };
    auto opt_dists = [&] {
      std::vector<std::optional<Dist>> v;
      for (auto& t : split_list(val)) v.push_back(t == "-" ? std::nullopt : std::optional<Dist>(static_cast<Dist>(num(t))));
      return v;
    };
    auto boolean = [&] {
      if (val == "true" || val == "on" || val == "1") return true;
      if (val == "false" || val == "off" || val == "0") return false;
      throw WorkbenchError(where + ": '" + key + "' expects true or false");
    };
    try {
      if (key == "generator") c.generator = parse_generator(val);
      else if (key == "seed") c.generator.seed = num(val);
      else if (key == "mode") {
        if (val == "desk") c.mode = ScheduleMode::desk;
        else if (val == "paper") c.mode = ScheduleMode::paper;
        else throw WorkbenchError(where + ": mode must be desk or paper");
      } else if (key == "delta") c.delta = num(val);
      else if (key == "r") c.r = nums();
      else if (key == "s") c.s = nums();
      else if (key == "eps") c.eps = nums();
      else if (key == "split") {
        c.split.clear();
        for (auto& t : split_list(val)) c.split.push_back(parse_split_policy(t));
      } else if (key == "N") c.N = static_cast<int>(num(val));
      else if (key == "canonical") c.canonical = boolean();
      else if (key == "family_inner") c.family_inner = opt_dists();
      else if (key == "family_sep") c.family_sep = opt_dists();
      else if (key == "bulk_margin") {
        c.bulk_margin.clear();
        for (auto v : nums()) c.bulk_margin.push_back(static_cast<Dist>(v));
      } else if (key == "finitary_margin") c.finitary_margin = static_cast<Dist>(num(val));
      else if (key == "finitary_eps") c.finitary_eps = static_cast<Dist>(num(val));
      else if (key == "delta_max") c.delta_max = static_cast<Dist>(num(val));
      else throw WorkbenchError(where + ": unknown key '" + key + "'");
    } catch (const WorkbenchError& e) {
      std::string msg = e.what();
      if (msg.rfind(source, 0) == 0) throw;
      throw WorkbenchError(where + ": " + msg);
    } catch (const std::exception& e) {
      throw WorkbenchError(where + ": " + e.what());
    }
  }
  return c;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw WorkbenchError(path + ": cannot open");
  return parse(in, path);
}

std::string RunConfig::str() const {
  std::ostringstream os;
  auto u = [](auto v) { return std::to_string(v); };
  auto od = [](const std::optional<Dist>& v) { return v ? std::to_string(*v) : std::string("-"); };
  os << "generator = " << to_string(generator) << "\n";
  os << "mode = " << (mode == ScheduleMode::desk ? "desk" : "paper") << "\n";
  if (delta) os << "delta = " << *delta << "\n";
  os << "r = " << join(r, u) << "\n";
  os << "s = " << join(s, u) << "\n";
  if (!eps.empty()) os << "eps = " << join(eps, u) << "\n";
  if (!split.empty()) os << "split = " << join(split, [](SplitPolicy p) { return std::string(to_string(p)); }) << "\n";
  os << "N = " << N << "\n";
  os << "canonical = " << (canonical ? "true" : "false") << "\n";
  if (!family_inner.empty()) os << "family_inner = " << join(family_inner, od) << "\n";
  if (!family_sep.empty()) os << "family_sep = " << join(family_sep, od) << "\n";
  if (!bulk_margin.empty()) os << "bulk_margin = " << join(bulk_margin, u) << "\n";
  os << "finitary_margin = " << finitary_margin << "\n";
  os << "finitary_eps = " << finitary_eps << "\n";
  os << "delta_max = " << delta_max << "\n";
  return os.str();
}

PipelineResult run_pipeline(const RunConfig& cfg) {
  PipelineResult res;
  res.config = cfg;
  res.graph = generate(cfg.generator);
  const Graph& g = res.graph;
  if (cfg.delta && *cfg.delta != g.max_degree())
    throw WorkbenchError("config delta = " + std::to_string(*cfg.delta) + " but the generated graph has degree " +
                         std::to_string(g.max_degree()));
  if (cfg.N < 0 || static_cast<std::size_t>(cfg.N) >= cfg.r.size())
    throw WorkbenchError("N = " + std::to_string(cfg.N) + " needs at least N+1 levels of r/s");

  ScheduleRequest req;
  req.mode = cfg.mode;
  req.delta = g.max_degree();
  for (auto e : cfg.eps) req.eps.push_back(e);
  req.r = cfg.r;
  req.s = cfg.s;
  if (cfg.mode == ScheduleMode::paper) throw WorkbenchError("the pipeline builds levels from desk radii only");
  res.schedule = build_schedule(req);

  res.hierarchy = std::make_unique<Hierarchy>(build_hierarchy(g, g.basepoint(), level_specs_from_schedule(res.schedule, cfg.split)));
  Hierarchy& h = *res.hierarchy;
  FamilyOptions fo;
  fo.inner = cfg.family_inner;
  fo.sep = cfg.family_sep;
  if (cfg.canonical) {
    res.equivalence = std::make_unique<EquivalenceContext>(h);
    compute_all_representatives(*res.equivalence);
    apply_canonical_orderings(h, *res.equivalence);
    res.palette = build_canonical_palette(h, *res.equivalence, fo);
  } else {
    res.palette = build_palette(h, fo);
  }
  res.phi = build_phi(h, res.palette, cfg.N);

  InvariantOptions io;
  io.margins = cfg.bulk_margin;
  res.report = check_level_invariants(h, &res.palette, &res.phi, io);

  Bulk bulk = make_bulk(g, cfg.finitary_margin);
  const auto& colors = res.phi.coloring.colors;
  const Dist cap = sweep_cap(bulk, cfg.delta_max);
  res.separating_delta = min_separating_delta(g, colors, cfg.finitary_eps, bulk, cap);
  Bulk fixed = bulk;
  for (Vertex v = 0; v < g.size(); ++v)
    if (!fixed.unclipped(v, cap)) fixed.in[v] = 0;
  if (res.separating_delta) {
    res.report.append(check_finitary(g, colors, cfg.finitary_eps, *res.separating_delta, fixed));
    if (cap < cfg.delta_max)
      res.report.lines.back().note += "; sweep capped at " + std::to_string(cap) + " by the patch size";
  } else {
    CheckLine l;
    l.id = "finitary";
    l.status = CheckStatus::fail;
    l.note = "no separating delta up to " + std::to_string(cap);
    auto probe = check_finitary(g, colors, cfg.finitary_eps, cap, fixed);
    l.checked = probe.lines.front().checked;
    l.witnesses = probe.lines.front().witnesses;
    res.report.lines.push_back(l);
  }
  // Schedule δ_n values are reported as-is; at desk radii they usually
  // exceed the patch and the line is boundary-skipped.
  Dist sched_delta = kUnreachable;
  if (res.schedule.at(static_cast<std::size_t>(cfg.N)).delta.known()) {
    const auto& d = res.schedule.at(static_cast<std::size_t>(cfg.N)).delta.value("delta");
    if (d < BigInt(g.size())) sched_delta = static_cast<Dist>(d);
  }
  {
    CheckLine l;
    l.id = "finitary-schedule-delta";
    if (sched_delta == kUnreachable || !std::any_of(fixed.in.begin(), fixed.in.end(), [](char c) { return c; })) {
      l.status = CheckStatus::boundary_skipped;
      l.note = "schedule delta_N = " + res.schedule.at(static_cast<std::size_t>(cfg.N)).delta.str() +
               " exceeds the patch";
    } else {
      Bulk sb = make_bulk(g, std::max(cfg.finitary_margin, sched_delta));
      if (sb.size() == 0) {
        l.status = CheckStatus::boundary_skipped;
        l.note = "no vertex has an unclipped schedule-delta disk";
      } else {
        l = check_finitary(g, colors, cfg.finitary_eps, sched_delta, sb).lines.front();
        l.id = "finitary-schedule-delta";
      }
    }
    res.report.lines.push_back(l);
  }
  if (g.size() <= 8192) res.report.append(check_aperiodic_finite(g, colors));
  return res;
}

}  // namespace lac
