#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "lacolor/workbench.hpp"

namespace lac {

namespace {

Edge edge(std::size_t a, std::size_t b) {
  auto u = static_cast<Vertex>(a), v = static_cast<Vertex>(b);
  return u < v ? Edge{u, v} : Edge{v, u};
}

void need(bool ok, const std::string& what) {
  if (!ok) throw WorkbenchError(what);
}

}  // namespace

Graph cycle_graph(std::size_t n) {
  need(n >= 3, "cycle needs n >= 3");
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i) e.push_back(edge(i, (i + 1) % n));
  return Graph(n, e, 0, std::vector<Vertex>{});
}

Graph path_graph(std::size_t n) {
  need(n >= 1, "path needs n >= 1");
  std::vector<Edge> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.push_back(edge(i, i + 1));
  std::vector<Vertex> bd{0};
  if (n > 1) bd.push_back(static_cast<Vertex>(n - 1));
  return Graph(n, e, static_cast<Vertex>(n / 2), bd);
}

Graph complete_graph(std::size_t n) {
  need(n >= 1, "complete graph needs n >= 1");
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) e.push_back(edge(i, j));
  return Graph(n, e, 0, std::vector<Vertex>{});
}

Graph complete_bipartite_graph(std::size_t a, std::size_t b) {
  need(a >= 1 && b >= 1, "complete bipartite graph needs both sides nonempty");
  std::vector<Edge> e;
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j) e.push_back(edge(i, a + j));
  return Graph(a + b, e, 0, std::vector<Vertex>{});
}

Graph grid_graph(std::size_t w, std::size_t h) {
  need(w >= 1 && h >= 1, "grid needs positive sides");
  std::vector<Edge> e;
  std::vector<Vertex> bd;
  for (std::size_t y = 0; y < h; ++y)
    for (std::size_t x = 0; x < w; ++x) {
      std::size_t v = y * w + x;
      if (x + 1 < w) e.push_back(edge(v, v + 1));
      if (y + 1 < h) e.push_back(edge(v, v + w));
      if (x == 0 || y == 0 || x + 1 == w || y + 1 == h) bd.push_back(static_cast<Vertex>(v));
    }
  return Graph(w * h, e, static_cast<Vertex>((h / 2) * w + w / 2), bd);
}

Graph torus_graph(std::size_t w, std::size_t h) {
  need(w >= 3 && h >= 3, "torus needs sides >= 3");
  std::vector<Edge> e;
  for (std::size_t y = 0; y < h; ++y)
    for (std::size_t x = 0; x < w; ++x) {
      std::size_t v = y * w + x;
      e.push_back(edge(v, y * w + (x + 1) % w));
      e.push_back(edge(v, ((y + 1) % h) * w + x));
    }
  return Graph(w * h, e, 0, std::vector<Vertex>{});
}

Graph tree_ball(std::size_t arity, std::size_t depth) {
  need(arity >= 2, "tree needs arity >= 2");
  std::vector<Edge> e;
  std::vector<Vertex> frontier{0}, bd;
  std::size_t n = 1;
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<Vertex> next;
    for (Vertex p : frontier) {
      std::size_t kids = p == 0 ? arity : arity - 1;
      for (std::size_t k = 0; k < kids; ++k) {
        e.push_back(edge(p, n));
        next.push_back(static_cast<Vertex>(n++));
      }
    }
    frontier = std::move(next);
  }
  bd = frontier;
  return Graph(n, e, 0, bd);
}

Graph cayley_ball(CayleyGroup group, std::size_t radius) {
  using Word = std::vector<int>;
  // generators as ±(k+1); words kept reduced
  int gens = group == CayleyGroup::Z ? 1 : 2;
  auto reduce_mul = [&](Word w, int g) {
    if (group == CayleyGroup::F2) {
      if (!w.empty() && w.back() == -g) w.pop_back();
      else w.push_back(g);
      return w;
    }
    // abelian: coordinates
    w.resize(static_cast<std::size_t>(gens), 0);
    w[static_cast<std::size_t>(std::abs(g) - 1)] += g > 0 ? 1 : -1;
    return w;
  };
  Word id = group == CayleyGroup::F2 ? Word{} : Word(static_cast<std::size_t>(gens), 0);
  std::map<Word, Vertex> index{{id, 0}};
  std::vector<Word> words{id};
  std::vector<Edge> e;
  std::vector<Vertex> frontier{0};
  for (std::size_t d = 0; d < radius; ++d) {
    std::vector<Vertex> next;
    for (Vertex v : frontier)
      for (int k = 1; k <= gens; ++k)
        for (int g : {k, -k}) {
          Word w = reduce_mul(words[v], g);
          auto it = index.find(w);
          if (it == index.end()) {
            auto u = static_cast<Vertex>(words.size());
            index.emplace(w, u);
            words.push_back(w);
            next.push_back(u);
            e.push_back(edge(v, u));
          } else if (it->second > v && std::find(next.begin(), next.end(), it->second) != next.end()) {
            Edge ed = edge(v, it->second);
            if (std::find(e.begin(), e.end(), ed) == e.end()) e.push_back(ed);
          }
        }
    frontier = std::move(next);
  }
  return Graph(words.size(), e, 0, frontier);
}

Graph random_bounded(std::size_t delta, std::size_t n, std::uint64_t seed) {
  need(n >= 1, "random graph needs n >= 1");
  need(delta >= 2 || n <= 2, "random graph with more than 2 vertices needs delta >= 2");
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> deg(n, 0);
  std::vector<Edge> e;
  auto has = [&](Edge ed) { return std::find(e.begin(), e.end(), ed) != e.end(); };
  for (std::size_t i = 1; i < n; ++i) {
    std::vector<std::size_t> open;
    for (std::size_t j = 0; j < i; ++j)
      if (deg[j] < delta) open.push_back(j);
    std::size_t j = open[std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(rng)];
    e.push_back(edge(i, j));
    ++deg[i];
    ++deg[j];
  }
  std::size_t tries = n * delta;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t t = 0; t < tries && n > 2; ++t) {
    std::size_t a = pick(rng), b = pick(rng);
    if (a == b || deg[a] >= delta || deg[b] >= delta || has(edge(a, b))) continue;
    e.push_back(edge(a, b));
    ++deg[a];
    ++deg[b];
  }
  return Graph(n, e, 0, std::vector<Vertex>{});
}

Graph petersen_graph() {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < 5; ++i) {
    e.push_back(edge(i, (i + 1) % 5));
    e.push_back(edge(i, i + 5));
    e.push_back(edge(5 + i, 5 + (i + 2) % 5));
  }
  return Graph(10, e, 0, std::vector<Vertex>{});
}

Graph prism_graph(std::size_t n) {
  need(n >= 3, "prism needs n >= 3");
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i) {
    e.push_back(edge(i, (i + 1) % n));
    e.push_back(edge(n + i, n + (i + 1) % n));
    e.push_back(edge(i, n + i));
  }
  return Graph(2 * n, e, 0, std::vector<Vertex>{});
}

Graph line_graph(const Graph& g) {
  auto E = g.edges();
  need(!E.empty(), "line graph of an edgeless graph is empty");
  std::map<Edge, Vertex> id;
  for (std::size_t i = 0; i < E.size(); ++i) id[E[i]] = static_cast<Vertex>(i);
  std::vector<Edge> le;
  for (Vertex v = 0; v < g.size(); ++v) {
    auto nb = g.neighbors(v);
    for (std::size_t a = 0; a < nb.size(); ++a)
      for (std::size_t b = a + 1; b < nb.size(); ++b)
        le.push_back(edge(id[edge(v, nb[a])], id[edge(v, nb[b])]));
  }
  std::sort(le.begin(), le.end());
  le.erase(std::unique(le.begin(), le.end()), le.end());
  return Graph(E.size(), le, 0, std::vector<Vertex>{});
}

GeneratorSpec parse_generator(const std::string& text) {
  GeneratorSpec s;
  auto colon = text.find(':');
  s.kind = text.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  std::vector<std::string> parts;
  std::stringstream ss(rest);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  auto nums = [&](const std::string& p) {
    std::vector<std::uint64_t> v;
    std::stringstream q(p);
    for (std::string t; std::getline(q, t, 'x');) {
      try {
        std::size_t used = 0;
        v.push_back(std::stoull(t, &used));
        if (used != t.size()) throw std::invalid_argument(t);
      } catch (const std::exception&) {
        throw WorkbenchError("generator '" + text + "': bad number '" + t + "'");
      }
    }
    return v;
  };
  if (s.kind == "cayley") {
    if (parts.size() != 2) throw WorkbenchError("generator '" + text + "': expected cayley:<Z|Z2|F2>:<radius>");
    s.group = parts[0];
    s.params = nums(parts[1]);
  } else if (s.kind == "random") {
    if (parts.empty() || parts.size() > 2)
      throw WorkbenchError("generator '" + text + "': expected random:<delta>x<V>[:seed]");
    s.params = nums(parts[0]);
    if (parts.size() == 2) s.seed = nums(parts[1]).at(0);
  } else if (s.kind == "petersen") {
    if (!parts.empty()) throw WorkbenchError("generator '" + text + "': petersen takes no parameters");
  } else {
    if (parts.size() != 1) throw WorkbenchError("generator '" + text + "': expected " + s.kind + ":<params>");
    s.params = nums(parts[0]);
  }
  generate(s);  // validates
  return s;
}

std::string to_string(const GeneratorSpec& spec) {
  std::string out = spec.kind;
  if (spec.kind == "petersen") return out;
  out += ":";
  if (spec.kind == "cayley") out += spec.group + ":";
  for (std::size_t i = 0; i < spec.params.size(); ++i) out += (i ? "x" : "") + std::to_string(spec.params[i]);
  if (spec.kind == "random") out += ":" + std::to_string(spec.seed);
  return out;
}

Graph generate(const GeneratorSpec& spec) {
  const auto& p = spec.params;
  auto arity = [&](std::size_t k) {
    if (p.size() != k)
      throw WorkbenchError("generator " + spec.kind + " expects " + std::to_string(k) + " parameter(s)");
  };
  const std::string& k = spec.kind;
  if (k == "cycle") return arity(1), cycle_graph(p[0]);
  if (k == "path") return arity(1), path_graph(p[0]);
  if (k == "complete") return arity(1), complete_graph(p[0]);
  if (k == "complete_bipartite") return arity(2), complete_bipartite_graph(p[0], p[1]);
  if (k == "grid") return arity(2), grid_graph(p[0], p[1]);
  if (k == "torus") return arity(2), torus_graph(p[0], p[1]);
  if (k == "tree") return arity(2), tree_ball(p[0], p[1]);
  if (k == "prism") return arity(1), prism_graph(p[0]);
  if (k == "petersen") return arity(0), petersen_graph();
  if (k == "random") return arity(2), random_bounded(p[0], p[1], spec.seed);
  if (k == "cayley") {
    arity(1);
    if (spec.group == "Z") return cayley_ball(CayleyGroup::Z, p[0]);
    if (spec.group == "Z2") return cayley_ball(CayleyGroup::Z2, p[0]);
    if (spec.group == "F2") return cayley_ball(CayleyGroup::F2, p[0]);
    throw WorkbenchError("unknown Cayley group preset '" + spec.group + "' (use Z, Z2 or F2)");
  }
  throw WorkbenchError("unknown generator kind '" + k + "'");
}

}  // namespace lac
