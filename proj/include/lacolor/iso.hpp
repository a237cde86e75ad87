#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "lacolor/graph.hpp"

namespace lac {

using Color = std::uint64_t;
inline constexpr Color kNoColor = std::numeric_limits<Color>::max();

// Colors indexed by ambient vertex; entries outside `domain` are kNoColor.
struct Coloring {
  VertexSet domain;
  std::vector<Color> colors;
  Color palette_bound = 0;

  Coloring() = default;
  // Total coloring of 0..n-1; palette_bound = max+1 unless given.
  explicit Coloring(std::vector<Color> c, std::optional<Color> bound = std::nullopt);
  Coloring(VertexSet dom, std::vector<Color> c, Color bound);

  std::size_t size() const { return colors.size(); }
  Color operator[](Vertex v) const { return colors[v]; }
  // Throws if a domain vertex is uncolored or a color reaches palette_bound.
  void validate() const;
};

struct PointedPattern {
  Graph graph;
  Vertex basepoint = 0;
  std::optional<std::vector<Color>> colors;  // local-indexed
  std::vector<Vertex> to_parent;             // local -> ambient (identity if built directly)
};

// Induced pattern on `vertices` of g pointed at `base`, colored from an
// ambient-indexed color vector when given.
PointedPattern make_pattern(const Graph& g, std::span<const Vertex> vertices, Vertex base,
                            const std::vector<Color>* ambient_colors = nullptr);
PointedPattern disk_pattern(const Graph& g, Vertex x, Dist r,
                            const std::vector<Color>* ambient_colors = nullptr);

using Bijection = std::vector<Vertex>;  // local a -> local b

struct IsoOptions {
  // Extra per-vertex labels that must agree (local-indexed; empty = unused).
  std::vector<std::uint64_t> extra_a, extra_b;
  // Stop after this many search nodes; nullopt = unbounded.
  std::optional<std::uint64_t> node_budget;
  // Called on every complete isomorphism; return false to reject it.
  std::function<bool(const Bijection&)> accept;
};

struct IsoSearchStats {
  std::uint64_t nodes = 0;
  bool budget_exhausted = false;
};

std::optional<Bijection> find_pointed_isomorphism(const PointedPattern& a, const PointedPattern& b,
                                                  const IsoOptions& opt = {},
                                                  IsoSearchStats* stats = nullptr);

// Calls `visit` for each pointed isomorphism until it returns false or
// `limit` results were produced.  Returns the number visited.
std::size_t enumerate_pointed_isomorphisms(const PointedPattern& a, const PointedPattern& b,
                                           const std::function<bool(const Bijection&)>& visit,
                                           const IsoOptions& opt = {},
                                           std::optional<std::size_t> limit = std::nullopt,
                                           IsoSearchStats* stats = nullptr);

inline constexpr std::size_t kDefaultAutomorphismCap = 64;

std::vector<Bijection> automorphisms(const Graph& g, const std::vector<Color>* colors = nullptr,
                                     std::size_t cap = kDefaultAutomorphismCap);
bool is_aperiodic(const Graph& g, const std::vector<Color>* colors = nullptr,
                  std::size_t cap = kDefaultAutomorphismCap);

// Reference implementation: all permutations.  Intended for V <= 8.
std::optional<Bijection> brute_force_pointed_isomorphism(const PointedPattern& a,
                                                         const PointedPattern& b);

}  // namespace lac
