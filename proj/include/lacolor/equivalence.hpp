#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lacolor/hierarchy.hpp"
#include "lacolor/iso.hpp"
#include "lacolor/palette.hpp"

namespace lac {

// A bijection between two vertex sets of the ambient graph witnessing an
// n-equivalence (or n-weak equivalence) x -> y.
struct EquivalenceWitness {
  int n = 0;
  bool weak = false;
  Vertex x = kNoVertex, y = kNoVertex;
  std::vector<std::pair<Vertex, Vertex>> forward;  // (u, f(u)) sorted by u
  std::vector<std::pair<Vertex, Vertex>> inverse;  // (f(u), u) sorted by f(u)

  std::size_t size() const { return forward.size(); }
  bool defined(Vertex u) const;
  Vertex apply(Vertex u) const;     // kNoVertex outside the domain
  Vertex preimage(Vertex v) const;  // kNoVertex outside the image
  bool is_identity() const;
  std::vector<Vertex> domain() const;

  static EquivalenceWitness identity(int n, bool weak, Vertex x, const std::vector<Vertex>& dom);
  static EquivalenceWitness from_pairs(int n, bool weak, Vertex x, Vertex y,
                                       std::vector<std::pair<Vertex, Vertex>> pairs);
};

// Class representatives and the maps h_{n,x}: rep_n(x) -> x of one level.
struct LevelRepresentatives {
  int n = 0;
  std::vector<Vertex> rep;                        // ambient-indexed, on X_n
  std::vector<std::optional<EquivalenceWitness>> h;  // ambient-indexed, on X_n
  std::size_t classes = 0;
  std::size_t tests = 0;  // isomorphism searches run
};

struct EquivalenceContext {
  const Hierarchy* hierarchy = nullptr;
  std::vector<std::vector<Color>> chi;      // χ_n per level
  std::vector<LevelRepresentatives> reps;   // filled level by level
  std::optional<std::uint64_t> node_budget; // per search

  explicit EquivalenceContext(const Hierarchy& h);
  const Hierarchy& h() const { return *hierarchy; }
};

// Domains: C̄_{0,-1}(x) / D_{-1}(x,r_0^±) at level 0, 𝒞_{n,-1}(x) and
// 𝒞ₛ_n(x) = ∪_{u∈D_{n-1}(x,r_n^±)} C̄_{n-1,-1}(u) above.
std::vector<Vertex> equivalence_domain(const Hierarchy& h, int n, Vertex x, bool weak);

// Checks every clause of the definition; returns the first violated clause
// as text, or nullopt when f is an equivalence.
std::optional<std::string> check_equivalence(const EquivalenceContext& ctx,
                                             const EquivalenceWitness& f);

// Search for an equivalence x -> y, optionally requiring it to preserve an
// ambient coloring (e.g. a rigid coloring).
std::optional<EquivalenceWitness> find_equivalence(const EquivalenceContext& ctx, int n, Vertex x,
                                                   Vertex y, bool weak,
                                                   const std::vector<Color>* colors = nullptr);

std::optional<EquivalenceWitness> zero_equivalence(const EquivalenceContext& ctx, Vertex x, Vertex y);
std::optional<EquivalenceWitness> n_equivalence(const EquivalenceContext& ctx, int n, Vertex x,
                                                Vertex y);
std::optional<EquivalenceWitness> weak_equivalence(const EquivalenceContext& ctx, int n, Vertex x,
                                                   Vertex y);

// Visits every equivalence x -> y (color-preserving when `colors` given)
// until `visit` returns false or `limit` is reached.  Returns the count.
std::size_t enumerate_equivalences(const EquivalenceContext& ctx, int n, Vertex x, Vertex y, bool weak,
                                   const std::function<bool(const EquivalenceWitness&)>& visit,
                                   const std::vector<Color>* colors = nullptr,
                                   std::optional<std::size_t> limit = std::nullopt);

// Fills ctx.reps[n]; requires levels < n done.
const LevelRepresentatives& compute_representatives(EquivalenceContext& ctx, int n);
void compute_all_representatives(EquivalenceContext& ctx);

// Canonical-template mode: replaces the BFS-ordering of every
// non-representative cluster by the push-forward along h_{n,x}.
void apply_canonical_orderings(Hierarchy& h, const EquivalenceContext& ctx);
// Families built at representatives and pushed forward along h_{n,x}.
Palette build_canonical_palette(const Hierarchy& h, const EquivalenceContext& ctx,
                                const FamilyOptions& opt = {});

}  // namespace lac
