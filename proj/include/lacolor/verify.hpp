#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lacolor/equivalence.hpp"
#include "lacolor/hierarchy.hpp"
#include "lacolor/iso.hpp"
#include "lacolor/palette.hpp"

namespace lac {

class VerifyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CheckStatus : std::uint8_t { pass, fail, boundary_skipped, skipped, vacuous };
const char* to_string(CheckStatus s);

struct CheckLine {
  std::string id;
  CheckStatus status = CheckStatus::pass;
  std::size_t checked = 0;   // quantifier domain actually examined
  std::size_t skipped = 0;   // elements left out as boundary
  std::vector<std::pair<Vertex, Vertex>> witnesses;  // on fail
  std::string note;
  double runtime_ms = 0;
};

struct VerificationReport {
  std::vector<CheckLine> lines;

  bool passed() const;  // no line failed
  const CheckLine* find(const std::string& id) const;
  void append(const VerificationReport& other);
  std::string summary() const;  // one line per check
};

// Vertices whose distance to the graph boundary exceeds `margin` (all
// vertices when the graph has no boundary).
struct Bulk {
  std::vector<char> in;
  std::vector<Dist> depth;  // distance to boundary (kUnreachable if none)
  Dist margin = 0;

  bool contains(Vertex v) const { return in[v] != 0; }
  std::size_t size() const;
  // depth[v] > r
  bool unclipped(Vertex v, Dist r) const { return depth[v] == kUnreachable || depth[v] > r; }
};
Bulk make_bulk(const Graph& g, Dist margin);

// Pairs x != y in the bulk with d(x,y) < eps whose delta-disks are not
// clipped must have non-isomorphic colored pointed delta-disks.
VerificationReport check_finitary(const Graph& g, const std::vector<Color>& colors, Dist eps, Dist delta,
                                  const Bulk& bulk);
// Largest d <= delta_max leaving at least two bulk vertices with unclipped
// d-disks; throws on a bulk with fewer than two vertices.
Dist sweep_cap(const Bulk& bulk, Dist delta_max);
// Least delta <= sweep_cap(bulk, delta_max) at which check_finitary passes
// on the vertices whose capped disks are unclipped.
std::optional<Dist> min_separating_delta(const Graph& g, const std::vector<Color>& colors, Dist eps,
                                         const Bulk& bulk, Dist delta_max);

// Skipped (not failed) when the graph exceeds `cap` vertices.
VerificationReport check_aperiodic_finite(const Graph& g, const std::vector<Color>& colors,
                                          std::size_t cap = 8192);

// Relative-density constant, over the bulk, of the bulk vertices whose
// colored radius-disk matches the one at p; nullopt when none match.
std::optional<Dist> repetitivity_density(const Graph& g, const std::vector<Color>& colors, Vertex p,
                                         Dist radius, const Bulk& bulk);

struct InvariantOptions {
  std::vector<Dist> margins;        // bulk margin per level (default_bulk_margin)
  bool paper_capacity = false;      // assert |I|^2 <= |H| (paper-scale radii only)
};

// Hierarchy invariants; palette and φ lines are added when given.
VerificationReport check_level_invariants(const Hierarchy& h, const Palette* pal = nullptr,
                                          const PhiResult* phi = nullptr,
                                          const InvariantOptions& opt = {});

// Index i with colors == ψ^i on the family domain, if any.
std::optional<std::uint64_t> decode_index(const Family& f, const std::vector<Color>& colors);

struct LadderOptions {
  // true: the lemma's Υ-type margins from the built radii; false: a point
  // is examined whenever the structure it involves lies inside the domain.
  bool paper_margins = true;
};

// Ladder conclusions for a colored isomorphism f: D(x,R) -> D(f(x),R).
VerificationReport check_rigidity_ladder_map(const Hierarchy& h, const PhiResult& phi,
                                             const Palette& pal, const std::vector<Color>& colors,
                                             int n, Vertex x, Dist R, const EquivalenceWitness& f,
                                             const LadderOptions& opt = {});
// Searches colored-disk isomorphisms from each sampled center to the bulk
// and checks every one found.
VerificationReport check_rigidity_ladder(const Hierarchy& h, const PhiResult& phi, const Palette& pal,
                                         const std::vector<Color>& colors, int n,
                                         const std::vector<Vertex>& samples, Dist R, const Bulk& bulk,
                                         const LadderOptions& opt = {});

// Υ_n computed from the built radii (W_0 = 10, W_i = 2).
std::uint64_t level_Upsilon(const Hierarchy& h, int n);

}  // namespace lac
