#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lacolor/hierarchy.hpp"
#include "lacolor/iso.hpp"

namespace lac {

class CapacityError : public std::runtime_error {
 public:
  CapacityError(const std::string& msg, int level, Vertex center)
      : std::runtime_error(msg), level(level), center(center) {}
  int level;
  Vertex center;
};

class PaletteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// χ_n on X_n (ambient-indexed; kNoColor off X_n) and |I_{n,x}|.
struct ChiResult {
  std::vector<Color> chi;
  std::vector<std::uint64_t> index_size;
};
ChiResult chi(const Hierarchy& h, int n);

// One member of the family ψ^i_{n,x}: a base coloring of the cluster plus
// the separated set whose subsets encode i.
struct Family {
  int n = 0;
  Vertex center = kNoVertex;
  Sign sign = Sign::minus;
  std::vector<Vertex> domain;  // C_{n,n-1}(x), sorted
  std::vector<Color> base;     // ψ^0 parallel to domain
  std::vector<Vertex> marker;  // τ_0..τ_5 at level 0; {x} above
  std::vector<Vertex> net;     // N_{n,x}, enumeration order
  Color net_color = 0;         // 0 at level 0, 4 above

  // Largest index realizable: 2^|net| (saturated).
  std::uint64_t capacity() const;
  // 𝒩^i: bit b of i selects net[b].
  std::vector<Vertex> subset(std::uint64_t i) const;
  // ψ^i parallel to domain; throws CapacityError if i >= capacity().
  std::vector<Color> realize(std::uint64_t i) const;
  // Writes ψ^i into an ambient-indexed vector.
  void paint(std::uint64_t i, std::vector<Color>& out) const;
  std::size_t position(Vertex u) const;  // index into domain or npos
};

// Lexicographically least geodesic (x=τ_0,...,τ_len) inside `allowed`.
std::optional<std::vector<Vertex>> least_geodesic(const Graph& g, Vertex x, std::size_t len,
                                                  const std::vector<char>* allowed = nullptr);

Family adapted_psi0_level0(const Hierarchy& h, Vertex x);
Family adapted_psi0_leveln(const Hierarchy& h, int n, Vertex x);

struct FamilyOptions {
  // inner radius of the corona holding N_{n,x} (default 10)
  std::vector<std::optional<Dist>> inner;
  // separation of N_{n,x} (default 3 at level 0, r_{n-1}^2 s_{n-1} above)
  std::vector<std::optional<Dist>> sep;

  Dist inner_at(int n) const;
  std::optional<Dist> sep_at(int n) const;
};

// Adds N_{n,x} to a ψ^0 family.
void attach_net(const Hierarchy& h, Family& f, const FamilyOptions& opt);
Family family_level0(const Hierarchy& h, Vertex x, const FamilyOptions& opt = {});
Family family_leveln(const Hierarchy& h, int n, Vertex x, const FamilyOptions& opt = {});

// Injection of pairs: diagonal by diagonal, ordered by (max(i,j), i <
// max first, then j).
std::uint64_t pair_index(std::uint64_t i, std::uint64_t j);
std::pair<std::uint64_t, std::uint64_t> unpair_index(std::uint64_t k);
// pair_index with the bound check i, j < size.
std::uint64_t pair_index(std::uint64_t i, std::uint64_t j, std::uint64_t size);

struct Palette {
  std::vector<ChiResult> chi;                     // per level
  std::vector<std::vector<Family>> families;      // per level
  std::vector<std::vector<std::uint32_t>> slot;   // per level, ambient -> family index

  const Family& family(int n, Vertex x) const;
  Family& family(int n, Vertex x);
};

Palette build_palette(const Hierarchy& h, const FamilyOptions& opt = {});

struct PhiResult {
  int N = 0;
  // φ^N_n for n = 0..N as (first, second) pairs, ambient-indexed
  std::vector<std::vector<std::pair<Color, Color>>> phi;
  // family index used for each center at each level
  std::vector<std::vector<std::uint64_t>> index;
  Coloring coloring;  // φ^N_{-1} into [Δ]
};

PhiResult build_phi(const Hierarchy& h, const Palette& pal, int N);

}  // namespace lac
