#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lacolor/graph.hpp"
#include "lacolor/schedule.hpp"

namespace lac {

class HierarchyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Sign : std::uint8_t { minus = 0, plus = 1 };
const char* to_string(Sign s);

// How Y_n is split into Y_n^+ and Y_n^-.
enum class SplitPolicy : std::uint8_t { formula, all_minus, all_plus };
const char* to_string(SplitPolicy p);
SplitPolicy parse_split_policy(const std::string& s);

struct LevelSpec {
  Dist r = 0;
  Dist s = 0;
  SplitPolicy split = SplitPolicy::formula;
};

// One level X_n of the hierarchy.  Every per-vertex vector is indexed by
// ambient vertex id; entries for vertices outside the relevant set are
// unspecified (kNoVertex / empty).
struct LevelState {
  int n = 0;
  Dist r = 0, s = 0;
  SplitPolicy split = SplitPolicy::formula;

  VertexSet candidates;            // Y_n
  std::vector<Sign> candidate_sign;  // on Y_n
  VertexSet members;               // X_n
  std::vector<Sign> sign;          // on X_n
  std::vector<Sign> zone;          // on X_{n-1}: Z^+ or Z^-
  std::vector<Vertex> cluster_of;  // on X_{n-1}: π_{n-1}
  std::vector<std::vector<Vertex>> closed_cluster;  // on X_n, sorted
  std::vector<std::vector<Vertex>> cluster;         // on X_n, sorted
  std::vector<Edge> edges;         // E_n, ambient ids, u < v
  MetricView metric;               // d_n

  // BFS-ordering of each cluster: bfs_order[x] lists C_{n,n-1}(x) in ⊴_{n,x}
  // order; parent[u] = Pa_{n,π(u)}(u) (kNoVertex at centers).
  std::vector<std::vector<Vertex>> bfs_order;
  std::vector<Vertex> parent;

  Dist r_plus() const { return r * s; }
  Dist r_minus() const { return r; }
  Dist r_pm(Sign g) const { return g == Sign::plus ? r_plus() : r_minus(); }
  Dist R_plus() const { return r * (2 * s + 3); }
  Dist R_minus() const { return 4 * r - 1; }
  Dist R_pm(Sign g) const { return g == Sign::plus ? R_plus() : R_minus(); }
  bool is_plus(Vertex x) const { return sign[x] == Sign::plus; }
};

class Hierarchy {
 public:
  Hierarchy() = default;
  Hierarchy(const Graph& ambient, Vertex basepoint);

  const Graph& ambient() const { return ambient_; }
  Vertex basepoint() const { return p_; }
  std::size_t size() const { return levels_.size(); }
  const LevelState& level(int n) const { return levels_.at(static_cast<std::size_t>(n)); }
  LevelState& mutable_level(int n) { return levels_.at(static_cast<std::size_t>(n)); }
  const std::vector<LevelState>& levels() const { return levels_; }

  // (X_n, d_n) for n >= -1.
  const MetricView& metric(int n) const;
  const VertexSet& members(int n) const;
  std::size_t degree(int n) const;  // deg X_n, n >= -1

  // Position in the order ≤_n, which with no repetitive structure is the
  // same total order at every level: (d_{-1}(·,p), index).
  std::uint32_t rank(Vertex v) const { return rank_[v]; }
  const std::vector<Dist>& basepoint_distances() const { return dist_p_; }
  bool less(Vertex a, Vertex b) const { return rank_[a] < rank_[b]; }

  // Appends level size(); throws HierarchyError on degenerate input.
  const LevelState& build_next(const LevelSpec& spec);

  // η_n(a) as a power-of-two exponent floor((a - A - 1)/D) using the
  // actual degrees of the built levels.
  BigInt eta_exponent(int n, std::uint64_t a) const;
  // η_n(a) >= (6+b)^2
  bool eta_at_least_square(int n, std::uint64_t a, std::uint64_t b) const;

 private:
  Graph ambient_;
  MetricView base_;
  VertexSet all_;
  Vertex p_ = 0;
  std::vector<Dist> dist_p_;
  std::vector<std::uint32_t> rank_;
  std::vector<LevelState> levels_;
};

Hierarchy build_hierarchy(const Graph& g, Vertex basepoint, const std::vector<LevelSpec>& specs);

// Desk level specs (r_n, s_n) read from a schedule.
std::vector<LevelSpec> level_specs_from_schedule(const ParameterSchedule& sched,
                                                 const std::vector<SplitPolicy>& policies = {});

// BFS-ordering of a star-shaped cluster around `center` in metric m.
// Returns vertices in ⊴ order; fills parent (ambient-indexed) when given.
std::vector<Vertex> bfs_ordering(const MetricView& m, std::span<const Vertex> cluster, Vertex center,
                                 std::vector<Vertex>* parent = nullptr);

// Ch(v) = Pa^{-1}(v) within the cluster ordered by `order`.
std::vector<Vertex> children(const LevelState& level, Vertex v);
std::vector<Vertex> children(std::span<const Vertex> order, const std::vector<Vertex>& parent,
                             Vertex v);

// C_{n,m}(x) (or C̄_{n,m}(x) when closed), -1 <= m < n, as a sorted list.
std::vector<Vertex> compose_clusters(const Hierarchy& h, int n, int m, Vertex x, bool closed = false);

// 𝒞_{n,-1}(x) = union of C̄_{n,-1}(v) over v in D_n(x, n).
std::vector<Vertex> extended_cluster(const Hierarchy& h, int n, Vertex x);

// Default bulk margin for level n: Γ_n^+ + n L_n plus a slack term.
Dist default_bulk_margin(const Hierarchy& h, int n, Dist slack = 0);

// Level specs' Γ^±_n and L_n computed from the built radii.
std::uint64_t level_L(const Hierarchy& h, int n);          // L_n, L_{-1}=1
std::uint64_t level_Gamma(const Hierarchy& h, int n, Sign g);  // Γ_n^±, Γ_{-1}=0

}  // namespace lac
