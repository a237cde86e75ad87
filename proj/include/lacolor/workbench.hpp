#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "lacolor/equivalence.hpp"
#include "lacolor/graph.hpp"
#include "lacolor/hierarchy.hpp"
#include "lacolor/iso.hpp"
#include "lacolor/palette.hpp"
#include "lacolor/schedule.hpp"
#include "lacolor/verify.hpp"

namespace lac {

class WorkbenchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- generators -----------------------------------------------------------

enum class CayleyGroup { Z, Z2, F2 };

Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph complete_graph(std::size_t n);
Graph complete_bipartite_graph(std::size_t a, std::size_t b);
Graph grid_graph(std::size_t w, std::size_t h);
Graph torus_graph(std::size_t w, std::size_t h);
// Ball of radius `depth` around a vertex of the `arity`-regular tree.
Graph tree_ball(std::size_t arity, std::size_t depth);
// Ball of radius `radius` around the identity in the Cayley graph of the
// standard generators.
Graph cayley_ball(CayleyGroup group, std::size_t radius);
// Random spanning tree with degree <= delta, then random extra edges under
// the same bound.
Graph random_bounded(std::size_t delta, std::size_t n, std::uint64_t seed);
Graph petersen_graph();
Graph prism_graph(std::size_t n);  // C_n x K_2
Graph line_graph(const Graph& g);

// Text form "kind:params", e.g. "grid:60x60", "tree:3x6", "cayley:F2:3",
// "random:5x200:7", "complete_bipartite:3x3".
struct GeneratorSpec {
  std::string kind;
  std::vector<std::uint64_t> params;
  std::string group;       // cayley only
  std::uint64_t seed = 0;  // random only
  bool operator==(const GeneratorSpec&) const = default;
};
GeneratorSpec parse_generator(const std::string& text);
std::string to_string(const GeneratorSpec& spec);
Graph generate(const GeneratorSpec& spec);

// ---- distinguishing numbers ----------------------------------------------

struct DistinguishingResult {
  std::size_t value = 0;
  std::vector<Color> witness;  // an aperiodic coloring with `value` colors
  std::size_t automorphisms = 0;
  std::size_t nodes = 0;  // search nodes
};
DistinguishingResult distinguishing_number(const Graph& g, std::size_t cap = kDefaultAutomorphismCap);
// D(X') for the line graph X'; asserts deg X' <= 2(deg X - 1).
DistinguishingResult distinguishing_index(const Graph& g, std::size_t cap = kDefaultAutomorphismCap);

// Marker plus children-injective coloring of the whole graph from root.
struct CandidateColoring {
  Coloring coloring;
  std::size_t marker_length = 0;  // 5 unless the graph is too small
};
CandidateColoring bfs_candidate_coloring(const Graph& g, Vertex root);

// ---- serialization --------------------------------------------------------

nlohmann::json graph_to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);
nlohmann::json coloring_to_json(const Coloring& c);
Coloring coloring_from_json(const nlohmann::json& j, std::size_t vertices);
nlohmann::json report_to_json(const VerificationReport& r);
nlohmann::json schedule_to_json(const ParameterSchedule& s);
VerificationReport report_from_json(const nlohmann::json& j);

// Levels are stored as their specs plus the built structure; loading
// rebuilds from the graph and rejects a file that disagrees with it.
struct LevelsFile {
  std::vector<LevelSpec> specs;
  FamilyOptions family;
  bool canonical = false;
};
nlohmann::json levels_to_json(const Hierarchy& h, const LevelsFile& meta,
                              const EquivalenceContext* ctx = nullptr);
LevelsFile levels_meta_from_json(const nlohmann::json& j);
void check_levels_json(const Hierarchy& h, const nlohmann::json& j);

// Parse with the file name and line/column in error messages.
nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

// Graphviz DOT with a fixed 16-color fill palette, cycled beyond 16.
void export_dot(const Graph& g, const std::vector<Color>* colors, std::ostream& out);
extern const char* const kDotPalette[16];

// ---- run configuration ----------------------------------------------------

// Flat "key = value" text; '#' starts a comment.  Lists are comma
// separated, '-' marks a default entry.
struct RunConfig {
  GeneratorSpec generator{"cycle", {40}, {}, 0};
  ScheduleMode mode = ScheduleMode::desk;
  std::optional<std::uint64_t> delta;  // must match the generated graph
  std::vector<std::uint64_t> r{12}, s{3};
  std::vector<std::uint64_t> eps;      // schedule ε_n (desk default 1..)
  std::vector<SplitPolicy> split;
  int N = 0;
  bool canonical = true;
  std::vector<std::optional<Dist>> family_inner, family_sep;
  std::vector<Dist> bulk_margin;       // per level invariant margins
  Dist finitary_margin = 0;            // bulk margin for the finitary check
  Dist finitary_eps = 4;
  Dist delta_max = 40;

  static RunConfig parse(std::istream& in, const std::string& source = "<config>");
  static RunConfig load(const std::string& path);
  std::string str() const;
  bool operator==(const RunConfig&) const = default;
};

struct PipelineResult {
  RunConfig config;
  Graph graph;
  ParameterSchedule schedule;
  std::unique_ptr<Hierarchy> hierarchy;
  std::unique_ptr<EquivalenceContext> equivalence;  // canonical mode
  Palette palette;
  PhiResult phi;
  std::optional<Dist> separating_delta;
  VerificationReport report;
};
PipelineResult run_pipeline(const RunConfig& cfg);

}  // namespace lac
