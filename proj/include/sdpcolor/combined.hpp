#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include "sdpcolor/graph.hpp"
#include "sdpcolor/vecsdp.hpp"

namespace sdpcolor {

using Rational = boost::rational<boost::multiprecision::cpp_int>;

/// Exponent of the color bound: 0 for k=2, 3/14 for k=3, and
/// 1 - 6/(k + 4 + 3(1 - 2/k)/(1 - alpha_{k-2})) above. Throws for k < 2.
Rational alpha_k(int k);
double alpha_k_value(int k);
/// "p/q" in lowest terms.
std::string alpha_k_string(int k);

/// (2a_k/(1-2/k) - (1-a_k)/(1-a_{k-2})) * 3/k == 1 - a_k, exactly. Needs k >= 4.
bool step9_identity_holds(int k);

/// c0 * size^{alpha_k} * (1 + ln size)^2.
double color_cutoff(std::size_t size, int k, double c0 = 4.0);

/// A step-6 inference that a common neighborhood is not (k-2)-colorable.
struct Declaration {
  Graph subgraph;  // G[S]
  int k = 0;       // the color count that was refuted
  Vertex u = 0;    // pair ids in the graph being processed
  Vertex v = 0;
  bool recursion_failed = false;  // true: no coloring; false: too many colors
  int colors_used = 0;
  double cutoff = 0.0;
};

struct CombinedConfig {
  double c0 = 4.0;             // cutoff constant
  double progress_divisor = 4.0;  // step-9 sets must reach n^{1-alpha_k} / divisor
  int repeats = 3;
  Vertex exact_below = 20;     // quotients this small are colored exactly
  int max_step9_candidates = 8;
  /// Multipliers on the peeling degree n^{a_k/(1-2/k)} and the common-neighbor
  /// floor n^{(1-a_k)/(1-a_{k-2})}; both are O~ thresholds.
  double degree_scale = 1.0;
  double share_scale = 1.0;
  int trials = 64;
  double eps = 1e-3;
  std::uint64_t seed = 0;
  /// Rank cap for vector colorings solved here; 0 keeps the solver default.
  int vector_dim = 32;
  SolverOptions solver{};      // eps and seed are overridden
  std::function<void(const Declaration&)> on_declaration;
};

struct CombinedStats {
  int rounds = 0;
  int exact_finishes = 0;
  int low_degree_sets = 0;    // step 4
  int neighborhood_sets = 0;  // step 6, independent set
  int merges = 0;             // step 6, same color
  int candidate_sets = 0;     // step 9
  int candidate_fallbacks = 0;
  int k3_runs = 0;
};

struct CombinedResult {
  Coloring coloring;  // always proper
  int k = 0;
  bool success = false;
  std::string failure;  // empty on success
  int repeats_used = 0;
  bool k3_fallback = false;
  std::uint64_t seed = 0;
  CombinedStats stats;
};

/// Colors g, aiming at O~(n^{alpha_k}) colors when g is k-colorable. On
/// failure after all repeats the coloring is a greedy one and success is false.
CombinedResult combined_color(const Graph& g, int k, const CombinedConfig& cfg = {});

/// The k = 3 fallback: neighborhoods of degree >= n^{3/4} get two colors each,
/// the rest is colored by vector-coloring rounding. nullopt when a
/// neighborhood is not bipartite or the relaxation fails.
std::optional<Coloring> wigderson_kms_color(const Graph& g, const CombinedConfig& cfg,
                                            std::uint64_t seed);

/// Result JSON with a schema field; deterministic for identical inputs.
std::string combined_result_json(const CombinedResult& r);

}  // namespace sdpcolor
