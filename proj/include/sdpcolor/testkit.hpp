#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sdpcolor/graph.hpp"

namespace sdpcolor {

class SizeGuardError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A random graph with a hidden proper k-coloring.
struct PlantedInstance {
  Graph graph;
  std::vector<VertexSet> classes;
  int k = 0;
  double edge_prob = 0.0;
  std::uint64_t seed = 0;

  /// The planted partition as a coloring (class index = color).
  Coloring planted_coloring() const;
};

/// Balanced classes (sizes differ by at most one) assigned through a seeded
/// shuffle; each cross-class pair is an edge independently with probability p.
PlantedInstance planted_k_colorable(Vertex n, int k, double p, std::uint64_t seed);

/// Erdos-Renyi G(n, p).
Graph random_gnp(Vertex n, double p, std::uint64_t seed);

// Small named graphs used throughout the tests.
Graph complete_graph(Vertex n);
Graph cycle_graph(Vertex n);
Graph path_graph(Vertex n);
Graph star_graph(Vertex leaves);
Graph complete_bipartite(Vertex a, Vertex b);
Graph petersen_graph();

inline constexpr Vertex kMaxMisVertices = 40;
inline constexpr Vertex kMaxChromaticVertices = 20;
inline constexpr Vertex kMaxDecisionVertices = 30;

/// Maximum independent set by branch and bound with clique-cover pruning.
VertexSet brute_force_mis(const Graph& g);

/// Optimal coloring by increasing-k backtracking.
Coloring brute_force_chromatic(const Graph& g);

/// Exact k-colorability by backtracking; new colors are opened in order so
/// color permutations are never revisited.
bool is_k_colorable(const Graph& g, int k);
std::optional<Coloring> find_k_coloring(const Graph& g, int k);

/// Writes <base>.col and the <base>.json sidecar {"k", "p", "seed", "classes"}.
void write_fixture(const std::filesystem::path& base, const PlantedInstance& instance);

}  // namespace sdpcolor
