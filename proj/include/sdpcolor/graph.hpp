#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sdpcolor {

using Vertex = std::int32_t;

/// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<Vertex>;

struct Edge {
  Vertex u;
  Vertex v;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Immutable simple undirected graph in compressed adjacency form.
/// Neighbor lists are sorted ascending.
class Graph {
 public:
  Graph() = default;

  /// Edgeless graph on n vertices.
  explicit Graph(Vertex n);

  /// Throws GraphError on an out-of-range endpoint, a self-loop or a repeated edge.
  static Graph from_edges(Vertex n, std::span<const Edge> edges);

  /// Like from_edges but silently drops self-loops and repeats.
  static Graph from_edges_lenient(Vertex n, std::span<const Edge> edges);

  Vertex num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return targets_.size() / 2; }
  bool empty() const noexcept { return n_ == 0; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(Vertex u, Vertex v) const;
  bool contains(Vertex v) const noexcept { return v >= 0 && v < n_; }

  /// 2m/n, or 0 for the empty graph.
  double average_degree() const noexcept;
  std::size_t max_degree() const noexcept;
  std::size_t min_degree() const noexcept;

  /// Edges with u < v in lexicographic order.
  std::vector<Edge> edges() const;

 private:
  Vertex n_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> targets_;
};

/// A proper-or-not assignment of color indices to vertices.
class Coloring {
 public:
  Coloring() = default;
  explicit Coloring(std::vector<int> assignment);

  const std::vector<int>& assignment() const noexcept { return assignment_; }
  int color(Vertex v) const { return assignment_[static_cast<std::size_t>(v)]; }
  std::size_t size() const noexcept { return assignment_.size(); }
  int colors_used() const noexcept { return colors_used_; }

  /// Classes indexed by color in increasing color order; empty colors are skipped.
  std::vector<VertexSet> classes() const;

  /// Same partition with colors renumbered 0.. in order of first appearance.
  Coloring normalized() const;

 private:
  std::vector<int> assignment_;
  int colors_used_ = 0;
};

struct InducedSubgraph {
  Graph graph;
  /// Local id -> parent id. Ascending, so local ids follow parent order.
  VertexSet to_parent;

  /// Parent id -> local id, or nullopt when the vertex is not in the subgraph.
  std::optional<Vertex> local_of(Vertex parent) const;
  VertexSet lift(std::span<const Vertex> local) const;
};

struct PeelResult {
  VertexSet removed;  // U
  VertexSet core;     // W = V - U
};

/// Sorts and deduplicates.
VertexSet make_vertex_set(std::vector<Vertex> members);

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> s);

/// N(u) ∩ N(v). Throws GraphError on invalid ids or u == v.
VertexSet common_neighbors(const Graph& g, Vertex u, Vertex v);

/// Exhaustively deletes vertices whose residual degree is below threshold.
PeelResult peel_low_degree(const Graph& g, double threshold);

bool verify_coloring(const Graph& g, const Coloring& c);
bool verify_independent_set(const Graph& g, std::span<const Vertex> s);

/// Largest class; ties go to the smallest color index.
VertexSet largest_color_class(const Coloring& c);

/// BFS 2-coloring, or nullopt if g has an odd cycle.
std::optional<Coloring> two_coloring(const Graph& g);

/// Repeatedly takes a minimum-degree vertex of the residual graph (ties: lowest id).
VertexSet greedy_independent_set(const Graph& g);

/// Largest-first sequential greedy coloring. Always proper.
Coloring greedy_coloring(const Graph& g);

}  // namespace sdpcolor
