#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "sdpcolor/graph.hpp"

namespace sdpcolor {

struct PlantedInstance;

/// 1/ln n clamped to [0.05, 0.9].
double default_bucket_width(Vertex n);

/// Index j with (1+delta)^j <= d < (1+delta)^(j+1); d must be >= 1.
int degree_bucket_index(std::size_t d, double delta);

/// Vertices grouped by degree bucket; entry j holds the bucket-j vertices in
/// ascending order. Isolated vertices are in no bucket. Throws for delta outside (0, 1).
std::vector<VertexSet> degree_buckets(const Graph& g, double delta);

struct Candidate {
  Vertex v = 0;  // center vertex
  int j = 0;     // degree bucket of S = N(v) ∩ I_j
  int i = 0;     // bucket of the degree into S
  VertexSet members;
};

struct CandidateCollection {
  std::vector<Candidate> sets;
  double delta = 0.0;
};

/// All nonempty sets N_i(N(v) ∩ I_j) over v, j, i in that order, deduplicated
/// (first provenance kept). delta <= 0 selects default_bucket_width.
CandidateCollection build_candidate_collection(const Graph& g, double delta = 0.0);

/// n (log_{1+delta} n + 1)^2.
double collection_size_bound(Vertex n, double delta);

/// Largest |N(u) ∩ N(v)| over pairs u != v.
std::size_t max_common_neighbors(const Graph& g);

struct GuaranteeReport {
  bool satisfied = false;
  bool vacuous = false;
  std::optional<std::size_t> witness;  // index into the collection
  std::size_t witness_size = 0;
  double witness_red_fraction = 0.0;
  double size_floor = 0.0;      // d_min^2 / (s ln^2 n)
  double fraction_floor = 0.0;  // 1/(k-1) - margin
  std::size_t d_min = 0;
  std::size_t s = 0;
  int red_class = -1;
  std::size_t sets_meeting_size = 0;
  /// Stricter variant without slack: |T| >= d_min^2 / s and red fraction >= 1/(k-1).
  bool strict_satisfied = false;
  std::size_t strict_witness_size = 0;
};

/// Test oracle: with the class of largest total degree as the red set, looks
/// for a candidate of size >= size_floor whose red fraction is >= fraction_floor.
/// margin < 0 selects 2/ln n. The witness is the largest set meeting both
/// floors, or failing that the best red fraction among sets meeting the size floor.
GuaranteeReport collection_guarantee_check(const Graph& g, const CandidateCollection& coll, int k,
                                           std::span<const VertexSet> classes,
                                           double margin = -1.0);
GuaranteeReport collection_guarantee_check(const CandidateCollection& coll,
                                           const PlantedInstance& planted, double margin = -1.0);

/// JSON list of {"v","j","i","members"}.
void write_collection_json(std::ostream& out, const CandidateCollection& coll);

/// First index i with x_i >= delta * mean(x) and x_i >= (1 - delta) beta y_i.
/// Exists whenever sum x >= beta sum y and all entries are nonnegative.
std::optional<std::size_t> pigeon_index(std::span<const double> x, std::span<const double> y,
                                        double delta, double beta);

struct Contradiction {
  Vertex u = 0;
  Vertex v = 0;
};

/// Graph with same-color merges and deletions applied to a fixed base graph.
/// Groups are named by their representative base vertex.
class ContractedGraph {
 public:
  explicit ContractedGraph(const Graph& base);

  const Graph& base() const noexcept { return *base_; }
  Vertex find(Vertex base_vertex) const;
  bool live(Vertex rep) const;
  std::size_t live_count() const noexcept { return live_count_; }
  /// Representatives of live groups, ascending.
  VertexSet live_groups() const;
  /// Base vertices in the group, ascending.
  const VertexSet& members(Vertex rep) const;
  bool adjacent(Vertex a, Vertex b) const;

  /// Merges two live non-adjacent groups; returns the new representative.
  /// Throws std::invalid_argument otherwise.
  Vertex merge(Vertex a, Vertex b);
  void remove(Vertex rep);

  struct Quotient {
    Graph graph;
    VertexSet reps;  // local id -> representative
  };
  Quotient quotient() const;

 private:
  const Graph* base_;
  mutable std::vector<Vertex> parent_;
  std::vector<VertexSet> members_;
  std::vector<std::vector<Vertex>> adj_;  // sorted representative lists, live reps only
  std::vector<bool> live_;
  std::size_t live_count_ = 0;

  Vertex root(Vertex x) const;
};

/// Merges the groups of u and v, or reports a contradiction when they are adjacent.
std::variant<ContractedGraph, Contradiction> merge_same_color(ContractedGraph cg, Vertex u,
                                                              Vertex v);

namespace progress {
struct SameColor {
  Vertex u = 0;
  Vertex v = 0;
};
struct LargeIndependentSet {
  VertexSet set;
};
struct Colored {
  Coloring coloring;
};
/// The finder could not make progress (a randomized failure).
struct NoProgress {
  std::string reason;
};
}  // namespace progress

using ProgressResult = std::variant<progress::SameColor, progress::LargeIndependentSet,
                                    progress::Colored, progress::NoProgress, Contradiction>;

/// Called with the current quotient graph; ids in the result are quotient-local.
using ProgressFinder = std::function<ProgressResult(const Graph&)>;

/// A finder returned something that is not what it claims to be.
class InvalidProgressError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class DriverStatus { colored, contradiction, budget_exhausted, no_progress };

struct DriverResult {
  DriverStatus status = DriverStatus::colored;
  std::optional<Coloring> coloring;
  std::string message;
  int rounds = 0;
  int merges = 0;
  int colors_assigned = 0;
};

/// Repeatedly asks the finder for progress on the quotient: merges on
/// SameColor, gives a fresh color to an independent set and deletes it, or
/// finishes with a coloring of the quotient. Every result is verified first;
/// a malformed one throws InvalidProgressError. budget <= 0 means unlimited.
DriverResult progress_driver(const Graph& g, const ProgressFinder& finder, int budget = 0);

const char* to_string(DriverStatus s);

}  // namespace sdpcolor
