#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include <Eigen/Dense>

#include "sdpcolor/graph.hpp"

namespace sdpcolor {

/// One vector per row.
using VectorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Non-finite numerics or an unusable configuration.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A projection whose residual is too short to normalize.
class DegenerateProjection : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Input violates a documented precondition of a reduction step.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Unit vectors with v_i . v_j <= -1/(alpha-1) + eps on every edge.
struct VectorColoring {
  double alpha = 2.0;
  double eps = 1e-3;
  VectorMatrix vectors;

  Vertex size() const { return static_cast<Vertex>(vectors.rows()); }
  int dim() const { return static_cast<int>(vectors.cols()); }
  /// The edge bound -1/(alpha-1); -infinity is never produced since alpha > 1.
  double edge_bound() const { return -1.0 / (alpha - 1.0); }
};

struct FeasibilityReport {
  double max_norm_error = 0.0;
  /// max over edges of v_i . v_j + 1/(alpha-1); 0 for edgeless graphs.
  double max_edge_residual = 0.0;
};

/// Recomputes norms and edge inner products from scratch.
FeasibilityReport check_vector_coloring(const Graph& g, const VectorMatrix& vectors, double alpha);
bool is_valid_vector_coloring(const Graph& g, const VectorColoring& vc);

/// Rows of `vc` for the given vertices, in the given order.
VectorColoring restrict_coloring(const VectorColoring& vc, std::span<const Vertex> vertices);

struct SolverOptions {
  double eps = 1e-3;
  int budget = 20000;  // iterations per restart
  int restarts = 3;
  std::uint64_t seed = 0;
  int dim = 0;  // 0 selects min(n, ceil(sqrt(2m)) + 4)
};

struct SolveReport {
  bool feasible = false;
  double best_residual = 0.0;
  int iterations = 0;
  int restarts_used = 0;
};

/// `coloring` is empty when the budget ran out above tolerance; the report's
/// best residual is evidence only, not an infeasibility certificate.
struct VectorColoringOutcome {
  std::optional<VectorColoring> coloring;
  SolveReport report;
};

int default_sdp_dimension(Vertex n, std::size_t m);

/// Low-rank penalty method on the product of unit spheres. `warm_start`, if
/// given, seeds the first attempt (rows are normalized; width must match).
VectorColoringOutcome solve_vector_coloring(const Graph& g, double alpha,
                                            const SolverOptions& opts = {},
                                            const VectorMatrix* warm_start = nullptr);

struct IndSetSdpSolution {
  Eigen::VectorXd v0;
  VectorMatrix vectors;
  double objective = 0.0;  // sum_i (1 + v0 . v_i) / 2
  double eps = 1e-3;
  double max_residual = 0.0;  // max over edges of |(v0 + v_i) . (v0 + v_j)|
  /// Total constraint violation sum_e |(v0 + v_i) . (v0 + v_j)|. Without a dual
  /// bound this measures feasibility only, not distance to the optimum.
  double slack = 0.0;
  int iterations = 0;

  double alignment_sum() const;  // sum_i v0 . v_i
};

/// Augmented Lagrangian on the product of spheres for
///   max sum_i (1 + v0.v_i)/2  s.t.  (v0 + v_i).(v0 + v_j) = 0 on edges.
/// Throws SolverError when no restart reaches |residual| <= eps.
IndSetSdpSolution solve_indset_sdp(const Graph& g, const SolverOptions& opts = {});

/// (v - (v0.v) v0) normalized. Throws DegenerateProjection if the residual norm is <= eps.
Eigen::VectorXd project_orthogonal(const Eigen::VectorXd& v0, const Eigen::VectorXd& v,
                                   double eps = 1e-9);

struct ReducedColoring {
  InducedSubgraph sub;
  VectorColoring coloring;
  bool perturbed = false;
};

/// Projects the neighbors of v orthogonally to v's vector: a vector
/// (alpha-1)-coloring of G[N(v)] with tolerance scaled by 2/(1-1/(alpha-1))^2,
/// or the realized residual if that is larger.
ReducedColoring neighborhood_reduce(const VectorColoring& vc, const Graph& g, Vertex v,
                                    std::uint64_t seed = 0);

struct AlignedSubset {
  InducedSubgraph sub;
  VectorColoring coloring;  // parameter alpha' = 2/(1+beta)
  double beta = 0.0;        // membership threshold on v0 . v_i
  bool perturbed = false;
};

/// Largest-alignment vertices S = {i : v0.v_i > 2/alpha - 1 - 3/ln n} with their
/// vectors projected orthogonally to v0. Throws PreconditionError when
/// sum_i v0.v_i < (2/alpha - 1 - 1/ln n) n or the threshold leaves (-1, 1).
AlignedSubset well_aligned_subset(const IndSetSdpSolution& sol, const Graph& g, double alpha,
                                  std::uint64_t seed = 0);

}  // namespace sdpcolor
