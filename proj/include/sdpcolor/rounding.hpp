#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sdpcolor/graph.hpp"
#include "sdpcolor/rng.hpp"
#include "sdpcolor/vecsdp.hpp"

namespace sdpcolor {

/// sqrt((1 - 2/alpha)(2 ln D - ln ln D)) with D clamped below by e.
/// Throws std::invalid_argument for alpha <= 2.
double kms_threshold(double alpha, double d_avg);

/// The unrefined sqrt((1 - 2/alpha) 2 ln D), same clamping.
double kms_threshold_original(double alpha, double d_avg);

struct RoundingParams {
  double c = 1.0;
  int trials = 64;
  std::uint64_t seed = 0;
};

/// Standard normal vector of the given dimension.
Eigen::VectorXd gaussian_direction(int dim, Rng& rng);

/// {i : v_i . r >= c}, ascending.
VertexSet threshold_set(const VectorColoring& vc, const Eigen::VectorXd& r, double c);

/// Threshold set with one endpoint of every internal edge deleted. Internal
/// edges are scanned in sorted order; the endpoint with more surviving
/// internal neighbors goes, ties removing the lower id.
VertexSet round_once(const VectorColoring& vc, const Graph& g, const Eigen::VectorXd& r, double c);

struct RoundingRun {
  VertexSet best;                  // largest; ties go to the lexicographically smallest
  std::vector<std::size_t> sizes;  // per trial, in trial order
};

/// `trials` independent draws, trial t using stream t of the seed.
RoundingRun kms_rounding_trials(const Graph& g, const VectorColoring& vc,
                                const RoundingParams& params);

/// Best trial; never empty on a nonempty graph (falls back to a single
/// minimum-degree vertex).
VertexSet kms_independent_set(const Graph& g, const VectorColoring& vc,
                              const RoundingParams& params);

class NotVectorColorable : public std::runtime_error {
 public:
  NotVectorColorable(int k, double eps, double best_residual);
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

struct KmsColorOptions {
  double eps = 1e-3;
  int trials = 64;
  std::uint64_t seed = 0;
  /// Graphs up to this size are colored exactly instead.
  Vertex exact_below = 20;
  SolverOptions solver{};  // eps and seed are overridden by the fields above
};

/// Solves one vector k-coloring, then repeatedly rounds the residual graph
/// (threshold recomputed from its average degree) and gives each extracted
/// set a fresh color. k = 2 uses an exact bipartite check.
/// Throws NotVectorColorable when the relaxation cannot be solved at eps.
Coloring kms_color(const Graph& g, int k, const KmsColorOptions& opts = {});

/// Same procedure with a vector coloring already in hand.
Coloring kms_color_with(const Graph& g, const VectorColoring& vc, int trials, std::uint64_t seed);

}  // namespace sdpcolor
