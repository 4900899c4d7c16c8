#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "sdpcolor/graph.hpp"
#include "sdpcolor/vecsdp.hpp"

namespace sdpcolor {

/// alpha(alpha-1) / (k(alpha(alpha-k) + (k-1)(k+1)/3)) with k = floor(alpha);
/// equals 1 on [1, 2]. Throws std::invalid_argument for alpha < 1.
double f_exponent(double alpha);

/// Recursion failed to make progress within its depth allowance.
class RecursionGuardError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct L2Options {
  int trials = 64;  // total rounding trials, split evenly across recursion levels
  std::uint64_t seed = 0;
  int depth_guard = 0;  // 0 selects ceil(alpha) + 2 from the input coloring
};

/// Independent set from a vector coloring: the larger of threshold rounding on
/// g and the recursion on the neighborhood of a maximum-degree vertex (lowest
/// id on ties) at parameter alpha - 1.
VertexSet l2_vector_indset(const Graph& g, const VectorColoring& vc, const L2Options& opts = {});

struct AkOptions {
  double eps = 1e-3;
  int trials = 64;
  std::uint64_t seed = 0;
  int depth_guard = 0;  // 0 selects ceil(alpha') + 2 from the realized alpha'
  SolverOptions solver{};  // eps and seed are overridden by the fields above
};

struct AkResult {
  VertexSet set;
  /// False when the alignment precondition failed and a greedy set was returned.
  bool promise_used = true;
  double alpha_prime = 0.0;
  std::size_t aligned_size = 0;
  double sdp_objective = 0.0;
};

/// Independent set for a graph promised to contain one of size n/alpha:
/// relaxation, alignment subset, then the vector-coloring recursion.
AkResult ak_independent_set_report(const Graph& g, double alpha, const AkOptions& opts = {});
VertexSet ak_independent_set(const Graph& g, double alpha, const AkOptions& opts = {});

}  // namespace sdpcolor
