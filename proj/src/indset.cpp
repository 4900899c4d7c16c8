#include "sdpcolor/indset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sdpcolor/rng.hpp"
#include "sdpcolor/rounding.hpp"

namespace sdpcolor {

double f_exponent(double alpha) {
  if (!(alpha >= 1.0)) throw std::invalid_argument("f_exponent needs alpha >= 1");
  if (alpha <= 2.0) return 1.0;
  const double k = std::floor(alpha);
  return alpha * (alpha - 1.0) / (k * (alpha * (alpha - k) + (k - 1.0) * (k + 1.0) / 3.0));
}

namespace {

VertexSet all_vertices(const Graph& g) {
  VertexSet out(static_cast<std::size_t>(g.num_vertices()));
  std::iota(out.begin(), out.end(), 0);
  return out;
}

bool better(const VertexSet& a, const VertexSet& b) {
  return a.size() > b.size() || (a.size() == b.size() && a < b);
}

struct L2Recursion {
  int trials_per_level;
  int depth_guard;

  VertexSet run(const Graph& g, const VectorColoring& vc, const Rng& rng, int depth) const {
    if (g.num_vertices() == 0) return {};
    if (g.num_edges() == 0) return all_vertices(g);
    if (depth > depth_guard)
      throw RecursionGuardError("vector-coloring recursion exceeded depth " +
                                std::to_string(depth_guard));
    // Below 2 only edgeless graphs qualify; leftover edges are numerical noise.
    if (vc.alpha < 2.0) return greedy_independent_set(g);
    if (!(vc.alpha > 2.0)) {
      if (auto two = two_coloring(g)) return largest_color_class(*two);
      return greedy_independent_set(g);
    }

    const RoundingParams params{kms_threshold(vc.alpha, g.average_degree()), trials_per_level,
                                rng.split(0).seed()};
    VertexSet best = kms_independent_set(g, vc, params);

    Vertex hub = 0;
    for (Vertex v = 1; v < g.num_vertices(); ++v)
      if (g.degree(v) > g.degree(hub)) hub = v;
    const auto reduced = neighborhood_reduce(vc, g, hub, rng.split(1).seed());
    const VertexSet inner = run(reduced.sub.graph, reduced.coloring, rng.split(2), depth + 1);
    VertexSet lifted = reduced.sub.lift(inner);
    if (better(lifted, best)) best = std::move(lifted);
    return best;
  }
};

int default_guard(double alpha) { return static_cast<int>(std::ceil(alpha)) + 2; }

}  // namespace

VertexSet l2_vector_indset(const Graph& g, const VectorColoring& vc, const L2Options& opts) {
  if (vc.size() != g.num_vertices()) throw std::invalid_argument("coloring does not match graph");
  if (opts.trials < 1) throw std::invalid_argument("trials must be at least 1");
  const int guard = opts.depth_guard > 0 ? opts.depth_guard : default_guard(vc.alpha);
  // One rounding per level, at most floor(alpha) - 1 levels do rounding.
  const int levels = std::max(1, static_cast<int>(std::floor(vc.alpha)) - 1);
  const L2Recursion rec{std::max(1, opts.trials / levels), guard};
  return rec.run(g, vc, Rng(opts.seed), 0);
}

AkResult ak_independent_set_report(const Graph& g, double alpha, const AkOptions& opts) {
  AkResult out;
  if (g.num_vertices() == 0) return out;
  if (g.num_edges() == 0) {
    out.set = all_vertices(g);
    out.aligned_size = out.set.size();
    out.alpha_prime = alpha;
    return out;
  }
  const double promise = std::max(alpha, 2.0);
  const Rng rng(opts.seed);
  SolverOptions solver = opts.solver;
  solver.eps = opts.eps;
  solver.seed = rng.split(0).seed();
  const auto sol = solve_indset_sdp(g, solver);
  out.sdp_objective = sol.objective;

  AlignedSubset aligned;
  try {
    aligned = well_aligned_subset(sol, g, promise, rng.split(1).seed());
  } catch (const PreconditionError&) {
    out.promise_used = false;
    out.set = greedy_independent_set(g);
    return out;
  }
  out.alpha_prime = aligned.coloring.alpha;
  out.aligned_size = aligned.sub.to_parent.size();
  const L2Options l2{opts.trials, rng.split(2).seed(),
                     opts.depth_guard > 0 ? opts.depth_guard : default_guard(out.alpha_prime)};
  out.set = aligned.sub.lift(l2_vector_indset(aligned.sub.graph, aligned.coloring, l2));
  return out;
}

VertexSet ak_independent_set(const Graph& g, double alpha, const AkOptions& opts) {
  return ak_independent_set_report(g, alpha, opts).set;
}

}  // namespace sdpcolor
