#include "sdpcolor/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "sdpcolor/testkit.hpp"

namespace sdpcolor {

namespace {

double clamped_log_degree(double d_avg) { return std::log(std::max(d_avg, std::numbers::e)); }

void require_alpha(double alpha) {
  if (!(alpha > 2.0)) throw std::invalid_argument("threshold needs alpha > 2");
}

}  // namespace

double kms_threshold(double alpha, double d_avg) {
  require_alpha(alpha);
  const double ln_d = clamped_log_degree(d_avg);
  return std::sqrt((1.0 - 2.0 / alpha) * (2.0 * ln_d - std::log(ln_d)));
}

double kms_threshold_original(double alpha, double d_avg) {
  require_alpha(alpha);
  return std::sqrt((1.0 - 2.0 / alpha) * 2.0 * clamped_log_degree(d_avg));
}

Eigen::VectorXd gaussian_direction(int dim, Rng& rng) {
  Eigen::VectorXd r(dim);
  for (int i = 0; i < dim; ++i) r(i) = rng.normal();
  return r;
}

VertexSet threshold_set(const VectorColoring& vc, const Eigen::VectorXd& r, double c) {
  const Eigen::VectorXd proj = vc.vectors * r;
  VertexSet out;
  for (Eigen::Index i = 0; i < proj.size(); ++i)
    if (proj(i) >= c) out.push_back(static_cast<Vertex>(i));
  return out;
}

VertexSet round_once(const VectorColoring& vc, const Graph& g, const Eigen::VectorXd& r, double c) {
  if (vc.size() != g.num_vertices()) throw std::invalid_argument("coloring does not match graph");
  const VertexSet picked = threshold_set(vc, r, c);
  std::vector<char> alive(static_cast<std::size_t>(g.num_vertices()), 0);
  for (Vertex v : picked) alive[v] = 1;

  std::vector<Edge> internal;
  std::vector<int> degree(static_cast<std::size_t>(g.num_vertices()), 0);
  for (Vertex u : picked)
    for (Vertex w : g.neighbors(u))
      if (alive[w]) {
        ++degree[u];
        if (u < w) internal.push_back({u, w});
      }
  // `picked` is ascending and neighbor lists are sorted, so `internal` is too.
  for (const auto& e : internal) {
    if (!alive[e.u] || !alive[e.v]) continue;
    const Vertex drop = degree[e.v] > degree[e.u] ? e.v : e.u;
    alive[drop] = 0;
    for (Vertex w : g.neighbors(drop))
      if (alive[w]) --degree[w];
  }
  VertexSet out;
  for (Vertex v : picked)
    if (alive[v]) out.push_back(v);
  return out;
}

RoundingRun kms_rounding_trials(const Graph& g, const VectorColoring& vc,
                                const RoundingParams& params) {
  if (params.trials < 1) throw std::invalid_argument("trials must be at least 1");
  RoundingRun out;
  const Rng root(params.seed);
  bool have = false;
  for (int t = 0; t < params.trials; ++t) {
    Rng rng = root.split(static_cast<std::uint64_t>(t));
    const Eigen::VectorXd r = gaussian_direction(vc.dim(), rng);
    VertexSet s = round_once(vc, g, r, params.c);
    out.sizes.push_back(s.size());
    if (!have || s.size() > out.best.size() || (s.size() == out.best.size() && s < out.best)) {
      out.best = std::move(s);
      have = true;
    }
  }
  return out;
}

VertexSet kms_independent_set(const Graph& g, const VectorColoring& vc,
                              const RoundingParams& params) {
  if (g.num_vertices() == 0) return {};
  if (g.num_edges() == 0) {
    VertexSet all(static_cast<std::size_t>(g.num_vertices()));
    std::iota(all.begin(), all.end(), 0);
    return all;
  }
  VertexSet best = kms_rounding_trials(g, vc, params).best;
  if (best.empty()) {
    Vertex pick = 0;
    for (Vertex v = 1; v < g.num_vertices(); ++v)
      if (g.degree(v) < g.degree(pick)) pick = v;
    best = {pick};
  }
  return best;
}

NotVectorColorable::NotVectorColorable(int k, double eps, double best_residual)
    : std::runtime_error([&] {
        std::ostringstream msg;
        msg << "not vector " << k << "-colorable at tolerance " << eps << " (best residual "
            << best_residual << ")";
        return msg.str();
      }()),
      best_residual_(best_residual) {}

Coloring kms_color_with(const Graph& g, const VectorColoring& vc, int trials, std::uint64_t seed) {
  const Vertex n = g.num_vertices();
  std::vector<int> color(static_cast<std::size_t>(n), -1);
  VertexSet remaining(static_cast<std::size_t>(n));
  std::iota(remaining.begin(), remaining.end(), 0);
  const Rng root(seed);
  int next = 0;
  for (std::uint64_t round = 0; !remaining.empty(); ++round) {
    const auto sub = induced_subgraph(g, remaining);
    VertexSet local;
    if (sub.graph.num_edges() == 0 || !(vc.alpha > 2.0)) {
      local = greedy_independent_set(sub.graph);
    } else {
      const VectorColoring part = restrict_coloring(vc, remaining);
      const RoundingParams params{kms_threshold(vc.alpha, sub.graph.average_degree()), trials,
                                  root.split(round).seed()};
      local = kms_independent_set(sub.graph, part, params);
    }
    std::vector<char> taken(remaining.size(), 0);
    for (Vertex v : local) {
      color[sub.to_parent[v]] = next;
      taken[v] = 1;
    }
    ++next;
    VertexSet rest;
    for (std::size_t i = 0; i < remaining.size(); ++i)
      if (!taken[i]) rest.push_back(remaining[i]);
    remaining = std::move(rest);
  }
  return Coloring(std::move(color));
}

Coloring kms_color(const Graph& g, int k, const KmsColorOptions& opts) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (g.num_vertices() <= opts.exact_below && g.num_vertices() <= kMaxChromaticVertices) {
    return brute_force_chromatic(g);
  }
  if (k == 2) {
    if (auto two = two_coloring(g)) return *two;
    throw NotVectorColorable(2, opts.eps, 0.0);
  }
  SolverOptions solver = opts.solver;
  solver.eps = opts.eps;
  solver.seed = Rng(opts.seed).split(0x5d).seed();
  const auto solved = solve_vector_coloring(g, static_cast<double>(k), solver);
  if (!solved.coloring) throw NotVectorColorable(k, opts.eps, solved.report.best_residual);
  return kms_color_with(g, *solved.coloring, opts.trials, Rng(opts.seed).split(0x6b).seed());
}

}  // namespace sdpcolor
