#include "sdpcolor/vecsdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "sdpcolor/rng.hpp"
#include "sphere_descent.hpp"

namespace sdpcolor {

namespace {

// Natural log of n, with n clamped so the 1/ln n terms stay finite on tiny graphs.
double log_n(Vertex n) { return std::log(std::max<double>(n, 3.0)); }

}  // namespace

FeasibilityReport check_vector_coloring(const Graph& g, const VectorMatrix& vectors,
                                        double alpha) {
  if (vectors.rows() != g.num_vertices())
    throw std::invalid_argument("vector count does not match vertex count");
  FeasibilityReport out;
  for (Eigen::Index i = 0; i < vectors.rows(); ++i)
    out.max_norm_error = std::max(out.max_norm_error, std::abs(vectors.row(i).norm() - 1.0));
  const double bound = -1.0 / (alpha - 1.0);
  out.max_edge_residual = g.num_edges() == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  for (const auto& e : g.edges())
    out.max_edge_residual =
        std::max(out.max_edge_residual, vectors.row(e.u).dot(vectors.row(e.v)) - bound);
  return out;
}

bool is_valid_vector_coloring(const Graph& g, const VectorColoring& vc) {
  if (vc.size() != g.num_vertices()) return false;
  const auto rep = check_vector_coloring(g, vc.vectors, vc.alpha);
  return rep.max_norm_error <= vc.eps && rep.max_edge_residual <= vc.eps;
}

VectorColoring restrict_coloring(const VectorColoring& vc, std::span<const Vertex> vertices) {
  VectorColoring out{vc.alpha, vc.eps, VectorMatrix(static_cast<Eigen::Index>(vertices.size()),
                                                    vc.vectors.cols())};
  for (std::size_t i = 0; i < vertices.size(); ++i)
    out.vectors.row(static_cast<Eigen::Index>(i)) = vc.vectors.row(vertices[i]);
  return out;
}

int default_sdp_dimension(Vertex n, std::size_t m) {
  const int rank = static_cast<int>(std::ceil(std::sqrt(2.0 * static_cast<double>(m)))) + 4;
  return std::max(1, std::min<int>(n, rank));
}

VectorColoringOutcome solve_vector_coloring(const Graph& g, double alpha, const SolverOptions& opts,
                                            const VectorMatrix* warm_start) {
  if (!(alpha >= 2.0)) throw std::invalid_argument("vector coloring needs alpha >= 2");
  if (!(opts.eps > 0)) throw std::invalid_argument("eps must be positive");
  const Vertex n = g.num_vertices();
  const int d = opts.dim > 0 ? opts.dim
                : warm_start ? static_cast<int>(warm_start->cols())
                             : default_sdp_dimension(n, g.num_edges());
  const auto edges = g.edges();
  const double bound = -1.0 / (alpha - 1.0);
  // Aim slightly inside the feasible region so rounding noise cannot push past eps.
  const double hinge = bound - 0.5 * opts.eps;

  VectorColoringOutcome out;
  out.report.best_residual = std::numeric_limits<double>::infinity();
  const Rng root(opts.seed);

  for (int attempt = 0; attempt <= opts.restarts; ++attempt) {
    Rng rng = root.split(static_cast<std::uint64_t>(attempt));
    VectorMatrix x;
    if (attempt == 0 && warm_start && warm_start->rows() == n && warm_start->cols() == d) {
      x = *warm_start;
      detail::normalize_rows(x);
    } else {
      x = detail::random_unit_rows(n, d, rng);
    }

    // Per-edge hinge targets, lowered by the leftover violation after each chunk
    // (method of multipliers), so tightly packed cliques still reach the bound.
    std::vector<double> target(edges.size(), hinge);
    double residual = 0.0;
    auto objective = [&](const VectorMatrix& p, VectorMatrix& grad) {
      grad.setZero(p.rows(), p.cols());
      double value = 0.0;
      residual = edges.empty() ? 0.0 : -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto& e = edges[i];
        const double dot = p.row(e.u).dot(p.row(e.v));
        residual = std::max(residual, dot - bound);
        const double h = dot - target[i];
        if (h <= 0) continue;
        value += h * h;
        grad.row(e.u) += 2.0 * h * p.row(e.v);
        grad.row(e.v) += 2.0 * h * p.row(e.u);
      }
      return value;
    };
    {
      VectorMatrix scratch;
      objective(x, scratch);
    }
    int used = 0;
    const int chunk = std::max(200, opts.budget / 10);
    while (residual > opts.eps && used < opts.budget) {
      auto stop = [&](const VectorMatrix&) { return residual <= opts.eps; };
      const auto res = detail::sphere_descent(x, objective, stop, std::min(chunk, opts.budget - used), 1e-12);
      used += res.iterations;
      if (res.stopped) break;
      for (std::size_t i = 0; i < edges.size(); ++i) {
        const double over = x.row(edges[i].u).dot(x.row(edges[i].v)) - hinge;
        target[i] = std::max(-1.0, target[i] - std::max(0.0, over));
      }
    }
    out.report.iterations += used;
    out.report.restarts_used = attempt;
    out.report.best_residual = std::min(out.report.best_residual, residual);

    const auto check = check_vector_coloring(g, x, alpha);
    if (!std::isfinite(check.max_norm_error)) throw SolverError("non-finite vectors");
    if (check.max_edge_residual <= opts.eps && check.max_norm_error <= opts.eps) {
      out.report.feasible = true;
      out.report.best_residual = check.max_edge_residual;
      out.coloring = VectorColoring{alpha, opts.eps, std::move(x)};
      return out;
    }
  }
  return out;
}

double IndSetSdpSolution::alignment_sum() const {
  return vectors.rows() == 0 ? 0.0 : (vectors * v0).sum();
}

IndSetSdpSolution solve_indset_sdp(const Graph& g, const SolverOptions& opts) {
  if (!(opts.eps > 0)) throw std::invalid_argument("eps must be positive");
  const Vertex n = g.num_vertices();
  const auto edges = g.edges();
  const std::size_t m = edges.size();
  // Rank is capped: the relaxation is solved many times downstream and the
  // objective at rank 16 matches the full-rank value to ~1e-4 on planted graphs.
  constexpr int kIndsetRankCap = 16;
  const int d = opts.dim > 0 ? opts.dim
                             : std::min({n + 1, default_sdp_dimension(n + 1, m), kIndsetRankCap});

  const VertexSet seed_set = greedy_independent_set(g);
  IndSetSdpSolution best;
  best.eps = opts.eps;
  best.max_residual = std::numeric_limits<double>::infinity();
  const Rng root(opts.seed);

  // Row 0 holds v0, row i + 1 holds v_i.
  for (int attempt = 0; attempt <= opts.restarts; ++attempt) {
    Rng rng = root.split(static_cast<std::uint64_t>(attempt));
    // Start near the feasible point v_i = v0 on a greedy independent set and
    // v_i = -v0 elsewhere, plus noise to leave the rank-one saddle.
    VectorMatrix x = detail::random_unit_rows(n + 1, std::max(d, 1), rng);
    {
      const Eigen::RowVectorXd axis = x.row(0);
      std::vector<char> chosen(static_cast<std::size_t>(n), 0);
      for (Vertex v : seed_set) chosen[v] = 1;
      const double noise = 0.3;
      for (Vertex i = 0; i < n; ++i)
        x.row(i + 1) = (chosen[i] ? axis : Eigen::RowVectorXd(-axis)) + noise * x.row(i + 1);
      detail::normalize_rows(x);
    }
    std::vector<double> lambda(m, 0.0);
    std::vector<double> h(m, 0.0);
    double rho = 10.0;
    double residual = 0.0;
    int iterations = 0;

    auto constraint = [&](const VectorMatrix& p, std::size_t e) {
      const auto v0 = p.row(0);
      const auto vi = p.row(edges[e].u + 1);
      const auto vj = p.row(edges[e].v + 1);
      return 1.0 + v0.dot(vi) + v0.dot(vj) + vi.dot(vj);
    };
    auto lagrangian = [&](const VectorMatrix& p, VectorMatrix& grad) {
      grad.setZero(p.rows(), p.cols());
      double value = 0.0;
      for (Vertex i = 0; i < n; ++i) {
        value -= 0.5 * p.row(0).dot(p.row(i + 1));
        grad.row(0) -= 0.5 * p.row(i + 1);
        grad.row(i + 1) -= 0.5 * p.row(0);
      }
      residual = 0.0;
      for (std::size_t e = 0; e < m; ++e) {
        const double he = constraint(p, e);
        residual = std::max(residual, std::abs(he));
        value += lambda[e] * he + 0.5 * rho * he * he;
        const double w = lambda[e] + rho * he;
        const Vertex i = edges[e].u + 1;
        const Vertex j = edges[e].v + 1;
        grad.row(i) += w * (p.row(0) + p.row(j));
        grad.row(j) += w * (p.row(0) + p.row(i));
        grad.row(0) += w * (2.0 * p.row(0) + p.row(i) + p.row(j));
      }
      return value;
    };
    auto never = [](const VectorMatrix&) { return false; };

    auto objective = [&](const VectorMatrix& p) {
      return 0.5 * n + 0.5 * (p.bottomRows(n) * p.row(0).transpose()).sum();
    };
    double prev_residual = std::numeric_limits<double>::infinity();
    double prev_objective = -std::numeric_limits<double>::infinity();
    bool settled = false;
    for (int outer = 0; iterations < opts.budget; ++outer) {
      const double tol = std::max(1e-7, 1e-2 * std::pow(0.5, outer)) * std::sqrt(n + 1.0);
      const int inner_budget = std::min(2000, opts.budget - iterations);
      const auto res = detail::sphere_descent(x, lagrangian, never, inner_budget, tol);
      iterations += res.iterations;
      for (std::size_t e = 0; e < m; ++e) {
        h[e] = constraint(x, e);
        lambda[e] += rho * h[e];
      }
      residual = 0.0;
      for (double he : h) residual = std::max(residual, std::abs(he));
      // The optimal face is often degenerate, so stagnation of the objective is
      // a better stopping signal than the gradient norm.
      const double value = objective(x);
      if (residual <= 0.1 * opts.eps &&
          std::abs(value - prev_objective) <= 1e-6 * std::max(1.0, std::abs(value))) {
        settled = true;
        break;
      }
      prev_objective = value;
      if (residual > 0.25 * prev_residual) rho = std::min(rho * 4.0, 1e6);
      prev_residual = residual;
    }

    IndSetSdpSolution sol;
    sol.eps = opts.eps;
    sol.v0 = x.row(0).transpose();
    sol.vectors = x.bottomRows(n);
    sol.iterations = iterations;
    sol.objective = 0.0;
    for (Vertex i = 0; i < n; ++i) sol.objective += 0.5 * (1.0 + sol.v0.dot(sol.vectors.row(i)));
    sol.max_residual = 0.0;
    sol.slack = 0.0;
    for (std::size_t e = 0; e < m; ++e) {
      const double he = std::abs(constraint(x, e));
      sol.max_residual = std::max(sol.max_residual, he);
      sol.slack += he;
    }
    if (!std::isfinite(sol.objective)) throw SolverError("non-finite objective");
    const bool feasible = sol.max_residual <= opts.eps;
    const bool best_feasible = best.max_residual <= opts.eps;
    if ((feasible && (!best_feasible || sol.objective > best.objective)) ||
        (!feasible && !best_feasible && sol.max_residual < best.max_residual))
      best = std::move(sol);
    if (feasible && settled) break;
  }
  if (best.max_residual > opts.eps)
    throw SolverError("independent-set relaxation did not reach tolerance: residual " +
                      std::to_string(best.max_residual));
  return best;
}

Eigen::VectorXd project_orthogonal(const Eigen::VectorXd& v0, const Eigen::VectorXd& v, double eps) {
  Eigen::VectorXd r = v - v0.dot(v) * v0;
  const double norm = r.norm();
  if (!(norm > eps)) throw DegenerateProjection("vector is (anti)parallel to the projection axis");
  return r / norm;
}

namespace {

// A unit vector close to `axis`: axis plus a random tangent of length `magnitude`.
Eigen::VectorXd perturb_axis(const Eigen::VectorXd& axis, double magnitude, Rng& rng) {
  Eigen::VectorXd noise(axis.size());
  for (Eigen::Index i = 0; i < noise.size(); ++i) noise(i) = rng.normal();
  noise -= noise.dot(axis) * axis;
  if (noise.norm() == 0) return axis;
  Eigen::VectorXd out = axis + magnitude * noise.normalized();
  return out.normalized();
}

// Projects each listed row orthogonally to `axis`, retrying once with a
// perturbed axis if any projection is degenerate.
VectorMatrix project_rows(const VectorMatrix& rows, std::span<const Vertex> which,
                          Eigen::VectorXd axis, double eps, std::uint64_t seed, bool& perturbed) {
  VectorMatrix out(static_cast<Eigen::Index>(which.size()), rows.cols());
  for (int attempt = 0; attempt < 2; ++attempt) {
    try {
      for (std::size_t i = 0; i < which.size(); ++i)
        out.row(static_cast<Eigen::Index>(i)) =
            project_orthogonal(axis, rows.row(which[i]).transpose(), eps).transpose();
      return out;
    } catch (const DegenerateProjection&) {
      if (attempt == 1) throw;
      Rng rng(seed);
      axis = perturb_axis(axis, 10.0 * eps, rng);
      perturbed = true;
    }
  }
  return out;
}

}  // namespace

ReducedColoring neighborhood_reduce(const VectorColoring& vc, const Graph& g, Vertex v,
                                    std::uint64_t seed) {
  if (!(vc.alpha > 2.0)) throw PreconditionError("neighborhood reduction needs alpha > 2");
  if (vc.size() != g.num_vertices()) throw PreconditionError("coloring does not match graph");
  if (!g.contains(v) || g.degree(v) == 0)
    throw PreconditionError("neighborhood reduction needs a vertex of positive degree");

  ReducedColoring out;
  const auto nb = g.neighbors(v);
  out.sub = induced_subgraph(g, nb);
  const Eigen::VectorXd axis = vc.vectors.row(v).transpose().normalized();
  VectorMatrix projected = project_rows(vc.vectors, out.sub.to_parent, axis, vc.eps, seed,
                                        out.perturbed);

  const double tau = 1.0 / (vc.alpha - 1.0);
  const double factor = 2.0 / ((1.0 - tau) * (1.0 - tau));
  const double alpha = vc.alpha - 1.0;
  const auto realized = check_vector_coloring(out.sub.graph, projected, alpha);
  const double eps = std::max(factor * vc.eps, realized.max_edge_residual);
  out.coloring = VectorColoring{alpha, std::nextafter(eps, 1.0), std::move(projected)};
  return out;
}

AlignedSubset well_aligned_subset(const IndSetSdpSolution& sol, const Graph& g, double alpha,
                                  std::uint64_t seed) {
  const Vertex n = g.num_vertices();
  if (!(alpha >= 2.0)) throw PreconditionError("alignment extraction needs alpha >= 2");
  if (sol.vectors.rows() != n) throw PreconditionError("solution does not match graph");
  const double ln_n = log_n(n);
  const double required = (2.0 / alpha - 1.0 - 1.0 / ln_n) * n;
  if (sol.alignment_sum() < required)
    throw PreconditionError("alignment sum " + std::to_string(sol.alignment_sum()) +
                            " below required " + std::to_string(required));

  AlignedSubset out;
  out.beta = 2.0 / alpha - 1.0 - 3.0 / ln_n;
  if (g.num_edges() == 0) {
    // No constraints to carry over: every vertex qualifies at any parameter.
    VertexSet all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    out.sub = induced_subgraph(g, all);
    out.coloring = VectorColoring{alpha, sol.eps, sol.vectors};
    return out;
  }
  if (!(out.beta > -1.0) || !(out.beta < 1.0))
    throw PreconditionError("alignment threshold outside (-1, 1); graph too small for alpha");

  VertexSet members;
  for (Vertex i = 0; i < n; ++i)
    if (sol.v0.dot(sol.vectors.row(i)) > out.beta) members.push_back(i);
  out.sub = induced_subgraph(g, members);

  const double tiny = 1e-12;
  const Eigen::VectorXd axis = sol.v0.normalized();
  VectorMatrix projected =
      project_rows(sol.vectors, members, axis, std::max(sol.eps, tiny), seed, out.perturbed);

  const double alpha_prime = 2.0 / (1.0 + out.beta);
  const auto realized = check_vector_coloring(out.sub.graph, projected, alpha_prime);
  const double eps = std::max(sol.eps, realized.max_edge_residual) + tiny;
  out.coloring = VectorColoring{alpha_prime, eps, std::move(projected)};
  return out;
}

}  // namespace sdpcolor
