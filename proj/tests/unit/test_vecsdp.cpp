#include <doctest.h>

#include <cmath>

#include "sdpcolor/rng.hpp"
#include "sdpcolor/testkit.hpp"
#include "sdpcolor/vecsdp.hpp"

using namespace sdpcolor;

namespace {

// Regular simplex on k+1 points in R^(k+1): centered, normalized basis vectors.
VectorMatrix simplex(int points) {
  VectorMatrix x = VectorMatrix::Identity(points, points);
  x.rowwise() -= Eigen::RowVectorXd::Constant(points, 1.0 / points);
  for (int i = 0; i < points; ++i) x.row(i).normalize();
  return x;
}

}  // namespace

TEST_CASE("validator recomputes residuals") {
  const Graph k4 = complete_graph(4);
  const auto rep = check_vector_coloring(k4, simplex(4), 4.0);
  CHECK(rep.max_norm_error < 1e-15);
  CHECK(std::abs(rep.max_edge_residual) < 1e-15);
  const auto tighter = check_vector_coloring(k4, simplex(4), 3.0);
  CHECK(tighter.max_edge_residual == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("complete graph reaches the simplex bound") {
  for (int k = 2; k <= 5; ++k) {
    const Graph g = complete_graph(k + 1);
    const auto out = solve_vector_coloring(g, k + 1.0, {.eps = 1e-3, .seed = 5});
    REQUIRE(out.coloring);
    CHECK(is_valid_vector_coloring(g, *out.coloring));
    // The constraints force every pair to the simplex value.
    for (const auto& e : g.edges())
      CHECK(out.coloring->vectors.row(e.u).dot(out.coloring->vectors.row(e.v)) ==
            doctest::Approx(-1.0 / k).epsilon(0.01));
  }
}

TEST_CASE("edgeless graph is trivially feasible") {
  const auto out = solve_vector_coloring(Graph(7), 2.0);
  REQUIRE(out.coloring);
  CHECK(out.report.iterations == 0);
  CHECK(out.coloring->size() == 7);
}

TEST_CASE("planted 3-colorable instance admits a vector 3-coloring") {
  const auto inst = planted_k_colorable(30, 3, 0.5, 7);
  // Witness: each class maps to a vertex of an equilateral triangle.
  VectorMatrix witness(30, 2);
  for (int c = 0; c < 3; ++c)
    for (Vertex v : inst.classes[c])
      witness.row(v) << std::cos(2 * M_PI * c / 3), std::sin(2 * M_PI * c / 3);
  CHECK(check_vector_coloring(inst.graph, witness, 3.0).max_edge_residual < 1e-12);

  const auto out = solve_vector_coloring(inst.graph, 3.0, {.eps = 1e-3, .seed = 7});
  REQUIRE(out.coloring);
  CHECK(is_valid_vector_coloring(inst.graph, *out.coloring));
  const auto rep = check_vector_coloring(inst.graph, out.coloring->vectors, 3.0);
  CHECK(std::abs(rep.max_edge_residual - out.report.best_residual) <= 1e-12);
}

TEST_CASE("weaker parameter stays feasible") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto inst = planted_k_colorable(60, 3, 0.4, seed);
    for (double alpha : {3.0, 3.5, 5.0}) {
      const auto out = solve_vector_coloring(inst.graph, alpha, {.seed = seed});
      CHECK(out.coloring.has_value());
    }
  }
}

TEST_CASE("infeasible parameter reports evidence") {
  // K4 is not vector 3-colorable: the best residual stays well above tolerance.
  const auto out = solve_vector_coloring(complete_graph(4), 3.0, {.budget = 500, .restarts = 1});
  CHECK_FALSE(out.coloring.has_value());
  CHECK(out.report.best_residual > 0.05);
  CHECK(out.report.restarts_used == 1);
}

TEST_CASE("warm start is accepted") {
  const Graph k4 = complete_graph(4);
  const VectorMatrix start = simplex(4);
  const auto out = solve_vector_coloring(k4, 4.0, {}, &start);
  REQUIRE(out.coloring);
  CHECK(out.report.iterations == 0);
}

TEST_CASE("restriction keeps validity") {
  const auto inst = planted_k_colorable(40, 3, 0.5, 2);
  const auto out = solve_vector_coloring(inst.graph, 3.0, {.seed = 2});
  REQUIRE(out.coloring);
  const VertexSet part{1, 4, 9, 16, 25, 36};
  const auto sub = induced_subgraph(inst.graph, part);
  CHECK(is_valid_vector_coloring(sub.graph, restrict_coloring(*out.coloring, part)));
}

TEST_CASE("independent-set relaxation: closed-form cases") {
  const auto empty = solve_indset_sdp(Graph(6));
  CHECK(empty.objective == doctest::Approx(6.0).epsilon(1e-3));

  const auto k2 = solve_indset_sdp(complete_graph(2), {.eps = 1e-5});
  CHECK(k2.objective == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(k2.max_residual <= 1e-5);
}

TEST_CASE("independent-set relaxation on C5 is the theta value") {
  const auto sol = solve_indset_sdp(cycle_graph(5), {.eps = 1e-6, .seed = 3});
  CHECK(sol.max_residual <= 1e-6);
  CHECK(sol.objective >= 2.0);
  CHECK(sol.objective <= 2.2361);
  CHECK(sol.objective == doctest::Approx(std::sqrt(5.0)).epsilon(1e-4));
  double recomputed = 0;
  for (Eigen::Index i = 0; i < sol.vectors.rows(); ++i)
    recomputed += (1 + sol.v0.dot(sol.vectors.row(i))) / 2;
  CHECK(std::abs(recomputed - sol.objective) <= 5 * sol.eps);
}

TEST_CASE("independent-set relaxation bounds the independence number") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const Graph g = random_gnp(16, 0.3, seed);
    const auto sol = solve_indset_sdp(g, {.seed = seed});
    CHECK(sol.objective >= static_cast<double>(brute_force_mis(g).size()) - 0.01);
  }
}

TEST_CASE("planted ratio yields the alignment needed downstream") {
  const auto inst = planted_k_colorable(100, 3, 0.3, 4);
  const auto sol = solve_indset_sdp(inst.graph, {.seed = 4});
  const double n = 100;
  CHECK(sol.alignment_sum() >= (2.0 / 3.0 - 1.0 - 1.0 / std::log(n)) * n);
}

TEST_CASE("orthogonal projection") {
  Eigen::VectorXd e1(3), e2(3), v(3);
  e1 << 1, 0, 0;
  e2 << 0, 1, 0;
  v << -0.5, std::sqrt(3.0) / 2, 0;
  CHECK((project_orthogonal(e1, e2) - e2).norm() < 1e-15);
  CHECK((project_orthogonal(e1, v) - e2).norm() < 1e-15);
  CHECK_THROWS_AS(project_orthogonal(e1, e1), DegenerateProjection);
  CHECK_THROWS_AS(project_orthogonal(e1, Eigen::VectorXd(-e1)), DegenerateProjection);
}

TEST_CASE("projection identity on a hand-built triple") {
  Eigen::VectorXd v0(3), vi(3), vj(3);
  v0 << 1, 0, 0;
  vi << -0.5, std::sqrt(3.0) / 2, 0;
  vj << -0.5, -std::sqrt(3.0) / 6, std::sqrt(2.0 / 3.0);
  CHECK(std::abs((v0 + vi).dot(v0 + vj)) < 1e-15);
  const double dot = project_orthogonal(v0, vi).dot(project_orthogonal(v0, vj));
  CHECK(dot == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
  const double a = -0.5;
  CHECK(dot == doctest::Approx(-std::sqrt((1 + a) / (1 - a)) * std::sqrt((1 + a) / (1 - a))));
}

TEST_CASE("neighborhood reduction of the simplex") {
  const VectorColoring vc{4.0, 1e-9, simplex(4)};
  const Graph k4 = complete_graph(4);
  for (Vertex v = 0; v < 4; ++v) {
    const auto red = neighborhood_reduce(vc, k4, v);
    CHECK(red.coloring.alpha == 3.0);
    CHECK(red.sub.graph.num_vertices() == 3);
    for (const auto& e : red.sub.graph.edges())
      CHECK(red.coloring.vectors.row(e.u).dot(red.coloring.vectors.row(e.v)) ==
            doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(is_valid_vector_coloring(red.sub.graph, red.coloring));
  }
}

TEST_CASE("neighborhood reduction on a planted instance") {
  const auto inst = planted_k_colorable(45, 3, 0.5, 11);
  const auto out = solve_vector_coloring(inst.graph, 3.0, {.seed = 11});
  REQUIRE(out.coloring);
  for (Vertex v = 0; v < 5; ++v) {
    const auto red = neighborhood_reduce(*out.coloring, inst.graph, v);
    CHECK(red.coloring.alpha == doctest::Approx(2.0));
    CHECK(is_valid_vector_coloring(red.sub.graph, red.coloring));
    const double tau = 0.5;
    CHECK(red.coloring.eps >= 2 / ((1 - tau) * (1 - tau)) * out.coloring->eps);
  }
}

TEST_CASE("neighborhood reduction edge cases") {
  const VectorColoring vc{3.0, 1e-9, simplex(3)};
  const Graph path = path_graph(3);
  const auto red = neighborhood_reduce(vc, path, 0);
  CHECK(red.sub.graph.num_vertices() == 1);
  CHECK(is_valid_vector_coloring(red.sub.graph, red.coloring));
  CHECK_THROWS_AS(neighborhood_reduce(VectorColoring{2.0, 1e-3, simplex(3)}, path, 0),
                  PreconditionError);
  CHECK_THROWS_AS(neighborhood_reduce(vc, Graph(3), 0), PreconditionError);
}

TEST_CASE("degenerate neighbor triggers one perturbation") {
  // Vertex 1 sits exactly opposite vertex 0.
  VectorMatrix x(2, 2);
  x << 1, 0, -1, 0;
  const VectorColoring vc{3.0, 1e-3, x};
  const Graph edge = complete_graph(2);
  const auto red = neighborhood_reduce(vc, edge, 0, 9);
  CHECK(red.perturbed);
  CHECK(std::abs(red.coloring.vectors.row(0).norm() - 1) < 1e-12);
}

TEST_CASE("well aligned subset") {
  SUBCASE("edgeless graph keeps everything") {
    const Graph g(8);
    const auto sol = solve_indset_sdp(g);
    const auto sub = well_aligned_subset(sol, g, 2.0);
    CHECK(sub.sub.to_parent.size() == 8);
    CHECK(is_valid_vector_coloring(sub.sub.graph, sub.coloring));
  }
  SUBCASE("planted instance") {
    const auto inst = planted_k_colorable(100, 3, 0.3, 5);
    const auto sol = solve_indset_sdp(inst.graph, {.seed = 5});
    const auto sub = well_aligned_subset(sol, inst.graph, 3.0);
    CHECK(static_cast<double>(sub.sub.to_parent.size()) >= 100 / std::log2(100.0));
    CHECK(is_valid_vector_coloring(sub.sub.graph, sub.coloring));
    CHECK(sub.coloring.alpha == doctest::Approx(2 / (1 + sub.beta)));
    CHECK(sub.beta == doctest::Approx(2.0 / 3 - 1 - 3 / std::log(100.0)));
  }
  SUBCASE("refuses when the alignment precondition fails") {
    IndSetSdpSolution sol;
    sol.v0 = Eigen::VectorXd::Unit(2, 0);
    sol.vectors = VectorMatrix(4, 2);
    sol.vectors << -1, 0, -1, 0, -1, 0, -1, 0;
    CHECK_THROWS_AS(well_aligned_subset(sol, Graph(4), 2.0), PreconditionError);
  }
}

TEST_CASE("alignment counting argument") {
  // Four values averaging 1/2: at least one exceeds (gamma - e)/(1 - e) = 1/3.
  const double xs[] = {1, 1, 0, 0};
  int above = 0;
  for (double x : xs) above += x > (0.5 - 0.25) / (1 - 0.25);
  CHECK(above == 2);
}
