#include <doctest.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "sdpcolor/combined.hpp"
#include "sdpcolor/testkit.hpp"

using namespace sdpcolor;

TEST_CASE("exponent sequence") {
  const std::vector<std::string> expect = {"0/1",     "3/14",        "7/19",   "97/207",
                                           "43/79",   "1391/2315",   "175/271", "5087/7463",
                                           "197/277", "16175/21983", "199/263"};
  for (int k = 2; k <= 12; ++k) {
    CAPTURE(k);
    CHECK(alpha_k_string(k) == expect[static_cast<std::size_t>(k - 2)]);
  }
  CHECK(alpha_k(4) == Rational(7, 19));
  CHECK(alpha_k_value(4) == doctest::Approx(7.0 / 19));
  CHECK_THROWS(alpha_k(1));
}

TEST_CASE("step nine identity") {
  for (int k = 4; k <= 12; ++k) {
    CAPTURE(k);
    CHECK(step9_identity_holds(k));
  }
  CHECK_THROWS(step9_identity_holds(3));
}

TEST_CASE("exponents improve on earlier algorithms") {
  // Exponents of earlier algorithms for k = 4..8.
  const double blum[] = {3.0 / 5, 91.0 / 131, 105.0 / 137, 5301.0 / 6581, 10647.0 / 12695};
  const double kms[] = {2.0 / 5, 1.0 / 2, 4.0 / 7, 5.0 / 8, 2.0 / 3};
  const double printed[] = {0.368, 0.468, 0.544, 0.600, 0.645};
  for (int k = 4; k <= 8; ++k) {
    const double a = alpha_k_value(k);
    CHECK(a < blum[k - 4]);
    CHECK(a < kms[k - 4]);
    CHECK(std::abs(a - printed[k - 4]) < 1e-3);
  }
}

TEST_CASE("cutoff") {
  CHECK(color_cutoff(1, 4) == doctest::Approx(4.0));
  CHECK(color_cutoff(1, 2, 2.5) == doctest::Approx(2.5));
  CHECK(color_cutoff(100, 2) == doctest::Approx(4 * std::pow(1 + std::log(100.0), 2)));
  for (int k = 2; k <= 8; ++k)
    for (std::size_t s = 1; s < 5000; s = s * 3 + 1) CHECK(color_cutoff(2 * s, k) >= color_cutoff(s, k));
}

TEST_CASE("two colors") {
  const auto r = combined_color(complete_bipartite(5, 9), 2);
  CHECK(r.success);
  CHECK(r.coloring.colors_used() == 2);

  const auto odd = combined_color(cycle_graph(7), 2);
  CHECK(!odd.success);
  CHECK(verify_coloring(cycle_graph(7), odd.coloring));
  CHECK(odd.repeats_used == 1);
}

TEST_CASE("small instances are exact") {
  const auto inst = planted_k_colorable(6, 3, 1.0, 1);
  CHECK(inst.graph.num_edges() == 12);
  const auto r = combined_color(inst.graph, 3);
  CHECK(r.success);
  CHECK(r.coloring.colors_used() == 3);
  CHECK(!combined_color(complete_graph(5), 4).success);
  CHECK(combined_color(Graph(0), 4).success);
}

TEST_CASE("planted four-colorable") {
  const auto inst = planted_k_colorable(150, 4, 0.3, 3);
  const auto r = combined_color(inst.graph, 4, {.seed = 5});
  CHECK(r.success);
  CHECK(verify_coloring(inst.graph, r.coloring));
  CHECK(r.coloring.colors_used() <= color_cutoff(150, 4));
  CHECK(!r.k3_fallback);
}

TEST_CASE("three colors use the fallback") {
  const auto inst = planted_k_colorable(150, 3, 0.2, 2);
  const auto r = combined_color(inst.graph, 3, {.seed = 1});
  CHECK(r.success);
  CHECK(r.k3_fallback);
  CHECK(verify_coloring(inst.graph, r.coloring));
  const auto direct = wigderson_kms_color(inst.graph, {}, 3);
  REQUIRE(direct);
  CHECK(verify_coloring(inst.graph, *direct));
  // Graphs with a dense non-bipartite neighborhood are refused.
  CHECK(!wigderson_kms_color(complete_graph(30), {}, 0));
}

TEST_CASE("candidate branch") {
  const auto inst = planted_k_colorable(120, 4, 0.5, 4);
  CombinedConfig cfg;
  cfg.degree_scale = 0.01;
  cfg.share_scale = 1e9;
  cfg.exact_below = 10;
  cfg.seed = 2;
  const auto r = combined_color(inst.graph, 4, cfg);
  CHECK(r.success);
  CHECK(r.stats.candidate_sets > 0);
  CHECK(r.stats.merges == 0);
  CHECK(verify_coloring(inst.graph, r.coloring));
}

TEST_CASE("same-color declarations are sound") {
  int declarations = 0;
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto inst = planted_k_colorable(60, 4, 0.6, seed);
    CombinedConfig cfg;
    cfg.degree_scale = 0.01;
    cfg.share_scale = 0.3;
    cfg.exact_below = 8;
    cfg.seed = seed;
    cfg.on_declaration = [&](const Declaration& d) {
      ++declarations;
      CHECK(d.k == 2);
      if (d.subgraph.num_vertices() <= kMaxDecisionVertices) {
        ++checked;
        CHECK(!is_k_colorable(d.subgraph, d.k));
      }
    };
    const auto r = combined_color(inst.graph, 4, cfg);
    CHECK(r.success);
    CHECK(verify_coloring(inst.graph, r.coloring));
  }
  CHECK(declarations > 0);
  CHECK(checked > 0);
}

TEST_CASE("result json is deterministic") {
  const auto inst = planted_k_colorable(80, 4, 0.4, 9);
  const auto a = combined_result_json(combined_color(inst.graph, 4, {.seed = 3}));
  const auto b = combined_result_json(combined_color(inst.graph, 4, {.seed = 3}));
  CHECK(a == b);
  const auto j = nlohmann::json::parse(a);
  CHECK(j["schema"] == 1);
  CHECK(j["n"] == 80);
  CHECK(j["alpha_k"] == "7/19");
  CHECK(j["coloring"].size() == 80);
  CHECK(j["seed"] == 3);
  for (const char* key : {"colors_used", "bound_n_pow_alpha", "repeats_used", "k3_fallback"})
    CHECK(j.contains(key));
}
