#include "sdpcolor/combined.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include <nlohmann/json.hpp>

#include "sdpcolor/blum.hpp"
#include "sdpcolor/indset.hpp"
#include "sdpcolor/rng.hpp"
#include "sdpcolor/rounding.hpp"
#include "sdpcolor/testkit.hpp"

namespace sdpcolor {

Rational alpha_k(int k) {
  if (k < 2) throw std::invalid_argument("alpha_k needs k >= 2");
  if (k == 2) return Rational(0);
  if (k == 3) return Rational(3, 14);
  const Rational prev = alpha_k(k - 2);
  const Rational one(1);
  const Rational kk(k);
  return one - Rational(6) / (kk + 4 + Rational(3) * (one - Rational(2) / kk) / (one - prev));
}

double alpha_k_value(int k) {
  const Rational a = alpha_k(k);
  return static_cast<double>(a.numerator()) / static_cast<double>(a.denominator());
}

std::string alpha_k_string(int k) {
  const Rational a = alpha_k(k);
  return a.numerator().str() + "/" + a.denominator().str();
}

bool step9_identity_holds(int k) {
  if (k < 4) throw std::invalid_argument("step-9 identity needs k >= 4");
  const Rational a = alpha_k(k);
  const Rational b = alpha_k(k - 2);
  const Rational one(1);
  const Rational lhs =
      (Rational(2) * a / (one - Rational(2, k)) - (one - a) / (one - b)) * Rational(3, k);
  return lhs == one - a;
}

double color_cutoff(std::size_t size, int k, double c0) {
  if (size == 0) return c0;
  const double s = static_cast<double>(size);
  const double lp = 1.0 + std::log(s);
  return c0 * std::pow(s, alpha_k_value(k)) * lp * lp;
}

namespace {

VertexSet iota_set(Vertex n) {
  VertexSet out(static_cast<std::size_t>(n));
  std::iota(out.begin(), out.end(), 0);
  return out;
}

// Shifts colors of `part` (local ids into `to_parent`) by `offset` into `color`.
int paint(std::vector<int>& color, const VertexSet& to_parent, const Coloring& part, int offset) {
  const Coloring norm = part.normalized();
  for (std::size_t i = 0; i < to_parent.size(); ++i) color[to_parent[i]] = offset + norm.color(static_cast<Vertex>(i));
  return offset + norm.colors_used();
}

struct Runner {
  const CombinedConfig& cfg;
  CombinedStats& stats;
  bool& k3_used;

  std::optional<Coloring> exact(const Graph& g, int k) {
    ++stats.exact_finishes;
    return find_k_coloring(g, k);
  }

  std::optional<Coloring> attempt(const Graph& g, int k, std::uint64_t seed) {
    const Vertex n = g.num_vertices();
    if (n == 0) return Coloring(std::vector<int>{});
    if (g.num_edges() == 0) return Coloring(std::vector<int>(static_cast<std::size_t>(n), 0));
    if (k == 2) return two_coloring(g);
    if (n <= cfg.exact_below && n <= kMaxChromaticVertices) return exact(g, k);
    if (k == 3) {
      k3_used = true;
      ++stats.k3_runs;
      return wigderson_kms_color(g, cfg, seed);
    }
    const Rng rng(seed);
    std::uint64_t round = 0;
    const auto finder = [&](const Graph& q) -> ProgressResult {
      return progress(q, k, rng.split(round++).seed());
    };
    const auto budget = static_cast<int>(std::min<double>(color_cutoff(n, k, cfg.c0), 1e9));
    const DriverResult res = progress_driver(g, finder, budget);
    if (res.status != DriverStatus::colored) return std::nullopt;
    return res.coloring;
  }

  ProgressResult progress(const Graph& q, int k, std::uint64_t seed) {
    ++stats.rounds;
    const Vertex n = q.num_vertices();
    if (n <= cfg.exact_below && n <= kMaxChromaticVertices) {
      auto c = exact(q, k);
      if (!c) return Contradiction{};
      return progress::Colored{*c};
    }
    if (q.num_edges() == 0) return progress::LargeIndependentSet{iota_set(n)};

    const Rng rng(seed);
    const double nn = static_cast<double>(n);
    const double ak = alpha_k_value(k);
    const double akm2 = alpha_k_value(k - 2);
    const double min_degree = cfg.degree_scale * std::pow(nn, ak / (1.0 - 2.0 / k));

    // Step 3-4: low-degree shell.
    const PeelResult peel = peel_low_degree(q, min_degree);
    if (2 * peel.removed.size() >= static_cast<std::size_t>(n)) {
      ++stats.low_degree_sets;
      const InducedSubgraph sub = induced_subgraph(q, peel.removed);
      if (sub.graph.num_edges() == 0) return progress::LargeIndependentSet{sub.to_parent};
      SolverOptions opts = cfg.solver;
      opts.eps = cfg.eps;
      opts.seed = rng.split(0).seed();
      if (opts.dim == 0 && cfg.vector_dim > 0)
        opts.dim = std::min<int>(cfg.vector_dim, default_sdp_dimension(sub.graph.num_vertices(),
                                                                       static_cast<std::int64_t>(sub.graph.num_edges())));
      const auto outcome = solve_vector_coloring(sub.graph, k, opts);
      if (!outcome.coloring) return progress::NoProgress{"vector coloring of the low-degree part failed"};
      const RoundingParams params{kms_threshold(k, sub.graph.average_degree()), cfg.trials,
                                  rng.split(1).seed()};
      return progress::LargeIndependentSet{
          sub.lift(kms_independent_set(sub.graph, *outcome.coloring, params))};
    }

    // Step 5-6: pairs in the core with large common neighborhoods.
    const VertexSet& core = peel.core;
    const double share_floor = cfg.share_scale * std::pow(nn, (1.0 - ak) / (1.0 - akm2));
    if (auto pair = best_pair(q, core, share_floor)) {
      const auto [u, v] = *pair;
      const VertexSet s = common_neighbors(q, u, v);
      const InducedSubgraph sub = induced_subgraph(q, s);
      const auto inner = attempt(sub.graph, k - 2, rng.split(2).seed());
      const double cutoff = color_cutoff(s.size(), k - 2, cfg.c0);
      if (inner && inner->colors_used() <= cutoff) {
        ++stats.neighborhood_sets;
        return progress::LargeIndependentSet{sub.lift(largest_color_class(*inner))};
      }
      ++stats.merges;
      if (cfg.on_declaration)
        cfg.on_declaration({sub.graph, k - 2, u, v, !inner.has_value(),
                            inner ? inner->colors_used() : 0, cutoff});
      return progress::SameColor{u, v};
    }

    // Step 7-9: candidate collection on the core.
    ++stats.candidate_sets;
    const InducedSubgraph w = induced_subgraph(q, core);
    const CandidateCollection coll = build_candidate_collection(w.graph);
    std::vector<std::size_t> order(coll.sets.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return coll.sets[a].members.size() > coll.sets[b].members.size();
    });
    const auto floor_size =
        static_cast<std::size_t>(std::floor(std::pow(nn, 1.0 - ak) / cfg.progress_divisor));
    const double promise = (k - 1) + 3.0 / std::log(nn);
    VertexSet best;
    const int limit = std::min<int>(cfg.max_step9_candidates, static_cast<int>(order.size()));
    for (int t = 0; t < limit; ++t) {
      const auto& members = coll.sets[order[static_cast<std::size_t>(t)]].members;
      const InducedSubgraph tsub = induced_subgraph(w.graph, members);
      VertexSet found;
      if (tsub.graph.num_edges() == 0) {
        found = tsub.to_parent;
      } else {
        AkOptions ak_opts;
        ak_opts.eps = cfg.eps;
        ak_opts.trials = cfg.trials;
        ak_opts.seed = rng.split(100 + static_cast<std::uint64_t>(t)).seed();
        ak_opts.solver = cfg.solver;
        try {
          found = tsub.lift(ak_independent_set(tsub.graph, promise, ak_opts));
        } catch (const SolverError&) {
          continue;
        }
      }
      VertexSet lifted = w.lift(found);
      if (lifted.size() > best.size()) best = std::move(lifted);
      if (best.size() >= std::max<std::size_t>(floor_size, 1)) return progress::LargeIndependentSet{best};
    }
    ++stats.candidate_fallbacks;
    VertexSet greedy = w.lift(greedy_independent_set(w.graph));
    if (greedy.size() > best.size()) best = std::move(greedy);
    return progress::LargeIndependentSet{best};
  }

  // Pair of core vertices with the most common neighbors, if that count
  // reaches the floor; ties go to the lexicographically smallest pair.
  static std::optional<std::pair<Vertex, Vertex>> best_pair(const Graph& q, const VertexSet& core,
                                                            double floor) {
    const auto n = static_cast<std::size_t>(q.num_vertices());
    const std::size_t words = (n + 63) / 64;
    std::vector<std::uint64_t> bits(core.size() * words, 0);
    for (std::size_t i = 0; i < core.size(); ++i)
      for (Vertex x : q.neighbors(core[i])) bits[i * words + x / 64] |= std::uint64_t{1} << (x % 64);
    std::optional<std::pair<Vertex, Vertex>> best;
    std::size_t best_count = 0;
    for (std::size_t i = 0; i < core.size(); ++i) {
      const std::uint64_t* a = &bits[i * words];
      for (std::size_t j = i + 1; j < core.size(); ++j) {
        const std::uint64_t* b = &bits[j * words];
        std::size_t count = 0;
        for (std::size_t w = 0; w < words; ++w) count += std::popcount(a[w] & b[w]);
        if (count > best_count) {
          best_count = count;
          best = std::pair{core[i], core[j]};
        }
      }
    }
    if (!best || static_cast<double>(best_count) < floor) return std::nullopt;
    return best;
  }
};

}  // namespace

std::optional<Coloring> wigderson_kms_color(const Graph& g, const CombinedConfig& cfg,
                                            std::uint64_t seed) {
  const Vertex n = g.num_vertices();
  std::vector<int> color(static_cast<std::size_t>(n), -1);
  std::vector<bool> alive(static_cast<std::size_t>(n), true);
  const double hub_degree = std::pow(static_cast<double>(n), 0.75);
  int next = 0;
  for (;;) {
    Vertex hub = -1;
    std::size_t hub_deg = 0;
    for (Vertex v = 0; v < n; ++v) {
      if (!alive[v]) continue;
      std::size_t d = 0;
      for (Vertex x : g.neighbors(v)) d += alive[x];
      if (d > hub_deg) {
        hub = v;
        hub_deg = d;
      }
    }
    if (hub < 0 || static_cast<double>(hub_deg) < hub_degree) break;
    VertexSet nb;
    for (Vertex x : g.neighbors(hub))
      if (alive[x]) nb.push_back(x);
    const InducedSubgraph sub = induced_subgraph(g, nb);
    const auto two = two_coloring(sub.graph);
    if (!two) return std::nullopt;
    next = paint(color, sub.to_parent, *two, next);
    for (Vertex x : nb) alive[x] = false;
  }
  VertexSet rest;
  for (Vertex v = 0; v < n; ++v)
    if (alive[v]) rest.push_back(v);
  const InducedSubgraph sub = induced_subgraph(g, rest);
  if (!rest.empty()) {
    KmsColorOptions opts;
    opts.eps = cfg.eps;
    opts.trials = cfg.trials;
    opts.seed = seed;
    opts.exact_below = std::min<Vertex>(cfg.exact_below, kMaxChromaticVertices);
    opts.solver = cfg.solver;
    if (opts.solver.dim == 0 && cfg.vector_dim > 0)
      opts.solver.dim = std::min<int>(cfg.vector_dim, default_sdp_dimension(sub.graph.num_vertices(),
                                                                            static_cast<std::int64_t>(sub.graph.num_edges())));
    try {
      const Coloring c = kms_color(sub.graph, 3, opts);
      next = paint(color, sub.to_parent, c, next);
    } catch (const NotVectorColorable&) {
      return std::nullopt;
    } catch (const SolverError&) {
      return std::nullopt;
    }
  }
  return Coloring(std::move(color));
}

CombinedResult combined_color(const Graph& g, int k, const CombinedConfig& cfg) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (cfg.repeats < 1) throw std::invalid_argument("repeats must be at least 1");
  CombinedResult out;
  out.k = k;
  out.seed = cfg.seed;
  const Rng root(cfg.seed);
  Runner runner{cfg, out.stats, out.k3_fallback};
  for (int r = 0; r < cfg.repeats; ++r) {
    out.repeats_used = r + 1;
    if (auto c = runner.attempt(g, k, root.split(static_cast<std::uint64_t>(r)).seed())) {
      if (!verify_coloring(g, *c)) throw std::logic_error("combined coloring is not proper");
      out.coloring = c->normalized();
      out.success = true;
      return out;
    }
    // Exact and bipartite answers do not change on a rerun.
    if (k == 2 || g.num_vertices() <= std::min(cfg.exact_below, kMaxChromaticVertices)) break;
  }
  out.failure = "not " + std::to_string(k) + "-colorable or algorithm failure";
  out.coloring = greedy_coloring(g).normalized();
  return out;
}

std::string combined_result_json(const CombinedResult& r) {
  const auto n = r.coloring.size();
  nlohmann::json j;
  j["schema"] = 1;
  j["n"] = n;
  j["k"] = r.k;
  j["status"] = r.success ? "colored" : "failed";
  if (!r.success) j["failure"] = r.failure;
  j["colors_used"] = r.coloring.colors_used();
  j["coloring"] = r.coloring.assignment();
  j["alpha_k"] = r.k >= 2 ? alpha_k_string(r.k) : "";
  j["bound_n_pow_alpha"] = r.k >= 2 ? std::pow(static_cast<double>(n), alpha_k_value(r.k)) : 0.0;
  j["seed"] = r.seed;
  j["repeats_used"] = r.repeats_used;
  j["k3_fallback"] = r.k3_fallback;
  j["stats"] = {{"rounds", r.stats.rounds},
                {"exact_finishes", r.stats.exact_finishes},
                {"low_degree_sets", r.stats.low_degree_sets},
                {"neighborhood_sets", r.stats.neighborhood_sets},
                {"merges", r.stats.merges},
                {"candidate_sets", r.stats.candidate_sets},
                {"candidate_fallbacks", r.stats.candidate_fallbacks},
                {"k3_runs", r.stats.k3_runs}};
  return j.dump();
}

}  // namespace sdpcolor
