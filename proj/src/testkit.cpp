#include "sdpcolor/testkit.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <numeric>

#include <nlohmann/json.hpp>

#include "sdpcolor/dimacs.hpp"
#include "sdpcolor/rng.hpp"

namespace sdpcolor {

Coloring PlantedInstance::planted_coloring() const {
  std::vector<int> color(static_cast<std::size_t>(graph.num_vertices()), 0);
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (Vertex v : classes[c]) color[v] = static_cast<int>(c);
  return Coloring(std::move(color));
}

PlantedInstance planted_k_colorable(Vertex n, int k, double p, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (n < k) throw std::invalid_argument("planted instance needs n >= k");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability must lie in [0, 1]");

  Rng rng(seed);
  std::vector<Vertex> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order.begin(), order.end());

  PlantedInstance out;
  out.k = k;
  out.edge_prob = p;
  out.seed = seed;
  out.classes.assign(static_cast<std::size_t>(k), {});
  std::vector<int> color(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int c = static_cast<int>(i % static_cast<std::size_t>(k));
    color[order[i]] = c;
    out.classes[c].push_back(order[i]);
  }
  for (auto& cls : out.classes) std::sort(cls.begin(), cls.end());

  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (color[u] != color[v] && rng.uniform() < p) edges.push_back({u, v});
  out.graph = Graph::from_edges(n, edges);
  return out;
}

Graph random_gnp(Vertex n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability must lie in [0, 1]");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.uniform() < p) edges.push_back({u, v});
  return Graph::from_edges(n, edges);
}

Graph complete_graph(Vertex n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v});
  return Graph::from_edges(n, edges);
}

Graph cycle_graph(Vertex n) {
  if (n < 3) throw GraphError("a cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) edges.push_back({v, static_cast<Vertex>((v + 1) % n)});
  return Graph::from_edges(n, edges);
}

Graph path_graph(Vertex n) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
  return Graph::from_edges(n, edges);
}

Graph star_graph(Vertex leaves) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v <= leaves; ++v) edges.push_back({0, v});
  return Graph::from_edges(leaves + 1, edges);
}

Graph complete_bipartite(Vertex a, Vertex b) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < a; ++u)
    for (Vertex v = 0; v < b; ++v) edges.push_back({u, a + v});
  return Graph::from_edges(a + b, edges);
}

Graph petersen_graph() {
  std::vector<Edge> edges;
  for (Vertex i = 0; i < 5; ++i) {
    edges.push_back({i, static_cast<Vertex>((i + 1) % 5)});          // outer cycle
    edges.push_back({i, static_cast<Vertex>(i + 5)});                // spokes
    edges.push_back({static_cast<Vertex>(i + 5), static_cast<Vertex>(5 + (i + 2) % 5)});  // pentagram
  }
  return Graph::from_edges(10, edges);
}

namespace {

using Mask = std::uint64_t;

std::vector<Mask> adjacency_masks(const Graph& g) {
  std::vector<Mask> adj(static_cast<std::size_t>(g.num_vertices()), 0);
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    for (Vertex w : g.neighbors(v)) adj[v] |= Mask{1} << w;
  return adj;
}

// Greedy clique cover of `cand`: the number of cliques bounds the MIS from above.
int clique_cover_bound(const std::vector<Mask>& adj, Mask cand) {
  int cliques = 0;
  while (cand) {
    ++cliques;
    Mask clique_cand = cand;
    while (clique_cand) {
      const int v = std::countr_zero(clique_cand);
      cand &= ~(Mask{1} << v);
      clique_cand &= adj[v];
    }
  }
  return cliques;
}

struct MisSearch {
  const std::vector<Mask>& adj;
  Mask best = 0;
  int best_size = 0;

  void run(Mask chosen, int chosen_size, Mask cand) {
    if (cand == 0) {
      if (chosen_size > best_size) {
        best = chosen;
        best_size = chosen_size;
      }
      return;
    }
    if (chosen_size + clique_cover_bound(adj, cand) <= best_size) return;
    // Branch on a minimum-degree candidate: take it, or exclude it.
    int pick = -1;
    int pick_deg = 65;
    for (Mask m = cand; m; m &= m - 1) {
      const int v = std::countr_zero(m);
      const int d = std::popcount(adj[v] & cand);
      if (d < pick_deg) {
        pick = v;
        pick_deg = d;
      }
    }
    const Mask bit = Mask{1} << pick;
    run(chosen | bit, chosen_size + 1, cand & ~bit & ~adj[pick]);
    if (pick_deg == 0) return;  // taking an isolated candidate is always optimal
    run(chosen, chosen_size, cand & ~bit);
  }
};

struct ColorSearch {
  const Graph& g;
  int k;
  std::vector<Vertex> order;
  std::vector<int> color;

  bool run(std::size_t i, int used) {
    if (i == order.size()) return true;
    const Vertex v = order[i];
    const int limit = std::min(k, used + 1);
    for (int c = 0; c < limit; ++c) {
      bool ok = true;
      for (Vertex w : g.neighbors(v))
        if (color[w] == c) {
          ok = false;
          break;
        }
      if (!ok) continue;
      color[v] = c;
      if (run(i + 1, std::max(used, c + 1))) return true;
    }
    color[v] = -1;
    return false;
  }
};

void guard(const Graph& g, Vertex limit, const char* what) {
  if (g.num_vertices() > limit)
    throw SizeGuardError(std::string(what) + " supports at most " + std::to_string(limit) +
                         " vertices, got " + std::to_string(g.num_vertices()));
}

}  // namespace

VertexSet brute_force_mis(const Graph& g) {
  guard(g, kMaxMisVertices, "brute_force_mis");
  const auto adj = adjacency_masks(g);
  const Mask all = g.num_vertices() == 64 ? ~Mask{0} : (Mask{1} << g.num_vertices()) - 1;
  MisSearch search{adj};
  search.run(0, 0, all);
  VertexSet out;
  for (Mask m = search.best; m; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

std::optional<Coloring> find_k_coloring(const Graph& g, int k) {
  guard(g, kMaxDecisionVertices, "find_k_coloring");
  const Vertex n = g.num_vertices();
  if (n == 0) return Coloring(std::vector<int>{});
  if (k <= 0) return std::nullopt;
  ColorSearch search{g, k, {}, std::vector<int>(static_cast<std::size_t>(n), -1)};
  // Highest degree first prunes early.
  search.order.resize(static_cast<std::size_t>(n));
  std::iota(search.order.begin(), search.order.end(), 0);
  std::stable_sort(search.order.begin(), search.order.end(),
                   [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
  if (!search.run(0, 0)) return std::nullopt;
  return Coloring(std::move(search.color));
}

bool is_k_colorable(const Graph& g, int k) { return find_k_coloring(g, k).has_value(); }

Coloring brute_force_chromatic(const Graph& g) {
  guard(g, kMaxChromaticVertices, "brute_force_chromatic");
  for (int k = 0;; ++k)
    if (auto c = find_k_coloring(g, k)) return *c;
}

void write_fixture(const std::filesystem::path& base, const PlantedInstance& instance) {
  auto col = base;
  col += ".col";
  write_dimacs_file(col, instance.graph,
                    {"planted k=" + std::to_string(instance.k) + " seed=" +
                     std::to_string(instance.seed)});
  nlohmann::json side;
  side["k"] = instance.k;
  side["p"] = instance.edge_prob;
  side["seed"] = instance.seed;
  side["classes"] = instance.classes;
  auto json_path = base;
  json_path += ".json";
  std::ofstream out(json_path);
  if (!out) throw std::runtime_error("cannot write " + json_path.string());
  out << side.dump(2) << '\n';
}

}  // namespace sdpcolor
