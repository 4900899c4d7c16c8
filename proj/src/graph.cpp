#include "sdpcolor/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <queue>
#include <set>

namespace sdpcolor {

Graph::Graph(Vertex n) : n_(n), offsets_(static_cast<std::size_t>(n) + 1, 0) {
  if (n < 0) throw GraphError("negative vertex count");
}

Graph Graph::from_edges(Vertex n, std::span<const Edge> edges) {
  if (n < 0) throw GraphError("negative vertex count");
  std::vector<Edge> normalized;
  normalized.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw GraphError("edge endpoint out of range: (" + std::to_string(e.u) + "," +
                       std::to_string(e.v) + ")");
    if (e.u == e.v) throw GraphError("self-loop at vertex " + std::to_string(e.u));
    normalized.push_back({std::min(e.u, e.v), std::max(e.u, e.v)});
  }
  std::sort(normalized.begin(), normalized.end());
  auto dup = std::adjacent_find(normalized.begin(), normalized.end());
  if (dup != normalized.end())
    throw GraphError("duplicate edge (" + std::to_string(dup->u) + "," + std::to_string(dup->v) +
                     ")");

  Graph g(n);
  std::vector<std::size_t> degree(static_cast<std::size_t>(n), 0);
  for (const auto& e : normalized) {
    ++degree[e.u];
    ++degree[e.v];
  }
  std::partial_sum(degree.begin(), degree.end(), g.offsets_.begin() + 1);
  g.targets_.resize(g.offsets_.back());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& e : normalized) {
    g.targets_[cursor[e.u]++] = e.v;
    g.targets_[cursor[e.v]++] = e.u;
  }
  for (Vertex v = 0; v < n; ++v)
    std::sort(g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
              g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]));
  return g;
}

Graph Graph::from_edges_lenient(Vertex n, std::span<const Edge> edges) {
  std::vector<Edge> kept;
  kept.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.u == e.v) continue;
    kept.push_back({std::min(e.u, e.v), std::max(e.u, e.v)});
  }
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  return from_edges(n, kept);
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (!contains(u) || !contains(v)) return false;
  if (degree(u) > degree(v)) std::swap(u, v);
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

double Graph::average_degree() const noexcept {
  return n_ == 0 ? 0.0 : static_cast<double>(targets_.size()) / static_cast<double>(n_);
}

std::size_t Graph::max_degree() const noexcept {
  std::size_t best = 0;
  for (Vertex v = 0; v < n_; ++v) best = std::max(best, degree(v));
  return best;
}

std::size_t Graph::min_degree() const noexcept {
  if (n_ == 0) return 0;
  std::size_t best = degree(0);
  for (Vertex v = 1; v < n_; ++v) best = std::min(best, degree(v));
  return best;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (Vertex u = 0; u < n_; ++u)
    for (Vertex v : neighbors(u))
      if (u < v) out.push_back({u, v});
  return out;
}

Coloring::Coloring(std::vector<int> assignment) : assignment_(std::move(assignment)) {
  std::vector<int> distinct(assignment_);
  std::sort(distinct.begin(), distinct.end());
  colors_used_ =
      static_cast<int>(std::unique(distinct.begin(), distinct.end()) - distinct.begin());
}

std::vector<VertexSet> Coloring::classes() const {
  std::vector<std::pair<int, Vertex>> keyed;
  keyed.reserve(assignment_.size());
  for (std::size_t v = 0; v < assignment_.size(); ++v)
    keyed.emplace_back(assignment_[v], static_cast<Vertex>(v));
  std::sort(keyed.begin(), keyed.end());
  std::vector<VertexSet> out;
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    if (i == 0 || keyed[i].first != keyed[i - 1].first) out.emplace_back();
    out.back().push_back(keyed[i].second);
  }
  return out;
}

Coloring Coloring::normalized() const {
  std::vector<int> seen_color;
  std::vector<int> out(assignment_.size());
  for (std::size_t v = 0; v < assignment_.size(); ++v) {
    const int c = assignment_[v];
    auto it = std::find(seen_color.begin(), seen_color.end(), c);
    if (it == seen_color.end()) {
      seen_color.push_back(c);
      out[v] = static_cast<int>(seen_color.size()) - 1;
    } else {
      out[v] = static_cast<int>(it - seen_color.begin());
    }
  }
  return Coloring(std::move(out));
}

std::optional<Vertex> InducedSubgraph::local_of(Vertex parent) const {
  auto it = std::lower_bound(to_parent.begin(), to_parent.end(), parent);
  if (it == to_parent.end() || *it != parent) return std::nullopt;
  return static_cast<Vertex>(it - to_parent.begin());
}

VertexSet InducedSubgraph::lift(std::span<const Vertex> local) const {
  VertexSet out;
  out.reserve(local.size());
  for (Vertex v : local) out.push_back(to_parent[static_cast<std::size_t>(v)]);
  return make_vertex_set(std::move(out));
}

VertexSet make_vertex_set(std::vector<Vertex> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return members;
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> s) {
  InducedSubgraph out;
  out.to_parent = make_vertex_set({s.begin(), s.end()});
  for (Vertex v : out.to_parent)
    if (!g.contains(v)) throw GraphError("vertex " + std::to_string(v) + " not in graph");

  std::vector<Vertex> local(static_cast<std::size_t>(g.num_vertices()), -1);
  for (std::size_t i = 0; i < out.to_parent.size(); ++i)
    local[out.to_parent[i]] = static_cast<Vertex>(i);

  std::vector<Edge> edges;
  for (std::size_t i = 0; i < out.to_parent.size(); ++i)
    for (Vertex w : g.neighbors(out.to_parent[i])) {
      const Vertex j = local[w];
      if (j > static_cast<Vertex>(i)) edges.push_back({static_cast<Vertex>(i), j});
    }
  out.graph = Graph::from_edges(static_cast<Vertex>(out.to_parent.size()), edges);
  return out;
}

VertexSet common_neighbors(const Graph& g, Vertex u, Vertex v) {
  if (!g.contains(u) || !g.contains(v))
    throw GraphError("invalid vertex id in common_neighbors");
  if (u == v) throw GraphError("common_neighbors requires distinct vertices");
  auto a = g.neighbors(u);
  auto b = g.neighbors(v);
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

PeelResult peel_low_degree(const Graph& g, double threshold) {
  const Vertex n = g.num_vertices();
  std::vector<std::size_t> degree(static_cast<std::size_t>(n));
  std::vector<char> removed(static_cast<std::size_t>(n), 0);
  std::deque<Vertex> queue;
  for (Vertex v = 0; v < n; ++v) {
    degree[v] = g.degree(v);
    if (static_cast<double>(degree[v]) < threshold) {
      removed[v] = 1;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbors(v)) {
      if (removed[w]) continue;
      if (static_cast<double>(--degree[w]) < threshold) {
        removed[w] = 1;
        queue.push_back(w);
      }
    }
  }
  PeelResult out;
  for (Vertex v = 0; v < n; ++v) (removed[v] ? out.removed : out.core).push_back(v);
  return out;
}

bool verify_coloring(const Graph& g, const Coloring& c) {
  if (c.size() != static_cast<std::size_t>(g.num_vertices())) return false;
  for (Vertex u = 0; u < g.num_vertices(); ++u)
    for (Vertex v : g.neighbors(u))
      if (c.color(u) == c.color(v)) return false;
  return true;
}

bool verify_independent_set(const Graph& g, std::span<const Vertex> s) {
  std::vector<char> member(static_cast<std::size_t>(g.num_vertices()), 0);
  for (Vertex v : s) {
    if (!g.contains(v) || member[v]) return false;
    member[v] = 1;
  }
  for (Vertex v : s)
    for (Vertex w : g.neighbors(v))
      if (member[w]) return false;
  return true;
}

VertexSet largest_color_class(const Coloring& c) {
  VertexSet best;
  for (auto& cls : c.classes())
    if (cls.size() > best.size()) best = std::move(cls);
  return best;
}

std::optional<Coloring> two_coloring(const Graph& g) {
  const Vertex n = g.num_vertices();
  std::vector<int> color(static_cast<std::size_t>(n), -1);
  std::queue<Vertex> queue;
  for (Vertex s = 0; s < n; ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    queue.push(s);
    while (!queue.empty()) {
      const Vertex v = queue.front();
      queue.pop();
      for (Vertex w : g.neighbors(v)) {
        if (color[w] == -1) {
          color[w] = 1 - color[v];
          queue.push(w);
        } else if (color[w] == color[v]) {
          return std::nullopt;
        }
      }
    }
  }
  return Coloring(std::move(color));
}

VertexSet greedy_independent_set(const Graph& g) {
  const Vertex n = g.num_vertices();
  std::vector<std::size_t> degree(static_cast<std::size_t>(n));
  std::vector<char> gone(static_cast<std::size_t>(n), 0);
  std::set<std::pair<std::size_t, Vertex>> order;
  for (Vertex v = 0; v < n; ++v) {
    degree[v] = g.degree(v);
    order.emplace(degree[v], v);
  }
  auto drop = [&](Vertex v) {
    order.erase({degree[v], v});
    gone[v] = 1;
  };
  VertexSet out;
  while (!order.empty()) {
    const Vertex v = order.begin()->second;
    out.push_back(v);
    drop(v);
    for (Vertex w : g.neighbors(v)) {
      if (gone[w]) continue;
      drop(w);
      for (Vertex x : g.neighbors(w)) {
        if (gone[x]) continue;
        order.erase({degree[x], x});
        order.emplace(--degree[x], x);
      }
    }
  }
  return make_vertex_set(std::move(out));
}

Coloring greedy_coloring(const Graph& g) {
  const Vertex n = g.num_vertices();
  std::vector<Vertex> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
  std::vector<int> color(static_cast<std::size_t>(n), -1);
  std::vector<char> taken;
  for (Vertex v : order) {
    taken.assign(g.degree(v) + 1, 0);
    for (Vertex w : g.neighbors(v))
      if (color[w] >= 0 && static_cast<std::size_t>(color[w]) < taken.size()) taken[color[w]] = 1;
    int c = 0;
    while (taken[static_cast<std::size_t>(c)]) ++c;
    color[v] = c;
  }
  return Coloring(std::move(color));
}

}  // namespace sdpcolor
