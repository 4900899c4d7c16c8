#include "sdpcolor/blum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "sdpcolor/testkit.hpp"

namespace sdpcolor {

double default_bucket_width(Vertex n) {
  const double ln = std::log(static_cast<double>(std::max<Vertex>(n, 3)));
  return std::clamp(1.0 / ln, 0.05, 0.9);
}

int degree_bucket_index(std::size_t d, double delta) {
  if (d == 0) throw std::invalid_argument("degree bucket needs d >= 1");
  const double base = std::log1p(delta);
  int j = static_cast<int>(std::floor(std::log(static_cast<double>(d)) / base));
  // Correct floating error at bucket edges.
  while (j > 0 && std::pow(1.0 + delta, j) > static_cast<double>(d)) --j;
  while (std::pow(1.0 + delta, j + 1) <= static_cast<double>(d)) ++j;
  return j;
}

namespace {

void require_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("bucket width must lie in (0, 1)");
}

// Appends (bucket, vertex) groups for the given weights; vertices ascending within a bucket.
template <typename Weight>
std::vector<VertexSet> group_by_bucket(std::span<const Vertex> vs, Weight weight, double delta) {
  std::vector<VertexSet> out;
  for (Vertex v : vs) {
    const std::size_t w = weight(v);
    if (w == 0) continue;
    const auto j = static_cast<std::size_t>(degree_bucket_index(w, delta));
    if (out.size() <= j) out.resize(j + 1);
    out[j].push_back(v);
  }
  for (auto& b : out) std::sort(b.begin(), b.end());
  return out;
}

std::uint64_t hash_members(const VertexSet& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (Vertex v : s) {
    h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(v));
    h *= 0x100000001b3ULL;
  }
  return h ^ s.size();
}

}  // namespace

std::vector<VertexSet> degree_buckets(const Graph& g, double delta) {
  require_delta(delta);
  std::vector<Vertex> all(static_cast<std::size_t>(g.num_vertices()));
  std::iota(all.begin(), all.end(), 0);
  return group_by_bucket(std::span<const Vertex>(all), [&](Vertex v) { return g.degree(v); },
                         delta);
}

CandidateCollection build_candidate_collection(const Graph& g, double delta) {
  if (delta <= 0.0) delta = default_bucket_width(g.num_vertices());
  require_delta(delta);
  CandidateCollection out;
  out.delta = delta;
  const auto n = static_cast<std::size_t>(g.num_vertices());
  std::vector<std::size_t> into_s(n, 0);
  std::vector<Vertex> touched;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> seen;

  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    const auto by_degree =
        group_by_bucket(g.neighbors(v), [&](Vertex u) { return g.degree(u); }, delta);
    for (std::size_t j = 0; j < by_degree.size(); ++j) {
      const VertexSet& s = by_degree[j];
      if (s.empty()) continue;
      touched.clear();
      for (Vertex u : s)
        for (Vertex w : g.neighbors(u)) {
          if (into_s[w] == 0) touched.push_back(w);
          ++into_s[w];
        }
      const auto by_share = group_by_bucket(std::span<const Vertex>(touched),
                                            [&](Vertex w) { return into_s[w]; }, delta);
      for (Vertex w : touched) into_s[w] = 0;
      for (std::size_t i = 0; i < by_share.size(); ++i) {
        if (by_share[i].empty()) continue;
        auto& bucket = seen[hash_members(by_share[i])];
        const bool dup = std::any_of(bucket.begin(), bucket.end(), [&](std::size_t idx) {
          return out.sets[idx].members == by_share[i];
        });
        if (dup) continue;
        bucket.push_back(out.sets.size());
        out.sets.push_back({v, static_cast<int>(j), static_cast<int>(i), by_share[i]});
      }
    }
  }
  return out;
}

double collection_size_bound(Vertex n, double delta) {
  if (n <= 1) return static_cast<double>(n);
  const double levels = std::log(static_cast<double>(n)) / std::log1p(delta) + 1.0;
  return static_cast<double>(n) * levels * levels;
}

std::size_t max_common_neighbors(const Graph& g) {
  const auto n = static_cast<std::size_t>(g.num_vertices());
  std::vector<std::size_t> count(n, 0);
  std::vector<Vertex> touched;
  std::size_t best = 0;
  for (Vertex u = 0; u < g.num_vertices(); ++u) {
    touched.clear();
    for (Vertex x : g.neighbors(u))
      for (Vertex w : g.neighbors(x)) {
        if (w == u) continue;
        if (count[w] == 0) touched.push_back(w);
        best = std::max(best, ++count[w]);
      }
    for (Vertex w : touched) count[w] = 0;
  }
  return best;
}

GuaranteeReport collection_guarantee_check(const Graph& g, const CandidateCollection& coll, int k,
                                           std::span<const VertexSet> classes, double margin) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  GuaranteeReport rep;
  const Vertex n = g.num_vertices();
  if (n == 0 || g.num_edges() == 0 || coll.sets.empty()) {
    rep.satisfied = true;
    rep.vacuous = true;
    return rep;
  }
  const double ln_n = std::log(static_cast<double>(std::max<Vertex>(n, 3)));
  if (margin < 0) margin = 2.0 / ln_n;

  std::size_t best_total = 0;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    std::size_t total = 0;
    for (Vertex v : classes[c]) total += g.degree(v);
    if (rep.red_class < 0 || total > best_total) {
      rep.red_class = static_cast<int>(c);
      best_total = total;
    }
  }
  std::vector<bool> red(static_cast<std::size_t>(n), false);
  if (rep.red_class >= 0)
    for (Vertex v : classes[static_cast<std::size_t>(rep.red_class)]) red[v] = true;

  rep.d_min = g.min_degree();
  rep.s = std::max<std::size_t>(1, max_common_neighbors(g));
  rep.size_floor = static_cast<double>(rep.d_min * rep.d_min) / (static_cast<double>(rep.s) * ln_n * ln_n);
  rep.fraction_floor = 1.0 / (k - 1) - margin;

  const double strict_size = static_cast<double>(rep.d_min * rep.d_min) / static_cast<double>(rep.s);
  const double strict_fraction = 1.0 / (k - 1);
  for (std::size_t idx = 0; idx < coll.sets.size(); ++idx) {
    const auto& t = coll.sets[idx].members;
    if (static_cast<double>(t.size()) < rep.size_floor) continue;
    ++rep.sets_meeting_size;
    const auto reds = std::count_if(t.begin(), t.end(), [&](Vertex v) { return red[v]; });
    const double frac = static_cast<double>(reds) / static_cast<double>(t.size());
    if (static_cast<double>(t.size()) >= strict_size && frac >= strict_fraction) {
      rep.strict_satisfied = true;
      rep.strict_witness_size = std::max(rep.strict_witness_size, t.size());
    }
    const bool meets = frac >= rep.fraction_floor;
    const bool had = rep.satisfied;
    const bool take = !rep.witness || (meets && !had) ||
                      (meets && had && t.size() > rep.witness_size) ||
                      (!meets && !had && frac > rep.witness_red_fraction);
    if (take) {
      rep.witness = idx;
      rep.witness_size = t.size();
      rep.witness_red_fraction = frac;
      rep.satisfied = meets;
    }
  }
  return rep;
}

GuaranteeReport collection_guarantee_check(const CandidateCollection& coll,
                                           const PlantedInstance& planted, double margin) {
  return collection_guarantee_check(planted.graph, coll, planted.k, planted.classes, margin);
}

void write_collection_json(std::ostream& out, const CandidateCollection& coll) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& c : coll.sets)
    list.push_back({{"v", c.v}, {"j", c.j}, {"i", c.i}, {"members", c.members}});
  out << list.dump() << '\n';
}

std::optional<std::size_t> pigeon_index(std::span<const double> x, std::span<const double> y,
                                        double delta, double beta) {
  if (x.size() != y.size() || x.empty()) throw std::invalid_argument("sequences must match");
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] >= delta * mean && x[i] >= (1.0 - delta) * beta * y[i]) return i;
  return std::nullopt;
}

// ---- contraction ----

ContractedGraph::ContractedGraph(const Graph& base)
    : base_(&base),
      parent_(static_cast<std::size_t>(base.num_vertices())),
      members_(static_cast<std::size_t>(base.num_vertices())),
      adj_(static_cast<std::size_t>(base.num_vertices())),
      live_(static_cast<std::size_t>(base.num_vertices()), true),
      live_count_(static_cast<std::size_t>(base.num_vertices())) {
  for (Vertex v = 0; v < base.num_vertices(); ++v) {
    parent_[v] = v;
    members_[v] = {v};
    const auto nb = base.neighbors(v);
    adj_[v].assign(nb.begin(), nb.end());
  }
}

Vertex ContractedGraph::root(Vertex x) const {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

Vertex ContractedGraph::find(Vertex base_vertex) const {
  if (!base_->contains(base_vertex)) throw std::out_of_range("vertex out of range");
  return root(base_vertex);
}

bool ContractedGraph::live(Vertex rep) const {
  return base_->contains(rep) && parent_[rep] == rep && live_[rep];
}

VertexSet ContractedGraph::live_groups() const {
  VertexSet out;
  out.reserve(live_count_);
  for (Vertex v = 0; v < base_->num_vertices(); ++v)
    if (live(v)) out.push_back(v);
  return out;
}

const VertexSet& ContractedGraph::members(Vertex rep) const {
  if (!live(rep)) throw std::invalid_argument("not a live group");
  return members_[rep];
}

bool ContractedGraph::adjacent(Vertex a, Vertex b) const {
  const Vertex ra = find(a);
  const Vertex rb = find(b);
  return std::binary_search(adj_[ra].begin(), adj_[ra].end(), rb);
}

namespace {

void erase_sorted(std::vector<Vertex>& list, Vertex x) {
  const auto it = std::lower_bound(list.begin(), list.end(), x);
  if (it != list.end() && *it == x) list.erase(it);
}

void insert_sorted(std::vector<Vertex>& list, Vertex x) {
  const auto it = std::lower_bound(list.begin(), list.end(), x);
  if (it == list.end() || *it != x) list.insert(it, x);
}

}  // namespace

Vertex ContractedGraph::merge(Vertex a, Vertex b) {
  Vertex ra = find(a);
  Vertex rb = find(b);
  if (!live_[ra] || !live_[rb]) throw std::invalid_argument("merge of a deleted group");
  if (ra == rb) throw std::invalid_argument("merge of a group with itself");
  if (adjacent(ra, rb)) throw std::invalid_argument("merge of adjacent groups");
  if (rb < ra) std::swap(ra, rb);
  // rb is absorbed into ra.
  for (Vertex w : adj_[rb]) {
    erase_sorted(adj_[w], rb);
    insert_sorted(adj_[w], ra);
  }
  std::vector<Vertex> joined;
  std::set_union(adj_[ra].begin(), adj_[ra].end(), adj_[rb].begin(), adj_[rb].end(),
                 std::back_inserter(joined));
  adj_[ra] = std::move(joined);
  adj_[rb].clear();
  VertexSet all;
  std::merge(members_[ra].begin(), members_[ra].end(), members_[rb].begin(), members_[rb].end(),
             std::back_inserter(all));
  members_[ra] = std::move(all);
  members_[rb].clear();
  parent_[rb] = ra;
  --live_count_;
  return ra;
}

void ContractedGraph::remove(Vertex rep) {
  if (!live(rep)) throw std::invalid_argument("not a live group");
  for (Vertex w : adj_[rep]) erase_sorted(adj_[w], rep);
  adj_[rep].clear();
  live_[rep] = false;
  --live_count_;
}

ContractedGraph::Quotient ContractedGraph::quotient() const {
  Quotient q;
  q.reps = live_groups();
  std::vector<Vertex> local(static_cast<std::size_t>(base_->num_vertices()), -1);
  for (std::size_t i = 0; i < q.reps.size(); ++i) local[q.reps[i]] = static_cast<Vertex>(i);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < q.reps.size(); ++i)
    for (Vertex w : adj_[q.reps[i]])
      if (local[w] > static_cast<Vertex>(i)) edges.push_back({static_cast<Vertex>(i), local[w]});
  q.graph = Graph::from_edges(static_cast<Vertex>(q.reps.size()), edges);
  return q;
}

std::variant<ContractedGraph, Contradiction> merge_same_color(ContractedGraph cg, Vertex u,
                                                              Vertex v) {
  if (cg.adjacent(u, v)) return Contradiction{u, v};
  cg.merge(u, v);
  return cg;
}

// ---- driver ----

const char* to_string(DriverStatus s) {
  switch (s) {
    case DriverStatus::colored: return "colored";
    case DriverStatus::contradiction: return "contradiction";
    case DriverStatus::budget_exhausted: return "budget_exhausted";
    case DriverStatus::no_progress: return "no_progress";
  }
  return "unknown";
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

DriverResult progress_driver(const Graph& g, const ProgressFinder& finder, int budget) {
  DriverResult res;
  ContractedGraph cg(g);
  std::vector<int> color(static_cast<std::size_t>(g.num_vertices()), -1);
  int next = 0;
  bool done = cg.live_count() == 0;

  auto paint = [&](Vertex rep, int c) {
    for (Vertex b : cg.members(rep)) color[b] = c;
  };

  while (!done) {
    ++res.rounds;
    const auto q = cg.quotient();
    const Vertex qn = q.graph.num_vertices();
    const ProgressResult step = finder(q.graph);
    bool stop = false;
    std::visit(
        overloaded{
            [&](const progress::SameColor& sc) {
              if (!q.graph.contains(sc.u) || !q.graph.contains(sc.v) || sc.u == sc.v)
                throw InvalidProgressError("same-color pair is not two distinct vertices");
              if (q.graph.has_edge(sc.u, sc.v)) {
                res.status = DriverStatus::contradiction;
                res.message = "same-color inference on an edge";
                stop = true;
                return;
              }
              cg.merge(q.reps[sc.u], q.reps[sc.v]);
              ++res.merges;
            },
            [&](const progress::LargeIndependentSet& is) {
              const VertexSet s = make_vertex_set(is.set);
              if (s.empty() || s.front() < 0 || s.back() >= qn)
                throw InvalidProgressError("independent set is empty or out of range");
              if (!verify_independent_set(q.graph, s))
                throw InvalidProgressError("reported independent set has an edge");
              for (Vertex x : s) {
                paint(q.reps[x], next);
                cg.remove(q.reps[x]);
              }
              ++next;
            },
            [&](const progress::Colored& c) {
              if (c.coloring.size() != static_cast<std::size_t>(qn) ||
                  !verify_coloring(q.graph, c.coloring))
                throw InvalidProgressError("reported coloring is not proper");
              const Coloring norm = c.coloring.normalized();
              for (Vertex x = 0; x < qn; ++x) paint(q.reps[x], next + norm.color(x));
              next += norm.colors_used();
              for (Vertex rep : q.reps) cg.remove(rep);
            },
            [&](const progress::NoProgress& np) {
              res.status = DriverStatus::no_progress;
              res.message = np.reason;
              stop = true;
            },
            [&](const Contradiction&) {
              res.status = DriverStatus::contradiction;
              res.message = "finder reported a contradiction";
              stop = true;
            }},
        step);
    res.colors_assigned = next;
    if (stop) return res;
    if (budget > 0 && next > budget) {
      res.status = DriverStatus::budget_exhausted;
      res.message = "color budget exceeded";
      return res;
    }
    done = cg.live_count() == 0;
  }
  Coloring out(std::move(color));
  if (!verify_coloring(g, out)) throw std::logic_error("driver produced an improper coloring");
  res.status = DriverStatus::colored;
  res.coloring = std::move(out);
  return res;
}

}  // namespace sdpcolor
