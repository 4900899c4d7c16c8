#include "cli.hpp"

#include <algorithm>
#include <numeric>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sdpcolor/analysis.hpp"
#include "sdpcolor/combined.hpp"
#include "sdpcolor/dimacs.hpp"
#include "sdpcolor/indset.hpp"
#include "sdpcolor/rng.hpp"
#include "sdpcolor/rounding.hpp"

namespace sdpcolor::cli {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double parse_number(const std::string& text) {
  const std::string t = trim(text);
  if (t == "pi") return std::numbers::pi;
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + text + "'");
  }
  if (used != t.size()) throw UsageError("not a number: '" + text + "'");
  return v;
}

// Products and quotients of numbers and "pi", left to right.
double parse_expression(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw UsageError("empty value");
  double value = 1.0;
  char op = '*';
  std::size_t start = 0;
  for (std::size_t i = 0; i <= t.size(); ++i) {
    if (i == t.size() || t[i] == '*' || t[i] == '/') {
      const double f = parse_number(t.substr(start, i - start));
      value = op == '*' ? value * f : value / f;
      if (i < t.size()) op = t[i];
      start = i + 1;
    }
  }
  return value;
}

template <typename T>
T get_param(const GeneratorSpec& spec, const std::string& key, std::optional<T> fallback = {}) {
  const auto it = spec.params.find(key);
  if (it == spec.params.end()) {
    if (fallback) return *fallback;
    throw UsageError("generator '" + spec.name + "' needs " + key);
  }
  try {
    std::size_t used = 0;
    T v{};
    if constexpr (std::is_same_v<T, double>)
      v = std::stod(it->second, &used);
    else
      v = static_cast<T>(std::stoull(it->second, &used));
    if (used != it->second.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw UsageError("bad value for " + key + ": '" + it->second + "'");
  }
}

void allow_keys(const GeneratorSpec& spec, std::initializer_list<const char*> keys) {
  for (const auto& [k, v] : spec.params)
    if (std::none_of(keys.begin(), keys.end(), [&](const char* a) { return k == a; }))
      throw UsageError("generator '" + spec.name + "' has no parameter " + k);
}

std::uint64_t draw_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

struct Common {
  std::string input;
  std::string gen;
  std::string output;
  std::string meta;
  std::optional<std::uint64_t> seed;

  void attach(CLI::App* sub, bool graph_source = true) {
    if (graph_source) {
      auto* in = sub->add_option("--input", input, "DIMACS .col file");
      auto* g = sub->add_option("--gen", gen, "generator, e.g. planted:n=500,k=4,p=0.3,seed=1");
      in->excludes(g);
    }
    sub->add_option("--output", output, "write the result here instead of stdout");
    sub->add_option("--meta", meta, "write timing metadata (JSON) here");
    sub->add_option("--seed", seed, "random seed; drawn and recorded when absent");
  }

  std::uint64_t resolved_seed() {
    if (!seed) seed = draw_seed();
    return *seed;
  }

  std::string source() const { return gen.empty() ? input : gen; }
};

Graph load_graph(const Common& c) {
  if (c.input.empty() == c.gen.empty()) throw UsageError("give exactly one of --input and --gen");
  if (!c.gen.empty()) return generate(parse_generator(c.gen)).graph;
  if (!std::filesystem::exists(c.input)) throw UsageError("no such file: " + c.input);
  try {
    return read_dimacs_file(c.input);
  } catch (const ParseError& e) {
    throw UsageError(c.input + ":" + std::to_string(e.line()) + ": " + e.what());
  }
}

void write_text(const std::string& text, const std::string& default_name, const Common& c,
                std::ostream& out, std::ostream& err) {
  std::filesystem::path path;
  if (!c.output.empty()) {
    path = c.output;
  } else if (const char* dir = std::getenv("SDPCOLOR_OUTPUT_DIR"); dir && *dir) {
    std::filesystem::create_directories(dir);
    path = std::filesystem::path(dir) / default_name;
  } else {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path.string());
  f << text;
  err << "wrote " << path.string() << '\n';
}

void write_meta(const Common& c, const std::string& command, double seconds) {
  if (c.meta.empty()) return;
  std::ofstream f(c.meta);
  if (!f) throw UsageError("cannot write " + c.meta);
  f << json{{"command", command}, {"elapsed_seconds", seconds}}.dump() << '\n';
}

json load_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read " + path);
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

// ---- subcommands ----

struct ColorArgs {
  Common common;
  int k = 0;
  double eps = 1e-3;
  int trials = 64;
  int repeats = 3;
  double c0 = 4.0;
  int exact_below = 20;
  int candidates = 8;
};

int run_color(ColorArgs& a, std::ostream& out, std::ostream& err) {
  if (a.k < 2) throw UsageError("--k must be at least 2");
  const Graph g = load_graph(a.common);
  CombinedConfig cfg;
  cfg.seed = a.common.resolved_seed();
  cfg.eps = a.eps;
  cfg.trials = a.trials;
  cfg.repeats = a.repeats;
  cfg.c0 = a.c0;
  cfg.exact_below = a.exact_below;
  cfg.max_step9_candidates = a.candidates;
  const CombinedResult r = combined_color(g, a.k, cfg);
  if (!verify_coloring(g, r.coloring)) throw std::logic_error("refusing to write an improper coloring");
  json j = json::parse(combined_result_json(r));
  j["source"] = a.common.source();
  write_text(j.dump() + "\n", "color.json", a.common, out, err);
  if (!r.success) err << r.failure << '\n';
  return r.success ? kExitOk : kExitFailure;
}

struct IndsetArgs {
  Common common;
  double alpha = 0;
  std::string algo = "ak";
  double eps = 1e-3;
  int trials = 64;
};

int run_indset(IndsetArgs& a, std::ostream& out, std::ostream& err) {
  if (!(a.alpha >= 1.0)) throw UsageError("--alpha must be at least 1");
  const Graph g = load_graph(a.common);
  const std::uint64_t seed = a.common.resolved_seed();
  json j{{"schema", 1}, {"algo", a.algo},   {"n", g.num_vertices()}, {"alpha", a.alpha},
         {"seed", seed}, {"source", a.common.source()}};
  VertexSet set;
  bool ok = true;
  if (a.algo == "ak") {
    AkOptions opts;
    opts.eps = a.eps;
    opts.trials = a.trials;
    opts.seed = seed;
    const AkResult r = ak_independent_set_report(g, a.alpha, opts);
    set = r.set;
    j["promise_used"] = r.promise_used;
    j["alpha_prime"] = r.alpha_prime;
    j["aligned_size"] = r.aligned_size;
    j["sdp_objective"] = r.sdp_objective;
  } else if (a.algo == "kms" || a.algo == "l2") {
    if (a.algo == "kms" && !(a.alpha > 2.0)) throw UsageError("kms rounding needs --alpha > 2");
    const Rng rng(seed);
    SolverOptions opts;
    opts.eps = a.eps;
    opts.seed = rng.split(0).seed();
    if (g.num_edges() == 0) {
      set.resize(static_cast<std::size_t>(g.num_vertices()));
      std::iota(set.begin(), set.end(), 0);
    } else if (!(a.alpha >= 2.0)) {
      throw UsageError("vector rounding needs --alpha >= 2 on a graph with edges");
    } else {
      const auto outcome = solve_vector_coloring(g, a.alpha, opts);
      j["best_residual"] = outcome.report.best_residual;
      if (!outcome.coloring) {
        ok = false;
      } else if (a.algo == "kms") {
        set = kms_independent_set(
            g, *outcome.coloring,
            {kms_threshold(a.alpha, g.average_degree()), a.trials, rng.split(1).seed()});
      } else {
        set = l2_vector_indset(g, *outcome.coloring, {a.trials, rng.split(1).seed(), 0});
      }
    }
  } else {
    throw UsageError("--algo must be ak, kms or l2");
  }
  if (ok && !verify_independent_set(g, set)) throw std::logic_error("refusing to write a non-independent set");
  j["status"] = ok ? "ok" : "not_vector_colorable";
  j["size"] = set.size();
  j["set"] = set;
  write_text(j.dump() + "\n", "indset.json", a.common, out, err);
  if (!ok) err << "graph is not vector " << a.alpha << "-colorable at the requested tolerance\n";
  return ok ? kExitOk : kExitFailure;
}

struct VerifyArgs {
  Common common;
  std::string coloring;
  std::string set;
  int k = 0;
};

int run_verify(VerifyArgs& a, std::ostream& out, std::ostream& err) {
  if (a.coloring.empty() == a.set.empty()) throw UsageError("give exactly one of --coloring and --set");
  const Graph g = load_graph(a.common);
  json j{{"schema", 1}, {"source", a.common.source()}, {"n", g.num_vertices()}};
  bool valid = false;
  if (!a.coloring.empty()) {
    const json in = load_json_file(a.coloring);
    if (!in.contains("coloring")) throw UsageError(a.coloring + " has no \"coloring\" array");
    const Coloring c(in["coloring"].get<std::vector<int>>());
    valid = c.size() == static_cast<std::size_t>(g.num_vertices()) &&
            std::all_of(c.assignment().begin(), c.assignment().end(), [](int x) { return x >= 0; }) &&
            verify_coloring(g, c);
    if (a.k > 0) valid = valid && c.colors_used() <= a.k;
    j["kind"] = "coloring";
    j["colors_used"] = c.colors_used();
  } else {
    const json in = load_json_file(a.set);
    if (!in.contains("set")) throw UsageError(a.set + " has no \"set\" array");
    const auto raw = in["set"].get<std::vector<Vertex>>();
    const VertexSet s = make_vertex_set(raw);
    valid = s.size() == raw.size() && (s.empty() || (s.front() >= 0 && s.back() < g.num_vertices())) &&
            verify_independent_set(g, s);
    j["kind"] = "independent_set";
    j["size"] = raw.size();
  }
  j["valid"] = valid;
  write_text(j.dump() + "\n", "verify.json", a.common, out, err);
  return valid ? kExitOk : kExitFailure;
}

struct AnalyzeArgs {
  Common common;
  std::string beta;
  std::string c;
  std::uint64_t mc_samples = 0;
};

int run_analyze(AnalyzeArgs& a, std::ostream& out, std::ostream& err) {
  const auto betas = parse_real_list(a.beta);
  const auto cs = parse_real_list(a.c);
  for (double b : betas)
    if (!(b > 0 && b < std::numbers::pi / 2)) throw UsageError("beta must lie in (0, pi/2)");
  for (double c : cs)
    if (!(c >= 0)) throw UsageError("c must be nonnegative");
  const std::uint64_t seed = a.common.resolved_seed();
  const auto rows = bound_sweep(betas, cs, a.mc_samples, seed);
  int violations = 0;
  for (const auto& r : rows) {
    const double upper = wedge_bounds({r.beta, r.c}).best_upper();
    if (r.lower > r.exact + 1e-10 || r.exact > upper + 1e-10) {
      ++violations;
      err << "sandwich fails at beta=" << r.beta << " c=" << r.c << '\n';
    }
  }
  std::ostringstream csv;
  csv << "# seed: " << seed << '\n';
  write_sweep_csv(csv, rows);
  write_text(csv.str(), "analyze.csv", a.common, out, err);
  return violations == 0 ? kExitOk : kExitFailure;
}

struct BenchArgs {
  Common common;
  std::string algo = "combined";
  int k = 4;
  double p = 0.3;
  std::string sizes = "125,250,500";
  int seeds = 3;
  int jobs = 0;
};

int run_bench(BenchArgs& a, std::ostream& out, std::ostream& err) {
  if (a.algo != "combined" && a.algo != "ak" && a.algo != "kms")
    throw UsageError("--algo must be combined, ak or kms");
  if (a.k < 2) throw UsageError("--k must be at least 2");
  if (a.seeds < 1) throw UsageError("--seeds must be at least 1");
  std::vector<Vertex> sizes;
  for (const auto& s : split(a.sizes, ',')) {
    const double v = parse_number(s);
    if (v < a.k || v != std::floor(v)) throw UsageError("sizes must be integers >= k");
    sizes.push_back(static_cast<Vertex>(v));
  }
  if (sizes.empty()) throw UsageError("--sizes is empty");
  const std::uint64_t seed = a.common.resolved_seed();
  const Rng root(seed);

  struct Cell {
    Vertex n;
    int index;
    std::uint64_t instance_seed;
    std::uint64_t run_seed;
    double value = 0;
    bool ok = false;
  };
  std::vector<Cell> cells;
  for (Vertex n : sizes)
    for (int s = 0; s < a.seeds; ++s) {
      const Rng cell = root.split(static_cast<std::uint64_t>(n)).split(static_cast<std::uint64_t>(s));
      cells.push_back({n, s, cell.split(0).seed(), cell.split(1).seed()});
    }

  auto run_cell = [&](Cell& c) {
    const auto inst = planted_k_colorable(c.n, a.k, a.p, c.instance_seed);
    if (a.algo == "combined") {
      CombinedConfig cfg;
      cfg.seed = c.run_seed;
      const auto r = combined_color(inst.graph, a.k, cfg);
      c.ok = r.success && verify_coloring(inst.graph, r.coloring);
      c.value = r.coloring.colors_used();
    } else if (a.algo == "kms") {
      KmsColorOptions opts;
      opts.seed = c.run_seed;
      try {
        const Coloring col = kms_color(inst.graph, a.k, opts);
        c.ok = verify_coloring(inst.graph, col);
        c.value = col.colors_used();
      } catch (const std::exception&) {
        c.ok = false;
      }
    } else {
      AkOptions opts;
      opts.seed = c.run_seed;
      try {
        const VertexSet s = ak_independent_set(inst.graph, a.k, opts);
        c.ok = verify_independent_set(inst.graph, s);
        c.value = static_cast<double>(s.size());
      } catch (const std::exception&) {
        c.ok = false;
      }
    }
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned jobs = a.jobs > 0 ? static_cast<unsigned>(a.jobs) : hw;
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(cells.size());
  for (unsigned w = 0; w < std::min<std::size_t>(jobs, cells.size()); ++w)
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < cells.size(); i = next++) {
        try {
          run_cell(cells[i]);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& t : workers) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  json cj = json::array();
  std::vector<double> xs, means;
  bool all_ok = true;
  for (Vertex n : sizes) {
    double sum = 0;
    int count = 0;
    for (const auto& c : cells) {
      if (c.n != n) continue;
      cj.push_back({{"n", c.n}, {"seed_index", c.index}, {"instance_seed", c.instance_seed},
                    {"run_seed", c.run_seed}, {"value", c.value}, {"ok", c.ok}});
      all_ok = all_ok && c.ok;
      sum += c.value;
      ++count;
    }
    xs.push_back(n);
    means.push_back(sum / count);
  }
  json j{{"schema", 1}, {"algo", a.algo}, {"k", a.k},       {"p", a.p},
         {"seed", seed}, {"sizes", sizes}, {"seeds", a.seeds}, {"cells", cj},
         {"means", means}};
  j["value"] = a.algo == "ak" ? "independent_set_size" : "colors_used";
  std::set<Vertex> distinct(sizes.begin(), sizes.end());
  j["fitted_exponent"] = distinct.size() >= 2 && std::all_of(means.begin(), means.end(), [](double m) { return m > 0; })
                             ? json(fitted_exponent(xs, means))
                             : json(nullptr);
  if (a.algo == "combined") j["alpha_k"] = alpha_k_string(a.k);
  write_text(j.dump() + "\n", "bench.json", a.common, out, err);
  return all_ok ? kExitOk : kExitFailure;
}

}  // namespace

GeneratorSpec parse_generator(const std::string& text) {
  GeneratorSpec spec;
  const auto colon = text.find(':');
  spec.name = trim(text.substr(0, colon));
  if (spec.name.empty()) throw UsageError("generator name missing in '" + text + "'");
  if (colon == std::string::npos) return spec;
  const std::string rest = text.substr(colon + 1);
  if (trim(rest).empty()) return spec;
  for (const auto& item : split(rest, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
      throw UsageError("expected key=value, got '" + item + "'");
    const std::string key = trim(item.substr(0, eq));
    if (!spec.params.emplace(key, trim(item.substr(eq + 1))).second)
      throw UsageError("repeated generator key " + key);
  }
  return spec;
}

GeneratedGraph generate(const GeneratorSpec& spec) {
  GeneratedGraph out;
  const auto& name = spec.name;
  try {
    if (name == "planted") {
      allow_keys(spec, {"n", "k", "p", "seed"});
      auto inst = planted_k_colorable(get_param<Vertex>(spec, "n"), get_param<int>(spec, "k"),
                                      get_param<double>(spec, "p"),
                                      get_param<std::uint64_t>(spec, "seed", std::uint64_t{0}));
      out.graph = std::move(inst.graph);
      out.planted_classes = std::move(inst.classes);
    } else if (name == "gnp") {
      allow_keys(spec, {"n", "p", "seed"});
      out.graph = random_gnp(get_param<Vertex>(spec, "n"), get_param<double>(spec, "p"),
                             get_param<std::uint64_t>(spec, "seed", std::uint64_t{0}));
    } else if (name == "complete") {
      allow_keys(spec, {"n"});
      out.graph = complete_graph(get_param<Vertex>(spec, "n"));
    } else if (name == "cycle") {
      allow_keys(spec, {"n"});
      out.graph = cycle_graph(get_param<Vertex>(spec, "n"));
    } else if (name == "path") {
      allow_keys(spec, {"n"});
      out.graph = path_graph(get_param<Vertex>(spec, "n"));
    } else if (name == "star") {
      allow_keys(spec, {"leaves"});
      out.graph = star_graph(get_param<Vertex>(spec, "leaves"));
    } else if (name == "bipartite") {
      allow_keys(spec, {"a", "b"});
      out.graph = complete_bipartite(get_param<Vertex>(spec, "a"), get_param<Vertex>(spec, "b"));
    } else if (name == "petersen") {
      allow_keys(spec, {});
      out.graph = petersen_graph();
    } else {
      throw UsageError("unknown generator '" + name + "'");
    }
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError("generator '" + name + "': " + e.what());
  }
  return out;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) {
    if (item.empty()) throw UsageError("empty entry in '" + text + "'");
    const auto parts = split(item, ':');
    if (parts.size() == 1) {
      out.push_back(parse_expression(item));
    } else if (parts.size() == 3) {
      const double lo = parse_expression(parts[0]);
      const double hi = parse_expression(parts[1]);
      const double step = parse_expression(parts[2]);
      if (!(step > 0) || hi < lo) throw UsageError("bad range '" + item + "'");
      const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
      if (count > 1000000) throw UsageError("range too long: '" + item + "'");
      for (long i = 0; i <= count; ++i) out.push_back(lo + static_cast<double>(i) * step);
    } else {
      throw UsageError("expected a value or lo:hi:step, got '" + item + "'");
    }
  }
  return out;
}

double fitted_exponent(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("need at least two points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0) throw std::invalid_argument("x values must not all coincide");
  return sxy / sxx;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Approximate coloring of k-colorable graphs"};
  app.name("sdpcolor");
  app.require_subcommand(1);

  ColorArgs color;
  auto* c = app.add_subcommand("color", "color a graph promised to be k-colorable");
  color.common.attach(c);
  c->add_option("--k", color.k, "promised chromatic number")->required();
  c->add_option("--eps", color.eps, "relaxation tolerance");
  c->add_option("--trials", color.trials, "rounding trials");
  c->add_option("--repeats", color.repeats, "full reruns before reporting failure");
  c->add_option("--c0", color.c0, "cutoff constant");
  c->add_option("--exact-below", color.exact_below, "color graphs up to this size exactly");
  c->add_option("--candidates", color.candidates, "candidate sets tried per round");

  IndsetArgs indset;
  auto* i = app.add_subcommand("indset", "find an independent set");
  indset.common.attach(i);
  i->add_option("--alpha", indset.alpha, "promise: an independent set of size n/alpha exists")->required();
  i->add_option("--algo", indset.algo, "ak | kms | l2");
  i->add_option("--eps", indset.eps, "relaxation tolerance");
  i->add_option("--trials", indset.trials, "rounding trials");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "check a coloring or independent set");
  verify.common.attach(v);
  v->add_option("--coloring", verify.coloring, "JSON file with a \"coloring\" array");
  v->add_option("--set", verify.set, "JSON file with a \"set\" array");
  v->add_option("--k", verify.k, "also require at most k colors");

  AnalyzeArgs analyze;
  auto* an = app.add_subcommand("analyze", "sweep the two-vector threshold probability and its bounds");
  analyze.common.attach(an, false);
  an->add_option("--beta", analyze.beta, "half-angles, e.g. pi/6 or pi/12:pi/3:pi/12")->required();
  an->add_option("--c", analyze.c, "thresholds, e.g. 0.5:3:0.25")->required();
  an->add_option("--mc-samples", analyze.mc_samples, "Monte Carlo samples per cell (0: skip)");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "scaling experiment on planted instances");
  bench.common.attach(b, false);
  b->add_option("--algo", bench.algo, "combined | kms | ak");
  b->add_option("--k", bench.k, "planted chromatic number");
  b->add_option("--p", bench.p, "cross-class edge probability");
  b->add_option("--sizes", bench.sizes, "comma-separated vertex counts");
  b->add_option("--seeds", bench.seeds, "instances per size");
  b->add_option("--jobs", bench.jobs, "worker threads (0: all cores)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  try {
    int code = kExitUsage;
    Common* used = nullptr;
    std::string name;
    if (c->parsed()) {
      code = run_color(color, out, err), used = &color.common, name = "color";
    } else if (i->parsed()) {
      code = run_indset(indset, out, err), used = &indset.common, name = "indset";
    } else if (v->parsed()) {
      code = run_verify(verify, out, err), used = &verify.common, name = "verify";
    } else if (an->parsed()) {
      code = run_analyze(analyze, out, err), used = &analyze.common, name = "analyze";
    } else if (b->parsed()) {
      code = run_bench(bench, out, err), used = &bench.common, name = "bench";
    }
    if (used) write_meta(*used, name, elapsed());
    return code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace sdpcolor::cli
