#include "sdpcolor/dimacs.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace sdpcolor {

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error(line == 0 ? "dimacs: " + message
                                   : "dimacs line " + std::to_string(line) + ": " + message),
      line_(line) {}

namespace {

long long parse_count(std::istringstream& fields, std::size_t line_no, const char* what) {
  long long value = 0;
  if (!(fields >> value)) throw ParseError(line_no, std::string("expected ") + what);
  return value;
}

}  // namespace

Graph read_dimacs(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_problem = false;
  long long n = 0;
  long long declared_m = 0;
  std::vector<Edge> edges;
  std::vector<std::size_t> edge_lines;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::string tag;
    if (!(fields >> tag)) continue;
    if (tag == "c") continue;
    if (tag == "p") {
      if (have_problem) throw ParseError(line_no, "duplicate problem line");
      std::string format;
      fields >> format;
      if (format != "edge" && format != "col")
        throw ParseError(line_no, "unsupported problem format '" + format + "'");
      n = parse_count(fields, line_no, "vertex count");
      declared_m = parse_count(fields, line_no, "edge count");
      if (n < 0 || declared_m < 0) throw ParseError(line_no, "negative count");
      if (n > (1LL << 30)) throw ParseError(line_no, "vertex count too large");
      have_problem = true;
      edges.reserve(static_cast<std::size_t>(declared_m));
    } else if (tag == "e") {
      if (!have_problem) throw ParseError(line_no, "edge before problem line");
      const long long u = parse_count(fields, line_no, "edge endpoint");
      const long long v = parse_count(fields, line_no, "edge endpoint");
      if (u < 1 || u > n || v < 1 || v > n)
        throw ParseError(line_no, "endpoint out of range [1, " + std::to_string(n) + "]");
      if (u == v) throw ParseError(line_no, "self-loop at vertex " + std::to_string(u));
      edges.push_back({static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1)});
      edge_lines.push_back(line_no);
    } else {
      throw ParseError(line_no, "unknown line type '" + tag + "'");
    }
  }
  if (!have_problem) throw ParseError(0, "missing problem line");

  // Locate a repeated edge so the error can point at the offending line.
  std::vector<std::pair<Edge, std::size_t>> keyed;
  keyed.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i)
    keyed.push_back({{std::min(edges[i].u, edges[i].v), std::max(edges[i].u, edges[i].v)}, i});
  std::sort(keyed.begin(), keyed.end());
  for (std::size_t i = 1; i < keyed.size(); ++i)
    if (keyed[i].first == keyed[i - 1].first)
      throw ParseError(edge_lines[std::max(keyed[i].second, keyed[i - 1].second)],
                       "duplicate edge " + std::to_string(keyed[i].first.u + 1) + " " +
                              std::to_string(keyed[i].first.v + 1));
  if (static_cast<long long>(edges.size()) != declared_m)
    throw ParseError(0, "problem line declares " + std::to_string(declared_m) + " edges, found " +
                            std::to_string(edges.size()));
  return Graph::from_edges(static_cast<Vertex>(n), edges);
}

Graph read_dimacs_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_dimacs(in);
}

void write_dimacs(std::ostream& out, const Graph& g, const std::vector<std::string>& comments) {
  for (const auto& c : comments) out << "c " << c << '\n';
  out << "p edge " << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const auto& e : g.edges()) out << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
}

void write_dimacs_file(const std::filesystem::path& path, const Graph& g,
                       const std::vector<std::string>& comments) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_dimacs(out, g, comments);
}

}  // namespace sdpcolor
