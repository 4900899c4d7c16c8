#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "sdpcolor/graph.hpp"

namespace sdpcolor {

/// Malformed DIMACS input. line() is 1-based; 0 means "end of input".
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Reads "c", "p edge|col <n> <m>" and "e <u> <v>" lines (1-indexed endpoints).
/// Self-loops, repeated edges and an edge count that disagrees with the
/// problem line are parse errors.
Graph read_dimacs(std::istream& in);
Graph read_dimacs_file(const std::filesystem::path& path);

/// Writes comment lines, the problem line and edges in sorted (u < v) order.
void write_dimacs(std::ostream& out, const Graph& g, const std::vector<std::string>& comments = {});
void write_dimacs_file(const std::filesystem::path& path, const Graph& g,
                       const std::vector<std::string>& comments = {});

}  // namespace sdpcolor
