#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "sdpcolor/graph.hpp"
#include "sdpcolor/testkit.hpp"

namespace sdpcolor::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailure = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "name:key=val,key=val". Throws UsageError on malformed text.
struct GeneratorSpec {
  std::string name;
  std::map<std::string, std::string> params;
};
GeneratorSpec parse_generator(const std::string& text);

struct GeneratedGraph {
  Graph graph;
  std::vector<VertexSet> planted_classes;  // empty unless planted
};

/// planted(n,k,p,seed) | gnp(n,p,seed) | complete(n) | cycle(n) | path(n) |
/// star(leaves) | bipartite(a,b) | petersen.
GeneratedGraph generate(const GeneratorSpec& spec);

/// "pi/6", "0.5", "2*pi/3", ... or a range "a:b:step" (inclusive), comma lists of either.
std::vector<double> parse_real_list(const std::string& text);

/// Least-squares slope of log(y) against log(x); needs two distinct x.
double fitted_exponent(const std::vector<double>& x, const std::vector<double>& y);

/// Runs one command line (without the program name). Output goes to `out`
/// unless redirected by --output or SDPCOLOR_OUTPUT_DIR; diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sdpcolor::cli
