#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

using namespace sdpcolor;
using namespace sdpcolor::cli;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("sdpcolor_cli_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("generator grammar") {
  const auto spec = parse_generator("planted:n=12,k=3,p=0.5,seed=9");
  CHECK(spec.name == "planted");
  CHECK(spec.params.at("n") == "12");
  CHECK(spec.params.at("seed") == "9");
  CHECK(parse_generator("petersen").params.empty());

  const auto planted = generate(spec);
  CHECK(planted.graph.num_vertices() == 12);
  CHECK(planted.planted_classes.size() == 3);
  CHECK(generate(parse_generator("complete:n=5")).graph.num_edges() == 10);
  CHECK(generate(parse_generator("bipartite:a=2,b=3")).graph.num_edges() == 6);
  CHECK(generate(parse_generator("star:leaves=4")).graph.num_vertices() == 5);

  CHECK_THROWS_AS(parse_generator("planted:n"), UsageError);
  CHECK_THROWS_AS(parse_generator("planted:n=1,n=2"), UsageError);
  CHECK_THROWS_AS(generate(parse_generator("cube:n=3")), UsageError);
  CHECK_THROWS_AS(generate(parse_generator("cycle:n=5,q=1")), UsageError);
  CHECK_THROWS_AS(generate(parse_generator("planted:n=10,k=3")), UsageError);
  CHECK_THROWS_AS(generate(parse_generator("gnp:n=ten,p=0.1")), UsageError);
}

TEST_CASE("real lists and ranges") {
  const auto v = parse_real_list("pi/6, 2*pi/3,0.5");
  REQUIRE(v.size() == 3);
  CHECK(v[0] == doctest::Approx(std::numbers::pi / 6));
  CHECK(v[1] == doctest::Approx(2 * std::numbers::pi / 3));
  CHECK(v[2] == 0.5);
  const auto r = parse_real_list("0.5:3:0.25");
  REQUIRE(r.size() == 11);
  CHECK(r.back() == doctest::Approx(3.0));
  CHECK_THROWS_AS(parse_real_list("1:0:0.1"), UsageError);
  CHECK_THROWS_AS(parse_real_list("1,,2"), UsageError);
  CHECK_THROWS_AS(parse_real_list("pie"), UsageError);
}

TEST_CASE("fitted exponent") {
  const std::vector<double> x = {10, 100, 1000};
  std::vector<double> y;
  for (double t : x) y.push_back(3 * std::pow(t, 0.4));
  CHECK(fitted_exponent(x, y) == doctest::Approx(0.4));
  CHECK_THROWS(fitted_exponent({5, 5}, {1, 2}));
}

TEST_CASE("color a small planted graph") {
  const Run r = run({"color", "--gen", "planted:n=6,k=3,p=1", "--k", "3", "--seed", "1"});
  REQUIRE(r.code == kExitOk);
  const json j = json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["status"] == "colored");
  CHECK(j["colors_used"] == 3);
  CHECK(j["coloring"].size() == 6);
}

TEST_CASE("usage errors exit with 1") {
  CHECK(run({"color", "--input", "/nonexistent/graph.col", "--k", "3"}).code == kExitUsage);
  CHECK(run({"color", "--k", "3"}).code == kExitUsage);
  CHECK(run({"color", "--gen", "petersen"}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"indset", "--gen", "petersen", "--alpha", "3", "--algo", "magic"}).code == kExitUsage);
  CHECK(run({"analyze", "--beta", "2", "--c", "1"}).code == kExitUsage);

  const auto dir = scratch_dir("malformed");
  const auto path = dir / "bad.col";
  std::ofstream(path) << "p edge 3 2\ne 1 2\ne 2 x\n";
  const Run r = run({"color", "--input", path.string(), "--k", "3"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find(":3:") != std::string::npos);
}

TEST_CASE("help goes to stdout") {
  const Run r = run({"--help"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("color") != std::string::npos);
}

TEST_CASE("seeded runs are byte identical") {
  const std::vector<std::string> args = {"color", "--gen", "planted:n=40,k=4,p=0.5,seed=3",
                                         "--k", "4", "--seed", "11"};
  const Run a = run(args);
  const Run b = run(args);
  CHECK(a.code == b.code);
  CHECK(a.out == b.out);

  const std::vector<std::string> sweep = {"analyze", "--beta", "pi/12:pi/4:pi/12", "--c",
                                          "0.5:2:0.5", "--mc-samples", "2000", "--seed", "5"};
  CHECK(run(sweep).out == run(sweep).out);
}

TEST_CASE("unseeded runs record their seed") {
  const Run r = run({"indset", "--gen", "cycle:n=8", "--alpha", "2"});
  REQUIRE(r.code == kExitOk);
  const json j = json::parse(r.out);
  const auto seed = j["seed"].get<std::uint64_t>();
  const Run again = run({"indset", "--gen", "cycle:n=8", "--alpha", "2", "--seed", std::to_string(seed)});
  CHECK(json::parse(again.out)["set"] == j["set"]);
}

TEST_CASE("verify accepts and rejects") {
  const auto dir = scratch_dir("verify");
  const auto good = dir / "good.json";
  const auto bad = dir / "bad.json";
  std::ofstream(good) << R"({"coloring":[0,1,0,1,0,1]})";
  std::ofstream(bad) << R"({"coloring":[0,0,1,0,1,0]})";
  CHECK(run({"verify", "--gen", "cycle:n=6", "--coloring", good.string()}).code == kExitOk);
  CHECK(run({"verify", "--gen", "cycle:n=6", "--coloring", good.string(), "--k", "1"}).code == kExitFailure);
  CHECK(run({"verify", "--gen", "cycle:n=6", "--coloring", bad.string()}).code == kExitFailure);

  const auto set = dir / "set.json";
  std::ofstream(set) << R"({"set":[0,2,4]})";
  CHECK(run({"verify", "--gen", "cycle:n=6", "--set", set.string()}).code == kExitOk);
  std::ofstream(set) << R"({"set":[0,1]})";
  CHECK(run({"verify", "--gen", "cycle:n=6", "--set", set.string()}).code == kExitFailure);
}

TEST_CASE("indset algorithms produce verified sets") {
  for (const char* algo : {"ak", "kms", "l2"}) {
    CAPTURE(algo);
    const Run r = run({"indset", "--gen", "planted:n=30,k=3,p=0.5,seed=1", "--alpha", "3", "--algo",
                       algo, "--seed", "2"});
    REQUIRE(r.code == kExitOk);
    const json j = json::parse(r.out);
    CHECK(j["size"].get<int>() >= 1);
    CHECK(j["set"].size() == j["size"].get<std::size_t>());
  }
}

TEST_CASE("output file and output directory") {
  const auto dir = scratch_dir("outdir");
  const auto file = dir / "c.json";
  const Run r = run({"color", "--gen", "cycle:n=5", "--k", "3", "--seed", "1", "--output",
                     file.string(), "--meta", (dir / "meta.json").string()});
  CHECK(r.code == kExitOk);
  CHECK(r.out.empty());
  CHECK(std::filesystem::exists(file));
  std::ifstream meta(dir / "meta.json");
  CHECK(json::parse(meta).contains("elapsed_seconds"));

  ::setenv("SDPCOLOR_OUTPUT_DIR", (dir / "env").string().c_str(), 1);
  const Run e = run({"analyze", "--beta", "pi/6", "--c", "1", "--seed", "1"});
  ::unsetenv("SDPCOLOR_OUTPUT_DIR");
  CHECK(e.code == kExitOk);
  CHECK(std::filesystem::exists(dir / "env" / "analyze.csv"));
}

TEST_CASE("bench assembles cells deterministically") {
  const std::vector<std::string> base = {"bench", "--algo", "ak", "--k", "3", "--sizes", "30,60",
                                         "--seeds", "2", "--seed", "4"};
  auto one = base, many = base;
  one.insert(one.end(), {"--jobs", "1"});
  many.insert(many.end(), {"--jobs", "3"});
  const Run a = run(one);
  const Run b = run(many);
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
  const json j = json::parse(a.out);
  CHECK(j["cells"].size() == 4);
  CHECK(j["fitted_exponent"].is_number());
}
