#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "bondperc/polynomial.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// stderr is folded into the output only when asked for.
Run run(const std::string& args, bool with_stderr = false) {
  const std::string cmd = std::string(BONDPERC_CLI_PATH) + " " + args + (with_stderr ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "bondperc_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("moments json") {
  const auto r = run("moments --solid tetrahedron --p 0.5");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["coeffs"] == std::vector<std::int64_t>{1, 3, 6, 0, -21, 21, -6});
  CHECK(j["kind"] == "exact");
  CHECK(j["grid"][0]["value"].get<double>() == 3.25);
  CHECK_FALSE(j.contains("wall_seconds"));
  CHECK(nlohmann::json::parse(run("moments --solid tetrahedron --timing").out).contains("wall_seconds"));
}

TEST_CASE("identical runs give identical bytes") {
  for (const char* args : {"moments --solid cube", "moments --solid icosahedron --cutoff 3 --format csv",
                           "bounds --solid octahedron", "simulate --solid cube --samples 3000 --seed 5 --threads 1",
                           "oracle --solid octahedron --moment 2", "paths --solid cube --to 7"}) {
    CAPTURE(args);
    const auto a = run(args);
    CHECK(a.code == 0);
    CHECK_FALSE(a.out.empty());
    CHECK(run(args).out == a.out);
  }
  CHECK(run("simulate --solid cube --samples 3000 --seed 5 --threads 1").out ==
        run("simulate --solid cube --samples 3000 --seed 5 --threads 3").out);
}

TEST_CASE("cutoff reports a lower bound") {
  const auto r = run("moments --solid dodecahedron --cutoff 5");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["kind"] == "lower_bound");
  CHECK(j["cutoff"] == 5);
  CHECK(j["per_class"].size() == 6);
}

TEST_CASE("bounds csv") {
  const auto r = run("bounds --solid cube --p 0.5");
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header.rfind("p,e_s_branching,e_s2_branching,e_s_plarge,e_s2_plarge", 0) == 0);
  std::vector<std::string> cells;
  std::stringstream ss(row);
  for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
  REQUIRE(cells.size() >= 5);
  CHECK(std::stod(cells[3]) == 7.125);
}

TEST_CASE("oracle and inclusion-exclusion agree through the CLI") {
  const auto ie = nlohmann::json::parse(run("moments --solid octahedron").out);
  const auto ex = nlohmann::json::parse(run("oracle --solid octahedron").out);
  CHECK(ie["coeffs"] == ex["coeffs"]);
}

TEST_CASE("paths dump") {
  const auto r = run("paths --solid octahedron --from-distance 2");
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string header;
  std::getline(in, header);
  CHECK(header == "0 3 28 none");
  std::size_t lines = 0;
  for (std::string line; std::getline(in, line);) ++lines;
  CHECK(lines == 28);
  const auto pairs = run("paths --solid tetrahedron --to 1 --and 2");
  CHECK(pairs.out.rfind("0 1,2 10 none", 0) == 0);
}

TEST_CASE("graph files") {
  const auto file = scratch("triangle.txt");
  std::ofstream(file) << "3 3\n0 1\n1 2\n0 2\n";
  const auto r = run("moments --graph " + file.string());
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["coeffs"] == std::vector<std::int64_t>{1, 2, 2, -2});

  const auto bad = scratch("bad.txt");
  std::ofstream(bad) << "3 2\n0 1\n";
  CHECK(run("moments --graph " + bad.string()).code == 2);

  const auto path = scratch("path.txt");
  std::ofstream(path) << "3 2\n0 1\n1 2\n";
  const auto irregular = run("bounds --graph " + path.string(), true);
  CHECK(irregular.code == 2);
  CHECK(irregular.out.find("1") != std::string::npos);
  CHECK(run("moments --per-vertex --graph " + path.string()).code == 0);
  CHECK(run("moments --graph " + path.string()).code == 2);
}

TEST_CASE("exit codes") {
  CHECK(run("moments --solid dodecagon").code == 2);
  CHECK(run("moments --solid cube --p 1.5").code == 2);
  CHECK(run("moments --solid cube --source 8").code == 2);
  CHECK(run("paths --solid cube --to 0").code == 2);
  CHECK(run("moments --solid cube --graph x.txt").code == 2);
  CHECK(run("frobnicate").code == 2);

  const auto refused = run("moments --solid cube --moment 2", true);
  CHECK(refused.code == 3);
  CHECK(refused.out.find("oracle --moment 2") != std::string::npos);
  CHECK(run("oracle --solid dodecahedron").code == 3);
}

TEST_CASE("output file") {
  const auto file = scratch("bounds.csv");
  std::filesystem::remove(file);
  const auto r = run("bounds --solid tetrahedron -o " + file.string());
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(file);
  std::stringstream content;
  content << in.rdbuf();
  CHECK(content.str() == run("bounds --solid tetrahedron").out);
}
