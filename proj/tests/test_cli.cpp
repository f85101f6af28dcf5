#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include "embedrank/design_io.hpp"
#include "embedrank/geometry.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args, bool merge_stderr = false) {
  const std::string cmd = std::string(EMBEDRANK_CLI) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

fs::path scratch() {
  auto dir = fs::temp_directory_path() / "embedrank_cli_test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("generate and rank") {
  const auto dir = scratch();
  const auto fano = (dir / "fano.des").string();
  CHECK(run("gen pg 2 2 1 -o " + fano).status == 0);
  CHECK(embedrank::read_design(fano) == embedrank::pg_design(2, 2, 1));
  const auto r = run("rank " + fano + " -p 2");
  CHECK(r.status == 0);
  CHECK(r.out == "4\n");
  CHECK(run("gen ag 3 4 2").out == embedrank::to_des(embedrank::ag_design(3, 4, 2).design));
  CHECK(run("gen sdp 2").status == 0);
  CHECK(run("gen rm 1 4").status == 0);
}

TEST_CASE("weight distributions are byte-identical across worker counts") {
  const auto dir = scratch();
  const auto ag = (dir / "ag.des").string();
  REQUIRE(run("gen ag 3 4 2 -o " + ag).status == 0);
  const auto one = run("--workers 1 wdist " + ag + " --cols -p 2");
  const auto four = run("--workers 4 wdist " + ag + " --cols -p 2");
  CHECK(one.status == 0);
  CHECK(one.out == four.out);
  CHECK(one.out.rfind("weight,count\n0,1\n16,", 0) == 0);
}

TEST_CASE("design operations") {
  const auto dir = scratch();
  const auto ag = (dir / "ag.des").string();
  REQUIRE(run("gen ag 3 4 2 -o " + ag).status == 0);
  CHECK(run("residual " + ag + " 0").out.rfind("48 83\n", 0) == 0);
  CHECK(run("derived " + ag + " 0").out.rfind("16 80\n", 0) == 0);
  CHECK(run("embeddable " + ag + " 0 -p 2").out == "rank 16, residual rank 15: embeddable\n");
  CHECK(run("thm5 " + ag + " 0").out == "required 120, found 130: passes\n");
  CHECK(run("aut " + ag + " --orbits blocks").out == "order 23224320\nblocks orbit sizes: 84\n");
  CHECK(run("iso " + ag + " " + ag).out.rfind("isomorphic\n", 0) == 0);
  CHECK(run("goodblocks " + ag).out.rfind("good blocks: 84 of 84\n", 0) == 0);
  CHECK(run("sym-embed " + ag + " -p 2").out == "weight-21 codewords: 85 (85 needed)\nsymmetric designs: 1\n");
}

TEST_CASE("exit codes") {
  CHECK(run("").status == 2);
  CHECK(run("frobnicate").status == 2);
  CHECK(run("rank").status == 2);
  const auto missing = run("rank /nonexistent/x.des", true);
  CHECK(missing.status == 1);
  CHECK(missing.out.find("\"error\":\"IoError\"") != std::string::npos);
  const auto dir = scratch();
  const auto fano = (dir / "fano.des").string();
  REQUIRE(run("gen pg 2 2 1 -o " + fano).status == 0);
  const auto bad = run("residual " + fano + " 99", true);
  CHECK(bad.status == 1);
  CHECK(bad.out.find("\"error\":\"BadIndex\"") != std::string::npos);
}

TEST_CASE("reproduce table1") {
  const auto r = run("--data " + std::string(EMBEDRANK_DATA_DIR) + " reproduce table1");
  CHECK(r.status == 0);
  CHECK(r.out.find("20,48\n") != std::string::npos);
  CHECK(r.out.find("64,5\n") != std::string::npos);
}
