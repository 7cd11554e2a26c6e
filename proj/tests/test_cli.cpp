#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "deltaprop/csv.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(DELTAPROP_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  while (std::fgets(buf, sizeof(buf), pipe)) r.output += buf;
  const int status = pclose(pipe);
  r.exit_code = WEXITSTATUS(status);
  return r;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  REQUIRE(static_cast<bool>(out));
  out << text;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(static_cast<bool>(in));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("scatter emits unitary coefficients") {
  write_file("cli_scatter.cfg",
             "[beam]\nk = 1.7\n[system]\nv0 = 1.7\n");
  const auto r = run("--natural-units --config cli_scatter.cfg --out cli_scatter.csv scatter");
  CHECK(r.exit_code == 0);
  const auto t = deltaprop::csv::read("cli_scatter.csv");
  REQUIRE(t.rows.size() == 1);
  // resonant point: all four probabilities 1/4
  for (int c = 1; c <= 4; ++c) CHECK(t.rows[0][c] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(t.rows[0][5] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("kernel with zero coupling has zero off-diagonal columns") {
  write_file("cli_kernel.cfg",
             "[system]\nconfig = two-level\nv0 = 0\nxi = 0.5\n"
             "[grid]\nx_min = -2\nx_max = 2\nnx = 5\nxp_min = -1\nxp_max = 1\nnxp = 3\n"
             "[time]\nt = 0.8\n");
  const auto r = run("--natural-units --config cli_kernel.cfg --out cli_kernel.csv kernel");
  CHECK(r.exit_code == 0);
  const auto t = deltaprop::csv::read("cli_kernel.csv");
  REQUIRE(t.rows.size() == 15);
  REQUIRE(t.columns.size() == 3 + 8);
  // columns: x xp t re11 im11 re12 im12 re21 im21 re22 im22
  for (const auto& row : t.rows) {
    CHECK(row[5] == 0.0);
    CHECK(row[6] == 0.0);
    CHECK(row[7] == 0.0);
    CHECK(row[8] == 0.0);
  }
}

TEST_CASE("malformed config exits 1 and names the bad key") {
  write_file("cli_bad.cfg", "[beam]\nk = 1.0\nchirp = 3\n[system]\nv0 = 1\n");
  const auto r = run("--natural-units --config cli_bad.cfg --out cli_bad.csv scatter");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("beam.chirp") != std::string::npos);
}

TEST_CASE("missing config exits 1") {
  CHECK(run("scatter").exit_code == 1);
  CHECK(run("--config does_not_exist.cfg scatter").exit_code == 1);
}

TEST_CASE("invalid parameter values exit 1") {
  write_file("cli_negk.cfg", "[beam]\nk = -2\n[system]\nv0 = 1\n");
  CHECK(run("--natural-units --config cli_negk.cfg scatter").exit_code == 1);
  write_file("cli_badt.cfg",
             "[beam]\nk = 1\n[system]\nv0 = 1\nxi = 1\n"
             "[grid]\nx_min = 0\nx_max = 1\nnx = 3\n[time]\nt = -0.5\n");
  CHECK(run("--natural-units --config cli_badt.cfg shutter").exit_code == 1);
  CHECK(run("--out f.csv figure fig9").exit_code == 1);
}

TEST_CASE("identical configs give byte-identical output") {
  write_file("cli_det.cfg",
             "[beam]\nk = 2.0\n[system]\nv0 = 2.0\nxi = 20\n"
             "[grid]\nx_min = 0\nx_max = 60\nnx = 301\n[time]\nt = 25\n");
  REQUIRE(run("--natural-units --config cli_det.cfg --out cli_det_a.csv shutter").exit_code == 0);
  REQUIRE(run("--natural-units --config cli_det.cfg --out cli_det_b.csv shutter").exit_code == 0);
  CHECK(slurp("cli_det_a.csv") == slurp("cli_det_b.csv"));
}

TEST_CASE("wavepacket run emits the documented columns") {
  write_file("cli_packet.cfg",
             "[packet]\nlength = 1\nn = 1\nq = 5\n[system]\nv0 = 1.3\nxi = 2.5\n"
             "[grid]\nx_min = -3\nx_max = 6\nnx = 181\n[time]\nt = 0.8\n");
  const auto r = run("--natural-units --config cli_packet.cfg --out cli_packet.csv wavepacket");
  CHECK(r.exit_code == 0);
  const auto t = deltaprop::csv::read("cli_packet.csv");
  CHECK(t.columns == std::vector<std::string>{"x", "t", "rho_1", "rho_2",
                                              "rho_total", "rho_free"});
  REQUIRE(t.rows.size() == 181);
  for (const auto& row : t.rows) {
    CHECK(row[2] >= 0.0);
    CHECK(row[3] >= 0.0);
    CHECK(row[4] == row[2] + row[3]);
  }
}

TEST_CASE("verify specfun suite passes and reports measured values") {
  const auto r = run("--out cli_verify.csv verify specfun");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("check,measured,tolerance,pass") != std::string::npos);
  CHECK(r.output.find("faddeyeva matches frozen reference grid") != std::string::npos);
}

TEST_CASE("perturbed fixture makes the specfun suite fail") {
  // Copy the fixtures, nudge one reference value by 1e-6, point the
  // override environment variable at the copy.
  std::system("rm -rf cli_fixture_tmp && mkdir cli_fixture_tmp");
  const std::string src = DELTAPROP_FIXTURE_SRC;
  const auto grid = deltaprop::csv::read(src + "/faddeyeva_grid.csv");
  {
    deltaprop::csv::Writer w("cli_fixture_tmp/faddeyeva_grid.csv");
    w.header(grid.columns);
    for (std::size_t i = 0; i < grid.rows.size(); ++i) {
      auto row = grid.rows[i];
      if (i == grid.rows.size() / 2) row[2] += 1e-6;
      w.row(row);
    }
  }
  std::system(("cp " + src + "/moshinsky_values.csv cli_fixture_tmp/").c_str());
  const std::string cmd = "env DELTAPROP_FIXTURES=cli_fixture_tmp " +
                          std::string(DELTAPROP_CLI_PATH) +
                          " verify specfun > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 2);
}

TEST_CASE("missing fixtures are a reported error") {
  const std::string cmd = "env DELTAPROP_FIXTURES=no_such_dir " +
                          std::string(DELTAPROP_CLI_PATH) +
                          " verify specfun > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) != 0);
}
