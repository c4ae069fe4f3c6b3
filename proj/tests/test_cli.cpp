#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef CLASSOPT_CLI_PATH
#error "CLASSOPT_CLI_PATH must point at the built binary"
#endif

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd =
      std::string(CLASSOPT_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = std::fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path temp_dir() {
  const fs::path dir =
      fs::temp_directory_path() / "classopt_cli_test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("solve prints the documented optimum") {
  const RunResult r = run_cli("solve --Z 5 --p 0.77 --W 1.2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("sizes: 2,3") != std::string::npos);
  CHECK(r.out.find("0.155399") != std::string::npos);
  CHECK(r.out.find("profitable: yes") != std::string::npos);
  CHECK(r.out.find("agreement: yes") != std::string::npos);
}

TEST_CASE("solve reports the three-class flip") {
  const RunResult r = run_cli("solve --Z 5 --p 0.62 --W 0.673");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("sizes: 1,2,2") != std::string::npos);
}

TEST_CASE("solve handles the single-student school") {
  const RunResult r = run_cli("solve --Z 1 --p 0.5 --W 0.1");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("sizes: 1") != std::string::npos);
  CHECK(r.out.find("profit: 0.400000") != std::string::npos);
}

TEST_CASE("solve records format is machine readable") {
  const RunResult r = run_cli("solve --Z 5 --p 0.77 --W 1.2 --format records");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("sizes=2,3\n") != std::string::npos);
  CHECK(r.out.find("m=2\n") != std::string::npos);
  CHECK(r.out.find("profitable=1\n") != std::string::npos);
}

TEST_CASE("usage and capacity exit codes") {
  CHECK(run_cli("solve --Z 5 --p 0.77").exit_code == 2);  // missing --W
  CHECK(run_cli("solve --bogus").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("solve --Z 80 --p 0.9 --W 0.5 --method oracle").exit_code ==
        3);
  CHECK(run_cli("conjecture --z-min 9 --z-max 5").exit_code == 2);
  CHECK(run_cli("multitype --probs 0.5,0.6 --counts 9,9 --W 0.5").exit_code ==
        3);
  CHECK(run_cli("solve --Z 5 --p 1.7 --W 0.5").exit_code == 2);
}

TEST_CASE("atlas writes deterministic tables that re-parse") {
  const fs::path dir = temp_dir();
  const fs::path cells1 = dir / "cells1.csv", curves1 = dir / "curves1.csv";
  const fs::path cells2 = dir / "cells2.csv", curves2 = dir / "curves2.csv";
  const std::string grid =
      "--Z 5 --p-min 0.05 --p-max 0.95 --p-step 0.05 --w-min 0.1 --w-max 1.2 "
      "--w-step 0.1";
  const RunResult r1 = run_cli("atlas " + grid + " --output " +
                               cells1.string() + " --curves " +
                               curves1.string());
  REQUIRE(r1.exit_code == 0);
  CHECK(r1.out.find("cells: 228 (19 x 12)") != std::string::npos);
  const RunResult r2 = run_cli("atlas " + grid + " --output " +
                               cells2.string() + " --curves " +
                               curves2.string());
  REQUIRE(r2.exit_code == 0);
  CHECK(slurp(cells1) == slurp(cells2));
  CHECK(slurp(curves1) == slurp(curves2));
  const std::string cells_text = slurp(cells1);
  CHECK(cells_text.rfind("p,W,optimal_m,L_label,profitable,profit", 0) == 0);
  CHECK(std::count(cells_text.begin(), cells_text.end(), '\n') == 229);
  const std::string curves_text = slurp(curves1);
  CHECK(curves_text.rfind("curve,k,p,W", 0) == 0);
  CHECK(curves_text.find("f_k,2,") != std::string::npos);
  CHECK(curves_text.find("V_over_k,1,") != std::string::npos);
  CHECK(curves_text.find("C,0,") != std::string::npos);
}

TEST_CASE("the default Z=5 atlas contains the increasing-p witness cells") {
  const fs::path dir = temp_dir();
  const fs::path cells = dir / "default_cells.csv";
  const fs::path curves = dir / "default_curves.csv";
  const RunResult r = run_cli("atlas --Z 5 --output " + cells.string() +
                              " --curves " + curves.string());
  REQUIRE(r.exit_code == 0);
  // At W = 0.673 the default grid holds both witness labels: 2 at p = 0.60
  // and 3 at p = 0.62.
  const std::string text = slurp(cells);
  CHECK(text.find("0.6,0.673,2,2,1,") != std::string::npos);
  CHECK(text.find("0.62,0.673,3,3,1,") != std::string::npos);
}

TEST_CASE("conjecture subcommand writes a report and a status") {
  const fs::path dir = temp_dir();
  const fs::path report = dir / "orderings.csv";
  const RunResult r =
      run_cli("conjecture --z-min 5 --z-max 8 --output " + report.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("status VIOLATION-FREE") != std::string::npos);
  const std::string text = slurp(report);
  CHECK(text.rfind("Z,i,j,p_ij,margin,status", 0) == 0);
  CHECK(text.find("5,2,3,") != std::string::npos);
}

TEST_CASE("multitype subcommand reports the mixed example") {
  const RunResult r =
      run_cli("multitype --probs 0.8,0.5 --counts 3,3 --W 0.51");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("profit: 1.050000") != std::string::npos);
  CHECK(r.out.find("mixed classes: 1") != std::string::npos);
  CHECK(r.out.find("forest: yes") != std::string::npos);
}

TEST_CASE("multitype single-type agrees with solve") {
  const RunResult multi =
      run_cli("multitype --probs 0.77 --counts 5 --W 1.2 --format records");
  const RunResult single =
      run_cli("solve --Z 5 --p 0.77 --W 1.2 --format records");
  CHECK(multi.exit_code == 0);
  CHECK(multi.out.find("m=2\n") != std::string::npos);
  // Identical profit strings at full precision.
  const auto pick = [](const std::string& text, const std::string& key) {
    const size_t at = text.find(key);
    REQUIRE(at != std::string::npos);
    const size_t end = text.find('\n', at);
    return text.substr(at, end - at);
  };
  CHECK(pick(multi.out, "profit=") == pick(single.out, "profit="));
}

TEST_CASE("config file values are read and overridden by flags") {
  const fs::path dir = temp_dir();
  const fs::path cfg = dir / "solve.cfg";
  {
    std::ofstream out(cfg);
    out << "[solve]\nZ=5\np=0.77\nW=1.2\n";
  }
  const RunResult r = run_cli("--config " + cfg.string() + " solve");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("sizes: 2,3") != std::string::npos);
  const RunResult overridden =
      run_cli("--config " + cfg.string() + " solve --p 0.62 --W 0.673");
  CHECK(overridden.exit_code == 0);
  CHECK(overridden.out.find("sizes: 1,2,2") != std::string::npos);
}

TEST_CASE("verify subcommand runs the suites") {
  const RunResult r = run_cli(
      "verify --max-z-exact 60 --max-z-roots 12 --max-z-sweep 8 "
      "--random-cyclic 10");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("[PASS] exp-pair-bound") != std::string::npos);
  CHECK(r.out.find("[PASS] structure-sweep") != std::string::npos);
  CHECK(r.out.find("[PASS] multitype-sweep") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
}
