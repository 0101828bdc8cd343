// End-to-end tests driving the installed CLI binary through a shell.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "quadham/report.hpp"

using namespace quadham;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code;
  std::string output;
};

// Runs the CLI with stderr folded into stdout unless the caller already
// redirects it.
CliResult run_cli(const std::string& args, bool merge_stderr = true) {
  std::string cmd = std::string(QUADHAM_CLI_PATH) + " " + args;
  if (merge_stderr) {
    cmd += " 2>&1";
  } else {
    cmd += " 2>/dev/null";
  }
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) {
    output.append(buf, n);
  }
  int status = pclose(pipe);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, output};
}

fs::path scratch_dir() {
  fs::path dir = fs::temp_directory_path() / "quadham_cli_tests";
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const std::string& name, const std::string& text) {
  fs::path p = scratch_dir() / name;
  std::ofstream out(p);
  out << text;
  return p;
}

}  // namespace

TEST_CASE("analyze: real and broken 1D toy") {
  CliResult real = run_cli("analyze --model toy1d --set alpha=1 --set beta=1",
                           false);
  CHECK(real.exit_code == 0);
  Json j = Json::parse(real.output);
  CHECK(j.at("phase") == "Real");
  REQUIRE(j.at("eigenvalues").size() == 2);
  CHECK(j.at("eigenvalues")[0].at("re").get<double>() ==
        doctest::Approx(-std::sqrt(3.0)).epsilon(1e-12));
  CHECK(j.at("ground_energy").get<double>() ==
        doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));

  CliResult broken = run_cli("analyze --model toy1d --set alpha=1 --set beta=3",
                             false);
  CHECK(broken.exit_code == 0);
  Json jb = Json::parse(broken.output);
  CHECK(jb.at("phase") == "Broken");
  CHECK(jb.at("eigenvalues")[1].at("im").get<double>() ==
        doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
  CHECK_FALSE(jb.contains("ground_energy"));
}

TEST_CASE("analyze: model files and their failure modes") {
  fs::path good = write_file("good.json", R"({
    "name": "custom-osc",
    "K": 1,
    "hamiltonian": "p^2 + a*x^2",
    "parameters": {"a": 4.0}
  })");
  CliResult ok = run_cli("analyze --file " + good.string(), false);
  CHECK(ok.exit_code == 0);
  Json j = Json::parse(ok.output);
  CHECK(j.at("model") == "custom-osc");
  CHECK(j.at("eigenvalues")[1].at("re").get<double>() ==
        doctest::Approx(4.0).epsilon(1e-12));  // p^2 + 4 x^2: lambda = 4

  fs::path cubic = write_file("cubic.json", R"({
    "name": "bad", "K": 1,
    "hamiltonian": "x^3",
    "parameters": {}
  })");
  CliResult degree = run_cli("analyze --file " + cubic.string());
  CHECK(degree.exit_code == 2);
  CHECK(degree.output.find("error:") != std::string::npos);
  CHECK(degree.output.find("degree") != std::string::npos);

  fs::path nonsym = write_file("nonsym.json", R"({
    "name": "bad2", "K": 1,
    "hamiltonian": "x*p",
    "parameters": {}
  })");
  CHECK(run_cli("analyze --file " + nonsym.string()).exit_code == 2);

  fs::path junk = write_file("junk.json", "not json at all {");
  CHECK(run_cli("analyze --file " + junk.string()).exit_code == 2);
  CHECK(run_cli("analyze --model toy9d").exit_code == 2);
  CHECK(run_cli("analyze --model toy1d --set nope=3").exit_code == 2);
  CHECK(run_cli("analyze --model toy1d --set beta=abc").exit_code == 2);
  CHECK(run_cli("analyze --model toy1d --file " + good.string()).exit_code == 2);
}

TEST_CASE("verify: catalog models pass; corrupted matrices fail") {
  CliResult lrc = run_cli("verify --model lrc --set mu=0.2 --set gamma=0.1");
  CHECK(lrc.exit_code == 0);
  CHECK(lrc.output.find("FAIL") == std::string::npos);

  CliResult sf = run_cli("verify --model selfforce");
  CHECK(sf.exit_code == 0);
  CHECK(sf.output.find("n/a") != std::string::npos);

  // corrupt one entry of the toy1d adjoint matrix
  AnalysisReport r =
      analyze_model(catalog_model("toy1d"), {{"alpha", 1.0}, {"beta", 1.0}});
  Eigen::MatrixXcd bad = r.adjoint_formula;
  bad(0, 1) += 1e-3;
  fs::path mat = write_file("corrupt_matrix.json", matrix_to_json(bad).dump());
  CliResult corrupted = run_cli("verify --matrix " + mat.string());
  CHECK(corrupted.exit_code == 1);
  CHECK(corrupted.output.find("pseudo_hermiticity    FAIL") !=
        std::string::npos);
}

TEST_CASE("QUADHAM_TOL loosens the verification gate") {
  AnalysisReport r =
      analyze_model(catalog_model("toy1d"), {{"alpha", 1.0}, {"beta", 1.0}});
  Eigen::MatrixXcd bad = r.adjoint_formula;
  bad(0, 1) += 1e-6;
  fs::path mat = write_file("mild_matrix.json", matrix_to_json(bad).dump());

  CliResult strict = run_cli("verify --matrix " + mat.string());
  CHECK(strict.exit_code == 1);

  std::string cmd = "env QUADHAM_TOL=1e-3 " + std::string(QUADHAM_CLI_PATH) +
                    " verify --matrix " + mat.string() + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::string output;
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, n);
  int status = pclose(pipe);
  CHECK(WEXITSTATUS(status) == 0);
  CHECK(output.find("pseudo_hermiticity    PASS") != std::string::npos);
}

TEST_CASE("sweep: CSV contract and phase flip at |beta| = 2") {
  CliResult res = run_cli("sweep --model toy2d --axis beta=-3:3:61", false);
  CHECK(res.exit_code == 0);
  std::istringstream is(res.output);
  SweepGrid grid = read_sweep_csv(is);
  REQUIRE(grid.cells.size() == 61);
  int real_cells = 0;
  for (const auto& cell : grid.cells) {
    REQUIRE(cell.ok);
    bool is_real = cell.phase == Phase::Real;
    real_cells += is_real;
    CHECK(is_real == (std::abs(cell.values[0]) < 2.0));
  }
  CHECK(real_cells == 39);  // beta = -1.9 .. 1.9 in steps of 0.1
}

TEST_CASE("sweep: --out file round-trips and --jobs is deterministic") {
  fs::path csv = scratch_dir() / "grid.csv";
  std::string args = "sweep --model gainloss --set omega=1 "
                     "--axis gamma=0:1:9 --axis epsilon=0:1:7 --out " +
                     csv.string();
  CHECK(run_cli(args + " --jobs 1", false).exit_code == 0);
  std::ifstream f1(csv);
  std::stringstream s1;
  s1 << f1.rdbuf();

  CHECK(run_cli(args + " --jobs 3", false).exit_code == 0);
  std::ifstream f2(csv);
  std::stringstream s2;
  s2 << f2.rdbuf();
  CHECK(s1.str() == s2.str());

  std::istringstream is(s1.str());
  SweepGrid grid = read_sweep_csv(is);
  CHECK(grid.cells.size() == 63);
  CHECK(grid.axes[0].param == "gamma");
  CHECK(grid.axes[1].param == "epsilon");
}

TEST_CASE("sweep: SVG artifact with the fixed colors") {
  fs::path svg = scratch_dir() / "phases.svg";
  CliResult res = run_cli(
      "sweep --model gainloss --set omega=1 --axis gamma=0:1:9 "
      "--axis epsilon=0:1:7 --out /dev/null --svg " +
      svg.string());
  CHECK(res.exit_code == 0);
  std::ifstream f(svg);
  std::stringstream ss;
  ss << f.rdbuf();
  std::string text = ss.str();
  CHECK(text.find("<svg xmlns") == 0);
  CHECK(text.find(kColorReal) != std::string::npos);
  CHECK(text.find(kColorBroken) != std::string::npos);

  CliResult one_axis = run_cli(
      "sweep --model toy2d --axis beta=0:1:3 --out /dev/null --svg " +
      (scratch_dir() / "bad.svg").string());
  CHECK(one_axis.exit_code == 2);
}

TEST_CASE("boundary: prints the critical value at requested precision") {
  CliResult res = run_cli(
      "boundary --model toy2d --param beta --bracket 1:3 --tol 1e-6", false);
  CHECK(res.exit_code == 0);
  CHECK(res.output == "2.000000\n");

  CliResult bad = run_cli(
      "boundary --model toy2d --param beta --bracket 0:1 --tol 1e-6");
  CHECK(bad.exit_code == 2);
  CHECK(bad.output.find("invalid bracket") != std::string::npos);
}

TEST_CASE("simulate: frequency summary and trajectory file") {
  fs::path traj = scratch_dir() / "traj.csv";
  CliResult res = run_cli(
      "simulate --model lrc --set mu=0 --set gamma=0 --T 200 --dt 0.01 --out " +
      traj.string(), false);
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("phase: Real") != std::string::npos);
  CHECK(res.output.find("frequencies: 1.000000") != std::string::npos);

  std::ifstream f(traj);
  std::string line;
  REQUIRE(std::getline(f, line));
  CHECK(line == "t,z1,z2,z3,z4");
  int rows = 0;
  while (std::getline(f, line)) ++rows;
  CHECK(rows == 20001);

  CliResult broken = run_cli(
      "simulate --model toy1d --set alpha=1 --set beta=3 --T 50 --dt 0.01 "
      "--out " + (scratch_dir() / "broken.csv").string(), false);
  CHECK(broken.exit_code == 0);
  CHECK(broken.output.find("phase: Broken") != std::string::npos);
  CHECK(broken.output.find("growth_rate: 2.236") != std::string::npos);
}
