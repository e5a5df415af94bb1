#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "clockbound/cli.hpp"

using namespace clockbound;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("clockbound-test-" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const std::vector<std::string>& args, std::string* out_text = nullptr,
        std::string* err_text = nullptr) {
  std::ostringstream os, err;
  const int code = cli::run(args, os, err);
  if (out_text) *out_text = os.str();
  if (err_text) *err_text = err.str();
  return code;
}

const char* kPlusScenario = R"({
  "hamiltonian": {"preset": "pauli-z"},
  "state": {"bloch": [1.5707963267948966, 0.0]},
  "time": {"grid": [0.0, 1.5707963267948966]},
  "alpha_grid": [0.5, 1, 2, "inf"]
})";

}  // namespace

TEST_CASE("scenario parsing: valid file round-trips into module inputs") {
  TempDir tmp;
  const std::string path = tmp.file("plus.json");
  write_file(path, kPlusScenario);
  Scenario sc = load_scenario(path);
  CHECK(sc.h.dim() == 2);
  CHECK(sc.rho_a.is_pure());
  CHECK(sc.time.count() == 2);
  CHECK(sc.alpha_grid.size() == 4);
  CHECK(sc.alpha_grid.back().is_inf());
}

TEST_CASE("scenario parsing: errors carry the offending key path") {
  TempDir tmp;
  const std::string path = tmp.file("bad.json");

  write_file(path, R"({"state": {"bloch": [0.0]}, "time": {"grid": [0, 1]}})");
  try {
    load_scenario(path);
    FAIL("expected ScenarioError");
  } catch (const ScenarioError& e) {
    CHECK(e.key == "hamiltonian");
  }

  write_file(path, R"({
    "hamiltonian": {"preset": "pauli-z"},
    "state": {"density": [[[0.9, 0], [0.4, 0]], [[0.4, 0], [0.1, 0]]]},
    "time": {"grid": [0, 1]}
  })");
  try {
    load_scenario(path);
    FAIL("expected ScenarioError");
  } catch (const ScenarioError& e) {
    CHECK(e.key == "state");  // non-PSD density matrix, named key
  }

  write_file(path, R"({
    "hamiltonian": {"preset": "nope"},
    "state": {"bloch": [0.0]},
    "time": {"grid": [0, 1]}
  })");
  try {
    load_scenario(path);
    FAIL("expected ScenarioError");
  } catch (const ScenarioError& e) {
    CHECK(e.key == "hamiltonian.preset");
  }
}

TEST_CASE("cmd audit: eigenstate scenario passes with zero slack rows") {
  TempDir tmp;
  const std::string scenario = tmp.file("eigen.json");
  write_file(scenario, R"({
    "hamiltonian": {"preset": "pauli-z"},
    "state": {"amplitudes": [1, 0]},
    "time": {"count": 2, "horizon": 2.0, "spacing": "equal"},
    "alpha_grid": [0.5, 1, 2]
  })");
  const std::string out = tmp.file("audit.csv");
  std::string err;
  const int code = run({"audit", scenario, "--out", out}, nullptr, &err);
  CHECK(code == cli::kExitOk);
  const std::string text = read_file(out);
  CHECK(text.rfind("# schema=clockbound-v1\n", 0) == 0);
  CHECK(text.find("main") != std::string::npos);
  CHECK(text.find("pure_state") != std::string::npos);
  CHECK(text.find("von_neumann") != std::string::npos);
  CHECK(text.find("asymmetry") != std::string::npos);
  CHECK(text.find("nonuniform") != std::string::npos);
}

TEST_CASE("cmd audit: non-PSD state exits with input error naming the key") {
  TempDir tmp;
  const std::string scenario = tmp.file("bad.json");
  write_file(scenario, R"({
    "hamiltonian": {"preset": "pauli-z"},
    "state": {"density": [[[1.2, 0], [0, 0]], [[0, 0], [-0.2, 0]]]},
    "time": {"grid": [0, 1]}
  })");
  std::string err;
  const int code = run({"audit", scenario}, nullptr, &err);
  CHECK(code == cli::kExitInputError);
  CHECK(err.find("state") != std::string::npos);
}

TEST_CASE("cmd audit: random campaign emits one row per instance and order") {
  std::string text;
  const int code = run({"audit", "--random", "5", "--seed", "7", "--alpha", "0.5,1,2"}, &text);
  CHECK(code == cli::kExitOk);
  std::istringstream lines(text);
  std::string line;
  int rows = 0;
  while (std::getline(lines, line))
    if (!line.empty() && line[0] != '#' && line.rfind("instance", 0) != 0) ++rows;
  CHECK(rows == 15);
}

TEST_CASE("cmd audit: continuous scenario emits the continuous relation") {
  TempDir tmp;
  const std::string scenario = tmp.file("cont.json");
  write_file(scenario, R"({
    "hamiltonian": {"preset": "pauli-z"},
    "state": {"bloch": [0.7853981633974483]},
    "time": {"continuous": true, "horizon": 2.0}
  })");
  std::string text;
  const int code = run({"audit", scenario}, &text);
  CHECK(code == cli::kExitOk);
  CHECK(text.find("continuous") != std::string::npos);
}

TEST_CASE("cmd figure2: endpoint rows match the known anchors") {
  std::string text;
  const int code = run({"figure2", "--theta-count", "5"}, &text);
  CHECK(code == cli::kExitOk);

  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);  // schema
  std::getline(lines, line);  // header
  CHECK(line ==
        "theta,energy_uncertainty,time_uncertainty_discrete,time_uncertainty_continuous,"
        "total_discrete,total_continuous,bound");
  std::vector<std::vector<double>> rows;
  while (std::getline(lines, line)) {
    std::vector<double> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(std::stod(cell));
    rows.push_back(cells);
  }
  REQUIRE(rows.size() == 5);
  // theta = 0: no energy uncertainty, one full bit of time uncertainty
  CHECK(rows[0][1] == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(rows[0][2] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(rows[0][3] == doctest::Approx(1.0).epsilon(1e-5));
  // theta = pi/2: one full bit of energy uncertainty
  CHECK(rows[2][1] == doctest::Approx(1.0).epsilon(1e-10));
  for (const auto& r : rows) {
    CHECK(r[4] >= 1.0 - 1e-6);
    CHECK(r[5] >= 1.0 - 1e-6);
  }
}

TEST_CASE("cmd game: reproducible CSV and sensible predictions") {
  TempDir tmp;
  const std::string scenario = tmp.file("game.json");
  write_file(scenario, R"({
    "hamiltonian": {"matrix": [[0, [0, -1]], [[0, 1], 0]]},
    "state": {"amplitudes": [1, 0]},
    "time": {"grid": [0.0, 0.7853981633974483]}
  })");
  const std::string out1 = tmp.file("g1.csv"), out2 = tmp.file("g2.csv");
  CHECK(run({"game", scenario, "--trials", "20000", "--seed", "42", "--out", out1}) ==
        cli::kExitOk);
  CHECK(run({"game", scenario, "--trials", "20000", "--seed", "42", "--out", out2}) ==
        cli::kExitOk);
  const std::string a = read_file(out1);
  CHECK(a == read_file(out2));
  CHECK(a.find("coin-first") != std::string::npos);

  // different seed changes the bytes
  const std::string out3 = tmp.file("g3.csv");
  CHECK(run({"game", scenario, "--trials", "20000", "--seed", "43", "--out", out3}) ==
        cli::kExitOk);
  CHECK(a != read_file(out3));
}

TEST_CASE("cmd truncation: distances shrink and slacks stay non-negative") {
  std::string text;
  const int code = run({"truncation", "--levels", "10", "--decay", "0.6", "--cutoffs",
                        "2,4,6,8"},
                       &text);
  CHECK(code == cli::kExitOk);
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  std::getline(lines, line);
  double prev_dist = kInf;
  int rows = 0;
  while (std::getline(lines, line)) {
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(std::stod(cell));
    REQUIRE(cells.size() == 4);
    CHECK(cells[2] <= prev_dist + 1e-12);
    CHECK(cells[3] >= -kSlackTol);
    prev_dist = cells[2];
    ++rows;
  }
  CHECK(rows == 4);
}

TEST_CASE("cmd scan: alpha sweep over a scenario") {
  TempDir tmp;
  const std::string scenario = tmp.file("plus.json");
  write_file(scenario, kPlusScenario);
  std::string text;
  const int code = run({"scan", scenario, "--param", "alpha", "--values", "0.5,1,2"}, &text);
  CHECK(code == cli::kExitOk);
  std::istringstream lines(text);
  std::string line;
  int rows = 0;
  while (std::getline(lines, line))
    if (!line.empty() && line[0] != '#' && line.rfind("param", 0) != 0) ++rows;
  CHECK(rows == 3);
}

TEST_CASE("cli: repeated runs are byte-identical") {
  std::string a, b;
  CHECK(run({"audit", "--random", "3", "--seed", "11"}, &a) == cli::kExitOk);
  CHECK(run({"audit", "--random", "3", "--seed", "11"}, &b) == cli::kExitOk);
  CHECK(a == b);

  std::string f1, f2;
  CHECK(run({"figure2", "--theta-count", "7"}, &f1) == cli::kExitOk);
  CHECK(run({"figure2", "--theta-count", "7"}, &f2) == cli::kExitOk);
  CHECK(f1 == f2);
}

TEST_CASE("cmd audit: the tolerance flag drives the violation exit code") {
  TempDir tmp;
  const std::string scenario = tmp.file("eigen.json");
  write_file(scenario, R"({
    "hamiltonian": {"preset": "pauli-z"},
    "state": {"amplitudes": [1, 0]},
    "time": {"grid": [0, 1]},
    "alpha_grid": [1]
  })");
  // a negative tolerance demands strictly positive slack, which a saturated
  // instance cannot deliver, so the violation path must trigger
  std::string text;
  CHECK(run({"audit", scenario, "--tol", "-0.5"}, &text) == cli::kExitViolation);
  CHECK(run({"audit", scenario}) == cli::kExitOk);
}

TEST_CASE("cmd audit: duplicate time entries produce a warning") {
  TempDir tmp;
  const std::string scenario = tmp.file("dup.json");
  write_file(scenario, R"({
    "hamiltonian": {"preset": "pauli-z"},
    "state": {"bloch": [1.0]},
    "time": {"grid": [0.0, 0.5, 0.5]},
    "alpha_grid": [1]
  })");
  std::string err;
  CHECK(run({"audit", scenario}, nullptr, &err) == cli::kExitOk);
  CHECK(err.find("duplicate") != std::string::npos);
}

TEST_CASE("cli: bad invocations exit with input error") {
  std::string err;
  CHECK(run({"audit"}, nullptr, &err) == cli::kExitInputError);
  CHECK(run({"game", "/nonexistent.json"}, nullptr, &err) == cli::kExitInputError);
  CHECK(run({"scan", "/nonexistent.json", "--values", "1"}, nullptr, &err) ==
        cli::kExitInputError);
}
