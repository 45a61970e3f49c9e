#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "spinglass/runner.hpp"

using namespace spinglass;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("spinglass_test_" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int count_lines(const std::string& text) {
  int lines = 0;
  for (char c : text)
    if (c == '\n') ++lines;
  return lines;
}

// Every CSV cell is either a decimal number or the NA sentinel.
void check_csv_cells(const std::string& csv) {
  std::istringstream stream(csv);
  std::string line;
  std::getline(stream, line);  // schema comment
  REQUIRE(line.rfind("# spinglass-csv-v1", 0) == 0);
  std::getline(stream, line);  // header
  while (std::getline(stream, line)) {
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      REQUIRE_FALSE(cell.empty());
      if (cell == "NA" || cell == "none") continue;
      if (cell.find(':') != std::string::npos) continue;  // interval token
      const double value = std::stod(cell);
      CHECK(std::isfinite(value));
    }
  }
}

}  // namespace

TEST_CASE("single command writes one finite CSV row and a metadata sidecar") {
  TempDir dir;
  RunConfig config = parse_config(
      "[run]\ncommand = single\n"
      "[model]\nsites = 6\ngamma = 0.7\nfield = 0.8\n");
  config.output_dir = (dir.path / "zeeman").string();

  std::ostringstream out;
  std::ostringstream err;
  const ExecutionResult result = execute(config, out, err);
  REQUIRE(result.exit_code == 0);

  const std::string csv = slurp(result.csv_path);
  check_csv_cells(csv);
  CHECK(count_lines(csv) == 3);  // schema + header + one row

  std::istringstream stream(csv);
  std::string schema_line, header, row;
  std::getline(stream, schema_line);
  std::getline(stream, header);
  std::getline(stream, row);
  CHECK(header.rfind("lambda,mu,ord_degenerate,ord_mz", 0) == 0);

  const auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::istringstream in(line);
    std::string cell;
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    return cells;
  };
  const std::vector<std::string> header_cells = split(header);
  const std::vector<std::string> row_cells = split(row);
  REQUIRE(header_cells.size() == row_cells.size());
  const auto cell_value = [&](const std::string& name) {
    for (std::size_t k = 0; k < header_cells.size(); ++k)
      if (header_cells[k] == name) return std::stod(row_cells[k]);
    FAIL("missing column ", name);
    return 0.0;
  };
  // Field-dominated clean chain: full magnetization, no entanglement.
  CHECK(cell_value("ord_mz") == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(cell_value("ord_conc") == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(cell_value("ord_ggm") == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(cell_value("mz_mean") == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(cell_value("mz_delta") == 0.0);
  CHECK(cell_value("r_used") == 1.0);  // ordered case needs one realization

  // Metadata re-parses to the executed config.
  const RunConfig echoed = parse_config(slurp(result.meta_path));
  CHECK(echoed == config);
  CHECK(slurp(result.meta_path).find("version = ") != std::string::npos);
  CHECK(slurp(result.meta_path).find("wall_time_seconds = ") !=
        std::string::npos);
}

TEST_CASE("identical config and seed reproduce the CSV byte for byte") {
  TempDir dir;
  RunConfig config = parse_config(
      "[run]\ncommand = scan1d\n"
      "[model]\nsites = 6\n"
      "[disorder]\ndelta_mean = -0.9\n"
      "[observables]\nggm_max_sites = 14\n"
      "[quench]\nrealizations = 40\nconvergence_window = 20\nseed = 77\n"
      "threads = 2\n"
      "[grid]\naxis = lambda\nmin = 0.6\nmax = 0.8\nsteps = 3\n");

  config.output_dir = (dir.path / "a").string();
  std::ostringstream out_a, err_a;
  const ExecutionResult first = execute(config, out_a, err_a);
  REQUIRE(first.exit_code == 0);

  config.output_dir = (dir.path / "b").string();
  config.quench.threads = 1;  // worker count must not matter
  std::ostringstream out_b, err_b;
  const ExecutionResult second = execute(config, out_b, err_b);
  REQUIRE(second.exit_code == 0);

  CHECK(slurp(first.csv_path) == slurp(second.csv_path));
  check_csv_cells(slurp(first.csv_path));
}

TEST_CASE("venus command emits detection summaries") {
  TempDir dir;
  RunConfig config = parse_config(
      "[run]\ncommand = venus\n"
      "[model]\nsites = 6\n"
      "[disorder]\ndelta_mean = -0.9\n"
      "[quench]\nrealizations = 30\nconvergence_window = 10\nseed = 5\n"
      "threads = 2\n"
      "[grid]\naxis = lambda\nmin = 0.65\nmax = 0.75\nsteps = 2\n");
  config.output_dir = (dir.path / "venus").string();

  std::ostringstream out;
  std::ostringstream err;
  const ExecutionResult result = execute(config, out, err);
  REQUIRE(result.exit_code == 0);

  const std::string summary = out.str();
  CHECK(summary.find("venus ggm count=") != std::string::npos);
  CHECK(summary.find("venus ggm2 count=") != std::string::npos);
  CHECK(summary.find("csv=") != std::string::npos);
  const std::string meta = slurp(result.meta_path);
  CHECK(meta.find("venus_ggm = ") != std::string::npos);
  CHECK(meta.find("venus_ggm2 = ") != std::string::npos);
}

TEST_CASE("execute reports unrecoverable failures with a nonzero exit") {
  RunConfig config;
  config.command = Command::Scan1d;  // missing grid axis
  std::ostringstream out;
  std::ostringstream err;
  const ExecutionResult result = execute(config, out, err);
  CHECK(result.exit_code == 1);
  CHECK(err.str().find("error:") != std::string::npos);
}

#ifdef SPINGLASS_CLI_PATH
TEST_CASE("command line tool runs a config end to end") {
  TempDir dir;
  const fs::path config_path = dir.path / "run.cfg";
  {
    std::ofstream config(config_path);
    config << "[run]\ncommand = single\noutput = " << (dir.path / "cli").string()
           << "\n[model]\nsites = 5\n";
  }
  const std::string command = std::string(SPINGLASS_CLI_PATH) + " --config " +
                              config_path.string() + " --seed 9 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buffer[256];
  while (fgets(buffer, sizeof buffer, pipe)) output += buffer;
  const int status = pclose(pipe);
  CHECK(status == 0);
  CHECK(output.find("rows=1") != std::string::npos);
  CHECK(fs::exists(dir.path / "cli" / "single.csv"));
  const std::string meta = slurp((dir.path / "cli" / "single.meta.txt").string());
  CHECK(meta.find("seed = 9") != std::string::npos);  // override recorded
}
#endif
