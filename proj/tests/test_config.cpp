#include <doctest.h>

#include <string>

#include "spinglass/run_config.hpp"

using namespace spinglass;

TEST_CASE("minimal single config fills documented defaults") {
  const RunConfig config = parse_config(
      "[run]\n"
      "command = single\n"
      "[model]\n"
      "sites = 6\n"
      "gamma = 0.7\n"
      "field = 0.8\n");
  CHECK(config.command == Command::Single);
  CHECK(config.output_dir == "out");
  CHECK(config.model.sites == 6);
  CHECK(config.model.boundary == Boundary::Periodic);  // auto, small ring
  CHECK(config.disorder.kind == DisorderKind::None);
  CHECK(config.quench.realizations == 5000);
  CHECK(config.quench.master_seed == 1);
  CHECK(config.quench.convergence_window == 500);
  CHECK(config.quench.convergence_tol == 1e-3);
  CHECK(config.quench.lanczos.tol == 1e-10);
  CHECK(config.quench.lanczos.max_iter == 1000);
  CHECK(config.targets.site == 3);
  CHECK(config.targets.pair == std::pair<int, int>{2, 3});
}

TEST_CASE("boundary auto switches to open chains at N >= 8") {
  const RunConfig config = parse_config(
      "[run]\ncommand = single\n[model]\nsites = 12\n");
  CHECK(config.model.boundary == Boundary::Open);
  CHECK(config.targets.site == 6);
  CHECK(config.targets.pair == std::pair<int, int>{5, 6});
}

TEST_CASE("delta_mean is converted through the field") {
  const RunConfig config = parse_config(
      "[run]\ncommand = single\n"
      "[model]\nsites = 6\nfield = 0.8\n"
      "[disorder]\ncase = both\ndelta_mean = -0.9\n");
  CHECK(config.disorder.azimuthal_mean == doctest::Approx(-1.125).epsilon(1e-15));

  CHECK_THROWS_AS(parse_config("[run]\ncommand = single\n"
                               "[disorder]\nmu_mean = 1\ndelta_mean = 1\n"),
                  ConfigError);
}

TEST_CASE("invalid configs raise descriptive errors") {
  CHECK_THROWS_WITH_AS(parse_config("[run]\ncommand = scan1d\n"
                                    "[grid]\naxis = lambda\nmin = 0\nmax = 1\n"
                                    "steps = 1\n"),
                       "GridAxis: steps must be >= 2", std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      parse_config("[run]\ncommand = single\nbogus = 1\n"),
      "unknown key 'bogus' in section [run] (line 3)", ConfigError);
  CHECK_THROWS_AS(parse_config("[run]\ncommand = warp\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[run]\ncommand = single\n[junk]\nx = 1\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config("command = single\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[run]\ncommand = single\ncommand = venus\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config("[run]\ncommand = single\n"
                               "[model]\nsites = six\n"),
                  ConfigError);
  // Sections that the command does not use are rejected.
  CHECK_THROWS_AS(parse_config("[run]\ncommand = single\n"
                               "[grid]\naxis = lambda\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config("[run]\ncommand = scan1d\n"
                               "[grid]\naxis = lambda\nmin = 0\nmax = 1\n"
                               "steps = 5\n[hc]\nfield_min = 0.1\n"),
                  ConfigError);
}

TEST_CASE("scan2d defaults to the documented 41x41 grid") {
  const RunConfig config = parse_config(
      "[run]\ncommand = scan2d\n[disorder]\ncase = planar\n");
  REQUIRE(config.axis1.has_value());
  REQUIRE(config.axis2.has_value());
  CHECK(config.axis1->name == "lambda");
  CHECK(config.axis1->steps == 41);
  CHECK(config.axis1->lo == -2.0);
  CHECK(config.axis1->hi == 2.0);
  CHECK(config.axis2->name == "mu");
  CHECK(config.axis2->steps == 41);
}

TEST_CASE("serialization round-trips every command") {
  const char* examples[] = {
      "[run]\ncommand = single\n[model]\nsites = 5\n",
      "[run]\ncommand = scan1d\n[model]\nsites = 6\n"
      "[disorder]\ndelta_mean = -0.9\nsigma_j = 1.25\n"
      "[grid]\naxis = lambda\nmin = 0.6\nmax = 0.9\nsteps = 31\n",
      "[run]\ncommand = scan2d\n[disorder]\ncase = both\n",
      "[run]\ncommand = venus\n[model]\nsites = 6\n"
      "[grid]\naxis = lambda\nmin = -0.9\nmax = -0.6\nsteps = 31\n"
      "[venus]\neps_abs = 0.0002\n",
      "[run]\ncommand = hc\n[model]\nsites = 6\n"
      "[grid]\naxis = lambda\nmin = 0.6\nmax = 0.9\nsteps = 16\n"
      "[hc]\ndelta_mean = -0.9\nfield_min = 0.3\nfield_max = 0.8\n",
  };
  for (const char* text : examples) {
    CAPTURE(text);
    const RunConfig config = parse_config(text);
    const std::string serialized = serialize_config(config);
    const RunConfig reparsed = parse_config(serialized);
    CHECK(reparsed == config);
    CHECK(serialize_config(reparsed) == serialized);
  }
}

TEST_CASE("comments, blank lines and a [meta] section are tolerated") {
  const RunConfig config = parse_config(
      "# run file\n"
      "[run]\n"
      "command = single   # inline comment\n"
      "\n"
      "[model]\n"
      "sites = 6\n"
      "[meta]\n"
      "version = 9.9.9\n"
      "wall_time_seconds = 1\n");
  CHECK(config.command == Command::Single);
  CHECK(config.model.sites == 6);
}

TEST_CASE("format_double emits shortest round-trip forms") {
  CHECK(format_double(0.8) == "0.8");
  CHECK(format_double(-1.125) == "-1.125");
  CHECK(format_double(1e-10) == "1e-10");
  CHECK(format_double(0.0) == "0");
}
