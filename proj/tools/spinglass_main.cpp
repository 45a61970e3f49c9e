#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "spinglass/runner.hpp"
#include "spinglass/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "spinglass: ground-state observables, quenched disorder averages and "
      "constructive-interference detection for disordered XYZ spin-1/2 chains"};
  app.set_version_flag("--version", spinglass::kVersion);

  std::string config_path;
  app.add_option("--config", config_path, "run configuration file")
      ->required()
      ->check(CLI::ExistingFile);

  std::uint64_t seed = 0;
  auto* seed_option =
      app.add_option("--seed", seed, "override the master seed");
  int threads = -1;
  auto* threads_option = app.add_option(
      "--threads", threads, "override the worker count (0 = all cores)");
  std::string output_dir;
  auto* output_option =
      app.add_option("--output", output_dir, "override the output directory");
  int realizations = 0;
  auto* realizations_option = app.add_option(
      "--realizations", realizations, "override the realization count");

  CLI11_PARSE(app, argc, argv);

  try {
    spinglass::RunConfig config = spinglass::load_config_file(config_path);
    if (*seed_option) config.quench.master_seed = seed;
    if (*threads_option) config.quench.threads = threads;
    if (*output_option) config.output_dir = output_dir;
    if (*realizations_option) {
      config.quench.realizations = realizations;
      config.quench.convergence_window =
          std::min(config.quench.convergence_window, realizations);
    }
    return spinglass::execute(config, std::cout, std::cerr).exit_code;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
}
