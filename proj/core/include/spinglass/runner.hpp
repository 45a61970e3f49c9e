#pragma once

#include <iosfwd>
#include <string>

#include "spinglass/run_config.hpp"

namespace spinglass {

struct ExecutionResult {
  int exit_code = 0;
  std::string csv_path;
  std::string meta_path;
};

// Runs a validated config end to end: writes <command>.csv plus a
// <command>.meta.txt sidecar (config echo + run metadata) into the output
// directory, prints machine-readable summaries to `out` and progress to
// `err`. Identical config + seed produce byte-identical CSV files.
ExecutionResult execute(const RunConfig& config, std::ostream& out,
                        std::ostream& err);

}  // namespace spinglass
