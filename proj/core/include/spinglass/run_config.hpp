#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "spinglass/scan.hpp"

namespace spinglass {

enum class Command { Single, Scan1d, Scan2d, Venus, CriticalField };

const char* command_name(Command command);

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fully resolved run description. Parsing materializes every default (site,
// pair, boundary, grid, seeds, ...) so that serialize/parse round-trips are
// lossless and the metadata sidecar alone reproduces a run.
struct RunConfig {
  Command command = Command::Single;
  std::string output_dir = "out";

  ModelParams model;
  DisorderCase disorder;
  QuenchSettings quench;
  ObservableTargets targets;

  std::optional<GridAxis> axis1;  // scan1d/venus/hc sweep; scan2d first axis
  std::optional<GridAxis> axis2;  // scan2d second axis
  VenusSettings venus;            // venus + hc commands

  // hc command: the azimuthal coupling mean is pinned in coupling units so
  // it stays fixed while the field is bisected.
  double hc_delta_mean = -0.9;
  double hc_field_lo = 0.3;
  double hc_field_hi = 0.8;
  double hc_bracket_tol = 0.05;

  bool operator==(const RunConfig&) const = default;
  void validate() const;
};

// Parses the key-value run format (see docs in the README). Unknown keys,
// unknown sections, and malformed values raise ConfigError with the line
// number. A [meta] section is ignored, which lets the metadata sidecar of a
// finished run be re-parsed as a config.
RunConfig parse_config(std::string_view text);
RunConfig load_config_file(const std::string& path);

// Emits the config in the same format with every value explicit.
// parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

// Shortest decimal form that round-trips to the same double. Used for all
// numeric output so that identical runs produce identical bytes.
std::string format_double(double value);

}  // namespace spinglass
