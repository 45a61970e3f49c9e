#include "spinglass/run_config.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace spinglass {

namespace {

struct RawEntry {
  std::string value;
  int line = 0;
  bool used = false;
};

using Section = std::map<std::string, RawEntry>;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(const std::string& message, int line) {
  throw ConfigError(message + " (line " + std::to_string(line) + ")");
}

double parse_double(const RawEntry& entry, const std::string& key) {
  const std::string_view s = entry.value;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    fail("invalid number for key '" + key + "': '" + entry.value + "'",
         entry.line);
  return value;
}

template <typename Int>
Int parse_int(const RawEntry& entry, const std::string& key) {
  const std::string_view s = entry.value;
  Int value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    fail("invalid integer for key '" + key + "': '" + entry.value + "'",
         entry.line);
  return value;
}

std::pair<int, int> parse_pair(const RawEntry& entry, const std::string& key) {
  const auto comma = entry.value.find(',');
  if (comma == std::string::npos)
    fail("key '" + key + "' expects 'i,j'", entry.line);
  const auto parse_part = [&](std::string_view part) {
    part = trim(part);
    int value = 0;
    const auto [ptr, ec] =
        std::from_chars(part.data(), part.data() + part.size(), value);
    if (ec != std::errc{} || ptr != part.data() + part.size())
      fail("key '" + key + "' expects 'i,j'", entry.line);
    return value;
  };
  return {parse_part(std::string_view(entry.value).substr(0, comma)),
          parse_part(std::string_view(entry.value).substr(comma + 1))};
}

class SectionReader {
 public:
  SectionReader(Section* section, std::string name)
      : section_(section), name_(std::move(name)) {}

  const RawEntry* find(const std::string& key) {
    if (!section_) return nullptr;
    const auto it = section_->find(key);
    if (it == section_->end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }
  bool get(const std::string& key, double& out) {
    const RawEntry* entry = find(key);
    if (entry) out = parse_double(*entry, key);
    return entry != nullptr;
  }
  bool get(const std::string& key, int& out) {
    const RawEntry* entry = find(key);
    if (entry) out = parse_int<int>(*entry, key);
    return entry != nullptr;
  }
  bool get(const std::string& key, std::uint64_t& out) {
    const RawEntry* entry = find(key);
    if (entry) out = parse_int<std::uint64_t>(*entry, key);
    return entry != nullptr;
  }
  bool get(const std::string& key, std::string& out) {
    const RawEntry* entry = find(key);
    if (entry) out = entry->value;
    return entry != nullptr;
  }

  void finish() const {
    if (!section_) return;
    for (const auto& [key, entry] : *section_)
      if (!entry.used)
        fail("unknown key '" + key + "' in section [" + name_ + "]",
             entry.line);
  }

 private:
  Section* section_;
  std::string name_;
};

}  // namespace

const char* command_name(Command command) {
  switch (command) {
    case Command::Single: return "single";
    case Command::Scan1d: return "scan1d";
    case Command::Scan2d: return "scan2d";
    case Command::Venus: return "venus";
    case Command::CriticalField: return "hc";
  }
  return "?";
}

void RunConfig::validate() const {
  model.validate();
  disorder.validate();
  quench.validate();
  if (output_dir.empty()) throw ConfigError("output directory must not be empty");
  if (targets.site < 0 || targets.site >= model.sites)
    throw ConfigError("observable site out of range");
  const auto [p0, p1] = targets.pair;
  if (p0 < 0 || p0 >= model.sites || p1 < 0 || p1 >= model.sites || p0 == p1)
    throw ConfigError("observable pair out of range");

  switch (command) {
    case Command::Single:
      break;
    case Command::Scan1d:
    case Command::Venus:
      if (!axis1) throw ConfigError("scan requires a [grid] axis");
      axis1->validate();
      if (axis1->name != "lambda")
        throw ConfigError(
            "line scans sweep the planar coupling; the axis must be lambda");
      break;
    case Command::Scan2d:
      if (!axis1 || !axis2) throw ConfigError("scan2d requires two [grid] axes");
      axis1->validate();
      axis2->validate();
      if (axis1->name == axis2->name)
        throw ConfigError("scan2d axes sweep the same parameter");
      break;
    case Command::CriticalField:
      if (!axis1) throw ConfigError("hc requires a [grid] alpha window");
      axis1->validate();
      if (axis1->name != "lambda")
        throw ConfigError(
            "hc probes sweep the planar coupling; the axis must be lambda");
      if (!(hc_field_lo > 0.0) || !(hc_field_lo < hc_field_hi))
        throw ConfigError("hc requires 0 < field_min < field_max");
      if (hc_bracket_tol <= 0.0) throw ConfigError("hc bracket_tol must be > 0");
      break;
  }
}

RunConfig parse_config(std::string_view text) {
  std::map<std::string, Section> sections;
  std::map<std::string, int> section_lines;

  // Line-based scan: [section] headers, key = value entries, # comments.
  std::string current;
  int line_number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, end == std::string_view::npos ? text.size() - pos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_number;

    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail("malformed section header", line_number);
      current = std::string(trim(line.substr(1, line.size() - 2)));
      if (current.empty()) fail("empty section name", line_number);
      section_lines.emplace(current, line_number);
      sections[current];
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      fail("expected 'key = value'", line_number);
    const std::string key{trim(line.substr(0, eq))};
    const std::string value{trim(line.substr(eq + 1))};
    if (key.empty()) fail("empty key", line_number);
    if (current.empty()) fail("key outside of any section", line_number);
    if (!sections[current].emplace(key, RawEntry{value, line_number}).second)
      fail("duplicate key '" + key + "'", line_number);
  }

  const auto reader = [&](const char* name) {
    const auto it = sections.find(name);
    return SectionReader(it == sections.end() ? nullptr : &it->second, name);
  };

  RunConfig config;

  // [run]
  SectionReader run = reader("run");
  std::string command_token;
  if (!run.get("command", command_token))
    throw ConfigError("missing required key 'command' in section [run]");
  if (command_token == "single") config.command = Command::Single;
  else if (command_token == "scan1d") config.command = Command::Scan1d;
  else if (command_token == "scan2d") config.command = Command::Scan2d;
  else if (command_token == "venus") config.command = Command::Venus;
  else if (command_token == "hc") config.command = Command::CriticalField;
  else
    throw ConfigError("unknown command '" + command_token +
                      "' (expected single|scan1d|scan2d|venus|hc)");
  run.get("output", config.output_dir);
  run.finish();

  // [model]
  SectionReader model = reader("model");
  std::string boundary_token = "auto";
  model.get("sites", config.model.sites);
  model.get("gamma", config.model.anisotropy);
  model.get("field", config.model.field);
  model.get("boundary", boundary_token);
  if (boundary_token == "periodic") config.model.boundary = Boundary::Periodic;
  else if (boundary_token == "open") config.model.boundary = Boundary::Open;
  else if (boundary_token == "auto")
    // Periodic rings for exact-diagonalization sizes, open chains beyond.
    config.model.boundary =
        config.model.sites <= 7 ? Boundary::Periodic : Boundary::Open;
  else
    throw ConfigError("unknown boundary '" + boundary_token +
                      "' (expected periodic|open|auto)");
  model.finish();

  // [disorder]
  SectionReader disorder = reader("disorder");
  std::string case_token = "ordered";
  disorder.get("case", case_token);
  if (case_token == "ordered") config.disorder.kind = DisorderKind::None;
  else if (case_token == "planar") config.disorder.kind = DisorderKind::Planar;
  else if (case_token == "azimuthal")
    config.disorder.kind = DisorderKind::Azimuthal;
  else if (case_token == "both") config.disorder.kind = DisorderKind::Both;
  else
    throw ConfigError("unknown disorder case '" + case_token +
                      "' (expected ordered|planar|azimuthal|both)");
  disorder.get("lambda_mean", config.disorder.planar_mean);
  const bool has_mu = disorder.get("mu_mean", config.disorder.azimuthal_mean);
  double delta_mean = 0.0;
  if (disorder.get("delta_mean", delta_mean)) {
    if (has_mu)
      throw ConfigError("give either mu_mean or delta_mean, not both");
    if (config.model.field == 0.0)
      throw ConfigError("delta_mean requires a nonzero field");
    config.disorder.azimuthal_mean = delta_mean / config.model.field;
  }
  disorder.get("sigma_j", config.disorder.planar_sigma);
  disorder.get("sigma_delta", config.disorder.azimuthal_sigma);
  disorder.finish();

  // [observables]
  SectionReader observables = reader("observables");
  int site = -1;
  std::pair<int, int> pair{-1, -1};
  observables.get("site", site);
  if (const RawEntry* entry = observables.find("pair"))
    pair = parse_pair(*entry, "pair");
  observables.get("ggm_max_sites", config.quench.ggm_max_sites);
  observables.finish();
  config.targets.site = site >= 0 ? site : default_site(config.model.sites);
  config.targets.pair =
      pair.first >= 0 ? pair : default_pair(config.model.sites);

  // [quench]
  SectionReader quench = reader("quench");
  quench.get("realizations", config.quench.realizations);
  quench.get("seed", config.quench.master_seed);
  quench.get("threads", config.quench.threads);
  quench.get("convergence_window", config.quench.convergence_window);
  quench.get("convergence_tol", config.quench.convergence_tol);
  quench.get("dense_cutoff", config.quench.dense_cutoff);
  quench.get("lanczos_tol", config.quench.lanczos.tol);
  quench.get("lanczos_max_iter", config.quench.lanczos.max_iter);
  quench.get("lanczos_restart", config.quench.lanczos.restart);
  quench.finish();
  if (config.quench.convergence_window > config.quench.realizations)
    config.quench.convergence_window = config.quench.realizations;

  // [grid]
  const bool wants_grid = config.command != Command::Single;
  if (sections.contains("grid") && !wants_grid)
    fail("section [grid] is not used by command single",
         section_lines.at("grid"));
  if (wants_grid) {
    SectionReader grid = reader("grid");
    GridAxis axis1;
    const bool has_axis = grid.get("axis", axis1.name) |
                          grid.get("min", axis1.lo) | grid.get("max", axis1.hi) |
                          grid.get("steps", axis1.steps);
    GridAxis axis2;
    axis2.name = "mu";
    const bool has_axis2 = grid.get("axis2", axis2.name) |
                           grid.get("min2", axis2.lo) |
                           grid.get("max2", axis2.hi) |
                           grid.get("steps2", axis2.steps);
    grid.finish();

    if (config.command == Command::Scan2d) {
      // Default 41x41 grid over [-2,2]^2 when unspecified.
      config.axis1 = axis1;
      config.axis2 = axis2;
    } else {
      if (!has_axis)
        throw ConfigError(std::string("command ") + command_name(config.command) +
                          " requires a [grid] axis");
      if (has_axis2)
        throw ConfigError(std::string("command ") + command_name(config.command) +
                          " uses a single [grid] axis");
      config.axis1 = axis1;
    }
  }

  // [venus]
  const bool wants_venus = config.command == Command::Venus ||
                           config.command == Command::CriticalField;
  if (sections.contains("venus") && !wants_venus)
    fail("section [venus] is only used by the venus and hc commands",
         section_lines.at("venus"));
  if (wants_venus) {
    SectionReader venus = reader("venus");
    venus.get("eps_abs", config.venus.eps_abs);
    venus.get("stderr_factor", config.venus.stderr_factor);
    venus.finish();
  }

  // [hc]
  if (sections.contains("hc") && config.command != Command::CriticalField)
    fail("section [hc] is only used by the hc command", section_lines.at("hc"));
  if (config.command == Command::CriticalField) {
    SectionReader hc = reader("hc");
    hc.get("delta_mean", config.hc_delta_mean);
    hc.get("field_min", config.hc_field_lo);
    hc.get("field_max", config.hc_field_hi);
    hc.get("bracket_tol", config.hc_bracket_tol);
    hc.finish();
  }

  // [meta] is emitted by finished runs; accept and ignore it so sidecars
  // re-parse as configs.
  for (const auto& [name, _] : sections) {
    if (name == "meta" || name == "run" || name == "model" ||
        name == "disorder" || name == "observables" || name == "quench" ||
        name == "grid" || name == "venus" || name == "hc")
      continue;
    fail("unknown section [" + name + "]", section_lines.at(name));
  }

  config.validate();
  return config;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string format_double(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

std::string serialize_config(const RunConfig& config) {
  std::ostringstream out;
  out << "[run]\n";
  out << "command = " << command_name(config.command) << "\n";
  out << "output = " << config.output_dir << "\n";

  out << "\n[model]\n";
  out << "sites = " << config.model.sites << "\n";
  out << "gamma = " << format_double(config.model.anisotropy) << "\n";
  out << "field = " << format_double(config.model.field) << "\n";
  out << "boundary = "
      << (config.model.boundary == Boundary::Periodic ? "periodic" : "open")
      << "\n";

  out << "\n[disorder]\n";
  const char* case_token = "ordered";
  switch (config.disorder.kind) {
    case DisorderKind::None: case_token = "ordered"; break;
    case DisorderKind::Planar: case_token = "planar"; break;
    case DisorderKind::Azimuthal: case_token = "azimuthal"; break;
    case DisorderKind::Both: case_token = "both"; break;
  }
  out << "case = " << case_token << "\n";
  out << "lambda_mean = " << format_double(config.disorder.planar_mean) << "\n";
  out << "mu_mean = " << format_double(config.disorder.azimuthal_mean) << "\n";
  out << "sigma_j = " << format_double(config.disorder.planar_sigma) << "\n";
  out << "sigma_delta = " << format_double(config.disorder.azimuthal_sigma)
      << "\n";

  out << "\n[observables]\n";
  out << "site = " << config.targets.site << "\n";
  out << "pair = " << config.targets.pair.first << ","
      << config.targets.pair.second << "\n";
  out << "ggm_max_sites = " << config.quench.ggm_max_sites << "\n";

  out << "\n[quench]\n";
  out << "realizations = " << config.quench.realizations << "\n";
  out << "seed = " << config.quench.master_seed << "\n";
  out << "threads = " << config.quench.threads << "\n";
  out << "convergence_window = " << config.quench.convergence_window << "\n";
  out << "convergence_tol = " << format_double(config.quench.convergence_tol)
      << "\n";
  out << "dense_cutoff = " << config.quench.dense_cutoff << "\n";
  out << "lanczos_tol = " << format_double(config.quench.lanczos.tol) << "\n";
  out << "lanczos_max_iter = " << config.quench.lanczos.max_iter << "\n";
  out << "lanczos_restart = " << config.quench.lanczos.restart << "\n";

  const auto write_axis = [&](const GridAxis& axis, const char* suffix) {
    out << "axis" << suffix << " = " << axis.name << "\n";
    out << "min" << suffix << " = " << format_double(axis.lo) << "\n";
    out << "max" << suffix << " = " << format_double(axis.hi) << "\n";
    out << "steps" << suffix << " = " << axis.steps << "\n";
  };
  if (config.axis1) {
    out << "\n[grid]\n";
    write_axis(*config.axis1, "");
    if (config.axis2) write_axis(*config.axis2, "2");
  }

  if (config.command == Command::Venus ||
      config.command == Command::CriticalField) {
    out << "\n[venus]\n";
    out << "eps_abs = " << format_double(config.venus.eps_abs) << "\n";
    out << "stderr_factor = " << format_double(config.venus.stderr_factor)
        << "\n";
  }

  if (config.command == Command::CriticalField) {
    out << "\n[hc]\n";
    out << "delta_mean = " << format_double(config.hc_delta_mean) << "\n";
    out << "field_min = " << format_double(config.hc_field_lo) << "\n";
    out << "field_max = " << format_double(config.hc_field_hi) << "\n";
    out << "bracket_tol = " << format_double(config.hc_bracket_tol) << "\n";
  }
  return out.str();
}

}  // namespace spinglass
