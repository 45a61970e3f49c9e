#include "spinglass/runner.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "spinglass/scan.hpp"
#include "spinglass/version.hpp"

namespace spinglass {

namespace {

constexpr const char* kCsvSchema = "spinglass-csv-v1";

// The per-observable column block order used throughout the CSV schema.
std::string csv_value(std::optional<double> value) {
  if (!value || !std::isfinite(*value)) return "NA";
  return format_double(*value);
}

std::string csv_value(double value) {
  return csv_value(std::optional<double>(value));
}

void ordered_header(std::ostringstream& out) {
  out << "ord_degenerate";
  for (const Observable observable : kObservables)
    out << ",ord_" << observable_name(observable);
}

void ordered_columns(std::ostringstream& out, const OrderedPoint& point) {
  out << (point.degenerate ? 1 : 0);
  for (const Observable observable : kObservables)
    out << ',' << csv_value(observable_value(point.observables, observable));
}

void quenched_header(std::ostringstream& out, const std::string& prefix) {
  for (const Observable observable : kObservables) {
    const char* name = observable_name(observable);
    out << ',' << prefix << name << "_mean"
        << ',' << prefix << name << "_stderr"
        << ',' << prefix << name << "_delta";
  }
  out << ',' << prefix << "r_used"
      << ',' << prefix << "degenerate_count"
      << ',' << prefix << "failed_count"
      << ',' << prefix << "reliable";
}

void quenched_columns(std::ostringstream& out, const QuenchedSet& quenched,
                      const ObservableSet& ordered) {
  int r_used = 0;
  for (const Observable observable : kObservables) {
    const QuenchedEstimate& estimate = quenched.at(observable);
    const auto ordered_value = observable_value(ordered, observable);
    std::optional<double> delta;
    if (ordered_value && estimate.r_used > 0 && std::isfinite(estimate.mean))
      delta = enhancement_score(estimate.mean, *ordered_value);
    out << ',' << (estimate.r_used > 0 ? csv_value(estimate.mean) : "NA")
        << ',' << (estimate.r_used > 0 ? csv_value(estimate.std_error) : "NA")
        << ',' << csv_value(delta);
    r_used = std::max(r_used, estimate.r_used);
  }
  const QuenchedEstimate& first = quenched.estimates[0];
  out << ',' << r_used << ',' << first.degenerate_count << ','
      << first.failed_count << ',' << (first.reliable ? 1 : 0);
}

std::string render_intervals(
    const std::vector<std::pair<double, double>>& intervals) {
  if (intervals.empty()) return "none";
  std::ostringstream out;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    if (i) out << ';';
    out << format_double(intervals[i].first) << ':'
        << format_double(intervals[i].second);
  }
  return out.str();
}

// A disorder case with every random component switched off collapses to the
// clean system; one realization carries all the information.
bool effectively_ordered(const DisorderCase& disorder) {
  return !disorder.planar_random() && !disorder.azimuthal_random();
}

struct CommandOutput {
  std::string csv;
  std::vector<std::string> summary;        // stdout lines
  std::vector<std::string> meta_extra;     // extra [meta] entries
};

CommandOutput run_point_scan(const RunConfig& config, std::ostream& err) {
  QuenchSettings settings = config.quench;
  if (config.command == Command::Single &&
      effectively_ordered(config.disorder)) {
    settings.realizations = 1;
    settings.convergence_window = 1;
  }

  std::ostringstream csv;
  csv << "# " << kCsvSchema << "\n";
  csv << "lambda,mu,";
  ordered_header(csv);
  quenched_header(csv, "");
  csv << "\n";

  const auto emit_row = [&](const GridPoint& point, double lambda, double mu) {
    csv << format_double(lambda) << ',' << format_double(mu) << ',';
    ordered_columns(csv, point.ordered);
    quenched_columns(csv, point.quenched, point.ordered.observables);
    csv << "\n";
  };

  CommandOutput out;
  if (config.command == Command::Single) {
    GridPoint point;
    point.ordered =
        ordered_reference(config.model, config.disorder.planar_mean,
                          config.disorder.azimuthal_mean, settings,
                          config.targets);
    point.quenched = quenched_average(config.model, config.disorder, settings,
                                      config.targets);
    emit_row(point, config.disorder.planar_mean,
             config.disorder.azimuthal_mean);
    out.summary.push_back("rows=1");
  } else {
    GridSpec spec;
    spec.model = config.model;
    spec.disorder = config.disorder;
    spec.axis1 = *config.axis1;
    spec.axis2 = config.axis2;
    const GridScanResult result =
        grid_scan(spec, settings, config.targets, &err);
    for (const GridPoint& point : result.points) {
      const double lambda =
          spec.axis1.name == "lambda" ? point.a1
          : (spec.axis2 && spec.axis2->name == "lambda")
              ? point.a2
              : config.disorder.planar_mean;
      const double mu = spec.axis1.name == "mu" ? point.a1
                        : (spec.axis2 && spec.axis2->name == "mu")
                            ? point.a2
                            : config.disorder.azimuthal_mean;
      emit_row(point, lambda, mu);
    }
    out.summary.push_back("rows=" + std::to_string(result.points.size()));
  }
  out.csv = csv.str();
  return out;
}

CommandOutput run_line_scan(const RunConfig& config, std::ostream& err) {
  const LineScanResult scan =
      line_scan(config.model, *config.axis1, config.disorder.azimuthal_mean,
                config.disorder.planar_sigma, config.disorder.azimuthal_sigma,
                config.quench, config.targets, &err);

  std::ostringstream csv;
  csv << "# " << kCsvSchema << "\n";
  csv << "alpha,";
  ordered_header(csv);
  for (const DisorderRoute route : kRoutes)
    quenched_header(csv, std::string(route_name(route)) + "_");
  csv << "\n";
  for (const LineScanPoint& point : scan.points) {
    csv << format_double(point.alpha) << ',';
    ordered_columns(csv, point.ordered);
    for (const DisorderRoute route : kRoutes)
      quenched_columns(csv, point.at(route), point.ordered.observables);
    csv << "\n";
  }

  CommandOutput out;
  out.csv = csv.str();
  out.summary.push_back("rows=" + std::to_string(scan.points.size()));

  if (config.command == Command::Venus) {
    std::vector<Observable> detect_on{Observable::GgmApprox};
    if (config.model.sites <= config.quench.ggm_max_sites)
      detect_on.insert(detect_on.begin(), Observable::Ggm);
    for (const Observable observable : detect_on) {
      const VenusRegion region = detect_venus(scan, observable, config.venus);
      const char* name = observable_name(observable);
      out.summary.push_back(std::string("venus ") + name + " count=" +
                            std::to_string(region.intervals.size()));
      for (const auto& [lo, hi] : region.intervals)
        out.summary.push_back(std::string("venus ") + name + " interval " +
                              format_double(lo) + " " + format_double(hi));
      out.meta_extra.push_back(std::string("venus_") + name + " = " +
                               render_intervals(region.intervals));
    }
  }
  return out;
}

CommandOutput run_critical_field(const RunConfig& config, std::ostream& err) {
  CriticalFieldQuery query;
  query.model = config.model;
  query.azimuthal_coupling_mean = config.hc_delta_mean;
  query.planar_sigma = config.disorder.planar_sigma;
  query.azimuthal_sigma = config.disorder.azimuthal_sigma;
  query.alpha = *config.axis1;
  query.field_lo = config.hc_field_lo;
  query.field_hi = config.hc_field_hi;
  query.bracket_tol = config.hc_bracket_tol;
  query.venus = config.venus;

  const CriticalFieldResult result =
      critical_field(query, config.quench, config.targets, &err);

  std::ostringstream csv;
  csv << "# " << kCsvSchema << "\n";
  csv << "field,interval_count,intervals\n";
  for (const CriticalFieldProbe& probe : result.probes)
    csv << format_double(probe.field) << ',' << probe.intervals.size() << ','
        << render_intervals(probe.intervals) << "\n";

  CommandOutput out;
  out.csv = csv.str();
  out.summary.push_back(
      "hc sites=" + std::to_string(result.sites) +
      " critical_field=" + format_double(result.critical_field) +
      " bracket_lo=" + format_double(result.bracket_lo) +
      " bracket_hi=" + format_double(result.bracket_hi));
  out.meta_extra.push_back("hc_critical_field = " +
                           format_double(result.critical_field));
  out.meta_extra.push_back("hc_bracket = " + format_double(result.bracket_lo) +
                           ":" + format_double(result.bracket_hi));
  return out;
}

}  // namespace

ExecutionResult execute(const RunConfig& config, std::ostream& out,
                        std::ostream& err) {
  ExecutionResult result;
  const auto start = std::chrono::steady_clock::now();
  try {
    config.validate();

    CommandOutput command_output;
    switch (config.command) {
      case Command::Single:
      case Command::Scan2d:
        command_output = run_point_scan(config, err);
        break;
      case Command::Scan1d:
      case Command::Venus:
        command_output = run_line_scan(config, err);
        break;
      case Command::CriticalField:
        command_output = run_critical_field(config, err);
        break;
    }

    const std::filesystem::path dir(config.output_dir);
    std::filesystem::create_directories(dir);
    const std::string stem = command_name(config.command);
    const std::filesystem::path csv_path = dir / (stem + ".csv");
    const std::filesystem::path meta_path = dir / (stem + ".meta.txt");

    {
      std::ofstream csv(csv_path, std::ios::binary | std::ios::trunc);
      if (!csv) throw std::runtime_error("cannot write " + csv_path.string());
      csv << command_output.csv;
    }

    const double wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    {
      std::ofstream meta(meta_path, std::ios::binary | std::ios::trunc);
      if (!meta) throw std::runtime_error("cannot write " + meta_path.string());
      meta << serialize_config(config);
      meta << "\n[meta]\n";
      meta << "version = " << kVersion << "\n";
      meta << "csv = " << csv_path.filename().string() << "\n";
      meta << "wall_time_seconds = " << format_double(wall_seconds) << "\n";
      for (const std::string& line : command_output.meta_extra)
        meta << line << "\n";
    }

    result.csv_path = csv_path.string();
    result.meta_path = meta_path.string();
    for (const std::string& line : command_output.summary) out << line << "\n";
    out << "csv=" << result.csv_path << "\n";
    out << "meta=" << result.meta_path << "\n";
    result.exit_code = 0;
  } catch (const std::exception& error) {
    err << "error: " << error.what() << "\n";
    result.exit_code = 1;
  }
  return result;
}

}  // namespace spinglass
