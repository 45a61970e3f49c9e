#include "spinglass/scan.hpp"

#include <cmath>
#include <ostream>

#include "spinglass/rng.hpp"

namespace spinglass {

namespace {

constexpr std::uint64_t kTagGridPoint = 0x67726964ULL;
constexpr std::uint64_t kTagRoute = 0x726f757465ULL;

std::optional<double> delta_of(const QuenchedEstimate& estimate,
                               const ObservableSet& ordered,
                               Observable observable) {
  const auto ordered_value = observable_value(ordered, observable);
  if (!ordered_value || estimate.r_used == 0 || !std::isfinite(estimate.mean))
    return std::nullopt;
  return enhancement_score(estimate.mean, *ordered_value);
}

void apply_axis(DisorderCase& disorder, const std::string& axis_name,
                double value) {
  if (axis_name == "lambda")
    disorder.planar_mean = value;
  else if (axis_name == "mu")
    disorder.azimuthal_mean = value;
  else
    throw std::invalid_argument("unknown grid axis '" + axis_name +
                                "' (expected lambda or mu)");
}

}  // namespace

void GridAxis::validate() const {
  if (steps < 2) throw std::invalid_argument("GridAxis: steps must be >= 2");
  if (!(lo < hi)) throw std::invalid_argument("GridAxis: requires lo < hi");
  if (name != "lambda" && name != "mu")
    throw std::invalid_argument("GridAxis: unknown axis name '" + name + "'");
}

std::optional<double> GridPoint::delta(Observable observable) const {
  return delta_of(quenched.at(observable), ordered.observables, observable);
}

const char* route_name(DisorderRoute route) {
  switch (route) {
    case DisorderRoute::Both: return "both";
    case DisorderRoute::PlanarOnly: return "planar";
    case DisorderRoute::AzimuthalOnly: return "azimuthal";
  }
  return "?";
}

std::optional<double> LineScanPoint::delta(DisorderRoute route,
                                           Observable observable) const {
  return delta_of(at(route).at(observable), ordered.observables, observable);
}

GridScanResult grid_scan(const GridSpec& spec, const QuenchSettings& settings,
                         ObservableTargets targets, std::ostream* progress) {
  spec.model.validate();
  spec.disorder.validate();
  spec.axis1.validate();
  if (spec.axis2) {
    spec.axis2->validate();
    if (spec.axis2->name == spec.axis1.name)
      throw std::invalid_argument("grid_scan: axes sweep the same parameter");
  }

  GridScanResult result;
  result.spec = spec;
  const int n1 = spec.axis1.steps;
  const int n2 = spec.axis2 ? spec.axis2->steps : 1;
  result.points.reserve(static_cast<std::size_t>(n1) * n2);

  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      const std::size_t index = static_cast<std::size_t>(i) * n2 + j;
      DisorderCase disorder = spec.disorder;
      GridPoint point;
      point.a1 = spec.axis1.value(i);
      apply_axis(disorder, spec.axis1.name, point.a1);
      if (spec.axis2) {
        point.a2 = spec.axis2->value(j);
        apply_axis(disorder, spec.axis2->name, point.a2);
      }

      QuenchSettings point_settings = settings;
      point_settings.master_seed =
          rng::mix(rng::mix(settings.master_seed, kTagGridPoint), index);
      point.ordered =
          ordered_reference(spec.model, disorder.planar_mean,
                            disorder.azimuthal_mean, point_settings, targets);
      point.quenched =
          quenched_average(spec.model, disorder, point_settings, targets);
      result.points.push_back(std::move(point));
      if (progress)
        (*progress) << "grid point " << (index + 1) << "/" << (n1 * n2)
                    << " done\n";
    }
  }
  return result;
}

LineScanResult line_scan(const ModelParams& params, const GridAxis& alpha_axis,
                         double azimuthal_mean, double planar_sigma,
                         double azimuthal_sigma, const QuenchSettings& settings,
                         ObservableTargets targets, std::ostream* progress) {
  params.validate();
  alpha_axis.validate();

  LineScanResult result;
  result.model = params;
  result.azimuthal_mean = azimuthal_mean;
  result.planar_sigma = planar_sigma;
  result.azimuthal_sigma = azimuthal_sigma;
  result.axis = alpha_axis;
  result.points.reserve(alpha_axis.steps);

  for (int i = 0; i < alpha_axis.steps; ++i) {
    LineScanPoint point;
    point.alpha = alpha_axis.value(i);

    QuenchSettings point_settings = settings;
    point_settings.master_seed =
        rng::mix(rng::mix(settings.master_seed, kTagGridPoint), i);
    point.ordered = ordered_reference(params, point.alpha, azimuthal_mean,
                                      point_settings, targets);

    for (int c = 0; c < kRouteCount; ++c) {
      DisorderCase disorder;
      disorder.planar_mean = point.alpha;
      disorder.azimuthal_mean = azimuthal_mean;
      disorder.planar_sigma = planar_sigma;
      disorder.azimuthal_sigma = azimuthal_sigma;
      switch (kRoutes[c]) {
        case DisorderRoute::Both: disorder.kind = DisorderKind::Both; break;
        case DisorderRoute::PlanarOnly: disorder.kind = DisorderKind::Planar; break;
        case DisorderRoute::AzimuthalOnly:
          disorder.kind = DisorderKind::Azimuthal;
          break;
      }
      QuenchSettings route_settings = point_settings;
      route_settings.master_seed =
          rng::mix(rng::mix(point_settings.master_seed, kTagRoute), c);
      point.routes[c] =
          quenched_average(params, disorder, route_settings, targets);
    }
    result.points.push_back(std::move(point));
    if (progress)
      (*progress) << "alpha " << point.alpha << " (" << (i + 1) << "/"
                  << alpha_axis.steps << ") done\n";
  }
  return result;
}

VenusRegion detect_venus(const LineScanResult& scan, Observable observable,
                         const VenusSettings& settings) {
  VenusRegion region;
  region.observable = observable;

  const auto margin = [&](const QuenchedEstimate& estimate) {
    return std::max(settings.eps_abs,
                    settings.stderr_factor * estimate.std_error);
  };

  int run_start = -1;
  const int n = static_cast<int>(scan.points.size());
  for (int i = 0; i <= n; ++i) {
    bool ok = false;
    if (i < n) {
      const LineScanPoint& point = scan.points[i];
      const auto d_both = point.delta(DisorderRoute::Both, observable);
      const auto d_planar = point.delta(DisorderRoute::PlanarOnly, observable);
      const auto d_azimuthal =
          point.delta(DisorderRoute::AzimuthalOnly, observable);
      if (d_both && d_planar && d_azimuthal) {
        ok = *d_both > margin(point.at(DisorderRoute::Both).at(observable)) &&
             *d_planar <
                 -margin(point.at(DisorderRoute::PlanarOnly).at(observable)) &&
             *d_azimuthal <
                 -margin(point.at(DisorderRoute::AzimuthalOnly).at(observable));
      }
    }
    if (ok && run_start < 0) run_start = i;
    if (!ok && run_start >= 0) {
      region.intervals.emplace_back(scan.points[run_start].alpha,
                                    scan.points[i - 1].alpha);
      run_start = -1;
    }
  }
  return region;
}

CriticalFieldResult critical_field(const CriticalFieldQuery& query,
                                   const QuenchSettings& settings,
                                   ObservableTargets targets,
                                   std::ostream* progress) {
  if (!(query.field_lo > 0.0) || !(query.field_lo < query.field_hi))
    throw std::invalid_argument(
        "critical_field: need 0 < field_lo < field_hi");
  if (query.bracket_tol <= 0.0)
    throw std::invalid_argument("critical_field: bracket_tol must be > 0");

  CriticalFieldResult result;
  result.sites = query.model.sites;

  const Observable probe_observable = query.model.sites <= settings.ggm_max_sites
                                          ? Observable::Ggm
                                          : Observable::GgmApprox;

  const auto probe = [&](double field) {
    ModelParams params = query.model;
    params.field = field;
    const double mu = query.azimuthal_coupling_mean / field;
    const LineScanResult scan =
        line_scan(params, query.alpha, mu, query.planar_sigma,
                  query.azimuthal_sigma, settings, targets, progress);
    CriticalFieldProbe record;
    record.field = field;
    record.intervals =
        detect_venus(scan, probe_observable, query.venus).intervals;
    result.probes.push_back(record);
    if (progress)
      (*progress) << "field probe " << field << ": "
                  << record.intervals.size() << " interval(s)\n";
    return !record.intervals.empty();
  };

  if (probe(query.field_lo))
    throw BracketError(
        "critical_field: constructive interference already present at the "
        "lower end of the field range");
  if (!probe(query.field_hi))
    throw BracketError(
        "critical_field: no constructive interference at the upper end of "
        "the field range");

  double lo = query.field_lo;
  double hi = query.field_hi;
  while (hi - lo > query.bracket_tol) {
    const double mid = 0.5 * (lo + hi);
    if (probe(mid))
      hi = mid;
    else
      lo = mid;
  }
  result.bracket_lo = lo;
  result.bracket_hi = hi;
  result.critical_field = hi;
  return result;
}

}  // namespace spinglass
