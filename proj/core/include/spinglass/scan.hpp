#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spinglass/quench.hpp"

namespace spinglass {

// One swept parameter. `name` selects what the axis drives: "lambda" for the
// planar coupling mean, "mu" for the azimuthal one (both in units of the
// field).
struct GridAxis {
  std::string name = "lambda";
  double lo = -2.0;
  double hi = 2.0;
  int steps = 41;

  double value(int k) const {
    return lo + (hi - lo) * static_cast<double>(k) / (steps - 1);
  }
  void validate() const;

  bool operator==(const GridAxis&) const = default;
};

struct GridSpec {
  ModelParams model;
  DisorderCase disorder;
  GridAxis axis1;
  std::optional<GridAxis> axis2;  // absent for line scans
};

struct GridPoint {
  double a1 = 0.0;
  double a2 = 0.0;
  OrderedPoint ordered;
  QuenchedSet quenched;

  // Enhancement score |mean| - |ordered|; absent when either side is.
  std::optional<double> delta(Observable observable) const;
};

struct GridScanResult {
  GridSpec spec;
  std::vector<GridPoint> points;  // axis1-major, axis2 fastest
};

// One ordered reference plus one quenched average per grid point. Per-point
// failures surface through the stored estimates; the scan itself always
// completes.
GridScanResult grid_scan(const GridSpec& spec, const QuenchSettings& settings,
                         ObservableTargets targets = {},
                         std::ostream* progress = nullptr);

// The three ways of blending disorder compared by a line scan. The swept
// parameter alpha is the planar coupling mean (exact planar coupling for the
// azimuthal-only route); the azimuthal mean is held fixed.
enum class DisorderRoute { Both = 0, PlanarOnly = 1, AzimuthalOnly = 2 };
inline constexpr int kRouteCount = 3;
inline constexpr DisorderRoute kRoutes[kRouteCount] = {
    DisorderRoute::Both, DisorderRoute::PlanarOnly, DisorderRoute::AzimuthalOnly};
const char* route_name(DisorderRoute route);

struct LineScanPoint {
  double alpha = 0.0;
  OrderedPoint ordered;  // clean system at (alpha, azimuthal mean)
  std::array<QuenchedSet, kRouteCount> routes{};

  const QuenchedSet& at(DisorderRoute route) const {
    return routes[static_cast<int>(route)];
  }
  std::optional<double> delta(DisorderRoute route, Observable observable) const;
};

struct LineScanResult {
  ModelParams model;
  double azimuthal_mean = 0.0;  // mu, in units of the field
  double planar_sigma = 1.0;
  double azimuthal_sigma = 1.0;
  GridAxis axis;
  std::vector<LineScanPoint> points;
};

LineScanResult line_scan(const ModelParams& params, const GridAxis& alpha_axis,
                         double azimuthal_mean, double planar_sigma,
                         double azimuthal_sigma, const QuenchSettings& settings,
                         ObservableTargets targets = {},
                         std::ostream* progress = nullptr);

// Significance margin for constructive-interference detection: a point
// counts only when each enhancement score clears
// max(eps_abs, stderr_factor * its standard error) on the right side.
struct VenusSettings {
  double eps_abs = 1e-4;
  double stderr_factor = 2.0;

  bool operator==(const VenusSettings&) const = default;
};

// Maximal alpha-intervals where the joint-disorder enhancement score is
// significantly positive while both single-disorder scores are significantly
// negative. An empty interval list is a valid outcome.
struct VenusRegion {
  Observable observable = Observable::Ggm;
  std::vector<std::pair<double, double>> intervals;
};

VenusRegion detect_venus(const LineScanResult& scan, Observable observable,
                         const VenusSettings& settings = {});

struct BracketError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CriticalFieldProbe {
  double field = 0.0;
  std::vector<std::pair<double, double>> intervals;
};

struct CriticalFieldResult {
  double critical_field = 0.0;  // smallest probed field with a nonempty region
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int sites = 0;
  std::vector<CriticalFieldProbe> probes;
};

// Bisection query for the field strength at which constructive interference
// first appears. The azimuthal coupling mean is fixed in coupling units and
// rescaled into field units at every probe.
struct CriticalFieldQuery {
  ModelParams model;               // field entry is ignored; probes override it
  double azimuthal_coupling_mean = -0.9;
  double planar_sigma = 1.0;
  double azimuthal_sigma = 1.0;
  GridAxis alpha;                  // window to scan at each probe
  double field_lo = 0.0;
  double field_hi = 0.0;
  double bracket_tol = 0.05;
  VenusSettings venus{};
};

// Requires an empty detection at field_lo and a nonempty one at field_hi;
// throws BracketError otherwise. Bisects until the bracket width drops to
// bracket_tol.
CriticalFieldResult critical_field(const CriticalFieldQuery& query,
                                   const QuenchSettings& settings,
                                   ObservableTargets targets = {},
                                   std::ostream* progress = nullptr);

}  // namespace spinglass
