#include "spinglass/quench.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "spinglass/parallel.hpp"
#include "spinglass/rng.hpp"

namespace spinglass {

namespace {

constexpr std::uint64_t kTagStartVector = 0x737461727476ULL;
constexpr std::uint64_t kTagRetry = 0x7265747279ULL;
constexpr std::uint64_t kTagOrderedRef = 0x6f7264657265ULL;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct RealizationOutcome {
  std::array<double, kObservableCount> values{};
  bool degenerate = false;
  bool failed = true;
};

GroundStateResult solve_ground_state(const HamiltonianOperator& hamiltonian,
                                     const QuenchSettings& settings,
                                     std::uint64_t seed) {
  if (hamiltonian.sites() <= settings.dense_cutoff)
    return dense_ground_state(hamiltonian, settings.dense_cutoff);
  LanczosOptions options = settings.lanczos;
  options.seed = rng::mix(seed, kTagStartVector);
  GroundStateResult result = lanczos_ground_state(hamiltonian, options);
  for (int attempt = 0; !result.converged && attempt < settings.solver_retries;
       ++attempt) {
    options.seed = rng::mix(rng::mix(seed, kTagRetry), attempt);
    result = lanczos_ground_state(hamiltonian, options);
  }
  return result;
}

}  // namespace

void QuenchSettings::validate() const {
  if (realizations < 1)
    throw std::invalid_argument("QuenchSettings: realizations must be >= 1");
  if (convergence_window < 1 || convergence_window > realizations)
    throw std::invalid_argument(
        "QuenchSettings: convergence_window must lie in [1, realizations]");
  if (convergence_tol <= 0.0 || convergence_abs_floor < 0.0)
    throw std::invalid_argument("QuenchSettings: bad convergence thresholds");
  if (threads < 0)
    throw std::invalid_argument("QuenchSettings: threads must be >= 0");
}

ConvergenceMonitor::ConvergenceMonitor(int window, double tol, double abs_floor)
    : window_(window), tol_(tol), abs_floor_(abs_floor) {
  if (window_ < 1) throw std::invalid_argument("ConvergenceMonitor: window < 1");
  history_.resize(window_, 0.0);
}

void ConvergenceMonitor::push(double value) {
  ++count_;
  mean_ += (value - mean_) / count_;
  // Slot (count_-1) % window_ still holds the running mean from window_
  // samples ago; at count_ == window_ the earliest mean sits in slot 0.
  if (!converged_ && count_ >= window_) {
    const double reference = count_ == window_
                                 ? history_[0]
                                 : history_[(count_ - 1) % window_];
    if (std::abs(mean_ - reference) <=
        std::max(tol_ * std::abs(mean_), abs_floor_))
      converged_ = true;
  }
  history_[(count_ - 1) % window_] = mean_;
}

OrderedPoint ordered_reference(const ModelParams& params, double lambda,
                               double mu, const QuenchSettings& settings,
                               ObservableTargets targets) {
  DisorderCase clean;
  clean.kind = DisorderKind::None;
  clean.planar_mean = lambda;
  clean.azimuthal_mean = mu;
  const CouplingRealization realization = sample_couplings(
      clean, params, rng::mix(settings.master_seed, kTagOrderedRef));
  const HamiltonianOperator hamiltonian(params, realization);
  const GroundStateResult ground =
      solve_ground_state(hamiltonian, settings, realization.seed);
  if (!ground.converged)
    throw std::runtime_error(
        "ordered_reference: ground-state solve did not converge (residual " +
        std::to_string(ground.residual) + ")");

  OrderedPoint out;
  out.observables = observable_set(ground.state, params, targets.site,
                                   targets.pair, settings.ggm_max_sites);
  out.energy = ground.energy;
  out.degenerate = ground.degenerate;
  return out;
}

QuenchedSet quenched_average(const ModelParams& params,
                             const DisorderCase& disorder,
                             const QuenchSettings& settings,
                             ObservableTargets targets) {
  params.validate();
  disorder.validate();
  settings.validate();

  const int n_realizations = settings.realizations;
  std::vector<RealizationOutcome> outcomes(n_realizations);

  parallel_for(n_realizations, settings.threads, [&](std::size_t r) {
    const std::uint64_t seed = rng::mix(settings.master_seed, r);
    const CouplingRealization realization =
        sample_couplings(disorder, params, seed, static_cast<int>(r));
    const HamiltonianOperator hamiltonian(params, realization);
    const GroundStateResult ground =
        solve_ground_state(hamiltonian, settings, seed);

    RealizationOutcome& slot = outcomes[r];
    if (!ground.converged) return;  // stays failed
    const ObservableSet set =
        observable_set(ground.state, params, targets.site, targets.pair,
                       settings.ggm_max_sites);
    for (int k = 0; k < kObservableCount; ++k) {
      const auto value = observable_value(set, kObservables[k]);
      slot.values[k] = value ? *value : kNaN;
    }
    slot.degenerate = ground.degenerate;
    slot.failed = false;
  });

  // Reduce in realization order so the result is schedule-independent.
  QuenchedSet result;
  std::array<double, kObservableCount> mean{};
  std::array<double, kObservableCount> m2{};
  std::array<int, kObservableCount> used{};
  std::vector<ConvergenceMonitor> monitors(
      kObservableCount,
      ConvergenceMonitor(settings.convergence_window, settings.convergence_tol,
                         settings.convergence_abs_floor));

  int failed = 0;
  int degenerate = 0;
  for (const RealizationOutcome& outcome : outcomes) {
    if (outcome.failed) {
      ++failed;
      continue;
    }
    if (outcome.degenerate) ++degenerate;
    for (int k = 0; k < kObservableCount; ++k) {
      const double value = outcome.values[k];
      if (std::isnan(value)) continue;
      ++used[k];
      const double delta = value - mean[k];
      mean[k] += delta / used[k];
      m2[k] += delta * (value - mean[k]);
      monitors[k].push(value);
    }
  }

  for (int k = 0; k < kObservableCount; ++k) {
    QuenchedEstimate& estimate = result.estimates[k];
    estimate.failed_count = failed;
    estimate.degenerate_count = degenerate;
    estimate.reliable =
        failed <= settings.unreliable_failed_fraction * n_realizations;
    estimate.r_used = used[k];
    if (used[k] == 0) {
      estimate.mean = kNaN;
      estimate.std_error = kNaN;
      estimate.converged = false;
      continue;
    }
    estimate.mean = mean[k];
    estimate.std_error =
        used[k] > 1 ? std::sqrt(m2[k] / (static_cast<double>(used[k]) - 1.0) /
                                used[k])
                    : 0.0;
    estimate.converged = monitors[k].converged();
  }
  return result;
}

}  // namespace spinglass
