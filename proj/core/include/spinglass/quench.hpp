#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "spinglass/ground_state.hpp"
#include "spinglass/model.hpp"
#include "spinglass/observables.hpp"

namespace spinglass {

// Which site/pair the single- and two-site quantities are reported for.
// Negative entries select the middle-of-chain defaults.
struct ObservableTargets {
  int site = -1;
  std::pair<int, int> pair{-1, -1};

  bool operator==(const ObservableTargets&) const = default;
};

struct QuenchSettings {
  int realizations = 5000;
  std::uint64_t master_seed = 1;
  int convergence_window = 500;
  double convergence_tol = 1e-3;       // relative change of the running mean
  double convergence_abs_floor = 1e-4; // absolute floor for near-zero means
  int dense_cutoff = 6;                // largest N solved by dense diagonalization
  int ggm_max_sites = 14;              // exact GGM evaluated up to this size
  int threads = 0;                     // 0 = hardware concurrency
  int solver_retries = 1;              // restarts with a fresh seed before giving up
  double unreliable_failed_fraction = 0.01;
  LanczosOptions lanczos{};

  void validate() const;
  bool operator==(const QuenchSettings&) const = default;
};

// Disorder average of one observable: sample mean and standard error over
// the realizations that produced a converged ground state.
struct QuenchedEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  int r_used = 0;
  bool converged = false;  // running mean stabilized within the window
  int degenerate_count = 0;
  int failed_count = 0;
  bool reliable = true;  // failed_count within the configured fraction
};

struct QuenchedSet {
  std::array<QuenchedEstimate, kObservableCount> estimates{};

  const QuenchedEstimate& at(Observable observable) const {
    return estimates[static_cast<int>(observable)];
  }
  QuenchedEstimate& at(Observable observable) {
    return estimates[static_cast<int>(observable)];
  }
};

// Clean-system reference point at couplings (lambda*h, mu*h).
struct OrderedPoint {
  ObservableSet observables;
  double energy = 0.0;
  bool degenerate = false;
};

OrderedPoint ordered_reference(const ModelParams& params, double lambda,
                               double mu, const QuenchSettings& settings,
                               ObservableTargets targets = {});

// Freezes one disorder realization per index, solves for its ground state,
// evaluates all observables, and accumulates mean/standard error per
// observable. Realizations run concurrently; accumulation happens in
// realization order, so the result is bit-identical for a fixed master seed
// regardless of the worker count. Solver failures are retried with a fresh
// start vector, then skipped and counted.
QuenchedSet quenched_average(const ModelParams& params,
                             const DisorderCase& disorder,
                             const QuenchSettings& settings,
                             ObservableTargets targets = {});

// |quenched mean| - |ordered value|; positive means the disordered system
// beats the clean one for that observable.
inline double enhancement_score(double quenched_mean, double ordered_value) {
  return std::abs(quenched_mean) - std::abs(ordered_value);
}

// Flags when the running mean of a stream has stopped moving: the change of
// the running mean across the trailing window stays below
// max(tol * |mean|, abs_floor). The flag latches once raised.
class ConvergenceMonitor {
 public:
  ConvergenceMonitor(int window, double tol, double abs_floor);

  void push(double value);
  bool converged() const { return converged_; }
  int count() const { return count_; }
  double mean() const { return mean_; }

 private:
  int window_;
  double tol_;
  double abs_floor_;
  int count_ = 0;
  double mean_ = 0.0;
  bool converged_ = false;
  std::vector<double> history_;  // ring buffer of trailing running means
};

}  // namespace spinglass
