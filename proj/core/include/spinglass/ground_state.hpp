#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "spinglass/model.hpp"

namespace spinglass {

// Relative gap below which a ground state is flagged as degenerate.
inline constexpr double kDegenerateRelGap = 1e-8;

struct GroundStateResult {
  double energy = 0.0;
  Eigen::VectorXd state;      // normalized, real
  double residual = 0.0;      // ||H v - E v||
  double gap = 0.0;           // E1 - E0 estimate, >= 0
  bool degenerate = false;    // gap < kDegenerateRelGap * max(1, |E0|)
  bool converged = true;      // false only for a failed iterative solve
  int iterations = 0;         // matrix applications spent
};

struct LanczosOptions {
  double tol = 1e-10;        // convergence threshold on ||H v - E v||
  int max_iter = 1000;       // total matrix applications across restarts
  int restart = 150;         // stored basis size per cycle (full reorthogonalization)
  std::uint64_t seed = 1;    // start vector seed
  bool estimate_gap = true;  // run a short deflated pass for E1 after convergence
  int gap_iterations = 60;

  bool operator==(const LanczosOptions&) const = default;
};

// Full symmetric eigendecomposition of the materialized matrix. Intended for
// small chains; throws if sites > max_sites.
GroundStateResult dense_ground_state(const HamiltonianOperator& hamiltonian,
                                     int max_sites = 12);

// Restarted Lanczos with full reorthogonalization within each cycle and a
// deterministic seeded start vector. On non-convergence the result carries
// converged = false and the best residual reached; callers decide whether to
// retry with a different seed or discard the realization.
GroundStateResult lanczos_ground_state(const HamiltonianOperator& hamiltonian,
                                       const LanczosOptions& options = {});

// Same solver with an explicit (nonzero) start vector instead of the seeded
// one; restarts after an exhausted invariant subspace still use the seed.
GroundStateResult lanczos_ground_state(const HamiltonianOperator& hamiltonian,
                                       const LanczosOptions& options,
                                       const Eigen::VectorXd& start);

}  // namespace spinglass
