#include "spinglass/ground_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spinglass/rng.hpp"

namespace spinglass {

namespace {

bool is_degenerate(double gap, double energy) {
  return gap < kDegenerateRelGap * std::max(1.0, std::abs(energy));
}

Eigen::VectorXd seeded_start_vector(std::size_t dim, std::uint64_t seed) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(dim));
  for (std::size_t k = 0; k < dim; ++k)
    v[static_cast<Eigen::Index>(k)] = rng::normal(seed, k);
  const double norm = v.norm();
  if (norm == 0.0) {  // cannot happen with the Box-Muller stream; stay safe
    v.setZero();
    v[0] = 1.0;
    return v;
  }
  return v / norm;
}

// One Lanczos sweep with full (two-pass) reorthogonalization against the
// stored basis. Extra orthogonality constraints (deflation) are applied on
// every new direction. Returns the lowest Ritz pair of the sweep.
struct SweepResult {
  double theta = 0.0;          // lowest Ritz value
  Eigen::VectorXd ritz;        // corresponding Ritz vector (normalized)
  double theta1 = 0.0;         // second Ritz value (valid if dims >= 2)
  bool has_theta1 = false;
  int iterations = 0;          // matrix applications consumed
  bool exhausted = false;      // Krylov space became invariant
};

SweepResult lanczos_sweep(const HamiltonianOperator& hamiltonian,
                          const Eigen::VectorXd& start, int max_dim,
                          int iter_budget, const Eigen::VectorXd* deflate,
                          double breakdown_eps, double target_residual) {
  SweepResult out;
  const Eigen::Index dim = start.size();
  Eigen::MatrixXd basis(dim, max_dim);
  std::vector<double> alpha;
  std::vector<double> beta;  // beta[j] couples basis columns j and j+1

  const auto reorthogonalize = [&](Eigen::VectorXd& w, int stored, int passes) {
    for (int pass = 0; pass < passes; ++pass) {
      if (stored > 0) {
        const auto v = basis.leftCols(stored);
        w.noalias() -= v * (v.transpose() * w).eval();
      }
      if (deflate) w -= deflate->dot(w) * (*deflate);
    }
  };

  // Ritz residual estimate |beta_next * y0[m-1]| from the current tridiagonal;
  // cheap enough to track while the basis is still small.
  const auto residual_estimate = [&](double next_beta) {
    const int m = static_cast<int>(alpha.size());
    Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
    Eigen::VectorXd sub(m > 1 ? m - 1 : 0);
    for (int j = 0; j + 1 < m; ++j) sub[j] = beta[j];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub);
    return next_beta * std::abs(solver.eigenvectors()(m - 1, 0));
  };

  Eigen::VectorXd v = start;
  reorthogonalize(v, 0, 1);
  v.normalize();
  basis.col(0) = v;

  Eigen::VectorXd w(dim);
  int stored = 1;
  constexpr int kCheckInterval = 8;
  for (int j = 0; j < max_dim && out.iterations < iter_budget; ++j) {
    hamiltonian.apply(basis.col(j), w);
    ++out.iterations;
    if (j > 0) w -= beta[j - 1] * basis.col(j - 1);
    const double a = basis.col(j).dot(w);
    alpha.push_back(a);
    w -= a * basis.col(j);
    reorthogonalize(w, stored, 2);

    const double b = w.norm();
    if (b <= breakdown_eps || j + 1 >= max_dim || out.iterations >= iter_budget) {
      if (b <= breakdown_eps) out.exhausted = true;
      break;
    }
    if (j % kCheckInterval == kCheckInterval - 1 &&
        residual_estimate(b) <= 0.5 * target_residual)
      break;
    beta.push_back(b);
    basis.col(j + 1) = w / b;
    stored = j + 2;
  }

  const int m = static_cast<int>(alpha.size());
  Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
  Eigen::VectorXd sub(m > 1 ? m - 1 : 0);
  for (int j = 0; j + 1 < m; ++j) sub[j] = beta[j];

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub);
  out.theta = solver.eigenvalues()[0];
  if (m >= 2) {
    out.theta1 = solver.eigenvalues()[1];
    out.has_theta1 = true;
  }

  const Eigen::VectorXd y = solver.eigenvectors().col(0);
  out.ritz.noalias() = basis.leftCols(m) * y;
  out.ritz.normalize();
  return out;
}

}  // namespace

GroundStateResult dense_ground_state(const HamiltonianOperator& hamiltonian,
                                     int max_sites) {
  if (hamiltonian.sites() > max_sites)
    throw std::invalid_argument(
        "dense_ground_state: chain of " + std::to_string(hamiltonian.sites()) +
        " sites exceeds the dense cap of " + std::to_string(max_sites));

  const auto dim = static_cast<Eigen::Index>(hamiltonian.dimension());
  Eigen::MatrixXd matrix(dim, dim);
  Eigen::VectorXd unit = Eigen::VectorXd::Zero(dim);
  Eigen::VectorXd column(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    unit[k] = 1.0;
    hamiltonian.apply(unit, column);
    matrix.col(k) = column;
    unit[k] = 0.0;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix);
  GroundStateResult result;
  result.energy = solver.eigenvalues()[0];
  result.state = solver.eigenvectors().col(0);
  result.gap = dim > 1 ? solver.eigenvalues()[1] - solver.eigenvalues()[0] : 0.0;
  result.degenerate = is_degenerate(result.gap, result.energy);
  result.residual =
      (hamiltonian.apply(result.state) - result.energy * result.state).norm();
  result.converged = true;
  return result;
}

GroundStateResult lanczos_ground_state(const HamiltonianOperator& hamiltonian,
                                       const LanczosOptions& options) {
  return lanczos_ground_state(
      hamiltonian, options,
      seeded_start_vector(hamiltonian.dimension(), options.seed));
}

GroundStateResult lanczos_ground_state(const HamiltonianOperator& hamiltonian,
                                       const LanczosOptions& options,
                                       const Eigen::VectorXd& start) {
  if (options.tol <= 0.0)
    throw std::invalid_argument("lanczos_ground_state: tol must be positive");
  if (options.max_iter < 1 || options.restart < 2)
    throw std::invalid_argument("lanczos_ground_state: bad iteration limits");
  if (static_cast<std::size_t>(start.size()) != hamiltonian.dimension() ||
      start.norm() == 0.0)
    throw std::invalid_argument("lanczos_ground_state: bad start vector");

  const std::size_t dim = hamiltonian.dimension();
  const double breakdown_eps = 1e-13 * std::max(1.0, hamiltonian.norm_bound());

  GroundStateResult result;
  result.converged = false;

  Eigen::VectorXd v = start / start.norm();
  const int max_dim = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(options.restart), dim));

  int used = 0;
  double best_residual = std::numeric_limits<double>::infinity();
  while (used < options.max_iter) {
    SweepResult sweep =
        lanczos_sweep(hamiltonian, v, max_dim, options.max_iter - used,
                      nullptr, breakdown_eps, options.tol);
    used += sweep.iterations;

    // Certify with the explicit residual; the Ritz estimate alone can be
    // optimistic after aggressive restarts.
    const Eigen::VectorXd hv = hamiltonian.apply(sweep.ritz);
    ++used;
    const double energy = sweep.ritz.dot(hv);
    const double residual = (hv - energy * sweep.ritz).norm();
    if (residual < best_residual) {
      best_residual = residual;
      result.energy = energy;
      result.state = sweep.ritz;
      result.residual = residual;
    }
    if (residual <= options.tol) {
      result.converged = true;
      break;
    }
    if (sweep.exhausted && residual > options.tol) {
      // Invariant subspace that still misses the target: perturb the start.
      v = seeded_start_vector(dim, rng::mix(options.seed, used));
    } else {
      v = sweep.ritz;
    }
  }
  result.iterations = used;

  if (result.converged && options.estimate_gap && dim > 1) {
    // Short deflated pass for the first excited level.
    Eigen::VectorXd s =
        seeded_start_vector(dim, rng::mix(options.seed, 0x67617000ULL));
    const int gap_dim = static_cast<int>(std::min<std::size_t>(
        static_cast<std::size_t>(std::max(2, options.gap_iterations)), dim - 1));
    SweepResult excited = lanczos_sweep(hamiltonian, s, gap_dim, gap_dim,
                                        &result.state, breakdown_eps, 0.0);
    result.iterations += excited.iterations;
    result.gap = std::max(0.0, excited.theta - result.energy);
    result.degenerate = is_degenerate(result.gap, result.energy);
  }
  return result;
}

}  // namespace spinglass
