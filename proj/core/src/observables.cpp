#include "spinglass/observables.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace spinglass {

namespace {

using c64 = std::complex<double>;

int infer_sites(const Eigen::VectorXd& state) {
  const auto size = static_cast<std::uint64_t>(state.size());
  if (size < 4 || !std::has_single_bit(size))
    throw std::invalid_argument("state vector length must be a power of two >= 4");
  return std::countr_zero(size);
}

void check_site(int site, int sites) {
  if (site < 0 || site >= sites)
    throw std::invalid_argument("site index " + std::to_string(site) +
                                " out of range for " + std::to_string(sites) +
                                " sites");
}

std::array<std::array<c64, 2>, 2> pauli(Axis axis) {
  switch (axis) {
    case Axis::X:
      return {{{c64(0, 0), c64(1, 0)}, {c64(1, 0), c64(0, 0)}}};
    case Axis::Y:
      return {{{c64(0, 0), c64(0, -1)}, {c64(0, 1), c64(0, 0)}}};
    default:
      return {{{c64(1, 0), c64(0, 0)}, {c64(0, 0), c64(-1, 0)}}};
  }
}

// Largest eigenvalue of a small real symmetric matrix.
double largest_eigenvalue(const Eigen::MatrixXd& m) {
  if (m.rows() == 1) return m(0, 0);
  if (m.rows() == 2) {
    const double half_trace = 0.5 * (m(0, 0) + m(1, 1));
    const double half_diff = 0.5 * (m(0, 0) - m(1, 1));
    return half_trace + std::hypot(half_diff, m(0, 1));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m,
                                                        Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

double largest_rdm_eigenvalue(const Eigen::VectorXd& state,
                              std::span<const int> sites) {
  return largest_eigenvalue(reduced_density_matrix(state, sites).matrix);
}

std::uint64_t binomial(int n, int r) {
  std::uint64_t out = 1;
  for (int k = 1; k <= r; ++k) out = out * (n - r + k) / k;
  return out;
}

}  // namespace

namespace {

// Shared accumulation behind reduced_density_matrix; also used on the full
// register (no environment) where the result is the pure density matrix.
ReducedDensityMatrix density_on_sites(const Eigen::VectorXd& state,
                                      std::span<const int> sites);

}  // namespace

ReducedDensityMatrix reduced_density_matrix(const Eigen::VectorXd& state,
                                            std::span<const int> sites) {
  const int n = infer_sites(state);
  if (static_cast<int>(sites.size()) > n - 1)
    throw std::invalid_argument(
        "reduced_density_matrix: must trace out at least one site");
  return density_on_sites(state, sites);
}

namespace {

ReducedDensityMatrix density_on_sites(const Eigen::VectorXd& state,
                                      std::span<const int> sites) {
  const int n = infer_sites(state);
  if (sites.empty())
    throw std::invalid_argument("reduced_density_matrix: empty site list");

  std::uint64_t kept_mask = 0;
  for (int site : sites) {
    check_site(site, n);
    const std::uint64_t bit = std::uint64_t{1} << site;
    if (kept_mask & bit)
      throw std::invalid_argument("reduced_density_matrix: duplicate site " +
                                  std::to_string(site));
    kept_mask |= bit;
  }

  const int m = static_cast<int>(sites.size());
  const std::uint64_t kept_dim = std::uint64_t{1} << m;

  // Scatter tables: sub-index bits -> full-index bits.
  std::vector<std::uint64_t> kept_scatter(kept_dim, 0);
  for (std::uint64_t a = 0; a < kept_dim; ++a) {
    std::uint64_t idx = 0;
    for (int t = 0; t < m; ++t)
      if ((a >> t) & 1) idx |= std::uint64_t{1} << sites[t];
    kept_scatter[a] = idx;
  }
  std::vector<int> env_sites;
  for (int s = 0; s < n; ++s)
    if (!((kept_mask >> s) & 1)) env_sites.push_back(s);
  const std::uint64_t env_dim = std::uint64_t{1} << env_sites.size();

  ReducedDensityMatrix out;
  out.sites.assign(sites.begin(), sites.end());
  out.matrix = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(kept_dim),
                                     static_cast<Eigen::Index>(kept_dim));

  std::vector<double> amplitudes(kept_dim);
  for (std::uint64_t e = 0; e < env_dim; ++e) {
    std::uint64_t env_base = 0;
    for (std::size_t t = 0; t < env_sites.size(); ++t)
      if ((e >> t) & 1) env_base |= std::uint64_t{1} << env_sites[t];
    for (std::uint64_t a = 0; a < kept_dim; ++a)
      amplitudes[a] =
          state[static_cast<Eigen::Index>(env_base | kept_scatter[a])];
    for (std::uint64_t a = 0; a < kept_dim; ++a) {
      const double va = amplitudes[a];
      if (va == 0.0) continue;
      for (std::uint64_t b = 0; b <= a; ++b)
        out.matrix(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) +=
            va * amplitudes[b];
    }
  }
  out.matrix.triangularView<Eigen::StrictlyUpper>() = out.matrix.transpose();
  return out;
}

}  // namespace

double magnetization(const Eigen::VectorXd& state, int site, Axis axis) {
  const int sites[1] = {site};
  const ReducedDensityMatrix rdm = reduced_density_matrix(state, sites);
  const auto op = pauli(axis);
  c64 trace = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) trace += op[a][b] * rdm.matrix(b, a);
  return trace.real();
}

double correlator(const Eigen::VectorXd& state, int site_i, int site_j,
                  Axis axis_a, Axis axis_b) {
  if (site_i == site_j)
    throw std::invalid_argument("correlator: sites must differ");
  const int sites[2] = {site_i, site_j};
  const ReducedDensityMatrix rdm = density_on_sites(state, sites);
  const auto op_a = pauli(axis_a);  // acts on bit 0 (site_i)
  const auto op_b = pauli(axis_b);  // acts on bit 1 (site_j)
  c64 trace = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const c64 element = op_a[a & 1][b & 1] * op_b[(a >> 1) & 1][(b >> 1) & 1];
      trace += element * rdm.matrix(b, a);
    }
  return trace.real();
}

double concurrence(const Eigen::MatrixXd& rho) {
  if (rho.rows() != 4 || rho.cols() != 4)
    throw std::invalid_argument("concurrence: expected a 4x4 density matrix");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> check(rho,
                                                       Eigen::EigenvaluesOnly);
  if (check.eigenvalues().minCoeff() < -1e-8)
    throw std::invalid_argument(
        "concurrence: density matrix is not positive semidefinite");

  // Spin-flipped partner (sy x sy) rho* (sy x sy); rho is real here, and the
  // double sy conjugation reduces to the anti-diagonal sign matrix F.
  Eigen::Matrix4d flip = Eigen::Matrix4d::Zero();
  flip(0, 3) = -1.0;
  flip(1, 2) = 1.0;
  flip(2, 1) = 1.0;
  flip(3, 0) = -1.0;
  const Eigen::Matrix4d product = rho * flip * rho * flip;

  Eigen::EigenSolver<Eigen::Matrix4d> solver(product, false);
  std::array<double, 4> roots{};
  for (int k = 0; k < 4; ++k) {
    double value = solver.eigenvalues()[k].real();
    if (value < 0.0) value = 0.0;  // clamp eigendecomposition noise
    roots[k] = std::sqrt(value);
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return std::max(0.0, roots[0] - roots[1] - roots[2] - roots[3]);
}

double concurrence(const ReducedDensityMatrix& rdm) {
  if (rdm.sites.size() != 2)
    throw std::invalid_argument("concurrence: need a two-site density matrix");
  return concurrence(rdm.matrix);
}

std::uint64_t bipartition_count(int sites) {
  if (sites < 2) throw std::invalid_argument("bipartition_count: sites < 2");
  std::uint64_t total = 0;
  for (int r = 1; r <= sites / 2; ++r) total += binomial(sites, r);
  return total;
}

std::vector<std::uint32_t> bipartition_masks(int sites) {
  if (sites < 2) throw std::invalid_argument("bipartition_masks: sites < 2");
  if (sites > 31) throw std::invalid_argument("bipartition_masks: sites > 31");
  std::vector<std::uint32_t> masks;
  const std::uint32_t full = (sites < 32) ? ((1u << sites) - 1) : ~0u;
  for (int r = 1; r <= sites / 2; ++r) {
    const bool half = (2 * r == sites);
    // Smallest mask of popcount r, then Gosper's hack in increasing order.
    std::uint32_t mask = (1u << r) - 1;
    while (mask <= full) {
      if (!half || (mask & 1u))  // canonical half-splits contain site 0
        masks.push_back(mask);
      const std::uint32_t c = mask & -mask;
      const std::uint32_t rest = mask + c;
      mask = (((mask ^ rest) >> 2) / c) | rest;
    }
  }
  return masks;
}

double ggm(const Eigen::VectorXd& state, int max_sites) {
  const int n = infer_sites(state);
  if (n > max_sites)
    throw std::invalid_argument("ggm: " + std::to_string(n) +
                                " sites exceeds the exact-GGM cap of " +
                                std::to_string(max_sites) +
                                "; use ggm_approx");

  double max_eigenvalue = 0.0;
  std::vector<int> subset;
  for (const std::uint32_t mask : bipartition_masks(n)) {
    subset.clear();
    for (int s = 0; s < n; ++s)
      if ((mask >> s) & 1) subset.push_back(s);
    max_eigenvalue =
        std::max(max_eigenvalue, largest_rdm_eigenvalue(state, subset));
  }
  return 1.0 - max_eigenvalue;
}

double ggm_approx(const Eigen::VectorXd& state, const ModelParams& params) {
  const int n = infer_sites(state);
  if (n != params.sites)
    throw std::invalid_argument("ggm_approx: state does not match params");

  double max_eigenvalue = 0.0;
  for (int s = 0; s < n; ++s) {
    const int single[1] = {s};
    max_eigenvalue =
        std::max(max_eigenvalue, largest_rdm_eigenvalue(state, single));
  }
  if (n >= 3) {
    for (const auto& [i, j] : bond_list(params)) {
      const int pair[2] = {i, j};
      max_eigenvalue =
          std::max(max_eigenvalue, largest_rdm_eigenvalue(state, pair));
    }
  }
  return 1.0 - max_eigenvalue;
}

const char* observable_name(Observable observable) {
  switch (observable) {
    case Observable::Mz: return "mz";
    case Observable::Txx: return "txx";
    case Observable::Tyy: return "tyy";
    case Observable::Tzz: return "tzz";
    case Observable::Concurrence: return "conc";
    case Observable::Ggm: return "ggm";
    case Observable::GgmApprox: return "ggm2";
  }
  return "?";
}

std::optional<double> observable_value(const ObservableSet& set,
                                       Observable observable) {
  switch (observable) {
    case Observable::Mz: return set.m_z;
    case Observable::Txx: return set.t_xx;
    case Observable::Tyy: return set.t_yy;
    case Observable::Tzz: return set.t_zz;
    case Observable::Concurrence: return set.concurrence;
    case Observable::Ggm: return set.ggm;
    case Observable::GgmApprox: return set.ggm_approx;
  }
  return std::nullopt;
}

int default_site(int sites) { return sites / 2; }

std::pair<int, int> default_pair(int sites) {
  return {sites / 2 - 1, sites / 2};
}

ObservableSet observable_set(const Eigen::VectorXd& state,
                             const ModelParams& params, int site,
                             std::pair<int, int> pair, int ggm_max_sites) {
  const int n = infer_sites(state);
  if (n != params.sites)
    throw std::invalid_argument("observable_set: state does not match params");
  if (site < 0) site = default_site(n);
  if (pair.first < 0 || pair.second < 0) pair = default_pair(n);
  check_site(site, n);
  check_site(pair.first, n);
  check_site(pair.second, n);

  ObservableSet out;
  out.site = site;
  out.pair = pair;
  out.m_z = magnetization(state, site, Axis::Z);

  const int pair_sites[2] = {pair.first, pair.second};
  const ReducedDensityMatrix pair_rdm = density_on_sites(state, pair_sites);
  const auto pair_correlator = [&](Axis axis) {
    const auto op = pauli(axis);
    c64 trace = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        trace += op[a & 1][b & 1] * op[(a >> 1) & 1][(b >> 1) & 1] *
                 pair_rdm.matrix(b, a);
    return trace.real();
  };
  out.t_xx = pair_correlator(Axis::X);
  out.t_yy = pair_correlator(Axis::Y);
  out.t_zz = pair_correlator(Axis::Z);
  out.concurrence = concurrence(pair_rdm);
  if (n <= ggm_max_sites) out.ggm = ggm(state, ggm_max_sites);
  out.ggm_approx = spinglass::ggm_approx(state, params);
  return out;
}

}  // namespace spinglass
