#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "spinglass/model.hpp"

namespace spinglass {

enum class Axis { X, Y, Z };

// Reduced state of the listed sites, obtained by tracing out everything
// else. Bit t of a matrix index corresponds to sites[t] (bit 0 = spin up),
// in the order the sites were requested.
struct ReducedDensityMatrix {
  std::vector<int> sites;
  Eigen::MatrixXd matrix;  // real symmetric PSD, trace 1
};

ReducedDensityMatrix reduced_density_matrix(const Eigen::VectorXd& state,
                                            std::span<const int> sites);

// <sigma^axis_site>; the z component is the magnetization along the field.
double magnetization(const Eigen::VectorXd& state, int site, Axis axis = Axis::Z);

// Two-site correlator <sigma^a_i sigma^b_j>.
double correlator(const Eigen::VectorXd& state, int site_i, int site_j,
                  Axis axis_a, Axis axis_b);

// Wootters concurrence of a two-site density matrix: max{0, l1-l2-l3-l4}
// with l_k the decreasingly sorted square roots of the eigenvalues of
// rho (sy x sy) rho* (sy x sy). Throws if rho is not PSD within tolerance.
double concurrence(const Eigen::MatrixXd& rho);
double concurrence(const ReducedDensityMatrix& rdm);

// Number of bipartitions A:B with 1 <= |A| <= floor(N/2), counting both
// members of a complementary pair at |A| = N/2 (the convention used when
// quoting bipartition counts): sum_{r=1}^{floor(N/2)} C(N, r).
std::uint64_t bipartition_count(int sites);

// Deduplicated canonical bipartitions as site bitmasks, ordered by subset
// size then numerically. At even N and |A| = N/2 only the representative
// containing site 0 is emitted, since complementary halves carry identical
// Schmidt spectra.
std::vector<std::uint32_t> bipartition_masks(int sites);

// Genuine multipartite entanglement of a pure state: 1 minus the largest
// reduced-density-matrix eigenvalue over all bipartitions (evaluated on the
// smaller side of each split). In [0, 1/2] for qubit chains. Throws when the
// chain exceeds max_sites; use ggm_approx beyond that.
double ggm(const Eigen::VectorXd& state, int max_sites = 14);

// Approximate variant restricted to single sites and nearest-neighbour
// pairs (pairs follow the bond list; only proper subsystems are used, so
// pairs are skipped at N = 2). Upper-bounds ggm.
double ggm_approx(const Eigen::VectorXd& state, const ModelParams& params);

// All per-state quantities reported by the toolkit.
struct ObservableSet {
  double m_z = 0.0;
  double t_xx = 0.0;
  double t_yy = 0.0;
  double t_zz = 0.0;
  double concurrence = 0.0;
  std::optional<double> ggm;  // absent beyond the exact-GGM site cap
  double ggm_approx = 0.0;
  int site = 0;
  std::pair<int, int> pair{0, 1};
};

enum class Observable { Mz, Txx, Tyy, Tzz, Concurrence, Ggm, GgmApprox };
inline constexpr int kObservableCount = 7;
inline constexpr Observable kObservables[kObservableCount] = {
    Observable::Mz,  Observable::Txx,        Observable::Tyy,
    Observable::Tzz, Observable::Concurrence, Observable::Ggm,
    Observable::GgmApprox};

const char* observable_name(Observable observable);
std::optional<double> observable_value(const ObservableSet& set,
                                       Observable observable);

int default_site(int sites);                 // middle of the chain
std::pair<int, int> default_pair(int sites); // bond ending at the middle site

// Computes every field in one pass. site/pair of -1 select the defaults;
// ggm is evaluated only when the chain has at most ggm_max_sites sites.
ObservableSet observable_set(const Eigen::VectorXd& state,
                             const ModelParams& params, int site = -1,
                             std::pair<int, int> pair = {-1, -1},
                             int ggm_max_sites = 14);

}  // namespace spinglass
