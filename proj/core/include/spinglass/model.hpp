#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace spinglass {

// Largest chain the toolkit will instantiate (state vectors are 2^N doubles).
inline constexpr int kMaxSites = 24;

enum class Boundary { Periodic, Open };

// Geometry and clean parameters of the spin-1/2 chain. Everything is
// dimensionless; the overall energy scale multiplying the Hamiltonian is
// fixed to 1.
struct ModelParams {
  int sites = 6;
  double anisotropy = 0.7;  // imbalance between the xx and yy couplings
  double field = 0.8;       // uniform longitudinal field strength
  Boundary boundary = Boundary::Periodic;

  int bond_count() const {
    return boundary == Boundary::Periodic ? sites : sites - 1;
  }
  std::size_t dimension() const { return std::size_t{1} << sites; }
  void validate() const;

  bool operator==(const ModelParams&) const = default;
};

enum class DisorderKind { None, Planar, Azimuthal, Both };

// Which couplings are quenched-random. Means are stored in units of the
// field (planar_mean = <J>/h, azimuthal_mean = <delta>/h); the standard
// deviations apply to the couplings J_ij / delta_ij themselves.
struct DisorderCase {
  DisorderKind kind = DisorderKind::None;
  double planar_mean = 0.0;
  double azimuthal_mean = 0.0;
  double planar_sigma = 1.0;
  double azimuthal_sigma = 1.0;

  bool planar_random() const {
    return (kind == DisorderKind::Planar || kind == DisorderKind::Both) &&
           planar_sigma > 0.0;
  }
  bool azimuthal_random() const {
    return (kind == DisorderKind::Azimuthal || kind == DisorderKind::Both) &&
           azimuthal_sigma > 0.0;
  }
  void validate() const;

  bool operator==(const DisorderCase&) const = default;
};

// One frozen draw of per-bond couplings.
struct CouplingRealization {
  std::vector<double> planar;     // J per bond
  std::vector<double> azimuthal;  // delta per bond
  int index = 0;
  std::uint64_t seed = 0;
};

// Nearest-neighbour bonds in deterministic order: (0,1),(1,2),...,(N-2,N-1)
// plus the wrap-around bond (N-1,0) under periodic boundaries.
std::vector<std::pair<int, int>> bond_list(const ModelParams& params);

// Draws per-bond couplings. The draw is a pure function of (seed, bond,
// coupling kind), so it is identical no matter how realizations are
// scheduled. Zero-sigma components reproduce the mean coupling exactly.
CouplingRealization sample_couplings(const DisorderCase& disorder,
                                     const ModelParams& params,
                                     std::uint64_t seed, int index = 0);

// Matrix-free XYZ chain Hamiltonian
//
//   H = sum_b (J_b/4) [(1+g) sx sx + (1-g) sy sy]
//     + sum_b (delta_b/4) sz sz - (h/2) sum_i sz_i
//
// acting on the 2^N computational basis. Basis convention: bit i of an
// index holds site i, bit value 0 means spin up (sz = +1). All matrix
// elements are real, so state vectors are kept real throughout.
class HamiltonianOperator {
 public:
  HamiltonianOperator(const ModelParams& params, CouplingRealization realization);

  int sites() const { return params_.sites; }
  std::size_t dimension() const { return diagonal_.size(); }
  const ModelParams& params() const { return params_; }
  const CouplingRealization& realization() const { return realization_; }
  const Eigen::VectorXd& diagonal() const { return diagonal_; }

  // out = H * in. O(N 2^N); each output entry is accumulated independently
  // (gather form), so concurrent application over index ranges is exact.
  void apply(const Eigen::VectorXd& in, Eigen::VectorXd& out) const;
  Eigen::VectorXd apply(const Eigen::VectorXd& in) const;

  // Upper bound on the spectral radius (Gershgorin), used for breakdown
  // thresholds in iterative solvers.
  double norm_bound() const { return norm_bound_; }

 private:
  ModelParams params_;
  CouplingRealization realization_;
  std::vector<std::uint64_t> flip_masks_;   // per bond: bit i | bit j
  std::vector<double> aligned_amp_;         // J g / 2, spin-flip on aligned pairs
  std::vector<double> antialigned_amp_;     // J / 2, spin-flip on anti-aligned pairs
  Eigen::VectorXd diagonal_;                // zz couplings + field
  double norm_bound_ = 0.0;
};

HamiltonianOperator build_hamiltonian(const ModelParams& params,
                                      const CouplingRealization& realization);

}  // namespace spinglass
