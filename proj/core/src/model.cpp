#include "spinglass/model.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "spinglass/rng.hpp"

namespace spinglass {

void ModelParams::validate() const {
  if (sites < 2) throw std::invalid_argument("ModelParams: sites must be >= 2");
  if (sites > kMaxSites)
    throw std::invalid_argument("ModelParams: sites exceeds the supported maximum of " +
                                std::to_string(kMaxSites));
  if (!std::isfinite(anisotropy) || !std::isfinite(field))
    throw std::invalid_argument("ModelParams: parameters must be finite");
}

void DisorderCase::validate() const {
  if (planar_sigma < 0.0 || azimuthal_sigma < 0.0)
    throw std::invalid_argument("DisorderCase: standard deviations must be >= 0");
  if (!std::isfinite(planar_mean) || !std::isfinite(azimuthal_mean) ||
      !std::isfinite(planar_sigma) || !std::isfinite(azimuthal_sigma))
    throw std::invalid_argument("DisorderCase: parameters must be finite");
}

std::vector<std::pair<int, int>> bond_list(const ModelParams& params) {
  params.validate();
  std::vector<std::pair<int, int>> bonds;
  bonds.reserve(params.bond_count());
  for (int i = 0; i + 1 < params.sites; ++i) bonds.emplace_back(i, i + 1);
  if (params.boundary == Boundary::Periodic)
    bonds.emplace_back(params.sites - 1, 0);
  return bonds;
}

CouplingRealization sample_couplings(const DisorderCase& disorder,
                                     const ModelParams& params,
                                     std::uint64_t seed, int index) {
  params.validate();
  disorder.validate();

  const int n_bonds = params.bond_count();
  CouplingRealization out;
  out.planar.resize(n_bonds);
  out.azimuthal.resize(n_bonds);
  out.index = index;
  out.seed = seed;

  const double planar_center = disorder.planar_mean * params.field;
  const double azimuthal_center = disorder.azimuthal_mean * params.field;
  const bool planar_random = disorder.planar_random();
  const bool azimuthal_random = disorder.azimuthal_random();

  for (int b = 0; b < n_bonds; ++b) {
    // Substream 2b for the planar coupling of bond b, 2b+1 for the azimuthal
    // one; draws are independent of evaluation order.
    out.planar[b] = planar_random
                        ? planar_center + disorder.planar_sigma *
                                              rng::normal(seed, 2 * b)
                        : planar_center;
    out.azimuthal[b] = azimuthal_random
                           ? azimuthal_center + disorder.azimuthal_sigma *
                                                    rng::normal(seed, 2 * b + 1)
                           : azimuthal_center;
  }
  return out;
}

HamiltonianOperator::HamiltonianOperator(const ModelParams& params,
                                         CouplingRealization realization)
    : params_(params), realization_(std::move(realization)) {
  params_.validate();

  const auto bonds = bond_list(params_);
  const std::size_t n_bonds = bonds.size();
  if (realization_.planar.size() != n_bonds ||
      realization_.azimuthal.size() != n_bonds)
    throw std::invalid_argument(
        "HamiltonianOperator: coupling vectors do not match the bond count");

  flip_masks_.resize(n_bonds);
  aligned_amp_.resize(n_bonds);
  antialigned_amp_.resize(n_bonds);
  for (std::size_t b = 0; b < n_bonds; ++b) {
    flip_masks_[b] = (std::uint64_t{1} << bonds[b].first) |
                     (std::uint64_t{1} << bonds[b].second);
    // (J/4)[(1+g) sx sx + (1-g) sy sy] flips both spins of the bond with
    // amplitude J/2 on anti-aligned pairs and J g / 2 on aligned pairs.
    aligned_amp_[b] = 0.5 * realization_.planar[b] * params_.anisotropy;
    antialigned_amp_[b] = 0.5 * realization_.planar[b];
  }

  const std::size_t dim = params_.dimension();
  diagonal_.resize(static_cast<Eigen::Index>(dim));
  const double half_field = 0.5 * params_.field;
  for (std::size_t k = 0; k < dim; ++k) {
    double value = -half_field *
                   (params_.sites - 2 * std::popcount(k));  // -(h/2) sum sz
    for (std::size_t b = 0; b < n_bonds; ++b) {
      const bool aligned = (std::popcount(k & flip_masks_[b]) & 1) == 0;
      value += 0.25 * realization_.azimuthal[b] * (aligned ? 1.0 : -1.0);
    }
    diagonal_[static_cast<Eigen::Index>(k)] = value;
  }

  double off = 0.0;
  for (std::size_t b = 0; b < n_bonds; ++b)
    off += std::max(std::abs(aligned_amp_[b]), std::abs(antialigned_amp_[b]));
  norm_bound_ = diagonal_.cwiseAbs().maxCoeff() + off;
}

void HamiltonianOperator::apply(const Eigen::VectorXd& in,
                                Eigen::VectorXd& out) const {
  const std::size_t dim = dimension();
  if (static_cast<std::size_t>(in.size()) != dim)
    throw std::invalid_argument("apply: state vector has wrong dimension");
  out.resize(in.size());

  const std::size_t n_bonds = flip_masks_.size();
  for (std::size_t k = 0; k < dim; ++k) {
    double acc = diagonal_[static_cast<Eigen::Index>(k)] *
                 in[static_cast<Eigen::Index>(k)];
    for (std::size_t b = 0; b < n_bonds; ++b) {
      const std::uint64_t mask = flip_masks_[b];
      const bool aligned = (std::popcount(k & mask) & 1) == 0;
      const double amp = aligned ? aligned_amp_[b] : antialigned_amp_[b];
      acc += amp * in[static_cast<Eigen::Index>(k ^ mask)];
    }
    out[static_cast<Eigen::Index>(k)] = acc;
  }
}

Eigen::VectorXd HamiltonianOperator::apply(const Eigen::VectorXd& in) const {
  Eigen::VectorXd out;
  apply(in, out);
  return out;
}

HamiltonianOperator build_hamiltonian(const ModelParams& params,
                                      const CouplingRealization& realization) {
  return HamiltonianOperator(params, realization);
}

}  // namespace spinglass
