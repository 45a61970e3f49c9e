#pragma once

// Independent dense brute-force pipeline used to cross-check the production
// code: Kronecker-product Hamiltonians, full eigendecompositions, partial
// traces by explicit index summation over the full density matrix. Nothing
// here shares algorithmic code with spinglass_core.

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "spinglass/model.hpp"
#include "spinglass/observables.hpp"

namespace oracle {

Eigen::Matrix2cd pauli_matrix(spinglass::Axis axis);

// Operator acting with `op` on `site` and identity elsewhere; bit i of a
// basis index is site i, bit value 0 = spin up.
Eigen::MatrixXcd site_operator(int sites, int site, const Eigen::Matrix2cd& op);

Eigen::MatrixXcd dense_hamiltonian(const spinglass::ModelParams& params,
                                   const spinglass::CouplingRealization& couplings);

// Lowest eigenvector of a Hermitian matrix, rotated to a real vector.
Eigen::VectorXd ground_state(const Eigen::MatrixXcd& hamiltonian);
double ground_energy(const Eigen::MatrixXcd& hamiltonian);

// rho_keep(a, b) = sum_env <a,env| psi psi^dag |b,env>, bit t of a reduced
// index = keep[t].
Eigen::MatrixXcd partial_trace(const Eigen::VectorXd& psi,
                               const std::vector<int>& keep);

double magnetization(const Eigen::VectorXd& psi, int site, spinglass::Axis axis);
double correlator(const Eigen::VectorXd& psi, int i, int j, spinglass::Axis a,
                  spinglass::Axis b);

// Wootters concurrence through the Hermitian sqrt(rho) route, a different
// numerical path than the production implementation.
double concurrence(const Eigen::MatrixXcd& rho);

double ggm(const Eigen::VectorXd& psi);
double ggm_approx(const Eigen::VectorXd& psi, const spinglass::ModelParams& params);

spinglass::ObservableSet observable_set(const Eigen::VectorXd& psi,
                                        const spinglass::ModelParams& params,
                                        int site, std::pair<int, int> pair);

}  // namespace oracle
