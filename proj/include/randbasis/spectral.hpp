#pragma once

#include "randbasis/fem.hpp"

#include <string>

namespace randbasis {

constexpr double kDeflationTol = 1e-10;
constexpr double kSelectionTol = 1e-8;

/// Energy Gram matrices of a set of functions over omega and omega*.
struct GramPair {
  Eigen::MatrixXd on_omega;       // <f_m, f_n> in E(omega)
  Eigen::MatrixXd on_omega_star;  // <f_m, f_n> in E(omega*)
};

GramPair gram_pair(const StiffnessSystem& system, const Eigen::MatrixXd& functions);

/// Restricted generalized eigenproblem S c = lambda S* c, solved after
/// deflating near-null directions of S* (constants, duplicated samples).
/// Eigenvalues are nonincreasing in [0, 1]; coefficient columns satisfy
/// c^T S* c = 1.
struct GevpResult {
  Eigen::VectorXd lambdas;
  Eigen::MatrixXd coefficients;
};

GevpResult gevp(const GramPair& pair, double deflation_tol = kDeflationTol);

/// Eigenpairs of the restriction pencil: lambdas nonincreasing in [0, 1],
/// psi columns E(omega*)-orthonormal with <psi_i, psi_j>_E(omega) =
/// lambda_i delta_ij; the restrictions to omega are read off the same nodal
/// values. n_selected counts the eigenvalues at or above the selection
/// tolerance.
struct SpectralBasis {
  Eigen::VectorXd lambdas;
  Eigen::MatrixXd psi;  // one column per mode, mean-zero over omega* nodes
  int n_selected = 0;
  std::string provenance;

  int n_modes() const { return static_cast<int>(lambdas.size()); }
};

/// Stages A-C on the full hat-harmonic family.
SpectralBasis reference_basis(const StiffnessSystem& system, const StructuredMesh& mesh,
                              double tol = kSelectionTol, bool include_corners = false);

/// Same eigenproblem posed on a sampled a-harmonic family (columns).
SpectralBasis randomized_basis(const StiffnessSystem& system, const Eigen::MatrixXd& samples,
                               double tol, const std::string& provenance);

}  // namespace randbasis
