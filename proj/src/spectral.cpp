#include "randbasis/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace randbasis {

GramPair gram_pair(const StiffnessSystem& system, const Eigen::MatrixXd& functions) {
  if (functions.cols() == 0) {
    throw std::invalid_argument("gram_pair: empty function set");
  }
  if (functions.rows() != system.n_nodes) {
    throw std::invalid_argument("gram_pair: functions have wrong length");
  }
  GramPair pair;
  const Eigen::MatrixXd star_products = system.full * functions;
  pair.on_omega_star = functions.transpose() * star_products;
  pair.on_omega_star = 0.5 * (pair.on_omega_star + pair.on_omega_star.transpose()).eval();
  const Eigen::MatrixXd omega_products = system.omega * functions;
  pair.on_omega = functions.transpose() * omega_products;
  pair.on_omega = 0.5 * (pair.on_omega + pair.on_omega.transpose()).eval();
  return pair;
}

GevpResult gevp(const GramPair& pair, double deflation_tol) {
  const int k = static_cast<int>(pair.on_omega_star.rows());
  if (k == 0 || pair.on_omega.rows() != k) {
    throw std::invalid_argument("gevp: malformed Gram pair");
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> star_eig(pair.on_omega_star);
  if (star_eig.info() != Eigen::Success) {
    throw std::runtime_error("gevp: eigendecomposition of the omega* Gram failed");
  }
  const Eigen::VectorXd d = star_eig.eigenvalues();
  const double d_max = d.maxCoeff();
  const double cutoff = deflation_tol * d_max;

  int kept = 0;
  for (int i = 0; i < k; ++i) {
    if (d[i] > cutoff) ++kept;
  }
  if (kept == 0 || !(d_max > 0.0)) {
    throw std::runtime_error("gevp: all directions deflated; the sample space is empty");
  }

  // Whitening map onto the kept directions (Eigen orders eigenvalues
  // ascending, so the kept ones are the trailing columns).
  Eigen::MatrixXd whiten(k, kept);
  for (int j = 0; j < kept; ++j) {
    const int src = k - kept + j;
    whiten.col(j) = star_eig.eigenvectors().col(src) / std::sqrt(d[src]);
  }

  Eigen::MatrixXd reduced = whiten.transpose() * pair.on_omega * whiten;
  reduced = 0.5 * (reduced + reduced.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> reduced_eig(reduced);
  if (reduced_eig.info() != Eigen::Success) {
    throw std::runtime_error("gevp: eigendecomposition of the reduced pencil failed");
  }

  GevpResult result;
  result.lambdas.resize(kept);
  result.coefficients.resize(k, kept);
  for (int j = 0; j < kept; ++j) {
    const int src = kept - 1 - j;  // descending
    double lambda = reduced_eig.eigenvalues()[src];
    lambda = std::clamp(lambda, 0.0, 1.0 + 1e-10);
    result.lambdas[j] = std::min(lambda, 1.0);
    Eigen::VectorXd c = whiten * reduced_eig.eigenvectors().col(src);
    const double norm2 = c.dot(pair.on_omega_star * c);
    if (norm2 > 0.0) c /= std::sqrt(norm2);
    result.coefficients.col(j) = c;
  }
  return result;
}

namespace {

SpectralBasis basis_from_family(const StiffnessSystem& system, const Eigen::MatrixXd& family,
                                double tol, const std::string& provenance) {
  const GevpResult g = gevp(gram_pair(system, family));
  SpectralBasis basis;
  basis.lambdas = g.lambdas;
  basis.psi = family * g.coefficients;
  for (int j = 0; j < basis.psi.cols(); ++j) {
    basis.psi.col(j).array() -= basis.psi.col(j).mean();
  }
  basis.n_selected = 0;
  while (basis.n_selected < basis.lambdas.size() && basis.lambdas[basis.n_selected] >= tol) {
    ++basis.n_selected;
  }
  basis.provenance = provenance;
  return basis;
}

}  // namespace

SpectralBasis reference_basis(const StiffnessSystem& system, const StructuredMesh& mesh,
                              double tol, bool include_corners) {
  const Eigen::MatrixXd chi = hat_harmonics(system, mesh, include_corners);
  return basis_from_family(system, chi, tol, "reference");
}

SpectralBasis randomized_basis(const StiffnessSystem& system, const Eigen::MatrixXd& samples,
                               double tol, const std::string& provenance) {
  if (samples.cols() == 0) {
    throw std::invalid_argument("randomized_basis: no samples");
  }
  return basis_from_family(system, samples, tol, provenance);
}

}  // namespace randbasis
