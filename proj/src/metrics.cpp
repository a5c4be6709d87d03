#include "randbasis/metrics.hpp"

#include "randbasis/rng.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace randbasis {

namespace {

// Gram-Schmidt against the inner product u^T (mat * v), with one
// reorthogonalization pass. Returns the orthonormalized columns.
template <typename Product>
Eigen::MatrixXd gram_schmidt(const Eigen::MatrixXd& functions, Product&& apply,
                             const char* label) {
  const int n = static_cast<int>(functions.cols());
  Eigen::MatrixXd q = functions;
  Eigen::MatrixXd applied(functions.rows(), n);  // mat * q_j, cached
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd v = q.col(i);
    const double initial = std::sqrt(std::max(v.dot(apply(v)), 0.0));
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j < i; ++j) {
        v -= applied.col(j).dot(v) * q.col(j);
      }
    }
    const double norm = std::sqrt(std::max(v.dot(apply(v)), 0.0));
    if (!(norm > 1e-12 * initial) || initial == 0.0) {
      std::ostringstream msg;
      msg << label << ": rank deficiency at index " << (i + 1);
      throw std::runtime_error(msg.str());
    }
    q.col(i) = v / norm;
    applied.col(i) = apply(q.col(i));
  }
  return q;
}

}  // namespace

SubspaceFrame orthonormalize(const StiffnessSystem& system, const Eigen::MatrixXd& functions,
                             const std::string& source) {
  if (functions.cols() == 0) {
    throw std::invalid_argument("orthonormalize: empty function set");
  }
  SubspaceFrame frame;
  frame.functions = gram_schmidt(
      functions, [&](const Eigen::VectorXd& v) { return Eigen::VectorXd(system.full * v); },
      "orthonormalize");
  frame.source = source;
  return frame;
}

double energy_of_space(const StiffnessSystem& system, const SubspaceFrame& frame) {
  if (frame.size() == 0) {
    throw std::invalid_argument("energy_of_space: empty frame");
  }
  double sum = 0.0;
  for (int i = 0; i < frame.size(); ++i) {
    sum += energy_inner(system, frame.functions.col(i), frame.functions.col(i), Region::Omega);
  }
  return std::clamp(sum / frame.size(), 0.0, 1.0);
}

double kolmogorov_from_grams(const Eigen::MatrixXd& target_gram,
                             const Eigen::MatrixXd& proposal_gram,
                             const Eigen::MatrixXd& cross_gram) {
  const int m = static_cast<int>(target_gram.rows());
  const int n = static_cast<int>(proposal_gram.rows());
  if (target_gram.cols() != m || proposal_gram.cols() != n || cross_gram.rows() != n ||
      cross_gram.cols() != m) {
    throw std::invalid_argument("kolmogorov_from_grams: inconsistent Gram dimensions");
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> prop_eig(proposal_gram);
  if (prop_eig.info() != Eigen::Success) {
    throw std::runtime_error("kolmogorov_from_grams: proposal Gram eigendecomposition failed");
  }
  const double target_scale = target_gram.cwiseAbs().maxCoeff();
  const double d_max = prop_eig.eigenvalues().maxCoeff();
  const double cutoff = 1e-12 * std::max(d_max, target_scale);
  if (!(d_max > cutoff)) {
    throw std::runtime_error(
        "kolmogorov_from_grams: proposal Gram is numerically singular "
        "(near-zero-energy directions on omega)");
  }
  // Directions with (near-)zero omega energy cannot reduce the infimum, so
  // the pseudo-inverse over the regular part computes the same distance.
  Eigen::VectorXd inv = prop_eig.eigenvalues();
  for (int i = 0; i < inv.size(); ++i) inv[i] = inv[i] > cutoff ? 1.0 / inv[i] : 0.0;
  const Eigen::MatrixXd solved = prop_eig.eigenvectors() * inv.asDiagonal() *
                                 prop_eig.eigenvectors().transpose() * cross_gram;
  Eigen::MatrixXd reduced = target_gram - cross_gram.transpose() * solved;
  reduced = 0.5 * (reduced + reduced.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(reduced);
  if (eig.info() != Eigen::Success) {
    throw std::runtime_error("kolmogorov_from_grams: deficit eigendecomposition failed");
  }
  // The deficit matrix carries absolute round-off of order eps * |target|;
  // anything at that level is an exact zero (nested spans).
  double lam = std::max(eig.eigenvalues().maxCoeff(), 0.0);
  if (lam <= 1e-14 * target_scale) lam = 0.0;
  return std::sqrt(lam);
}

double kolmogorov_distance(const StiffnessSystem& system, const SubspaceFrame& proposal,
                           const SubspaceFrame& target) {
  if (proposal.size() == 0 || target.size() == 0) {
    throw std::invalid_argument("kolmogorov_distance: empty frame");
  }
  const Eigen::MatrixXd target_products = system.omega * target.functions;
  const Eigen::MatrixXd proposal_products = system.omega * proposal.functions;
  Eigen::MatrixXd target_gram = target.functions.transpose() * target_products;
  target_gram = 0.5 * (target_gram + target_gram.transpose()).eval();
  Eigen::MatrixXd proposal_gram = proposal.functions.transpose() * proposal_products;
  proposal_gram = 0.5 * (proposal_gram + proposal_gram.transpose()).eval();
  const Eigen::MatrixXd cross_gram = proposal.functions.transpose() * target_products;
  return kolmogorov_from_grams(target_gram, proposal_gram, cross_gram);
}

PencilInstance synthetic_pencil(int n, int k, double gap, std::uint64_t seed) {
  if (!(n > k && k >= 1)) {
    throw std::invalid_argument("synthetic_pencil: need n > k >= 1");
  }
  if (!(gap >= 1.0)) {
    throw std::invalid_argument("synthetic_pencil: gap factor must be >= 1");
  }
  std::mt19937_64 eng = make_engine(derive_seed(seed, 0xB0, 0));
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> spread(1.0, 2.0);
  std::uniform_real_distribution<double> ratio(0.4, 0.95);

  PencilInstance inst;
  inst.k = k;

  // Well-conditioned B = Q diag(1..2) Q^T.
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = normal(eng);
  }
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ();
  Eigen::VectorXd diag(n);
  for (int i = 0; i < n; ++i) diag[i] = spread(eng);
  inst.b_mat = q * diag.asDiagonal() * q.transpose();
  inst.b_mat = 0.5 * (inst.b_mat + inst.b_mat.transpose()).eval();

  // Strictly decreasing eigenvalues with the requested gap at position k.
  inst.lambdas.resize(n);
  inst.lambdas[0] = 1.0;
  for (int i = 1; i < n; ++i) inst.lambdas[i] = inst.lambdas[i - 1] * ratio(eng);
  const double scale = inst.lambdas[k - 1] / (gap * (1.0 + 1e-9) * inst.lambdas[k]);
  if (scale < 1.0) {
    for (int i = k; i < n; ++i) inst.lambdas[i] *= scale;
  }

  // Random B-orthonormal eigenvector basis.
  Eigen::MatrixXd raw(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) raw(i, j) = normal(eng);
  }
  inst.eigvecs = gram_schmidt(
      raw, [&](const Eigen::VectorXd& v) { return Eigen::VectorXd(inst.b_mat * v); },
      "synthetic_pencil");

  const Eigen::MatrixXd bx = inst.b_mat * inst.eigvecs;
  inst.a_mat = bx * inst.lambdas.asDiagonal() * bx.transpose();
  inst.a_mat = 0.5 * (inst.a_mat + inst.a_mat.transpose()).eval();
  return inst;
}

double pencil_distance(const PencilInstance& instance, const Eigen::MatrixXd& proposal,
                       const Eigen::MatrixXd& target) {
  const Eigen::MatrixXd target_products = instance.a_mat * target;
  Eigen::MatrixXd target_gram = target.transpose() * target_products;
  target_gram = 0.5 * (target_gram + target_gram.transpose()).eval();
  Eigen::MatrixXd proposal_gram = proposal.transpose() * instance.a_mat * proposal;
  proposal_gram = 0.5 * (proposal_gram + proposal_gram.transpose()).eval();
  const Eigen::MatrixXd cross_gram = proposal.transpose() * target_products;
  return kolmogorov_from_grams(target_gram, proposal_gram, cross_gram);
}

Eigen::MatrixXd random_b_frame(const PencilInstance& instance, int k, std::uint64_t seed) {
  std::mt19937_64 eng = make_engine(derive_seed(seed, 0xF7, 0));
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd raw(instance.dim(), k);
  for (int i = 0; i < instance.dim(); ++i) {
    for (int j = 0; j < k; ++j) raw(i, j) = normal(eng);
  }
  return b_orthonormalize(instance, raw);
}

Eigen::MatrixXd b_orthonormalize(const PencilInstance& instance, const Eigen::MatrixXd& columns) {
  return gram_schmidt(
      columns, [&](const Eigen::VectorXd& v) { return Eigen::VectorXd(instance.b_mat * v); },
      "b_orthonormalize");
}

Prop41Report check_prop_41(const PencilInstance& instance, const Eigen::VectorXd& x) {
  if (instance.dim() < 3) {
    throw std::invalid_argument("check_prop_41: instance must have dimension >= 3");
  }
  if (x.size() != instance.dim()) {
    throw std::invalid_argument("check_prop_41: trial vector has wrong length");
  }
  Prop41Report report;
  const double b_norm2 = x.dot(instance.b_mat * x);
  if (!(b_norm2 > 0.0)) return report;
  report.energy = x.dot(instance.a_mat * x) / b_norm2;
  const double l1 = instance.lambdas[0];
  const double l2 = instance.lambdas[1];
  if (!(report.energy > l2)) return report;  // bound meaningful only above lambda_2
  report.applicable = true;

  const Eigen::VectorXd x_hat = x / std::sqrt(b_norm2);
  report.lhs = pencil_distance(instance, x_hat, instance.eigvecs.col(0));
  const double num = l1 * l2 * std::max(l1 - report.energy, 0.0);
  report.rhs = std::sqrt(num / ((l1 - l2) * report.energy));
  report.holds = report.lhs <= report.rhs + 1e-9;
  return report;
}

Lemma42Report check_lemma_42(const PencilInstance& instance, const Eigen::MatrixXd& y_frame) {
  const int n = instance.dim();
  const int k = static_cast<int>(y_frame.cols());
  if (k < 1 || k >= n) {
    throw std::invalid_argument("check_lemma_42: frame size must satisfy 1 <= k < n");
  }
  if (!(instance.lambdas[k - 1] > instance.lambdas[k])) {
    throw std::invalid_argument("check_lemma_42: lambda_k > lambda_{k+1} required");
  }
  Lemma42Report report;
  const Eigen::MatrixXd coords = instance.eigvecs.transpose() * instance.b_mat * y_frame;
  const Eigen::MatrixXd high = coords.topRows(k);
  const Eigen::MatrixXd low = coords.bottomRows(n - k);
  report.trace_cl = (low.transpose() * low).trace();

  const double energy_high = instance.lambdas.head(k).mean();
  const double energy_y = (y_frame.transpose() * instance.a_mat * y_frame).trace() /
                          (y_frame.transpose() * instance.b_mat * y_frame).trace();
  const double gap = instance.lambdas[k - 1] - instance.lambdas[k];
  report.bound = k * (energy_high - energy_y) / gap;
  report.gap_condition = (energy_high - energy_y) < gap / k;

  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(high);
  report.ch_invertible = svd.singularValues().minCoeff() > 1e-10;

  report.holds = report.trace_cl <= report.bound + 1e-9;
  if (report.gap_condition && !report.ch_invertible) report.holds = false;
  return report;
}

Thm43Report check_thm_43(const PencilInstance& instance, const Eigen::MatrixXd& y_frame) {
  const int n = instance.dim();
  const int k = static_cast<int>(y_frame.cols());
  if (k < 1 || k >= n) {
    throw std::invalid_argument("check_thm_43: frame size must satisfy 1 <= k < n");
  }
  Thm43Report report;
  const double gap = instance.lambdas[k - 1] - instance.lambdas[k];
  if (!(gap > 0.0)) return report;

  const double energy_high = instance.lambdas.head(k).mean();
  const double energy_y = (y_frame.transpose() * instance.a_mat * y_frame).trace() /
                          (y_frame.transpose() * instance.b_mat * y_frame).trace();
  const double diff = energy_high - energy_y;
  if (!(diff <= gap / (2.0 * k))) return report;
  report.applicable = true;

  const Eigen::MatrixXd coords = instance.eigvecs.transpose() * instance.b_mat * y_frame;
  const Eigen::MatrixXd low = coords.bottomRows(n - k);
  Eigen::MatrixXd low_gram = low.transpose() * low;
  low_gram = 0.5 * (low_gram + low_gram.transpose()).eval();
  const double low_norm =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(low_gram).eigenvalues().maxCoeff();

  const double l_next = instance.lambdas[k];
  report.bound_est = low_norm < 1.0
                         ? std::sqrt(l_next * low_norm / (1.0 - low_norm))
                         : std::numeric_limits<double>::infinity();
  report.bound_est2 = std::sqrt(2.0 * l_next * k * std::max(diff, 0.0) / gap);
  report.distance = pencil_distance(instance, y_frame, instance.eigvecs.leftCols(k));
  report.holds = report.distance <= std::min(report.bound_est, report.bound_est2) + 1e-9;
  return report;
}

Thm45Report check_thm_45(const StiffnessSystem& system, const SpectralBasis& reference,
                         const SubspaceFrame& gamma, const GridFunction& u, int n) {
  if (n < 1 || n >= reference.n_modes()) {
    throw std::invalid_argument("check_thm_45: need 1 <= n < number of reference modes");
  }
  const double u_star = energy_inner(system, u, u, Region::OmegaStar);
  if (std::abs(u_star - 1.0) > 1e-6) {
    throw std::invalid_argument("check_thm_45: u must be E(omega*)-normalized");
  }

  Thm45Report report;
  // Closed-form least squares for the best approximation from gamma on omega.
  const Eigen::MatrixXd products = system.omega * gamma.functions;
  Eigen::MatrixXd gram = gamma.functions.transpose() * products;
  gram = 0.5 * (gram + gram.transpose()).eval();
  const Eigen::VectorXd rhs = products.transpose() * u;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  const double cutoff = 1e-12 * std::max(eig.eigenvalues().maxCoeff(), 0.0);
  Eigen::VectorXd inv = eig.eigenvalues();
  for (int i = 0; i < inv.size(); ++i) inv[i] = inv[i] > cutoff ? 1.0 / inv[i] : 0.0;
  const Eigen::VectorXd coeff =
      eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose() * rhs;
  const double u_omega = energy_inner(system, u, u, Region::Omega);
  report.lhs = std::sqrt(std::max(u_omega - rhs.dot(coeff), 0.0));

  SubspaceFrame top_n{reference.psi.leftCols(n), "reference"};
  report.distance_term = kolmogorov_distance(system, gamma, top_n);
  report.rhs = std::sqrt(std::max(reference.lambdas[n], 0.0)) + report.distance_term;
  report.holds = report.lhs <= report.rhs + 1e-8;
  return report;
}

}  // namespace randbasis
