#include "oracles.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace oracles {

Eigen::VectorXd dense_pencil_eigenvalues(const Eigen::MatrixXd& s, const Eigen::MatrixXd& s_star,
                                         double deflation_tol) {
  const int k = static_cast<int>(s_star.rows());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> star_eig(s_star);
  const Eigen::VectorXd d = star_eig.eigenvalues();
  const double cutoff = deflation_tol * d.maxCoeff();
  int kept = 0;
  for (int i = 0; i < k; ++i) {
    if (d[i] > cutoff) ++kept;
  }
  if (kept == 0) throw std::runtime_error("oracle: empty pencil after deflation");

  const Eigen::MatrixXd basis = star_eig.eigenvectors().rightCols(kept);
  const Eigen::MatrixXd s_star_red = basis.transpose() * s_star * basis;
  const Eigen::MatrixXd s_red = basis.transpose() * s * basis;

  const Eigen::LLT<Eigen::MatrixXd> llt(s_star_red);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("oracle: reduced omega* Gram is not positive definite");
  }
  const Eigen::MatrixXd l = llt.matrixL();
  Eigen::MatrixXd whitened =
      l.triangularView<Eigen::Lower>().solve(s_red).transpose();
  whitened = l.triangularView<Eigen::Lower>().solve(whitened);
  whitened = 0.5 * (whitened + whitened.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(whitened);
  return eig.eigenvalues().reverse();
}

namespace {

// Value and envelope gradient of the squared distance from target*alpha to
// the proposal span, everything at the vector level.
double objective(const Eigen::MatrixXd& a_mat, const Eigen::MatrixXd& target,
                 const Eigen::MatrixXd& proposal, const Eigen::VectorXd& alpha,
                 Eigen::VectorXd* grad) {
  const Eigen::VectorXd z = target * alpha;
  const Eigen::MatrixXd ap = a_mat * proposal;
  const Eigen::MatrixXd normal = proposal.transpose() * ap;
  const Eigen::VectorXd beta = normal.ldlt().solve(ap.transpose() * z);
  const Eigen::VectorXd r = z - proposal * beta;
  const Eigen::VectorXd ar = a_mat * r;
  if (grad != nullptr) *grad = 2.0 * target.transpose() * ar;
  return r.dot(ar);
}

}  // namespace

double brute_force_distance(const Eigen::MatrixXd& a_mat, const Eigen::MatrixXd& target,
                            const Eigen::MatrixXd& proposal, int n_samples, int polish_iters,
                            std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int m = static_cast<int>(target.cols());

  Eigen::VectorXd best = Eigen::VectorXd::Unit(m, 0);
  double best_val = objective(a_mat, target, proposal, best, nullptr);
  for (int s = 0; s < n_samples; ++s) {
    Eigen::VectorXd alpha(m);
    for (int i = 0; i < m; ++i) alpha[i] = normal(eng);
    alpha.normalize();
    const double val = objective(a_mat, target, proposal, alpha, nullptr);
    if (val > best_val) {
      best_val = val;
      best = alpha;
    }
  }

  // Projected gradient ascent of the quadratic objective on the unit sphere.
  for (int it = 0; it < polish_iters; ++it) {
    Eigen::VectorXd grad;
    best_val = objective(a_mat, target, proposal, best, &grad);
    const double step = 5.0 / std::max(best_val, 1e-12);
    Eigen::VectorXd next = (best + step * grad).normalized();
    const double next_val = objective(a_mat, target, proposal, next, nullptr);
    if (next_val >= best_val) {
      best = next;
      best_val = next_val;
    } else {
      break;
    }
  }
  return std::sqrt(std::max(best_val, 0.0));
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> random_restriction_grams(int n, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> weight(0.0, 1.0);
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd s_star = Eigen::MatrixXd::Zero(n, n);
  for (int r = 0; r < 2 * n; ++r) {
    Eigen::VectorXd f(n);
    for (int i = 0; i < n; ++i) f[i] = normal(eng);
    const double w = weight(eng);
    s_star += f * f.transpose();
    s += w * f * f.transpose();
  }
  s = 0.5 * (s + s.transpose()).eval();
  s_star = 0.5 * (s_star + s_star.transpose()).eval();
  return {s, s_star};
}

double oscillatory_medium_recomputed(double x, double y) {
  constexpr double pi = std::numbers::pi;
  double sum = (1.1 + std::sin(7.0 * pi * y)) / (1.1 + std::sin(7.0 * pi * x));
  sum += (1.1 + std::cos(9.0 * pi * x)) / (1.1 + std::sin(9.0 * pi * y));
  sum += (1.1 + std::cos(13.0 * pi * y)) / (1.1 + std::cos(13.0 * pi * x));
  sum += (1.1 + std::sin(9.0 * pi * y)) / (1.1 + std::cos(9.0 * pi * x));
  sum += (1.1 + std::sin(7.0 * pi * x)) / (1.1 + std::sin(7.0 * pi * y));
  return 0.2 * sum;
}

}  // namespace oracles
