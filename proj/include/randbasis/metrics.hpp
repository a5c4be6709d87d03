#pragma once

#include "randbasis/fem.hpp"
#include "randbasis/spectral.hpp"

#include <cstdint>
#include <string>

namespace randbasis {

/// E(omega*)-orthonormal family of grid functions.
struct SubspaceFrame {
  Eigen::MatrixXd functions;  // one column per member
  std::string source;

  int size() const { return static_cast<int>(functions.cols()); }
};

/// Modified Gram-Schmidt in the E(omega*) inner product. Throws
/// std::runtime_error naming the (1-based) index at which the input is
/// linearly dependent.
SubspaceFrame orthonormalize(const StiffnessSystem& system, const Eigen::MatrixXd& functions,
                             const std::string& source);

/// Trace-ratio energy of the span: mean omega-energy of the orthonormal
/// members. Independent of the particular orthonormal basis chosen.
double energy_of_space(const StiffnessSystem& system, const SubspaceFrame& frame);

/// Worst-case best-approximation distance computed from Gram matrices in the
/// "omega" inner product: the supremum runs over the unit ball (in the
/// orthonormalizing product) of the target span, the infimum over the
/// proposal span.
///   target_gram   m x m  Gram of the target members
///   proposal_gram n x n  Gram of the proposal members
///   cross_gram    n x m  <proposal_i, target_j>
/// Throws std::runtime_error if the proposal Gram is numerically singular
/// (the proposal contains near-zero-energy directions on omega).
double kolmogorov_from_grams(const Eigen::MatrixXd& target_gram,
                             const Eigen::MatrixXd& proposal_gram,
                             const Eigen::MatrixXd& cross_gram);

/// PDE-space distance d(proposal, target) in the E(omega) norm, with the
/// target's unit ball taken in E(omega*). Both frames must be
/// E(omega*)-orthonormal.
double kolmogorov_distance(const StiffnessSystem& system, const SubspaceFrame& proposal,
                           const SubspaceFrame& target);

/// Synthetic generalized-eigenpair instance: A X = B X Lambda with
/// X^T B X = I, lambdas strictly positive and nonincreasing, and an enforced
/// spectral gap lambda_k / lambda_{k+1} >= gap.
struct PencilInstance {
  Eigen::MatrixXd a_mat;
  Eigen::MatrixXd b_mat;
  Eigen::VectorXd lambdas;
  Eigen::MatrixXd eigvecs;  // B-orthonormal columns
  int k = 1;                // position of the enforced gap

  int dim() const { return static_cast<int>(lambdas.size()); }
};

PencilInstance synthetic_pencil(int n, int k, double gap, std::uint64_t seed);

/// Pencil-space analogue of kolmogorov_distance: distances in the A-norm,
/// unit ball in the B-norm. Frames must be B-orthonormal.
double pencil_distance(const PencilInstance& instance, const Eigen::MatrixXd& proposal,
                       const Eigen::MatrixXd& target);

/// Random B-orthonormal frame of the instance.
Eigen::MatrixXd random_b_frame(const PencilInstance& instance, int k, std::uint64_t seed);

/// Gram-Schmidt in the B inner product of the instance.
Eigen::MatrixXd b_orthonormalize(const PencilInstance& instance, const Eigen::MatrixXd& columns);

/// One-mode angle bound: the distance from span{x} to the leading eigenvector
/// is controlled by the energy of x. Applicable when E(x) > lambda_2.
struct Prop41Report {
  bool applicable = false;
  double energy = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

Prop41Report check_prop_41(const PencilInstance& instance, const Eigen::VectorXd& x);

/// Trace bound on the low-mode content of a proposal frame, plus the
/// invertibility of its high-mode coordinate block under the gap condition.
struct Lemma42Report {
  double trace_cl = 0.0;
  double bound = 0.0;
  bool gap_condition = false;
  bool ch_invertible = false;
  bool holds = false;
};

Lemma42Report check_lemma_42(const PencilInstance& instance, const Eigen::MatrixXd& y_frame);

/// Energy-to-distance estimates for a proposal frame. Applicable when the
/// energy gap is at most (lambda_k - lambda_{k+1}) / (2k).
struct Thm43Report {
  bool applicable = false;
  double distance = 0.0;
  double bound_est = 0.0;
  double bound_est2 = 0.0;
  bool holds = false;
};

Thm43Report check_thm_43(const PencilInstance& instance, const Eigen::MatrixXd& y_frame);

/// Best-approximation bound for a unit a-harmonic function against a sampled
/// subspace: the error from Gamma is at most sqrt(lambda_{n+1}) plus the
/// distance from Gamma to the leading n reference modes.
struct Thm45Report {
  double lhs = 0.0;
  double rhs = 0.0;
  double distance_term = 0.0;
  bool holds = false;
};

Thm45Report check_thm_45(const StiffnessSystem& system, const SpectralBasis& reference,
                         const SubspaceFrame& gamma, const GridFunction& u, int n);

}  // namespace randbasis
