#pragma once

#include "randbasis/fem.hpp"

#include <Eigen/Cholesky>

namespace randbasis {

/// Nodal least-squares projection onto the discrete a-harmonic space:
/// minimize |interior(g) - interior(xi)|^2 over boundary data g, where
/// interior(g) is the a-harmonic extension. The boundary response matrix and
/// the normal-equation factorization are built once and reused; project() is
/// pure, so concurrent projections against one projector are safe.
///
/// On this triangulation a boundary value reaches the interior only through
/// the single interior node across from it: corners reach none at all, and
/// the two neighbors of a corner share one interior node. The normal system
/// is therefore posed on non-corner values with each corner-adjacent pair
/// tied to a single unknown (which does not change the attainable interior
/// optima), and corners take the common value of their walk neighbors. This
/// keeps the system positive definite and constants fixed points.
class HarmonicProjector {
 public:
  HarmonicProjector(const StiffnessSystem& system, const StructuredMesh& mesh);

  /// Returns the projected function; its boundary values extend the interior
  /// optimum a-harmonically. Boundary values of xi are ignored.
  GridFunction project(const GridFunction& xi) const;

  int n_unknowns() const { return static_cast<int>(groups_.size()); }

 private:
  const StiffnessSystem& system_;
  std::vector<std::vector<int>> groups_;  // boundary-walk positions per unknown
  std::vector<int> corner_positions_;     // boundary-walk positions of the corners
  Eigen::MatrixXd response_;              // interior response per unknown
  Eigen::LLT<Eigen::MatrixXd> normal_factor_;
};

}  // namespace randbasis
