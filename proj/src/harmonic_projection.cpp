#include "randbasis/harmonic_projection.hpp"

#include <stdexcept>

namespace randbasis {

HarmonicProjector::HarmonicProjector(const StiffnessSystem& system, const StructuredMesh& mesh)
    : system_(system) {
  const int n_b = system.n_boundary();
  std::vector<int> group_of(n_b, -1);
  for (int p = 0; p < n_b; ++p) {
    if (mesh.node_class[system.boundary_nodes[p]] == NodeClass::Corner) {
      corner_positions_.push_back(p);
      const int before = (p + n_b - 1) % n_b;
      const int after = (p + 1) % n_b;
      if (group_of[before] < 0) {
        group_of[before] = static_cast<int>(groups_.size());
        groups_.push_back({before});
      }
      group_of[after] = group_of[before];
      groups_[group_of[before]].push_back(after);
    }
  }
  for (int p = 0; p < n_b; ++p) {
    if (mesh.node_class[system.boundary_nodes[p]] == NodeClass::Corner || group_of[p] >= 0) {
      continue;
    }
    group_of[p] = static_cast<int>(groups_.size());
    groups_.push_back({p});
  }

  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(system.n_interior(), n_unknowns());
  for (int j = 0; j < n_unknowns(); ++j) {
    for (int p : groups_[j]) rhs.col(j) += system.coupling.col(p);
  }
  response_ = system.interior_factor->solve(rhs);

  Eigen::MatrixXd normal = response_.transpose() * response_;
  normal = 0.5 * (normal + normal.transpose()).eval();
  normal_factor_.compute(normal);
  if (normal_factor_.info() != Eigen::Success) {
    throw std::runtime_error(
        "HarmonicProjector: boundary normal matrix is not positive definite "
        "(degenerate boundary coupling)");
  }
}

GridFunction HarmonicProjector::project(const GridFunction& xi) const {
  if (xi.size() != system_.n_nodes) {
    throw std::invalid_argument("HarmonicProjector::project: field has wrong length");
  }
  const Eigen::VectorXd xi_interior = system_.interior_part(xi);
  const Eigen::VectorXd unknowns = normal_factor_.solve(-response_.transpose() * xi_interior);
  const Eigen::VectorXd interior = -response_ * unknowns;

  const int n_b = system_.n_boundary();
  Eigen::VectorXd g = Eigen::VectorXd::Zero(n_b);
  for (int j = 0; j < n_unknowns(); ++j) {
    for (int p : groups_[j]) g[p] = unknowns[j];
  }
  for (int p : corner_positions_) {
    g[p] = 0.5 * (g[(p + n_b - 1) % n_b] + g[(p + 1) % n_b]);
  }

  GridFunction out = GridFunction::Zero(system_.n_nodes);
  for (int p = 0; p < n_b; ++p) out[system_.boundary_nodes[p]] = g[p];
  for (int p = 0; p < system_.n_interior(); ++p) out[system_.interior_nodes[p]] = interior[p];
  return out;
}

}  // namespace randbasis
