#include "randbasis/fem.hpp"

#include <cmath>
#include <stdexcept>

namespace randbasis {

Eigen::Matrix3d p1_local_stiffness(const Eigen::Vector2d& p0, const Eigen::Vector2d& p1,
                                   const Eigen::Vector2d& p2) {
  // Opposite-edge vectors; K_ij = (e_i . e_j) / (4 |T|) for unit coefficient.
  const Eigen::Vector2d e0 = p2 - p1;
  const Eigen::Vector2d e1 = p0 - p2;
  const Eigen::Vector2d e2 = p1 - p0;
  const double twice_area = e2.x() * (-e1.y()) - e2.y() * (-e1.x());
  if (!(twice_area > 0.0)) {
    throw std::invalid_argument("p1_local_stiffness: triangle is degenerate or clockwise");
  }
  Eigen::Matrix3d k;
  const Eigen::Vector2d e[3] = {e0, e1, e2};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      k(i, j) = e[i].dot(e[j]) / (2.0 * twice_area);
    }
  }
  return k;
}

Eigen::VectorXd StiffnessSystem::interior_part(const GridFunction& u) const {
  Eigen::VectorXd v(n_interior());
  for (int i = 0; i < n_interior(); ++i) v[i] = u[interior_nodes[i]];
  return v;
}

Eigen::VectorXd StiffnessSystem::boundary_part(const GridFunction& u) const {
  Eigen::VectorXd v(n_boundary());
  for (int i = 0; i < n_boundary(); ++i) v[i] = u[boundary_nodes[i]];
  return v;
}

StiffnessSystem assemble(const StructuredMesh& mesh, const CoefficientField& field) {
  StiffnessSystem sys;
  sys.n_nodes = mesh.num_nodes();

  std::vector<char> in_omega_element(mesh.num_triangles(), 0);
  for (int t : mesh.omega_elements) in_omega_element[t] = 1;

  using Triplet = Eigen::Triplet<double>;
  std::vector<Triplet> full_entries;
  std::vector<Triplet> omega_entries;
  full_entries.reserve(static_cast<std::size_t>(mesh.num_triangles()) * 9);
  omega_entries.reserve(static_cast<std::size_t>(mesh.omega_elements.size()) * 9);

  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    const Eigen::Matrix3d local =
        field.element_value(mesh, t) *
        p1_local_stiffness(mesh.nodes[tri[0]], mesh.nodes[tri[1]], mesh.nodes[tri[2]]);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        full_entries.emplace_back(tri[i], tri[j], local(i, j));
        if (in_omega_element[t]) omega_entries.emplace_back(tri[i], tri[j], local(i, j));
      }
    }
  }

  sys.full.resize(sys.n_nodes, sys.n_nodes);
  sys.full.setFromTriplets(full_entries.begin(), full_entries.end());
  sys.omega.resize(sys.n_nodes, sys.n_nodes);
  sys.omega.setFromTriplets(omega_entries.begin(), omega_entries.end());

  sys.boundary_nodes = boundary_dofs(mesh, true);
  sys.interior_index.assign(sys.n_nodes, -1);
  sys.boundary_index.assign(sys.n_nodes, -1);
  for (int p = 0; p < static_cast<int>(sys.boundary_nodes.size()); ++p) {
    sys.boundary_index[sys.boundary_nodes[p]] = p;
  }
  for (int idx = 0; idx < sys.n_nodes; ++idx) {
    if (sys.boundary_index[idx] < 0) {
      sys.interior_index[idx] = static_cast<int>(sys.interior_nodes.size());
      sys.interior_nodes.push_back(idx);
    }
  }

  std::vector<Triplet> ii_entries;
  std::vector<Triplet> ib_entries;
  for (int col = 0; col < sys.full.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(sys.full, col); it; ++it) {
      const int ri = sys.interior_index[it.row()];
      if (ri < 0) continue;
      const int ci = sys.interior_index[it.col()];
      if (ci >= 0) {
        ii_entries.emplace_back(ri, ci, it.value());
      } else {
        ib_entries.emplace_back(ri, sys.boundary_index[it.col()], it.value());
      }
    }
  }
  sys.interior.resize(sys.n_interior(), sys.n_interior());
  sys.interior.setFromTriplets(ii_entries.begin(), ii_entries.end());
  sys.coupling.resize(sys.n_interior(), sys.n_boundary());
  sys.coupling.setFromTriplets(ib_entries.begin(), ib_entries.end());

  sys.interior_diag_max = Eigen::VectorXd(sys.interior.diagonal()).maxCoeff();

  sys.interior_factor =
      std::make_unique<Eigen::SimplicialLLT<Eigen::SparseMatrix<double>>>();
  sys.interior_factor->compute(sys.interior);
  if (sys.interior_factor->info() != Eigen::Success) {
    throw std::runtime_error(
        "assemble: interior stiffness block is not positive definite (broken mesh or coefficient)");
  }
  return sys;
}

double energy_inner(const StiffnessSystem& system, const GridFunction& u, const GridFunction& v,
                    Region region) {
  const auto& mat = (region == Region::Omega) ? system.omega : system.full;
  return u.dot(mat * v);
}

GridFunction dirichlet_solve(const StiffnessSystem& system, const Eigen::VectorXd& g) {
  if (g.size() != system.n_boundary()) {
    throw std::invalid_argument("dirichlet_solve: boundary data has wrong length");
  }
  const Eigen::VectorXd rhs = system.coupling * g;
  const Eigen::VectorXd interior = -system.interior_factor->solve(rhs);
  GridFunction u = GridFunction::Zero(system.n_nodes);
  for (int p = 0; p < system.n_boundary(); ++p) u[system.boundary_nodes[p]] = g[p];
  for (int p = 0; p < system.n_interior(); ++p) u[system.interior_nodes[p]] = interior[p];
  return u;
}

double harmonic_residual(const StiffnessSystem& system, const GridFunction& u) {
  const Eigen::VectorXd r =
      system.interior * system.interior_part(u) + system.coupling * system.boundary_part(u);
  return r.size() > 0 ? r.lpNorm<Eigen::Infinity>() : 0.0;
}

Eigen::MatrixXd hat_harmonics(const StiffnessSystem& system, const StructuredMesh& mesh,
                              bool include_corners) {
  const std::vector<int> dofs = boundary_dofs(mesh, include_corners);
  const int n_dofs = static_cast<int>(dofs.size());

  Eigen::MatrixXd rhs(system.n_interior(), n_dofs);
  for (int j = 0; j < n_dofs; ++j) {
    rhs.col(j) = system.coupling.col(system.boundary_index[dofs[j]]);
  }
  const Eigen::MatrixXd interior = -system.interior_factor->solve(rhs);

  Eigen::MatrixXd chi = Eigen::MatrixXd::Zero(system.n_nodes, n_dofs);
  for (int j = 0; j < n_dofs; ++j) {
    chi(dofs[j], j) = 1.0;
    for (int p = 0; p < system.n_interior(); ++p) {
      chi(system.interior_nodes[p], j) = interior(p, j);
    }
  }
  return chi;
}

}  // namespace randbasis
