#pragma once

#include "randbasis/coefficient.hpp"
#include "randbasis/geometry.hpp"

#include <Eigen/Core>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <memory>
#include <vector>

namespace randbasis {

/// Nodal values of a piecewise-affine function on the omega* mesh.
using GridFunction = Eigen::VectorXd;

enum class Region { Omega, OmegaStar };

/// P1 element stiffness for a triangle with unit coefficient.
Eigen::Matrix3d p1_local_stiffness(const Eigen::Vector2d& p0, const Eigen::Vector2d& p1,
                                   const Eigen::Vector2d& p2);

/// Assembled stiffness data for one patch. The interior block is factorized
/// once and reused for every Dirichlet solve. Immutable after assembly;
/// solves against the shared factorization are pure.
struct StiffnessSystem {
  Eigen::SparseMatrix<double> full;      // all nodes, integrals over omega*
  Eigen::SparseMatrix<double> omega;     // integrals over the omega elements only
  Eigen::SparseMatrix<double> interior;  // interior-interior block
  Eigen::SparseMatrix<double> coupling;  // interior-boundary block (corners included)

  std::vector<int> boundary_nodes;  // counterclockwise walk, corners included
  std::vector<int> interior_nodes;  // ascending node index
  std::vector<int> interior_index;  // node -> interior position, or -1
  std::vector<int> boundary_index;  // node -> boundary position, or -1

  std::unique_ptr<Eigen::SimplicialLLT<Eigen::SparseMatrix<double>>> interior_factor;
  double interior_diag_max = 0.0;
  int n_nodes = 0;

  int n_interior() const { return static_cast<int>(interior_nodes.size()); }
  int n_boundary() const { return static_cast<int>(boundary_nodes.size()); }

  Eigen::VectorXd interior_part(const GridFunction& u) const;
  Eigen::VectorXd boundary_part(const GridFunction& u) const;

  /// Tolerance against which interior residuals are accepted.
  double residual_scale() const { return 1e-10 * interior_diag_max; }
};

/// Assembles the P1 stiffness matrices on omega* and omega and factorizes the
/// interior block. Throws std::runtime_error if the interior block is not
/// symmetric positive definite.
StiffnessSystem assemble(const StructuredMesh& mesh, const CoefficientField& field);

/// Energy inner product <a grad u, grad v> over the requested region.
double energy_inner(const StiffnessSystem& system, const GridFunction& u, const GridFunction& v,
                    Region region);

/// Discrete a-harmonic extension of boundary data g. g holds one value per
/// omega* boundary node in the counterclockwise walk order, corners included.
GridFunction dirichlet_solve(const StiffnessSystem& system, const Eigen::VectorXd& g);

/// Max-magnitude of the interior equations A_ii u_i + A_ib u_b; zero for a
/// discretely a-harmonic function.
double harmonic_residual(const StiffnessSystem& system, const GridFunction& u);

/// One a-harmonic extension per boundary hat function, as columns, ordered
/// like boundary_dofs(mesh, include_corners). Skipped corners carry zero data.
Eigen::MatrixXd hat_harmonics(const StiffnessSystem& system, const StructuredMesh& mesh,
                              bool include_corners);

}  // namespace randbasis
