#include "randbasis/fem.hpp"

#include <doctest.h>

#include <random>
#include <stdexcept>

using namespace randbasis;

namespace {

struct Fixture {
  StructuredMesh mesh;
  CoefficientField field;
  StiffnessSystem system;

  Fixture(const PatchPair& patch, CoefficientField f)
      : mesh(build_mesh(patch)), field(std::move(f)), system(assemble(mesh, field)) {}
};

Fixture toy_unit(const PatchPair& patch = {0.25, 0.5, 0.125}) {
  return Fixture(patch, CoefficientField::constant(1.0, patch.omega_star_half_width));
}

Fixture toy_rough(const PatchPair& patch = {0.25, 0.5, 0.125}) {
  return Fixture(patch, CoefficientField::paper(patch.omega_star_half_width));
}

GridFunction coordinate_function(const StructuredMesh& mesh, int axis) {
  GridFunction u(mesh.num_nodes());
  for (int i = 0; i < mesh.num_nodes(); ++i) u[i] = mesh.nodes[i][axis];
  return u;
}

}  // namespace

TEST_CASE("textbook local stiffness of the unit right triangle") {
  const Eigen::Matrix3d k =
      p1_local_stiffness({0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0});
  Eigen::Matrix3d expected;
  expected << 1.0, -0.5, -0.5, -0.5, 0.5, 0.0, -0.5, 0.0, 0.5;
  CHECK((k - expected).cwiseAbs().maxCoeff() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK_THROWS_AS(p1_local_stiffness({0.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}),
                  std::invalid_argument);  // clockwise
}

TEST_CASE("assembled matrix has constants in its kernel") {
  const Fixture fx = toy_rough();
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(fx.system.n_nodes);
  const Eigen::VectorXd row_sums = fx.system.full * ones;
  const double diag_max = Eigen::VectorXd(fx.system.full.diagonal()).maxCoeff();
  CHECK(row_sums.lpNorm<Eigen::Infinity>() <= 1e-10 * diag_max);
  CHECK((fx.system.omega * ones).lpNorm<Eigen::Infinity>() <= 1e-10 * diag_max);
}

TEST_CASE("block sizes follow the node classification") {
  const Fixture fx = toy_unit();
  const int n = fx.mesh.nodes_per_side;
  CHECK(fx.system.n_boundary() == 4 * (n - 1));
  CHECK(fx.system.n_interior() == (n - 2) * (n - 2));
  CHECK(fx.system.n_interior() + fx.system.n_boundary() == fx.system.n_nodes);
}

TEST_CASE("energy inner products: regions nest and affine energies are exact") {
  const Fixture fx = toy_unit();
  const GridFunction x = coordinate_function(fx.mesh, 0);
  const GridFunction y = coordinate_function(fx.mesh, 1);

  const double w = fx.mesh.patch.omega_half_width;
  const double ws = fx.mesh.patch.omega_star_half_width;
  // grad(x) = (1, 0): the energy is the region area.
  CHECK(energy_inner(fx.system, x, x, Region::Omega) ==
        doctest::Approx(4.0 * w * w).epsilon(1e-10));
  CHECK(energy_inner(fx.system, x, x, Region::OmegaStar) ==
        doctest::Approx(4.0 * ws * ws).epsilon(1e-10));
  CHECK(energy_inner(fx.system, x, y, Region::Omega) == doctest::Approx(0.0).epsilon(1e-12));

  const GridFunction c = GridFunction::Constant(fx.system.n_nodes, 3.25);
  CHECK(energy_inner(fx.system, c, c, Region::Omega) == doctest::Approx(0.0));
  CHECK(energy_inner(fx.system, c, c, Region::OmegaStar) == doctest::Approx(0.0));

  std::mt19937_64 eng(7);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    GridFunction u(fx.system.n_nodes);
    for (int i = 0; i < u.size(); ++i) u[i] = normal(eng);
    const double omega = energy_inner(fx.system, u, u, Region::Omega);
    const double star = energy_inner(fx.system, u, u, Region::OmegaStar);
    CHECK(omega >= -1e-12);
    CHECK(omega <= star + 1e-12);
  }
}

TEST_CASE("constant boundary data extends to the constant") {
  const Fixture fx = toy_rough();
  const Eigen::VectorXd g = Eigen::VectorXd::Constant(fx.system.n_boundary(), 2.5);
  const GridFunction u = dirichlet_solve(fx.system, g);
  CHECK((u.array() - 2.5).abs().maxCoeff() <= 1e-12);
}

TEST_CASE("affine data is reproduced exactly for the unit medium") {
  const Fixture fx = toy_unit();
  GridFunction exact(fx.system.n_nodes);
  for (int i = 0; i < fx.system.n_nodes; ++i) {
    exact[i] = fx.mesh.nodes[i].x() + 2.0 * fx.mesh.nodes[i].y();
  }
  const GridFunction u = dirichlet_solve(fx.system, fx.system.boundary_part(exact));
  CHECK((u - exact).lpNorm<Eigen::Infinity>() <= 1e-9);
}

TEST_CASE("dirichlet solves are linear and residual-clean") {
  const Fixture fx = toy_rough();
  std::mt19937_64 eng(11);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd g1(fx.system.n_boundary());
  Eigen::VectorXd g2(fx.system.n_boundary());
  for (int i = 0; i < g1.size(); ++i) {
    g1[i] = normal(eng);
    g2[i] = normal(eng);
  }
  const GridFunction u1 = dirichlet_solve(fx.system, g1);
  const GridFunction u2 = dirichlet_solve(fx.system, g2);
  const GridFunction mixed = dirichlet_solve(fx.system, 0.3 * g1 - 1.7 * g2);
  const GridFunction expected = 0.3 * u1 - 1.7 * u2;
  CHECK((mixed - expected).lpNorm<Eigen::Infinity>() <=
        1e-10 * expected.lpNorm<Eigen::Infinity>());
  CHECK(harmonic_residual(fx.system, u1) <= fx.system.residual_scale());

  CHECK_THROWS_AS(dirichlet_solve(fx.system, Eigen::VectorXd::Ones(3)), std::invalid_argument);
}

TEST_CASE("factorization reuse is bit-identical to a fresh assembly") {
  const Fixture fx = toy_rough();
  std::mt19937_64 eng(13);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd g(fx.system.n_boundary());
  for (int i = 0; i < g.size(); ++i) g[i] = normal(eng);

  const GridFunction repeat_first = dirichlet_solve(fx.system, g);
  const GridFunction repeat_second = dirichlet_solve(fx.system, g);
  CHECK((repeat_first - repeat_second).lpNorm<Eigen::Infinity>() == 0.0);

  const Fixture fresh = toy_rough();
  const GridFunction from_fresh = dirichlet_solve(fresh.system, g);
  CHECK((repeat_first - from_fresh).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("hat harmonics: count, partition of unity, residuals") {
  const Fixture fx = toy_rough();
  const Eigen::MatrixXd with_corners = hat_harmonics(fx.system, fx.mesh, true);
  const Eigen::MatrixXd without = hat_harmonics(fx.system, fx.mesh, false);
  const int n = fx.mesh.nodes_per_side;
  CHECK(with_corners.cols() == 4 * (n - 1));
  CHECK(without.cols() == 4 * (n - 1) - 4);

  // Full boundary data summing to one extends to the constant one.
  const Eigen::VectorXd sum = with_corners.rowwise().sum();
  CHECK((sum.array() - 1.0).abs().maxCoeff() <= 1e-9);

  for (int j = 0; j < without.cols(); ++j) {
    CHECK(harmonic_residual(fx.system, without.col(j)) <= fx.system.residual_scale());
  }
}

TEST_CASE("paper-scale assembly dimensions") {
  const PatchPair paper{1.0, 1.4, 1.0 / 40.0};
  const StructuredMesh mesh = build_mesh(paper);
  CoefficientField field = CoefficientField::paper(paper.omega_star_half_width);
  const StiffnessSystem system = assemble(mesh, field);
  CHECK(system.n_interior() == 12321);  // 12769 - 448
  CHECK(system.n_boundary() == 448);
}
