#include "randbasis/harmonic_projection.hpp"

#include <doctest.h>

#include <random>

using namespace randbasis;

namespace {

struct Fixture {
  StructuredMesh mesh;
  CoefficientField field;
  StiffnessSystem system;
  HarmonicProjector projector;

  explicit Fixture(const PatchPair& patch = {0.25, 0.5, 0.125})
      : mesh(build_mesh(patch)),
        field(CoefficientField::paper(patch.omega_star_half_width)),
        system(assemble(mesh, field)),
        projector(system, mesh) {}
};

Eigen::VectorXd random_vector(std::mt19937_64& eng, int n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = normal(eng);
  return v;
}

}  // namespace

TEST_CASE("projection leaves a-harmonic inputs fixed") {
  const Fixture fx;
  std::mt19937_64 eng(3);
  const GridFunction xi = dirichlet_solve(fx.system, random_vector(eng, fx.system.n_boundary()));
  const GridFunction gamma = fx.projector.project(xi);
  const Eigen::VectorXd xi_i = fx.system.interior_part(xi);
  const Eigen::VectorXd gamma_i = fx.system.interior_part(gamma);
  CHECK((gamma_i - xi_i).norm() <= 1e-8 * xi_i.norm());
  CHECK(harmonic_residual(fx.system, gamma) <= fx.system.residual_scale());
}

TEST_CASE("constants project to constants everywhere") {
  const Fixture fx;
  const GridFunction xi = GridFunction::Constant(fx.system.n_nodes, -1.75);
  const GridFunction gamma = fx.projector.project(xi);
  CHECK((gamma.array() + 1.75).abs().maxCoeff() <= 1e-10);
}

TEST_CASE("projection is linear and idempotent") {
  const Fixture fx;
  std::mt19937_64 eng(5);
  const GridFunction a = random_vector(eng, fx.system.n_nodes);
  const GridFunction b = random_vector(eng, fx.system.n_nodes);
  const GridFunction pa = fx.projector.project(a);
  const GridFunction pb = fx.projector.project(b);
  const GridFunction mixed = fx.projector.project(2.0 * a - 0.5 * b);
  const GridFunction expected = 2.0 * pa - 0.5 * pb;
  CHECK((mixed - expected).lpNorm<Eigen::Infinity>() <=
        1e-10 * expected.lpNorm<Eigen::Infinity>());

  const GridFunction ppa = fx.projector.project(pa);
  CHECK((ppa - pa).norm() <= 1e-8 * pa.norm());
}

TEST_CASE("output satisfies the interior constraint") {
  const Fixture fx;
  std::mt19937_64 eng(9);
  for (int trial = 0; trial < 3; ++trial) {
    const GridFunction gamma = fx.projector.project(random_vector(eng, fx.system.n_nodes));
    const Eigen::VectorXd r = fx.system.interior * fx.system.interior_part(gamma) +
                              fx.system.coupling * fx.system.boundary_part(gamma);
    CHECK(r.lpNorm<Eigen::Infinity>() <= fx.system.residual_scale());
  }
}

TEST_CASE("projection beats random a-harmonic competitors") {
  // 9x9 toy mesh.
  const Fixture fx({0.25, 0.5, 0.125});
  REQUIRE(fx.mesh.nodes_per_side == 9);
  std::mt19937_64 eng(17);
  const GridFunction xi = random_vector(eng, fx.system.n_nodes);
  const GridFunction gamma = fx.projector.project(xi);
  const Eigen::VectorXd xi_i = fx.system.interior_part(xi);
  const double optimal = (fx.system.interior_part(gamma) - xi_i).norm();
  for (int c = 0; c < 50; ++c) {
    const GridFunction w = dirichlet_solve(fx.system, random_vector(eng, fx.system.n_boundary()));
    const double competitor = (fx.system.interior_part(w) - xi_i).norm();
    CHECK(optimal <= competitor);
  }
}
