#include "randbasis/coefficient.hpp"

#include "oracles.hpp"
#include "randbasis/geometry.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>

using namespace randbasis;

TEST_CASE("benchmark medium value at the origin") {
  const CoefficientField field = CoefficientField::paper(1.4);
  const double expected = (1.0 + 1.1 / 2.1 + 1.0 + 2.1 / 1.1 + 1.0) / 5.0;
  CHECK(field.eval(0.0, 0.0) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(field.eval(0.0, 0.0) == doctest::Approx(1.0865801).epsilon(1e-6));
}

TEST_CASE("benchmark medium agrees with an independent re-evaluation") {
  const CoefficientField field = CoefficientField::paper(1.4);
  std::mt19937_64 eng(42);
  std::uniform_real_distribution<double> coord(-1.4, 1.4);
  for (int i = 0; i < 1000; ++i) {
    const double x = coord(eng);
    const double y = coord(eng);
    const double a = field.eval(x, y);
    const double b = oracles::oscillatory_medium_recomputed(x, y);
    CHECK(std::abs(a - b) <= 1e-13 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("constant field and domain checks") {
  const CoefficientField field = CoefficientField::constant(1.0, 1.4);
  CHECK(field.eval(0.3, -1.2) == 1.0);
  CHECK(field.alpha_star() == 1.0);
  CHECK(field.beta_star() == 1.0);
  CHECK_THROWS_AS(field.eval(1.5, 0.0), std::domain_error);
  CHECK_THROWS_AS(CoefficientField::constant(-2.0, 1.0), std::invalid_argument);
}

TEST_CASE("element values are centroid evaluations bounded by the calibrated range") {
  const StructuredMesh mesh = build_mesh({1.0, 1.5, 1.0 / 8.0});
  CoefficientField field = CoefficientField::paper(1.5);
  const auto [alpha, beta] = field.calibrate_bounds(mesh);
  CHECK(alpha > 0.0);
  CHECK(beta >= alpha);
  for (int t = 0; t < mesh.num_triangles(); t += 7) {
    const double v = field.element_value(mesh, t);
    CHECK(v == field.eval(mesh.centroid(t)));
    CHECK(v >= alpha);
    CHECK(v <= beta);
  }

  const CoefficientField c3 = CoefficientField::constant(3.0, 1.5);
  CHECK(c3.element_value(mesh, 0) == 3.0);
  CHECK_THROWS_AS(c3.element_value(mesh, mesh.num_triangles()), std::invalid_argument);
}

TEST_CASE("tabulated fields look up the containing cell") {
  const char* path = "tab_medium_test.txt";
  {
    std::ofstream out(path);
    out << "2 2\n"
        << "1.0 2.0\n"
        << "3.0 4.0\n";
  }
  const CoefficientField field = CoefficientField::tabulated(path, 1.0);
  CHECK(field.eval(-0.5, -0.5) == 1.0);
  CHECK(field.eval(0.5, -0.5) == 2.0);
  CHECK(field.eval(-0.5, 0.5) == 3.0);
  CHECK(field.eval(0.5, 0.5) == 4.0);
  CHECK(field.eval(1.0, 1.0) == 4.0);  // edge clamps to the last cell
  CHECK(field.alpha_star() == 1.0);
  CHECK(field.beta_star() == 4.0);
  std::remove(path);

  {
    std::ofstream out(path);
    out << "2 1\n"
        << "1.0 -2.0\n";
  }
  CHECK_THROWS_AS(CoefficientField::tabulated(path, 1.0), std::runtime_error);
  std::remove(path);
  CHECK_THROWS_AS(CoefficientField::tabulated("no_such_file.txt", 1.0), std::runtime_error);
}
