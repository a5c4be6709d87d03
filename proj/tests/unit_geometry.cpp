#include "randbasis/geometry.hpp"

#include <doctest.h>

#include <set>
#include <stdexcept>

using namespace randbasis;

namespace {

const PatchPair kPaperPatch{1.0, 1.4, 1.0 / 40.0};

}  // namespace

TEST_CASE("paper patch mesh counts") {
  const StructuredMesh mesh = build_mesh(kPaperPatch);
  CHECK(mesh.nodes_per_side == 113);
  CHECK(mesh.num_nodes() == 12769);

  int boundary = 0;
  int corners = 0;
  int interior = 0;
  for (NodeClass c : mesh.node_class) {
    if (c == NodeClass::Boundary) ++boundary;
    if (c == NodeClass::Corner) ++corners;
    if (c == NodeClass::Interior) ++interior;
  }
  CHECK(corners == 4);
  CHECK(boundary + corners == 448);  // 4 * (113 - 1)
  CHECK(interior + boundary + corners == mesh.num_nodes());

  // The ring between the patch boundaries is 16 cells wide.
  CHECK(mesh.margin_cells == 16);

  // Two triangles per cell inside omega.
  CHECK(static_cast<int>(mesh.omega_elements.size()) == 2 * 80 * 80);
}

TEST_CASE("boundary walk lengths match the hat-generator count") {
  const StructuredMesh mesh = build_mesh(kPaperPatch);
  CHECK(boundary_dofs(mesh, false).size() == 444);
  CHECK(boundary_dofs(mesh, true).size() == 448);
}

TEST_CASE("boundary walk is a counterclockwise grid cycle") {
  const StructuredMesh mesh = build_mesh({0.5, 0.7, 0.1});
  const std::vector<int> walk = boundary_dofs(mesh, true);
  const int n = mesh.nodes_per_side;
  CHECK(static_cast<int>(walk.size()) == 4 * (n - 1));
  CHECK(walk.front() == mesh.node_index(0, 0));

  std::set<int> seen(walk.begin(), walk.end());
  CHECK(seen.size() == walk.size());
  for (std::size_t i = 0; i < walk.size(); ++i) {
    const auto& a = mesh.nodes[walk[i]];
    const auto& b = mesh.nodes[walk[(i + 1) % walk.size()]];
    CHECK((a - b).norm() == doctest::Approx(mesh.patch.h));  // grid neighbors, cyclically
  }

  // Signed area of the walk polygon is positive for a counterclockwise cycle.
  double twice_area = 0.0;
  for (std::size_t i = 0; i < walk.size(); ++i) {
    const auto& a = mesh.nodes[walk[i]];
    const auto& b = mesh.nodes[walk[(i + 1) % walk.size()]];
    twice_area += a.x() * b.y() - b.x() * a.y();
  }
  CHECK(twice_area > 0.0);
}

TEST_CASE("smallest valid mesh walk enumerates the rim explicitly") {
  // 5x5 nodes: w* = 2h, w = h.
  const StructuredMesh mesh = build_mesh({0.1, 0.2, 0.1});
  CHECK(mesh.nodes_per_side == 5);
  const std::vector<int> with_corners = boundary_dofs(mesh, true);
  const std::vector<int> expected = {
      mesh.node_index(0, 0), mesh.node_index(1, 0), mesh.node_index(2, 0), mesh.node_index(3, 0),
      mesh.node_index(4, 0), mesh.node_index(4, 1), mesh.node_index(4, 2), mesh.node_index(4, 3),
      mesh.node_index(4, 4), mesh.node_index(3, 4), mesh.node_index(2, 4), mesh.node_index(1, 4),
      mesh.node_index(0, 4), mesh.node_index(0, 3), mesh.node_index(0, 2), mesh.node_index(0, 1)};
  CHECK(with_corners == expected);

  const std::vector<int> without_corners = boundary_dofs(mesh, false);
  CHECK(without_corners.size() == 12);
  for (int idx : without_corners) CHECK(mesh.node_class[idx] == NodeClass::Boundary);
}

TEST_CASE("triangles are counterclockwise and omega-aligned") {
  const StructuredMesh mesh = build_mesh({0.5, 0.7, 0.1});
  for (const auto& tri : mesh.triangles) {
    const auto& a = mesh.nodes[tri[0]];
    const auto& b = mesh.nodes[tri[1]];
    const auto& c = mesh.nodes[tri[2]];
    const double twice_area = (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
    CHECK(twice_area > 0.0);
  }
  // Alignment: a triangle is an omega element exactly when its centroid is
  // inside omega.
  const double w = mesh.patch.omega_half_width;
  std::set<int> omega(mesh.omega_elements.begin(), mesh.omega_elements.end());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto c = mesh.centroid(t);
    const bool inside = std::abs(c.x()) < w && std::abs(c.y()) < w;
    CHECK(inside == (omega.count(t) == 1));
  }
}

TEST_CASE("misaligned patches are rejected with a configuration error") {
  CHECK_THROWS_AS(build_mesh({1.0, 1.41, 1.0 / 40.0}), std::invalid_argument);
  CHECK_NOTHROW(build_mesh({1.0, 1.3, 1.0 / 40.0}));
  CHECK_THROWS_AS(build_mesh({1.4, 1.0, 1.0 / 40.0}), std::invalid_argument);  // w >= w*
  CHECK_THROWS_AS(build_mesh({1.0, 1.4, -0.1}), std::invalid_argument);
}
