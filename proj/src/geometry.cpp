#include "randbasis/geometry.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace randbasis {

namespace {

// Number of grid cells that `length` spans, or -1 if it is not a whole
// multiple of h (up to round-off).
int cell_count(double length, double h) {
  const double ratio = length / h;
  const long n = std::lround(ratio);
  if (n < 1 || std::abs(ratio - static_cast<double>(n)) > 1e-9 * std::max(1.0, ratio)) {
    return -1;
  }
  return static_cast<int>(n);
}

}  // namespace

StructuredMesh build_mesh(const PatchPair& patch) {
  if (!(patch.h > 0.0)) {
    throw std::invalid_argument("build_mesh: mesh spacing h must be positive");
  }
  if (!(patch.omega_star_half_width > patch.omega_half_width && patch.omega_half_width > 0.0)) {
    throw std::invalid_argument(
        "build_mesh: patch invariant omega_star_half_width > omega_half_width > 0 violated");
  }
  const int side_cells = cell_count(2.0 * patch.omega_star_half_width, patch.h);
  if (side_cells < 0) {
    std::ostringstream msg;
    msg << "build_mesh: 2*omega_star_half_width/h = " << 2.0 * patch.omega_star_half_width / patch.h
        << " is not an integer; omega* is not covered by whole cells";
    throw std::invalid_argument(msg.str());
  }
  const int margin = cell_count(patch.omega_star_half_width - patch.omega_half_width, patch.h);
  if (margin < 0) {
    std::ostringstream msg;
    msg << "build_mesh: (omega_star_half_width - omega_half_width)/h = "
        << (patch.omega_star_half_width - patch.omega_half_width) / patch.h
        << " is not an integer; the boundary of omega does not lie on mesh lines";
    throw std::invalid_argument(msg.str());
  }
  if (2 * margin >= side_cells) {
    throw std::invalid_argument("build_mesh: omega collapses to a point or line at this spacing");
  }

  StructuredMesh mesh;
  mesh.patch = patch;
  mesh.nodes_per_side = side_cells + 1;
  mesh.margin_cells = margin;

  const int n = mesh.nodes_per_side;
  const double w_star = patch.omega_star_half_width;

  mesh.nodes.reserve(static_cast<std::size_t>(n) * n);
  mesh.node_class.resize(static_cast<std::size_t>(n) * n, NodeClass::Interior);
  mesh.in_omega.resize(static_cast<std::size_t>(n) * n, 0);
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      mesh.nodes.emplace_back(-w_star + ix * patch.h, -w_star + iy * patch.h);
      const int idx = mesh.node_index(ix, iy);
      const bool on_x_rim = (ix == 0 || ix == n - 1);
      const bool on_y_rim = (iy == 0 || iy == n - 1);
      if (on_x_rim && on_y_rim) {
        mesh.node_class[idx] = NodeClass::Corner;
      } else if (on_x_rim || on_y_rim) {
        mesh.node_class[idx] = NodeClass::Boundary;
      }
      if (ix >= margin && ix <= n - 1 - margin && iy >= margin && iy <= n - 1 - margin) {
        mesh.in_omega[idx] = 1;
      }
    }
  }

  mesh.triangles.reserve(2 * static_cast<std::size_t>(side_cells) * side_cells);
  for (int cy = 0; cy < side_cells; ++cy) {
    for (int cx = 0; cx < side_cells; ++cx) {
      const int ll = mesh.node_index(cx, cy);
      const int lr = mesh.node_index(cx + 1, cy);
      const int ur = mesh.node_index(cx + 1, cy + 1);
      const int ul = mesh.node_index(cx, cy + 1);
      mesh.triangles.push_back({ll, lr, ur});
      mesh.triangles.push_back({ll, ur, ul});
    }
  }

  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    if (mesh.in_omega[tri[0]] && mesh.in_omega[tri[1]] && mesh.in_omega[tri[2]]) {
      mesh.omega_elements.push_back(t);
    }
  }

  return mesh;
}

std::vector<int> boundary_dofs(const StructuredMesh& mesh, bool include_corners) {
  const int n = mesh.nodes_per_side;
  std::vector<int> walk;
  walk.reserve(static_cast<std::size_t>(4) * (n - 1));
  auto push = [&](int ix, int iy) {
    const int idx = mesh.node_index(ix, iy);
    if (include_corners || mesh.node_class[idx] != NodeClass::Corner) {
      walk.push_back(idx);
    }
  };
  for (int ix = 0; ix < n - 1; ++ix) push(ix, 0);          // bottom, left to right
  for (int iy = 0; iy < n - 1; ++iy) push(n - 1, iy);      // right, bottom to top
  for (int ix = n - 1; ix > 0; --ix) push(ix, n - 1);      // top, right to left
  for (int iy = n - 1; iy > 0; --iy) push(0, iy);          // left, top to bottom
  return walk;
}

}  // namespace randbasis
