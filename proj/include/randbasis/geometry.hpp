#pragma once

#include <Eigen/Core>

#include <array>
#include <vector>

namespace randbasis {

/// Nested square patches omega = [-w, w]^2 inside omega* = [-w*, w*]^2,
/// discretized with uniform spacing h along both axes. Both the omega* side
/// length and the ring width w* - w must be whole multiples of h, so that
/// the boundary of omega runs along mesh lines.
struct PatchPair {
  double omega_half_width = 1.0;
  double omega_star_half_width = 1.4;
  double h = 1.0 / 40.0;
};

enum class NodeClass : unsigned char { Interior, Boundary, Corner };

/// Uniform triangulated grid over omega*. Nodes are stored row-major starting
/// at the bottom-left corner; every square cell is split along its
/// bottom-left -> top-right diagonal into two counterclockwise triangles.
/// Immutable after build_mesh; safe to share across threads.
struct StructuredMesh {
  PatchPair patch;
  int nodes_per_side = 0;
  int margin_cells = 0;  // cell layers between the omega and omega* boundaries

  std::vector<Eigen::Vector2d> nodes;
  std::vector<std::array<int, 3>> triangles;
  std::vector<NodeClass> node_class;
  std::vector<char> in_omega;       // node lies in the closed patch omega
  std::vector<int> omega_elements;  // triangles fully inside omega

  int node_index(int ix, int iy) const { return iy * nodes_per_side + ix; }
  int num_nodes() const { return static_cast<int>(nodes.size()); }
  int num_triangles() const { return static_cast<int>(triangles.size()); }

  /// True if the node is strictly inside omega (not on its boundary).
  bool strictly_inside_omega(int ix, int iy) const {
    return ix > margin_cells && ix < nodes_per_side - 1 - margin_cells &&
           iy > margin_cells && iy < nodes_per_side - 1 - margin_cells;
  }

  Eigen::Vector2d centroid(int triangle) const {
    const auto& t = triangles[triangle];
    return (nodes[t[0]] + nodes[t[1]] + nodes[t[2]]) / 3.0;
  }
};

/// Builds the mesh, checking the PatchPair alignment invariants.
/// Throws std::invalid_argument naming the violated invariant.
StructuredMesh build_mesh(const PatchPair& patch);

/// Boundary nodes of omega* in a counterclockwise walk starting at the
/// bottom-left corner. The four corners are skipped unless requested.
std::vector<int> boundary_dofs(const StructuredMesh& mesh, bool include_corners);

}  // namespace randbasis
